import json
import math
import os
import shutil
import subprocess
import sys

import pytest

from folab import serialize as ser
from folab.cli import main
from folab.forests import YoungForest
from folab.instances import running_instance
from folab.operads import TerminalOperad
from folab.swiss_cheese import F, H, SCElement, disc, half_disc, sc_element_to_json
from folab.colored import ColoredSet
from folab.wconstruction import point


def _write(tmp_path, name, doc):
    p = tmp_path / name
    p.write_text(json.dumps(doc))
    return str(p)


def _run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_compose_matches_running_table(tmp_path, capsys):
    R = running_instance()
    g = _write(tmp_path, "g.json", ser.forest_to_json(R["g"]))
    f = _write(tmp_path, "f.json", ser.forest_to_json(R["f"]))
    code, out, _ = _run(["compose", g, f], capsys)
    assert code == 0
    gf = ser.forest_from_json(json.loads(out))
    assert gf.attach[("in", "a")] == ("src_in", "s")
    assert gf.attach[("in", "b")] == ("src_in", "t")
    assert gf.attach[("in", "c")] == ("src_in", "q")
    assert gf.attach[("src_out", "u")] == ("src_in", "p")
    assert gf.attach[("src_out", "v")] == ("out", "R")


def test_validate_exit_codes(tmp_path, capsys):
    R = running_instance()
    good = _write(tmp_path, "f.json", ser.forest_to_json(R["f"]))
    bad = _write(tmp_path, "c.json", ser.forest_to_json(R["cyclic"]))
    code, out, _ = _run(["validate", good], capsys)
    assert code == 0 and json.loads(out)["ok"]
    code, out, _ = _run(["validate", bad], capsys)
    assert code == 1 and json.loads(out)["reason"] == "Cycle"


def test_parse_errors_exit_2(tmp_path, capsys):
    junk = tmp_path / "junk.json"
    junk.write_text("{not json")
    assert _run(["validate", str(junk)], capsys)[0] == 2
    assert _run(["validate", str(tmp_path / "missing.json")], capsys)[0] == 2
    assert _run(["validate", _write(tmp_path, "e.json", {})], capsys)[0] == 2
    assert _run(["check", "no-such-suite"], capsys)[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_classify(tmp_path, capsys):
    f = _write(tmp_path, "f.json", ser.forest_to_json(running_instance()["f"]))
    code, out, _ = _run(["classify", f], capsys)
    doc = json.loads(out)
    assert code == 0
    assert doc["leaves"] == ["1", "2", "3"] and doc["unit_edges"] == []
    assert doc["root_edges"] == ["v"] and doc["internal_edges"] == ["u"]


def test_reduce_zero_edge_drops_a_vertex(tmp_path, capsys):
    g = running_instance()["f"]
    p = point(g, {"u": 0.0}, {"u": None, "v": None}, TerminalOperad())
    path = _write(tmp_path, "p.json", ser.wpoint_to_json(p))
    code, out, _ = _run(["reduce", path], capsys)
    q = ser.wpoint_from_json(json.loads(out))
    assert code == 0
    assert len(q.shape.source.outputs) == len(g.source.outputs) - 1


def test_reduce_keeps_infinite_labels(tmp_path, capsys):
    g = running_instance()["f"]
    p = point(g, {"u": math.inf}, {"u": None, "v": None}, TerminalOperad())
    path = _write(tmp_path, "p.json", ser.wpoint_to_json(p))
    _, out, _ = _run(["reduce", path], capsys)
    assert json.loads(out)["labels"] == {"u": "inf"}


def test_check_pass_and_fail(capsys):
    code, out, _ = _run(["check", "forest-axioms", "--seed", "7", "--count", "50"], capsys)
    lines = out.strip().split("\n")
    assert code == 0
    assert lines[0].split("\t")[:4] == ["suite", "seed", "count", "status"]
    assert lines[1].split("\t")[:4] == ["forest-axioms", "7", "50", "pass"]
    code, out, _ = _run(["check", "eq7", "--count", "50"], capsys)
    row = out.strip().split("\n")[1].split("\t")
    assert code == 1 and row[3] == "fail"
    witness = json.loads(row[7])
    assert set(witness) == {"f", "g"}


def test_check_out_dir(tmp_path, capsys):
    code, out, _ = _run(["check", "weights", "--count", "20", "--out", str(tmp_path)], capsys)
    assert code == 0
    assert (tmp_path / "weights.tsv").read_text() == out
    svg = (tmp_path / "weights.svg").read_text()
    assert svg.startswith("<?xml") and "<dc:date>" not in svg


def test_folab_seed_env(monkeypatch, capsys):
    monkeypatch.setenv("FOLAB_SEED", "11")
    _, out, _ = _run(["check", "forest-axioms", "--seed", "3", "--count", "5"], capsys)
    assert out.split("\n")[1].split("\t")[1] == "11"
    monkeypatch.setenv("FOLAB_SEED", "eleven")
    assert _run(["check", "forest-axioms"], capsys)[0] == 2


@pytest.mark.parametrize("kind", ["young", "forest", "composable", "sc", "wpoint"])
def test_gen_is_deterministic_and_parses(kind, capsys):
    _, a, _ = _run(["gen", kind, "--seed", "4"], capsys)
    _, b, _ = _run(["gen", kind, "--seed", "4"], capsys)
    assert a == b
    doc = json.loads(a)
    if kind == "composable":
        assert ser.load_any(doc["f"])[0] == "forest"
    else:
        assert ser.load_any(doc)[0] == kind


def test_gen_json_lines(capsys):
    _, out, _ = _run(["gen", "forest", "--count", "3"], capsys)
    assert len(out.strip().split("\n")) == 3


def _sc_doc():
    x = YoungForest(ColoredSet({"1": F, "2": H}), ColoredSet({"r": H}), {"1": "r", "2": "r"})
    return sc_element_to_json(SCElement(x, {"r": {"1": disc(0.2, (-0.4, 0.4)), "2": half_disc(0.3, (0.5, 0.0))}}, 2))


def test_render_svg(tmp_path, capsys):
    src = _write(tmp_path, "e.json", _sc_doc())
    out = tmp_path / "e.svg"
    code, _, _ = _run(["render", src, "--out", str(out)], capsys)
    assert code == 0
    svg = out.read_text()
    assert 'width="512pt" height="512pt" viewBox="0 0 512 512"' in svg
    assert "<dc:date>" not in svg
    first = out.read_bytes()
    _run(["render", src, "--out", str(out)], capsys)
    assert out.read_bytes() == first


def test_render_rejects_other_d(tmp_path, capsys):
    doc = _sc_doc()
    doc["d"] = 3
    doc["data"]["r"] = [{"id": "1", "color": "f", "r": 0.2, "c": [0, 0.5, 0]}, {"id": "2", "color": "h", "r": 0.2, "c": [0.5, 0, 0]}]
    assert _run(["render", _write(tmp_path, "e.json", doc)], capsys)[0] == 2


def test_console_script_byte_identical(tmp_path):
    exe = [shutil.which("folab")] if shutil.which("folab") else [sys.executable, "-m", "folab.cli"]
    env = dict(os.environ)
    env.pop("FOLAB_SEED", None)
    runs = [
        subprocess.run(exe + ["check", "w-relations", "--seed", "2", "--count", "20"], capture_output=True, env=env)
        for _ in range(2)
    ]
    assert runs[0].returncode == 0
    assert runs[0].stdout == runs[1].stdout
