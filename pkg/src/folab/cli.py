"""``folab`` command-line interface.

Exit codes: 0 success, 1 counterexample or invalid input object, 2 parse error.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from pathlib import Path

from . import generators as gen
from . import serialize as ser
from .forests import classify_edges, compose_all, validate_forest
from .operads import get_operad
from .suites import SUITES, run_suite
from .swiss_cheese import SCElement, compose_sc, sc_element_to_json, validate_sc
from .wconstruction import WPoint, point, reduce

EXIT_OK, EXIT_FAIL, EXIT_PARSE = 0, 1, 2


class UsageError(Exception):
    pass


def _load(path):
    try:
        with open(path) as fh:
            doc = json.load(fh)
        return ser.load_any(doc)
    except (OSError, json.JSONDecodeError, ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"{path}: {exc}") from exc


def _emit(obj):
    print(ser.dumps(obj))


def cmd_validate(args):
    kind, obj = _load(args.files[0])
    if kind == "forest":
        v = validate_forest(obj)
        _emit({"kind": kind, "ok": v.ok, "reason": v.reason, "detail": v.detail})
        return EXIT_OK if v else EXIT_FAIL
    if kind == "sc":
        v = validate_sc(obj)
        _emit({"kind": kind, "ok": v.ok, "reason": v.reason, "detail": v.detail})
        return EXIT_OK if v else EXIT_FAIL
    if kind == "wpoint":
        v = validate_forest(obj.shape)
        ok = bool(v) and obj.operad.check_value(obj.shape.source, obj.decoration)
        _emit({"kind": kind, "ok": ok, "reason": v.reason if not v else (None if ok else "Decoration")})
        return EXIT_OK if ok else EXIT_FAIL
    _emit({"kind": kind, "ok": True})
    return EXIT_OK


def cmd_compose(args):
    """``compose h.json g.json f.json`` prints ``h∘g∘f``; a trailing SC element is pushed forward."""
    docs = [_load(p) for p in args.files]
    if len(docs) < 2:
        raise UsageError("compose needs at least two files")
    if docs[-1][0] == "sc":
        forests = [o for k, o in docs[:-1]]
        if any(k != "forest" for k, _ in docs[:-1]):
            raise UsageError("all but the last file must be forests")
        e = compose_sc(compose_all(*forests) if len(forests) > 1 else forests[0], docs[-1][1])
        _emit(sc_element_to_json(e))
        return EXIT_OK
    if any(k != "forest" for k, _ in docs):
        raise UsageError("compose expects forests")
    try:
        out = compose_all(*[o for _, o in docs])
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    _emit(ser.forest_to_json(out))
    return EXIT_OK


def cmd_classify(args):
    kind, f = _load(args.files[0])
    if kind != "forest":
        raise UsageError("classify expects a forest")
    v = validate_forest(f)
    if not v:
        _emit({"ok": False, "reason": v.reason, "detail": v.detail})
        return EXIT_FAIL
    c = classify_edges(f)
    enc = ser.encode_id
    rm = f.root_map()
    _emit(
        {
            "unit_edges": sorted([enc(i), enc(j)] for i, j in c.unit_edges),
            "leaves": sorted(enc(i) for i in c.leaves),
            "root_edges": sorted(enc(j) for j in c.root_edges),
            "internal_edges": sorted(enc(j) for j in c.internal_edges),
            "root_map": {ser._tag_to_str(k): enc(v) for k, v in sorted(rm.items(), key=lambda kv: str(kv[0]))},
        }
    )
    return EXIT_OK


def cmd_reduce(args):
    kind, p = _load(args.files[0])
    if kind != "wpoint":
        raise UsageError("reduce expects a W point")
    if args.operad:
        p = WPoint(p.shape, p.labels, p.decoration, get_operad(args.operad))
    _emit(ser.wpoint_to_json(reduce(p)))
    return EXIT_OK


def cmd_check(args):
    if not args.files:
        raise UsageError(f"check needs a suite name: {', '.join(SUITES)}")
    name = args.files[0]
    if name not in SUITES:
        raise UsageError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    rep = run_suite(name, args.seed, args.count, tol=args.tol)
    lines = ["suite\tseed\tcount\tstatus\tfailing_index\tshrunk_size\tdetail\tinstance"]
    if rep.ok:
        lines.append(f"{name}\t{args.seed}\t{args.count}\tpass\t\t\t\t")
    for (k, size, detail), w in zip(rep.failures, rep.witnesses):
        inst = "" if w is None else json.dumps(w, sort_keys=True, ensure_ascii=False)
        lines.append(f"{name}\t{args.seed}\t{args.count}\tfail\t{k}\t{size}\t{detail}\t{inst}")
    print("\n".join(lines))
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / f"{name}.tsv").write_text("\n".join(lines) + "\n")
        from .render import render_report

        render_report(rep, out / f"{name}.svg")
    return EXIT_OK if rep.ok else EXIT_FAIL


GEN_KINDS = ("young", "forest", "composable", "sc", "wpoint")


def _gen_one(kind, rng, args):
    if kind == "young":
        return ser.young_to_json(gen.random_young(rng, gen.random_palette(rng)))
    if kind == "forest":
        (f,) = gen.random_composable(rng, 1)
        return ser.forest_to_json(f)
    if kind == "composable":
        f, g = gen.random_composable(rng, 2)
        return {"f": ser.forest_to_json(f), "g": ser.forest_to_json(g)}
    if kind == "sc":
        x = gen.random_sc_young(rng, 5, d=args.d)
        return sc_element_to_json(SCElement(x, gen.random_sc_value(rng, x, args.d), args.d))
    if kind == "wpoint":
        op = get_operad(args.operad or "terminal")
        d = getattr(op, "d", None)
        (g,) = gen.random_composable(rng, 1, sc=d or False)
        alpha = gen.random_sc_value(rng, g.source, d) if d else {j: None for j in g.source.outputs}
        return ser.wpoint_to_json(point(g, gen.random_labels(rng, g), alpha, op))
    raise UsageError(f"unknown kind {kind!r}; choose from {', '.join(GEN_KINDS)}")


def cmd_gen(args):
    kind = args.files[0] if args.files else "forest"
    docs = [_gen_one(kind, random.Random(f"folab-gen:{args.seed}:{k}"), args) for k in range(args.count)]
    if len(docs) == 1:
        _emit(docs[0])
    else:
        for d in docs:
            print(json.dumps(d, sort_keys=True, ensure_ascii=False))
    return EXIT_OK


def cmd_render(args):
    kind, e = _load(args.files[0])
    if kind != "sc":
        raise UsageError("render expects a swiss-cheese element")
    if e.d != 2:
        raise UsageError("render supports d=2 only")
    from .render import render_sc

    out = Path(args.out or Path(args.files[0]).with_suffix(".svg"))
    roots = list(e.shape.outputs)
    if len(roots) == 1:
        render_sc(e, out)
        print(out)
    else:
        for j in roots:
            p = out.with_name(f"{out.stem}-{ser.encode_id(j)}{out.suffix}")
            render_sc(e, p, root=j)
            print(p)
    return EXIT_OK


COMMANDS = {
    "validate": cmd_validate,
    "compose": cmd_compose,
    "classify": cmd_classify,
    "reduce": cmd_reduce,
    "check": cmd_check,
    "gen": cmd_gen,
    "render": cmd_render,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"folab: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_PARSE)


def build_parser():
    p = _Parser(prog="folab", description="Forests, W construction and swiss-cheese configurations.")
    p.add_argument("verb", choices=sorted(COMMANDS))
    p.add_argument("files", nargs="*", help="input files, or a suite / generator kind")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--operad", default=None, help="terminal | sc:<d> | free:<file>")
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--out", default=None)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    env = os.environ.get("FOLAB_SEED")
    if env is not None:
        try:
            args.seed = int(env)
        except ValueError:
            print(f"folab: error: FOLAB_SEED must be an integer, got {env!r}", file=sys.stderr)
            return EXIT_PARSE
    try:
        return COMMANDS[args.verb](args)
    except UsageError as exc:
        print(f"folab: error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
