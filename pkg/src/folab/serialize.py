"""JSON interchange for colored sets, forests, W points and swiss-cheese elements.

Element ids are strings on the wire.  Structured ids (tuples produced by
disjoint unions and wedges) are written as JSON arrays inside the string,
e.g. ``'["R","a"]'``; plain integer ids are written as ``'#3'``.
"""

from __future__ import annotations

import json
import math

from .colored import ColoredSet, ColorSet
from .forests import IN, OUT, SRC_IN, SRC_OUT, Forest, YoungForest


class ParseError(ValueError):
    pass


def _to_jsonable(e):
    if isinstance(e, tuple):
        return [_to_jsonable(v) for v in e]
    return e


def _from_jsonable(v):
    if isinstance(v, list):
        return tuple(_from_jsonable(u) for u in v)
    return v


def encode_id(e) -> str:
    if isinstance(e, tuple):
        return json.dumps(_to_jsonable(e), separators=(",", ":"), ensure_ascii=False)
    if isinstance(e, bool) or not isinstance(e, (str, int)):
        raise TypeError(f"unsupported id {e!r}")
    if isinstance(e, int):
        return f"#{e}"
    if e.startswith(("[", "#")):
        raise ValueError(f"string ids may not start with '[' or '#': {e!r}")
    return e


def decode_id(s: str):
    if s.startswith("["):
        return _from_jsonable(json.loads(s))
    if s.startswith("#"):
        return int(s[1:])
    return s


# -- colored sets and young forests ------------------------------------------


def colored_set_to_json(s: ColoredSet) -> dict:
    colors = list(s.palette) if s.palette is not None else list(dict.fromkeys(s.coloring.values()))
    return {"colors": colors, "elements": [{"id": encode_id(e), "color": s.color(e)} for e in s]}


def colored_set_from_json(d: dict) -> ColoredSet:
    try:
        pairs = [(decode_id(el["id"]), el["color"]) for el in d["elements"]]
        colors = d.get("colors") or []
    except (KeyError, TypeError) as exc:
        raise ParseError(f"bad colored set: {exc}") from exc
    palette = ColorSet(colors) if colors else None
    return ColoredSet(pairs, palette)


def young_to_json(x: YoungForest, weights=None) -> dict:
    out = {
        "inputs": colored_set_to_json(x.inputs),
        "outputs": colored_set_to_json(x.outputs),
        "map": {encode_id(i): encode_id(j) for i, j in x.structure.items()},
    }
    if weights is not None:
        out["weights"] = {encode_id(j): int(w) for j, w in weights.items()}
    return out


def young_from_json(d: dict) -> YoungForest:
    try:
        return YoungForest(
            colored_set_from_json(d["inputs"]),
            colored_set_from_json(d["outputs"]),
            {decode_id(i): decode_id(j) for i, j in d["map"].items()},
        )
    except KeyError as exc:
        raise ParseError(f"young forest missing {exc}") from exc


def weights_from_json(d: dict):
    w = d.get("weights")
    return None if w is None else {decode_id(j): int(v) for j, v in w.items()}


_PREFIX = {IN: "in", SRC_OUT: "src_out", OUT: "out", SRC_IN: "src_in"}
_UNPREFIX = {"in": IN, "src_out": SRC_OUT, "srcout": SRC_OUT, "out": OUT, "src_in": SRC_IN, "srcin": SRC_IN}


def _tag_to_str(t) -> str:
    return f"{_PREFIX[t[0]]}:{encode_id(t[1])}"


def _tag_from_str(s: str):
    tag, sep, rest = s.partition(":")
    if not sep or tag not in _UNPREFIX:
        raise ParseError(f"bad tagged element {s!r}")
    return (_UNPREFIX[tag], decode_id(rest))


def forest_to_json(f: Forest) -> dict:
    return {
        "source": young_to_json(f.source),
        "target": young_to_json(f.target),
        "attach": {_tag_to_str(k): _tag_to_str(v) for k, v in f.attach.items()},
    }


def forest_from_json(d: dict) -> Forest:
    try:
        return Forest(
            young_from_json(d["source"]),
            young_from_json(d["target"]),
            {_tag_from_str(k): _tag_from_str(v) for k, v in d["attach"].items()},
        )
    except KeyError as exc:
        raise ParseError(f"forest missing {exc}") from exc


# -- labels and W points --------------------------------------------------------


def label_to_json(v: float):
    return "inf" if v == math.inf else float(v)


def label_from_json(v) -> float:
    if v == "inf":
        return math.inf
    if isinstance(v, (int, float)) and not isinstance(v, bool) and v >= 0:
        return float(v)
    raise ParseError(f"bad label {v!r}")


def wpoint_to_json(p) -> dict:
    return {
        "shape": forest_to_json(p.shape),
        "labels": {encode_id(e): label_to_json(v) for e, v in p.labels.items()},
        "operad": p.operad.name,
        "decoration": p.operad.encode_value(p.decoration),
    }


def wpoint_from_json(d: dict, operad=None):
    from .operads import get_operad
    from .wconstruction import WPoint

    try:
        op = operad or get_operad(d["operad"])
        return WPoint(
            forest_from_json(d["shape"]),
            {decode_id(e): label_from_json(v) for e, v in d["labels"].items()},
            op.decode_value(d["decoration"]),
            op,
        )
    except KeyError as exc:
        raise ParseError(f"W point missing {exc}") from exc


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False)


def load_any(d: dict):
    """Guess the kind of a parsed JSON document and decode it."""
    if "attach" in d:
        return "forest", forest_from_json(d)
    if "labels" in d and "shape" in d:
        return "wpoint", wpoint_from_json(d)
    if "d" in d and "data" in d:
        from .swiss_cheese import sc_element_from_json

        return "sc", sc_element_from_json(d)
    if "map" in d and "inputs" in d:
        return "young", young_from_json(d)
    raise ParseError("unrecognised document")
