"""Small hand-built instances used by the docs, tests and CLI."""

from __future__ import annotations

from .colored import ColoredSet
from .forests import IN, OUT, SRC_IN, SRC_OUT, Forest, YoungForest


def corolla(n: int, color: str = "a", root="r", prefix: str = "") -> YoungForest:
    return YoungForest.corolla({f"{prefix}{k + 1}": color for k in range(n)}, root, color)


def running_instance() -> dict:
    """The single-color instance ``x -> y -> z`` with ``f: 1↦s, 2↦t, 3↦q, u↦p, v↦r`` and ``g: a↦1, b↦2, c↦3, r↦R``."""
    a = "a"
    y = corolla(3, a, "r")
    x = YoungForest(
        ColoredSet({"p": a, "q": a, "s": a, "t": a}),
        ColoredSet({"u": a, "v": a}),
        {"p": "v", "q": "v", "s": "u", "t": "u"},
    )
    f = Forest(
        x,
        y,
        {
            (IN, "1"): (SRC_IN, "s"),
            (IN, "2"): (SRC_IN, "t"),
            (IN, "3"): (SRC_IN, "q"),
            (SRC_OUT, "u"): (SRC_IN, "p"),
            (SRC_OUT, "v"): (OUT, "r"),
        },
    )
    cyclic = Forest(
        x,
        y,
        {
            (IN, "1"): (SRC_IN, "s"),
            (IN, "2"): (SRC_IN, "t"),
            (IN, "3"): (SRC_IN, "q"),
            (SRC_OUT, "u"): (OUT, "r"),
            (SRC_OUT, "v"): (SRC_IN, "p"),
        },
    )
    z = YoungForest.corolla({"a": a, "b": a, "c": a}, "R", a)
    g = Forest(
        y,
        z,
        {(IN, "a"): (SRC_IN, "1"), (IN, "b"): (SRC_IN, "2"), (IN, "c"): (SRC_IN, "3"), (SRC_OUT, "r"): (OUT, "R")},
    )
    return {"x": x, "y": y, "z": z, "f": f, "g": g, "cyclic": cyclic}


def unit_tree(color: str = "a", i="i", j="j") -> Forest:
    y = YoungForest(ColoredSet({i: color}), ColoredSet({j: color}), {i: j})
    return Forest(YoungForest.empty(), y, {(IN, i): (OUT, j)})


def chain(labels_colors: list, root="R") -> Forest:
    """A linear tree of unary vertices ``v0 -> v1 -> ... -> root`` over a unary corolla."""
    n = len(labels_colors)
    c = labels_colors[0]
    verts = [f"v{k}" for k in range(n)]
    slots = [f"s{k}" for k in range(n)]
    x = YoungForest(
        ColoredSet({s: c for s in slots}), ColoredSet({v: c for v in verts}), dict(zip(slots, verts))
    )
    y = YoungForest(ColoredSet({"in": c}), ColoredSet({root: c}), {"in": root})
    attach = {(IN, "in"): (SRC_IN, slots[0])}
    for k in range(n - 1):
        attach[(SRC_OUT, verts[k])] = (SRC_IN, slots[k + 1])
    attach[(SRC_OUT, verts[-1])] = (OUT, root)
    return Forest(x, y, attach)
