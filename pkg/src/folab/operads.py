"""Operads as functors on forests.

An operad value over a young forest ``y`` is always a dict ``root -> local
value``; the local value at ``j`` is the operation decorating the corolla
``y^{-1}(j) -> {j}``.  This makes restriction to a set of vertices a plain
dict filter, which the W construction relies on.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .colored import ColorSet, sorted_ids
from .forests import (
    IN,
    OUT,
    SRC_IN,
    SRC_OUT,
    Forest,
    ForestError,
    YoungForest,
    compose,
    isos_over,
    restrict_to_root,
    unit_insertion,
)


class OperadError(ValueError):
    pass


class Operad:
    """Behaviour every registered operad provides.

    Subclasses must be stateless; ``act`` is the functor on morphisms.
    """

    name = "operad"
    colors: ColorSet | None = None
    tolerance = 0.0

    def act(self, f: Forest, alpha: Mapping) -> dict:
        raise NotImplementedError

    def is_identity(self, y: YoungForest, j, alpha: Mapping) -> bool:
        raise NotImplementedError

    def values_equal(self, a: Mapping, b: Mapping, tol: float | None = None) -> bool:
        raise NotImplementedError

    def check_value(self, y: YoungForest, alpha: Mapping) -> bool:
        return set(alpha) == set(y.outputs)

    def identity_value(self, y: YoungForest) -> dict:
        """The value of the unit tree ``∅ -> y`` (``y`` a disjoint union of unary trees)."""
        empty = YoungForest.empty()
        attach = {(IN, i): (OUT, y(i)) for i in y.inputs}
        return self.act(Forest(empty, y, attach), {})

    def encode_value(self, alpha: Mapping):
        raise NotImplementedError

    def decode_value(self, data) -> dict:
        raise NotImplementedError


def is_unary_same_color(y: YoungForest, j) -> bool:
    fib = y.fiber(j)
    return len(fib) == 1 and y.inputs.color(fib[0]) == y.outputs.color(j)


class TerminalOperad(Operad):
    """One point in every arity."""

    name = "terminal"

    def act(self, f, alpha):
        return {j: None for j in f.target.outputs}

    def is_identity(self, y, j, alpha):
        return is_unary_same_color(y, j)

    def values_equal(self, a, b, tol=None):
        return set(a) == set(b)

    def encode_value(self, alpha):
        return {_key(j): None for j in alpha}

    def decode_value(self, data):
        return {_unkey(j): None for j in data}


def _key(e):
    from .serialize import encode_id

    return encode_id(e)


def _unkey(s):
    from .serialize import decode_id

    return decode_id(s)


# -- the free operad on a pointed collection ----------------------------------

UNIT = "1"


@dataclass(frozen=True)
class PointedCollection:
    """Named generators with input colors and an output color.

    Generators carry a free symmetric action: a decoration records which
    slot of the vertex fills each generator input, so relabelings act by
    renaming slots.  The basepoint at ``(c; c)`` is the generator ``"1"``.
    """

    generators: Mapping

    def signature(self, name):
        if name == UNIT:
            return None
        return self.generators[name]

    def check(self, name, slot_colors: tuple, out_color: str) -> bool:
        if name == UNIT:
            return len(slot_colors) == 1 and slot_colors[0] == out_color
        ins, out = self.generators[name]
        return tuple(ins) == tuple(slot_colors) and out == out_color


@dataclass(frozen=True)
class FreeOperadElement:
    """A decorated tree: ``shape: x -> y`` with a decoration per vertex of ``x``."""

    shape: Forest
    decorations: Mapping

    def __post_init__(self):
        if set(self.decorations) != set(self.shape.source.outputs):
            raise OperadError("decorations must cover exactly the vertices of the shape")

    @property
    def vertices(self) -> list:
        return list(self.shape.source.outputs)


def _canonical(e: FreeOperadElement) -> FreeOperadElement:
    """Rename the vertices and slots of ``e.shape.source`` to ``v0, v1, ...`` and ``s0, s1, ...``."""
    x = e.shape.source
    jmap = {u: f"v{n}" for n, u in enumerate(sorted_ids(x.outputs))}
    imap = {p: f"s{n}" for n, p in enumerate(sorted_ids(x.inputs))}
    shape = e.shape.relabel(imap, jmap)
    decs = {jmap[u]: (d[0], tuple(imap[s] for s in d[1])) for u, d in e.decorations.items()}
    return FreeOperadElement(shape, decs)


def _delete_units(e: FreeOperadElement) -> FreeOperadElement:
    while True:
        x = e.shape.source
        units = [u for u in sorted_ids(x.outputs) if e.decorations[u][0] == UNIT]
        if not units:
            return e
        u = units[0]
        ins = unit_insertion(x, u)
        e = FreeOperadElement(
            compose(e.shape, ins), {v: d for v, d in e.decorations.items() if v != u}
        )


def free_act(f: Forest, elements: Mapping) -> dict:
    """Graft the decorated trees sitting at the vertices of ``f.source`` along ``f``.

    ``elements`` maps each root ``j`` of ``f.source`` to a
    :class:`FreeOperadElement` over the corolla at ``j``.  Returns one reduced
    element per root of ``f.target``.
    """
    y = f.source
    if set(elements) != set(y.outputs):
        raise OperadError("need exactly one element per vertex")
    # glue the local shapes into one forest X -> y, tagging ids by vertex
    ins, outs, struct, attach, decs = [], [], {}, {}, {}
    for j in sorted_ids(y.outputs):
        e = elements[j]
        T = e.shape
        if T.target != y.restrict_to_roots([j]):
            raise OperadError(f"element at {j!r} does not sit over the corolla of {j!r}")
        X = T.source
        ins += [((j, p), c) for p, c in X.inputs.coloring.items()]
        outs += [((j, u), c) for u, c in X.outputs.coloring.items()]
        struct.update({(j, p): (j, X(p)) for p in X.inputs})
        tag = lambda v: v if v[0] == OUT else (SRC_IN, (j, v[1]))
        for i in T.target.inputs:
            attach[(IN, i)] = tag(T.attach[(IN, i)])
        for u in X.outputs:
            attach[(SRC_OUT, (j, u))] = tag(T.attach[(SRC_OUT, u)])
            name, slots = e.decorations[u]
            decs[(j, u)] = (name, tuple((j, s) for s in slots))
    from .colored import ColoredSet

    X = YoungForest(ColoredSet(ins), ColoredSet(outs), struct)
    glued = compose(f, Forest(X, y, attach))
    out = {}
    for j2 in f.target.outputs:
        part = restrict_to_root(glued, j2)
        local = {u: decs[u] for u in part.source.outputs}
        out[j2] = _canonical(_delete_units(FreeOperadElement(part, local)))
    return out


def free_elements_equal(a: FreeOperadElement, b: FreeOperadElement) -> bool:
    """Decorated isomorphism over the common target."""
    for imap, jmap in isos_over(a.shape, b.shape):
        ok = True
        for u, (name, slots) in a.decorations.items():
            if b.decorations[jmap[u]] != (name, tuple(imap[s] for s in slots)):
                ok = False
                break
        if ok:
            return True
    return False


class FreeOperad(Operad):
    """The free operad on a pointed collection, at the level of elements."""

    def __init__(self, collection: PointedCollection, name: str = "free"):
        self.collection = collection
        self.name = name

    def act(self, f, alpha):
        return free_act(f, alpha)

    def generator(self, y: YoungForest, j, name: str, slots=None) -> FreeOperadElement:
        """The one-vertex element at ``j`` decorated by ``name``; slots default to fiber order."""
        corolla = y.restrict_to_roots([j])
        slots = tuple(slots if slots is not None else corolla.fiber(j))
        src = corolla.relabel(jmap={j: "v0"})
        shape = Forest(
            src, corolla,
            {**{(IN, i): (SRC_IN, i) for i in corolla.inputs}, (SRC_OUT, "v0"): (OUT, j)},
        )
        colors = tuple(corolla.inputs.color(s) for s in slots)
        if not self.collection.check(name, colors, corolla.outputs.color(j)):
            raise OperadError(f"generator {name!r} does not fit vertex {j!r}")
        return _delete_units(FreeOperadElement(shape, {"v0": (name, slots)}))

    def is_identity(self, y, j, alpha):
        return is_unary_same_color(y, j) and len(alpha[j].shape.source.outputs) == 0

    def values_equal(self, a, b, tol=None):
        if set(a) != set(b):
            return False
        return all(free_elements_equal(a[j], b[j]) for j in a)

    def encode_value(self, alpha):
        from .serialize import forest_to_json

        return {
            _key(j): {
                "shape": forest_to_json(e.shape),
                "decorations": {
                    _key(u): {"gen": d[0], "slots": [_key(s) for s in d[1]]} for u, d in e.decorations.items()
                },
            }
            for j, e in alpha.items()
        }

    def decode_value(self, data):
        from .serialize import forest_from_json

        out = {}
        for j, e in data.items():
            decs = {_unkey(u): (d["gen"], tuple(_unkey(s) for s in d["slots"])) for u, d in e["decorations"].items()}
            out[_unkey(j)] = FreeOperadElement(forest_from_json(e["shape"]), decs)
        return out


def counit_eval(operad: Operad, e: FreeOperadElement):
    """Evaluate a tree whose vertices are decorated by values of ``operad``."""
    return operad.act(e.shape, dict(e.decorations))


# -- registry -------------------------------------------------------------------


def get_operad(name: str) -> Operad:
    """Resolve ``"terminal"``, ``"sc:<d>"`` or ``"free:<collection.json>"``."""
    if name == "terminal":
        return TerminalOperad()
    if name.startswith("sc:"):
        from .swiss_cheese import SwissCheese

        return SwissCheese(int(name[3:]))
    if name.startswith("free:"):
        import json

        with open(name[5:]) as fh:
            gens = json.load(fh)
        coll = PointedCollection({k: (tuple(v["inputs"]), v["output"]) for k, v in gens.items()})
        return FreeOperad(coll, name)
    raise OperadError(f"unknown operad {name!r}")
