"""Young forests, forests and their composition.

A young forest ``x`` is an uncolored map ``I_x -> J_x``: ``J_x`` are the
vertices (or roots) and ``I_x`` the input slots.  A forest ``f: x -> y`` is a
color-preserving bijection ``I_y ⊔ J_x -> J_y ⊔ I_x``.  The two summands on
each side are tagged explicitly:

========== ===========
tag        elements of
========== ===========
``in``      ``I_y``
``src_out`` ``J_x``
``out``     ``J_y``
``src_in``  ``I_x``
========== ===========

so ``f.attach[("src_out", u)] == ("src_in", p)`` says vertex ``u`` of ``x``
is plugged into the input slot ``p`` of another vertex of ``x``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Hashable, Iterator, Mapping

from .colored import ColoredSet, id_key, sorted_ids

IN, SRC_OUT, OUT, SRC_IN = "in", "src_out", "out", "src_in"
DOMAIN_TAGS = (IN, SRC_OUT)
CODOMAIN_TAGS = (OUT, SRC_IN)


class ForestError(ValueError):
    pass


class YoungForest:
    """An uncolored map of colored sets ``inputs -> outputs``."""

    __slots__ = ("inputs", "outputs", "structure")

    def __init__(self, inputs: ColoredSet, outputs: ColoredSet, structure: Mapping):
        missing = [i for i in inputs if i not in structure]
        if missing:
            raise ForestError(f"structure map not total on inputs: {missing!r}")
        bad = [j for j in structure.values() if j not in outputs]
        if bad:
            raise ForestError(f"structure map leaves the outputs: {bad!r}")
        object.__setattr__(self, "inputs", inputs)
        object.__setattr__(self, "outputs", outputs)
        object.__setattr__(self, "structure", MappingProxyType({i: structure[i] for i in inputs}))

    def __setattr__(self, name, value):
        raise AttributeError("YoungForest is immutable")

    def __call__(self, i):
        return self.structure[i]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, YoungForest)
            and self.inputs == other.inputs
            and self.outputs == other.outputs
            and dict(self.structure) == dict(other.structure)
        )

    def __hash__(self) -> int:
        return hash((self.inputs, self.outputs, frozenset(self.structure.items())))

    def __repr__(self) -> str:
        parts = []
        for j in self.outputs:
            ins = ",".join(f"{i}:{self.inputs.color(i)}" for i in self.fiber(j))
            parts.append(f"({ins})->{j}:{self.outputs.color(j)}")
        return "Young[" + " ".join(parts) + "]"

    def fiber(self, j) -> list:
        return [i for i in self.inputs if self.structure[i] == j]

    def arity(self, j) -> int:
        return sum(1 for v in self.structure.values() if v == j)

    @classmethod
    def corolla(cls, inputs: Mapping, root, root_color: str) -> "YoungForest":
        return cls(ColoredSet(inputs), ColoredSet({root: root_color}), {i: root for i in inputs})

    @classmethod
    def empty(cls) -> "YoungForest":
        return cls(ColoredSet(), ColoredSet(), {})

    def restrict_to_roots(self, roots) -> "YoungForest":
        roots = set(roots)
        ins = [i for i in self.inputs if self.structure[i] in roots]
        return YoungForest(
            self.inputs.restrict(ins), self.outputs.restrict(roots), {i: self.structure[i] for i in ins}
        )

    def relabel(self, imap: Mapping | None = None, jmap: Mapping | None = None) -> "YoungForest":
        imap = imap or {}
        jmap = jmap or {}
        ri = lambda i: imap.get(i, i)
        rj = lambda j: jmap.get(j, j)
        return YoungForest(
            ColoredSet([(ri(i), c) for i, c in self.inputs.coloring.items()]),
            ColoredSet([(rj(j), c) for j, c in self.outputs.coloring.items()]),
            {ri(i): rj(j) for i, j in self.structure.items()},
        )


def _tagged(tag, ids):
    return [(tag, e) for e in ids]


class Forest:
    """A morphism ``source -> target`` of young forests.

    The constructor only checks that ``attach`` has the right keys and values;
    use :func:`validate_forest` for the full set of conditions.
    """

    __slots__ = ("source", "target", "attach", "_inverse")

    def __init__(self, source: YoungForest, target: YoungForest, attach: Mapping):
        dom = _tagged(IN, target.inputs) + _tagged(SRC_OUT, source.outputs)
        missing = [k for k in dom if k not in attach]
        if missing:
            raise ForestError(f"attach map not total: {missing!r}")
        extra = [k for k in attach if k not in set(dom)]
        if extra:
            raise ForestError(f"attach map has stray keys: {extra!r}")
        for v in attach.values():
            ok = (v[0] == OUT and v[1] in target.outputs) or (v[0] == SRC_IN and v[1] in source.inputs)
            if not ok:
                raise ForestError(f"attach value {v!r} is not in J_y ⊔ I_x")
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "attach", MappingProxyType({k: attach[k] for k in dom}))
        object.__setattr__(self, "_inverse", None)

    def __setattr__(self, name, value):
        raise AttributeError("Forest is immutable")

    def __getitem__(self, key):
        return self.attach[key]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Forest)
            and self.source == other.source
            and self.target == other.target
            and dict(self.attach) == dict(other.attach)
        )

    def __hash__(self) -> int:
        return hash((self.source, self.target, frozenset(self.attach.items())))

    def __repr__(self) -> str:
        arrows = ", ".join(f"{k[0]}:{k[1]}↦{v[0]}:{v[1]}" for k, v in self.attach.items())
        return f"Forest({self.source!r} -> {self.target!r}; {arrows})"

    @property
    def inverse(self) -> Mapping:
        inv = self._inverse
        if inv is None:
            inv = {}
            for k, v in self.attach.items():
                inv.setdefault(v, k)
            object.__setattr__(self, "_inverse", inv)
        return inv

    def color_of(self, tagged) -> str:
        tag, e = tagged
        if tag == IN:
            return self.target.inputs.color(e)
        if tag == OUT:
            return self.target.outputs.color(e)
        if tag == SRC_IN:
            return self.source.inputs.color(e)
        return self.source.outputs.color(e)

    @classmethod
    def identity(cls, y: YoungForest) -> "Forest":
        attach = {(IN, i): (SRC_IN, i) for i in y.inputs}
        attach.update({(SRC_OUT, j): (OUT, j) for j in y.outputs})
        return cls(y, y, attach)

    def chase(self, a, bound: int | None = None):
        """Follow ``a ∈ J_y ⊔ I_x`` through ``x`` and ``f`` until it reaches ``J_y``."""
        if bound is None:
            bound = len(self.source.inputs) + 1
        steps = 0
        while a[0] == SRC_IN:
            if steps > bound:
                raise ForestError("chase does not terminate (cycle)")
            a = self.attach[(SRC_OUT, self.source(a[1]))]
            steps += 1
        return a[1]

    def root_map(self) -> dict:
        """``[f|x]``: every element of ``I_y ⊔ J_y ⊔ I_x ⊔ J_x`` to its root in ``J_y``."""
        out = {}
        for j in self.target.outputs:
            out[(OUT, j)] = j
        for i in self.target.inputs:
            out[(IN, i)] = self.chase(self.attach[(IN, i)])
        for u in self.source.outputs:
            out[(SRC_OUT, u)] = self.chase(self.attach[(SRC_OUT, u)])
        for p in self.source.inputs:
            out[(SRC_IN, p)] = self.chase((SRC_IN, p))
        return out

    def internal_edges(self) -> list:
        return [u for u in self.source.outputs if self.attach[(SRC_OUT, u)][0] == SRC_IN]

    def relabel(self, src_imap=None, src_jmap=None, tgt_imap=None, tgt_jmap=None) -> "Forest":
        """Transport along renamings of the four id sets (missing ids are kept)."""
        rn = {IN: tgt_imap or {}, OUT: tgt_jmap or {}, SRC_IN: src_imap or {}, SRC_OUT: src_jmap or {}}
        r = lambda t: (t[0], rn[t[0]].get(t[1], t[1]))
        return Forest(
            self.source.relabel(src_imap, src_jmap),
            self.target.relabel(tgt_imap, tgt_jmap),
            {r(k): r(v) for k, v in self.attach.items()},
        )


@dataclass(frozen=True)
class Validation:
    ok: bool
    reason: str | None = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok


NOT_BIJECTION, COLOR_BROKEN, CYCLE, ROOT_MISMATCH = "NotBijection", "ColorBroken", "Cycle", "RootMismatch"


def validate_forest(f: Forest) -> Validation:
    """Check bijectivity, colors, acyclicity and root compatibility."""
    x, y = f.source, f.target
    values = list(f.attach.values())
    if len(set(values)) != len(values) or len(values) != len(y.outputs) + len(x.inputs):
        return Validation(False, NOT_BIJECTION, "attach is not a bijection onto J_y ⊔ I_x")
    for k, v in f.attach.items():
        if f.color_of(k) != f.color_of(v):
            return Validation(False, COLOR_BROKEN, f"{k!r} ↦ {v!r} changes color")
    # the step map J_y ⊔ I_x -> J_y ⊔ I_x; a power of it must land in J_y
    bound = len(x.inputs) + 1
    for p in x.inputs:
        a = (SRC_IN, p)
        seen = 0
        while a[0] == SRC_IN and seen <= bound:
            a = f.attach[(SRC_OUT, x(a[1]))]
            seen += 1
        if a[0] == SRC_IN:
            return Validation(False, CYCLE, f"input {p!r} never reaches a root")
    for i in y.inputs:
        r = f.chase(f.attach[(IN, i)])
        if r != y(i):
            return Validation(False, ROOT_MISMATCH, f"input {i!r} chases to {r!r}, expected {y(i)!r}")
    return Validation(True)


def root_map(f: Forest) -> dict:
    v = validate_forest(f)
    if not v:
        raise ForestError(f"invalid forest: {v.reason}: {v.detail}")
    return f.root_map()


def compose(g: Forest, f: Forest) -> Forest:
    """The composite ``g ∘ f`` for ``f: x -> y`` and ``g: y -> z``."""
    if f.target != g.source:
        raise ForestError("boundary mismatch: f.target != g.source")
    bound = 2 * (len(f.source.inputs) + len(f.target.inputs)) + 2

    def resolve(a, side):
        for _ in range(bound):
            if side == "g":
                if a[0] == OUT:
                    return a
                a, side = f.attach[(IN, a[1])], "f"
            else:
                if a[0] == SRC_IN:
                    return a
                a, side = g.attach[(SRC_OUT, a[1])], "g"
        raise ForestError("composition chase does not terminate")

    attach = {}
    for i in g.target.inputs:
        attach[(IN, i)] = resolve(g.attach[(IN, i)], "g")
    for u in f.source.outputs:
        attach[(SRC_OUT, u)] = resolve(f.attach[(SRC_OUT, u)], "f")
    return Forest(f.source, g.target, attach)


def compose_all(*forests: Forest) -> Forest:
    """``compose_all(h, g, f) == h ∘ g ∘ f``."""
    out = forests[-1]
    for h in reversed(forests[:-1]):
        out = compose(h, out)
    return out


@dataclass(frozen=True)
class EdgeClassification:
    unit_edges: frozenset = field(default_factory=frozenset)
    leaves: frozenset = field(default_factory=frozenset)
    root_edges: frozenset = field(default_factory=frozenset)
    internal_edges: frozenset = field(default_factory=frozenset)


def classify_edges(f: Forest) -> EdgeClassification:
    un, leaf, rt, E = set(), set(), set(), set()
    for i in f.target.inputs:
        tag, v = f.attach[(IN, i)]
        (un.add((i, v)) if tag == OUT else leaf.add(i))
    for u in f.source.outputs:
        tag, v = f.attach[(SRC_OUT, u)]
        (rt.add(u) if tag == OUT else E.add(u))
    return EdgeClassification(frozenset(un), frozenset(leaf), frozenset(rt), frozenset(E))


# -- per-root bookkeeping ---------------------------------------------------


def edges_over(f: Forest) -> dict:
    """Map each root ``j ∈ J_y`` to the internal edges of ``f`` living over it."""
    rm = f.root_map()
    out = {j: [] for j in f.target.outputs}
    for u in f.internal_edges():
        out[rm[(SRC_OUT, u)]].append(u)
    return out


def edge_count_terms(g: Forest, f: Forest) -> dict:
    """Per root ``j ∈ J_z``: the counts ``#E(gf)(j), #E(g)(j), #E(f)(j), #un(f)(j), #un(gf)(j), #un(g)(j)``.

    ``E(f)`` and ``un(f)`` are pushed to ``J_z`` along ``[g|y]`` after their own root map.
    """
    gf = compose(g, f)
    rg = g.root_map()
    rf = f.root_map()
    rgf = gf.root_map()
    zero = ("E_gf", "E_g", "E_f", "un_f", "un_gf", "un_g")
    out = {j: dict.fromkeys(zero, 0) for j in g.target.outputs}
    for u in gf.internal_edges():
        out[rgf[(SRC_OUT, u)]]["E_gf"] += 1
    for u in g.internal_edges():
        out[rg[(SRC_OUT, u)]]["E_g"] += 1
    for u in f.internal_edges():
        out[rg[(SRC_OUT, rf[(SRC_OUT, u)])]]["E_f"] += 1
    for (_, jy) in classify_edges(f).unit_edges:
        out[rg[(SRC_OUT, jy)]]["un_f"] += 1
    for (_, jz) in classify_edges(gf).unit_edges:
        out[jz]["un_gf"] += 1
    for (_, jz) in classify_edges(g).unit_edges:
        out[jz]["un_g"] += 1
    return out


# -- monoidal structure -----------------------------------------------------


def _tag_young(x: YoungForest, tag) -> YoungForest:
    return x.relabel({i: (tag, i) for i in x.inputs}, {j: (tag, j) for j in x.outputs})


def disjoint_union_young(a: YoungForest, b: YoungForest) -> YoungForest:
    a2, b2 = _tag_young(a, "L"), _tag_young(b, "R")
    return YoungForest(
        ColoredSet(list(a2.inputs.coloring.items()) + list(b2.inputs.coloring.items())),
        ColoredSet(list(a2.outputs.coloring.items()) + list(b2.outputs.coloring.items())),
        {**a2.structure, **b2.structure},
    )


def _tag_forest(f: Forest, tag) -> Forest:
    t = lambda ids: {e: (tag, e) for e in ids}
    return f.relabel(t(f.source.inputs), t(f.source.outputs), t(f.target.inputs), t(f.target.outputs))


def disjoint_union_forests(f: Forest, g: Forest) -> Forest:
    f2, g2 = _tag_forest(f, "L"), _tag_forest(g, "R")
    return Forest(
        disjoint_union_young(f.source, g.source),
        disjoint_union_young(f.target, g.target),
        {**f2.attach, **g2.attach},
    )


def decompose_into_trees(x: YoungForest) -> list:
    """Split a young forest into its young trees ``(I; c)``, one per root."""
    return [x.restrict_to_roots([j]) for j in x.outputs]


def restrict_to_root(f: Forest, j) -> Forest:
    """The part of ``f`` living over the root ``j ∈ J_y``."""
    rm = f.root_map()
    verts = [u for u in f.source.outputs if rm[(SRC_OUT, u)] == j]
    src = f.source.restrict_to_roots(verts)
    tgt = f.target.restrict_to_roots([j])
    attach = {(IN, i): f.attach[(IN, i)] for i in tgt.inputs}
    attach.update({(SRC_OUT, u): f.attach[(SRC_OUT, u)] for u in verts})
    return Forest(src, tgt, attach)


# -- wedge ------------------------------------------------------------------


def wedge(f: Forest, g: Forest, tau: Mapping) -> Forest:
    """``f ∨_τ g`` for ``f: x -> y``, ``g: z -> w`` and ``τ: J_w -> J_x``.

    The roots of ``w`` become extra input slots of the vertices of ``x``
    named by ``τ``.  Ids from ``f`` are kept; ids from ``g`` are tagged
    ``("R", ·)``, and the new slots coming from ``J_w`` are tagged ``("W", ·)``.
    """
    x, y, z, w = f.source, f.target, g.source, g.target
    missing = [j for j in w.outputs if j not in tau]
    if missing:
        raise ForestError(f"τ is not total on J_w: {missing!r}")
    if any(tau[j] not in x.outputs for j in w.outputs):
        raise ForestError("τ must land in J_x")
    R = lambda e: ("R", e)
    W = lambda e: ("W", e)
    new_inputs = [(i, c) for i, c in x.inputs.coloring.items()]
    new_inputs += [(W(j), c) for j, c in w.outputs.coloring.items()]
    new_inputs += [(R(i), c) for i, c in z.inputs.coloring.items()]
    new_outputs = list(x.outputs.coloring.items()) + [(R(j), c) for j, c in z.outputs.coloring.items()]
    structure = dict(x.structure)
    structure.update({W(j): tau[j] for j in w.outputs})
    structure.update({R(i): R(z(i)) for i in z.inputs})
    if len({e for e, _ in new_inputs}) != len(new_inputs) or len({e for e, _ in new_outputs}) != len(new_outputs):
        raise ForestError("wedge id collision between the two factors")
    source = YoungForest(ColoredSet(new_inputs), ColoredSet(new_outputs), structure)

    def f_root(j):
        return f.chase(f.attach[(SRC_OUT, j)])

    tgt_inputs = list(y.inputs.coloring.items()) + [(R(i), c) for i, c in w.inputs.coloring.items()]
    tgt_structure = dict(y.structure)
    tgt_structure.update({R(i): f_root(tau[w(i)]) for i in w.inputs})
    target = YoungForest(ColoredSet(tgt_inputs), y.outputs, tgt_structure)

    def g_val(v):
        # J_w is now a set of input slots of the wedge
        return (SRC_IN, W(v[1])) if v[0] == OUT else (SRC_IN, R(v[1]))

    attach = {}
    for i in y.inputs:
        attach[(IN, i)] = f.attach[(IN, i)]
    for u in x.outputs:
        attach[(SRC_OUT, u)] = f.attach[(SRC_OUT, u)]
    for i in w.inputs:
        attach[(IN, R(i))] = g_val(g.attach[(IN, i)])
    for u in z.outputs:
        attach[(SRC_OUT, R(u))] = g_val(g.attach[(SRC_OUT, u)])
    out = Forest(source, target, attach)
    v = validate_forest(out)
    if not v:
        raise ForestError(f"wedge is not a forest ({v.reason}: {v.detail}); τ inconsistent")
    return out


# -- isomorphisms -------------------------------------------------------------


def _root_signature(x: YoungForest, j):
    return (x.outputs.color(j), tuple(sorted(x.inputs.color(i) for i in x.fiber(j))))


def _color_bijections(a: list, b: list, color_a, color_b) -> Iterator[dict]:
    """All color-preserving bijections between two id lists."""
    if len(a) != len(b):
        return
    groups_a, groups_b = {}, {}
    for e in a:
        groups_a.setdefault(color_a(e), []).append(e)
    for e in b:
        groups_b.setdefault(color_b(e), []).append(e)
    if {c: len(v) for c, v in groups_a.items()} != {c: len(v) for c, v in groups_b.items()}:
        return
    colors = sorted(groups_a)
    perms = [list(itertools.permutations(groups_b[c])) for c in colors]
    for choice in itertools.product(*perms):
        m = {}
        for c, img in zip(colors, choice):
            m.update(zip(groups_a[c], img))
        yield m


def young_isos(a: YoungForest, b: YoungForest) -> Iterator[tuple]:
    """Yield ``(imap, jmap)`` pairs realizing isomorphisms ``a -> b``."""
    if len(a.inputs) != len(b.inputs) or len(a.outputs) != len(b.outputs):
        return
    ja, jb = list(a.outputs), list(b.outputs)
    sig_a = {j: _root_signature(a, j) for j in ja}
    sig_b = {j: _root_signature(b, j) for j in jb}
    for jmap in _color_bijections(ja, jb, sig_a.get, sig_b.get):
        per_root = [
            list(_color_bijections(a.fiber(j), b.fiber(jmap[j]), a.inputs.color, b.inputs.color)) for j in ja
        ]
        for choice in itertools.product(*per_root):
            imap = {}
            for m in choice:
                imap.update(m)
            yield imap, jmap


def find_isos(a, b) -> list:
    """All isomorphisms between two young forests or two forests.

    For young forests each iso is ``(imap, jmap)``; for forests each iso is a
    pair ``((src_imap, src_jmap), (tgt_imap, tgt_jmap))`` commuting with the
    attaching maps.
    """
    if isinstance(a, YoungForest):
        return list(young_isos(a, b))
    out = []
    tgt_isos = list(young_isos(a.target, b.target))
    for s in young_isos(a.source, b.source):
        ren = {IN: None, OUT: None, SRC_IN: s[0], SRC_OUT: s[1]}
        for t in tgt_isos:
            ren[IN], ren[OUT] = t[0], t[1]
            r = lambda v: (v[0], ren[v[0]][v[1]])
            if all(b.attach[r(k)] == r(v) for k, v in a.attach.items()):
                out.append((s, t))
    return out


def as_forest(imap: Mapping, jmap: Mapping, a: YoungForest, b: YoungForest) -> Forest:
    """The invertible forest ``a -> b`` given by an isomorphism ``(imap, jmap)``."""
    inv = {v: k for k, v in imap.items()}
    attach = {(IN, i2): (SRC_IN, inv[i2]) for i2 in b.inputs}
    attach.update({(SRC_OUT, j): (OUT, jmap[j]) for j in a.outputs})
    return Forest(a, b, attach)


def isos_over(g: Forest, g2: Forest) -> Iterator[tuple]:
    """Isomorphisms ``σ: y -> y2`` of sources with ``g2 ∘ σ == g`` (targets must agree).

    Yields ``(imap, jmap)`` with ``imap: I_y -> I_y2`` and ``jmap: J_y -> J_y2``.
    Matching is propagated from the fixed leaves and roots of the common
    target; only subtrees without leaves need branching.
    """
    if g.target != g2.target:
        return
    y, y2 = g.source, g2.source
    if len(y.inputs) != len(y2.inputs) or len(y.outputs) != len(y2.outputs):
        return
    inv, inv2 = g.inverse, g2.inverse

    def assign(state, kind, a, b, work):
        pm, used = state[kind]
        if a in pm:
            return pm[a] == b
        if b in used:
            return False
        if kind == "J":
            if _root_signature(y, a) != _root_signature(y2, b):
                return False
        elif y.inputs.color(a) != y2.inputs.color(b):
            return False
        pm[a] = b
        used.add(b)
        work.append((kind, a, b))
        return True

    def propagate(state, work):
        while work:
            kind, a, b = work.pop()
            if kind == "J":
                va, vb = g.attach[(SRC_OUT, a)], g2.attach[(SRC_OUT, b)]
                if va[0] != vb[0]:
                    return False
                if va[0] == OUT:
                    if va != vb:
                        return False
                elif not assign(state, "I", va[1], vb[1], work):
                    return False
            else:
                if not assign(state, "J", y(a), y2(b), work):
                    return False
                fa, fb = inv[(SRC_IN, a)], inv2[(SRC_IN, b)]
                if fa[0] != fb[0]:
                    return False
                if fa[0] == IN:
                    if fa != fb:
                        return False
                elif not assign(state, "J", fa[1], fb[1], work):
                    return False
        return True

    state = {"I": ({}, set()), "J": ({}, set())}
    work = []
    for r in g.target.outputs:
        fa, fb = inv[(OUT, r)], inv2[(OUT, r)]
        if fa[0] != fb[0]:
            return
        if fa[0] == IN:
            if fa != fb:
                return
        elif not assign(state, "J", fa[1], fb[1], work):
            return
    for i in g.target.inputs:
        va, vb = g.attach[(IN, i)], g2.attach[(IN, i)]
        if va[0] != vb[0]:
            return
        if va[0] == OUT:
            if va != vb:
                return
        elif not assign(state, "I", va[1], vb[1], work):
            return
    if not propagate(state, work):
        return

    def copy(st):
        return {k: (dict(v[0]), set(v[1])) for k, v in st.items()}

    def search(st):
        pJ = st["J"][0]
        pI = st["I"][0]
        if len(pJ) == len(y.outputs) and len(pI) == len(y.inputs):
            yield dict(pI), dict(pJ)
            return
        # branch on an unmatched input slot of a matched vertex
        for u in sorted_ids(pJ):
            open_a = [p for p in y.fiber(u) if p not in pI]
            if open_a:
                p = open_a[0]
                used = st["I"][1]
                for p2 in y2.fiber(pJ[u]):
                    if p2 in used:
                        continue
                    st2 = copy(st)
                    w = []
                    if assign(st2, "I", p, p2, w) and propagate(st2, w):
                        yield from search(st2)
                return
        return

    yield from search(state)


# -- morphisms in an over category -------------------------------------------


def find_morphisms_over(S: Forest, S2: Forest, limit: int | None = None) -> list:
    """All forests ``φ: S.source -> S2.source`` with ``S2 ∘ φ == S``."""
    x, x2 = S.source, S2.source
    if S.target != S2.target:
        return []
    if len(x2.inputs) + len(x.outputs) != len(x2.outputs) + len(x.inputs):
        return []
    inv2 = S2.inverse

    def depth_in(F, xx, a):
        d = 0
        while a[0] == SRC_IN:
            a = F.attach[(SRC_OUT, xx(a[1]))]
            d += 1
        return d

    # root-first order, so the class of the vertex above is always known
    verts = sorted(x.outputs, key=lambda u: (depth_in(S, x, S.attach[(SRC_OUT, u)]), id_key(u)))
    leaves_at = {u: [] for u in x.outputs}
    for i in S.target.inputs:
        a = S.attach[(IN, i)]
        if a[0] == SRC_IN:
            b = S2.attach[(IN, i)]
            leaves_at[x(a[1])].append(x2(b[1]) if b[0] == SRC_IN else None)

    def above2(j2):
        """Vertices of x2 strictly above ``j2``."""
        out, a = [], S2.attach[(SRC_OUT, j2)]
        while a[0] == SRC_IN:
            out.append(x2(a[1]))
            a = S2.attach[(SRC_OUT, x2(a[1]))]
        return out

    ups = {j2: above2(j2) for j2 in x2.outputs}

    def depth(s):
        return depth_in(S2, x2, (SRC_IN, s))

    slots = sorted(x2.inputs, key=lambda s: (-depth(s), id_key(s)))
    results = []

    def vertex_phase(k, phi, used, cls, empty):
        if limit is not None and len(results) >= limit:
            return
        if k == len(verts):
            if any(j2 in empty for j2 in set(cls.values())):
                return
            slot_phase(0, phi, used, {})
            return
        u = verts[k]
        c = x.outputs.color(u)
        su = S.attach[(SRC_OUT, u)]
        parent = cls.get(x(su[1])) if su[0] == SRC_IN else None
        cands = []
        if su[0] == SRC_IN:
            cands.append((su, parent))
        for j2 in sorted_ids(x2.outputs):
            if x2.outputs.color(j2) != c or j2 in empty:
                continue
            s2 = S2.attach[(SRC_OUT, j2)]
            if s2[0] == OUT and s2 != su:
                continue
            if parent is not None and parent not in ups[j2]:
                continue
            cands.append(((OUT, j2), j2))
        for v, j2 in cands:
            if v in used:
                continue
            # a leaf on u either lands on the class of u or passes a unary vertex left empty
            new_empty = []
            ok = True
            for b in leaves_at[u]:
                if b is None or b == j2:
                    continue
                if x2.arity(b) != 1 or b in cls.values():
                    ok = False
                    break
                new_empty.append(b)
            if not ok:
                continue
            phi[(SRC_OUT, u)] = v
            used.add(v)
            cls[u] = j2
            added = [b for b in new_empty if b not in empty]
            empty.update(added)
            vertex_phase(k + 1, phi, used, cls, empty)
            empty.difference_update(added)
            del cls[u]
            used.discard(v)
            del phi[(SRC_OUT, u)]

    def slot_phase(k, phi, used, target_of):
        if limit is not None and len(results) >= limit:
            return
        if k == len(slots):
            try:
                cand = Forest(x, x2, phi)
            except ForestError:
                return
            if validate_forest(cand) and compose(S2, cand) == S:
                results.append(cand)
            return
        s = slots[k]
        feeder = inv2[(SRC_IN, s)]
        if feeder[0] == IN:
            tgt = S.attach[(IN, feeder[1])]
        else:
            j2 = feeder[1]
            pre = next((key for key, v in phi.items() if v == (OUT, j2)), None)
            if pre is None:
                return
            tgt = S.attach[pre] if pre[0] == SRC_OUT else target_of.get(pre[1])
        cands = []
        if tgt is not None and tgt[0] == SRC_IN:
            cands.append(tgt)
        cands.append((OUT, x2(s)))
        for v in cands:
            if v in used:
                continue
            phi[(IN, s)] = v
            used.add(v)
            target_of[s] = tgt
            slot_phase(k + 1, phi, used, target_of)
            del target_of[s]
            used.discard(v)
            del phi[(IN, s)]

    vertex_phase(0, {}, set(), {}, set())
    return results


# -- surgery used by the W construction -------------------------------------


def contraction(g: Forest, e) -> tuple:
    """Contract the internal edge of ``g: y -> z`` whose lower vertex is ``e``.

    Returns ``(c, g2)`` with ``c: y -> y2`` the one-edge forest merging ``e``
    into the vertex above it and ``g2: y2 -> z`` such that ``g2 ∘ c == g``.
    """
    y = g.source
    tag, p = g.attach[(SRC_OUT, e)]
    if tag != SRC_IN:
        raise ForestError(f"{e!r} is not an internal edge")
    v = y(p)
    ins = [(i, c) for i, c in y.inputs.coloring.items() if i != p]
    outs = [(j, c) for j, c in y.outputs.coloring.items() if j != e]
    struct = {i: (v if y(i) == e else y(i)) for i, _ in ins}
    y2 = YoungForest(ColoredSet(ins), ColoredSet(outs), struct)
    c_attach = {(IN, i): (SRC_IN, i) for i, _ in ins}
    c_attach.update({(SRC_OUT, j): (OUT, j) for j, _ in outs})
    c_attach[(SRC_OUT, e)] = (SRC_IN, p)
    c = Forest(y, y2, c_attach)
    g2_attach = {(IN, i): g.attach[(IN, i)] for i in g.target.inputs}
    g2_attach.update({(SRC_OUT, j): g.attach[(SRC_OUT, j)] for j, _ in outs})
    g2 = Forest(y2, g.target, g2_attach)
    return c, g2


def unit_insertion(y: YoungForest, j) -> Forest:
    """The forest ``x -> y`` realizing the unary vertex ``j`` of ``y`` by a unit edge."""
    fib = y.fiber(j)
    if len(fib) != 1:
        raise ForestError(f"vertex {j!r} is not unary")
    p = fib[0]
    x = YoungForest(
        y.inputs.restrict([i for i in y.inputs if i != p]),
        y.outputs.restrict([u for u in y.outputs if u != j]),
        {i: y(i) for i in y.inputs if i != p},
    )
    attach = {(IN, i): (SRC_IN, i) for i in x.inputs}
    attach[(IN, p)] = (OUT, j)
    attach.update({(SRC_OUT, u): (OUT, u) for u in x.outputs})
    return Forest(x, y, attach)
