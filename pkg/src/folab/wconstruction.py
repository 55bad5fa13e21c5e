"""Points of the W construction: edge-labeled, operad-decorated forests.

A point is ``(g, t, α)`` with ``g: y -> z`` a forest, ``t`` a labeling of the
internal edges ``E(g)`` by ``[0, ∞]`` and ``α`` an operad value over ``y``.
Labels are floats; ``math.inf`` is the point at infinity, and float ``+``
already satisfies ``t + ∞ = ∞``.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Mapping

from .colored import sorted_ids
from .forests import (
    IN,
    OUT,
    SRC_IN,
    SRC_OUT,
    Forest,
    ForestError,
    as_forest,
    compose,
    contraction,
    edges_over,
    isos_over,
    unit_insertion,
)
from .operads import Operad

INF = math.inf


def check_labeling(g: Forest, t: Mapping) -> None:
    E = set(g.internal_edges())
    if set(t) != E:
        raise ValueError(f"labels must be defined exactly on E(g) = {sorted_ids(E)!r}")
    for e, v in t.items():
        if not (v >= 0):
            raise ValueError(f"label of {e!r} is not in [0, ∞]: {v!r}")


def _resolve_through(g: Forest, f: Forest, a):
    """Chase ``a ∈ I_y`` (tagged) through ``[g|f]`` until it lands in ``J_z ⊔ I_x``."""
    side = "g"
    for _ in range(2 * (len(f.source.inputs) + len(f.target.inputs)) + 2):
        if side == "g":
            if a[0] == OUT:
                return a
            a, side = f.attach[(IN, a[1])], "f"
        else:
            if a[0] == SRC_IN:
                return a
            a, side = g.attach[(SRC_OUT, a[1])], "g"
    raise ForestError("chase does not terminate")


def w_sigma(g: Forest, f: Forest, t: Mapping) -> dict:
    """``W_Σ(f) t`` on ``E(gf)``: fiberwise sums of the labels of ``g``.

    An edge ``ε`` of ``gf`` gets the sum of ``t(e)`` over the edges ``e`` of
    ``g`` with the same image under ``[g|f]``; the empty sum is ``0``.  Edges
    of ``g`` whose image is a leaf or root edge of ``gf`` are dropped.
    """
    gf = compose(g, f)
    out = {eps: 0.0 for eps in gf.internal_edges()}
    index = {gf.attach[(SRC_OUT, eps)]: eps for eps in out}
    for e in g.internal_edges():
        img = _resolve_through(g, f, g.attach[(SRC_OUT, e)])
        eps = index.get(img)
        if eps is not None:  # otherwise e merges into a leaf or root edge and is dropped
            out[eps] = out[eps] + t[e]
    return out


def w_infty(h: Forest, g: Forest, t: Mapping) -> dict:
    """``W_∞(h) t`` on ``E(hg)``: old edges keep their labels, new ones get ``∞``."""
    hg = compose(h, g)
    return {e: t.get(e, INF) for e in hg.internal_edges()}


@dataclass(frozen=True)
class WPoint:
    shape: Forest
    labels: Mapping
    decoration: Mapping
    operad: Operad = field(compare=False)

    def __post_init__(self):
        check_labeling(self.shape, self.labels)
        if set(self.decoration) != set(self.shape.source.outputs):
            raise ValueError("decoration must have one value per vertex")

    @property
    def target(self):
        return self.shape.target


def point(g: Forest, t: Mapping, alpha: Mapping, operad: Operad) -> WPoint:
    return WPoint(g, dict(t), dict(alpha), operad)


# -- reduction ------------------------------------------------------------------


def _contract(p: WPoint, e) -> WPoint:
    c, g2 = contraction(p.shape, e)
    labels = {u: v for u, v in p.labels.items() if u != e}
    return WPoint(g2, labels, p.operad.act(c, p.decoration), p.operad)


def _delete_vertex(p: WPoint, j) -> WPoint:
    y = p.shape.source
    f = unit_insertion(y, j)
    labels = w_sigma(p.shape, f, p.labels)
    alpha = {u: v for u, v in p.decoration.items() if u != j}
    return WPoint(compose(p.shape, f), labels, alpha, p.operad)


def moves(p: WPoint) -> list:
    """Applicable reduction steps as ``("contract", e)`` or ``("delete", j)``."""
    out = [("contract", e) for e in sorted_ids(p.labels) if p.labels[e] == 0]
    y = p.shape.source
    for j in sorted_ids(y.outputs):
        if y.arity(j) == 1 and p.operad.is_identity(y, j, p.decoration):
            out.append(("delete", j))
    return out


def apply_move(p: WPoint, move) -> WPoint:
    kind, e = move
    return _contract(p, e) if kind == "contract" else _delete_vertex(p, e)


def reduce(p: WPoint, rng: random.Random | None = None) -> WPoint:
    """Normal form under 0-edge contraction and identity-vertex deletion.

    Without ``rng`` every 0-edge is contracted before any vertex is deleted;
    with ``rng`` each step picks a random applicable move.  Both rules lower
    the number of vertices, so this terminates.
    """
    while True:
        ms = moves(p)
        if not ms:
            return p
        if rng is None:
            m = ms[0]
        else:
            m = ms[rng.randrange(len(ms))]
        p = apply_move(p, m)


def is_reduced(p: WPoint) -> bool:
    return not moves(p)


def w_isos(p: WPoint, q: WPoint, tol: float | None = None):
    """Yield the isomorphisms of representatives (no reduction) matching labels and decorations."""
    if p.shape.target != q.shape.target:
        return
    y, y2 = p.shape.source, q.shape.source
    for imap, jmap in isos_over(p.shape, q.shape):
        if any(q.labels[jmap[e]] != v for e, v in p.labels.items()):
            continue
        sigma = as_forest(imap, jmap, y, y2)
        if p.operad.values_equal(p.operad.act(sigma, p.decoration), q.decoration, tol):
            yield imap, jmap


def w_equal(p: WPoint, q: WPoint, tol: float | None = None) -> bool:
    """Equality in the coend: reduce both and look for a labeled, decorated isomorphism."""
    return next(w_isos(reduce(p), reduce(q), tol), None) is not None


def w_act(h: Forest, p: WPoint) -> WPoint:
    """The operad structure of ``W𝒪``: postcompose the shape, new edges get length ``∞``."""
    return WPoint(compose(h, p.shape), w_infty(h, p.shape, p.labels), p.decoration, p.operad)


def counit(p: WPoint) -> dict:
    """``ε(g, t, α) = 𝒪(g) α``."""
    return p.operad.act(p.shape, p.decoration)


def in_boundary_plus(p: WPoint, k: int) -> bool:
    """Membership of a representative in ``(W × 𝒪)^+_k``."""
    if len(p.labels) <= k:
        return True
    if any(v == 0 or v == INF for v in p.labels.values()):
        return True
    y = p.shape.source
    return any(y.arity(j) == 1 and p.operad.is_identity(y, j, p.decoration) for j in y.outputs)


def edge_weights(p: WPoint) -> dict:
    """``#E(g)(j)`` for every root ``j`` of the target."""
    return {j: len(es) for j, es in edges_over(p.shape).items()}


def in_weight_k(p: WPoint, k: int, reduced: bool = True) -> bool:
    """Whether the point lies in the weight ``k`` part (collections have weight 0)."""
    q = reduce(p) if reduced else p
    return all(n <= k for n in edge_weights(q).values())


def lemma_hook(h: Forest, p: WPoint, k: int) -> bool:
    """If ``h`` has an internal edge and ``p`` has weight ``≤ k`` over ``z``, then ``h·p`` lies in ``(W × 𝒪)^+_k``.

    Returns ``True`` when the hypotheses fail.
    """
    if not h.internal_edges() or any(n > k for n in edge_weights(p).values()):
        return True
    return in_boundary_plus(w_act(h, p), k)
