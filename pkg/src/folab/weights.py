"""Weighted young forests and the weight filtration ``For_0 ⊂ For_1 ⊂ ... ⊂ For_ω``."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .forests import OUT, SRC_OUT, Forest, YoungForest, classify_edges, compose, validate_forest, ForestError


class _Omega:
    """The unbounded weight bound."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "ω"

    def __reduce__(self):
        return (_Omega, ())


OMEGA = _Omega()


@dataclass(frozen=True)
class WeightedYoungForest:
    base: YoungForest
    weight: Mapping

    def __post_init__(self):
        missing = [j for j in self.base.outputs if j not in self.weight]
        if missing:
            raise ValueError(f"weight not total on outputs: {missing!r}")
        if any(int(w) != w or w < 0 for w in self.weight.values()):
            raise ValueError("weights must be nonnegative integers")


def _require_valid(f: Forest):
    v = validate_forest(f)
    if not v:
        raise ForestError(f"invalid forest: {v.reason}: {v.detail}")


def weight_slack(f: Forest, wx: Mapping, wy: Mapping) -> dict:
    """Per root ``j ∈ J_y``: ``wy(j) - #E(f)(j) - Σ_{i ∈ J_x(j)} wx(i)``."""
    _require_valid(f)
    rm = f.root_map()
    need = {j: 0 for j in f.target.outputs}
    for u in f.internal_edges():
        need[rm[(SRC_OUT, u)]] += 1
    for u in f.source.outputs:
        need[rm[(SRC_OUT, u)]] += wx[u]
    return {j: wy[j] - need[j] for j in f.target.outputs}


def is_weighted_forest(f: Forest, wx: Mapping, wy: Mapping) -> bool:
    """The weight inequality at every root of the target, with ``#E(f)`` counted per root."""
    return all(s >= 0 for s in weight_slack(f, wx, wy).values())


def minimal_target_weight(f: Forest, wx: Mapping) -> dict:
    """The smallest ``wy`` making ``f`` a weighted forest."""
    zero = {j: 0 for j in f.target.outputs}
    return {j: -s for j, s in weight_slack(f, wx, zero).items()}


def in_for_k(x: WeightedYoungForest, k, variant: str = "plain") -> bool:
    """Membership of ``x`` in ``For_k``.

    ``variant="c"`` applies the bound only at roots with at least two
    ``f``-colored inputs; with that variant ``k = -1`` forbids such roots.
    """
    if k is OMEGA:
        return True
    for j in x.base.outputs:
        if variant == "c":
            n_f = sum(1 for i in x.base.fiber(j) if x.base.inputs.color(i) == "f")
            if n_f < 2:
                continue
        if x.weight[j] > k:
            return False
    return True


@dataclass
class WeightedComposite:
    ok: bool
    composite: Forest
    slack: dict


def weighted_compose(g: Forest, f: Forest, wx: Mapping, wy: Mapping, wz: Mapping) -> WeightedComposite:
    """Compose two weighted forests and certify the weight inequality for ``g ∘ f``."""
    if not is_weighted_forest(f, wx, wy):
        raise ValueError("f is not a weighted forest for the given weights")
    if not is_weighted_forest(g, wy, wz):
        raise ValueError("g is not a weighted forest for the given weights")
    gf = compose(g, f)
    slack = weight_slack(gf, wx, wz)
    return WeightedComposite(all(s >= 0 for s in slack.values()), gf, slack)


@dataclass(frozen=True)
class BoundaryViolation:
    root: object
    clause: str
    detail: str


def boundary_analysis_k_plus_1(g: Forest, f: Forest, wx: Mapping, wy: Mapping, wz: Mapping, k: int) -> list:
    """Consequences forced at a root ``j ∈ J_z`` carrying ``k+1`` internal edges of ``g ∘ f``.

    Requires ``wy ≤ k`` and ``wz ≤ k+1``.  For every triggered root checks that
    the weights of the source vertices over it vanish, that ``f`` has no unit
    edges over it, and that ``g`` has an internal edge over it.  Returns the
    list of violations (empty when consistent).
    """
    if any(w > k for w in wy.values()) or any(w > k + 1 for w in wz.values()):
        raise ValueError("preconditions unmet: need wy ≤ k and wz ≤ k+1")
    if not (is_weighted_forest(f, wx, wy) and is_weighted_forest(g, wy, wz)):
        raise ValueError("preconditions unmet: not weighted forests")
    gf = compose(g, f)
    rg, rf, rgf = g.root_map(), f.root_map(), gf.root_map()
    e_gf = {j: 0 for j in g.target.outputs}
    for u in gf.internal_edges():
        e_gf[rgf[(SRC_OUT, u)]] += 1
    e_g = {j: 0 for j in g.target.outputs}
    for u in g.internal_edges():
        e_g[rg[(SRC_OUT, u)]] += 1
    un_f = {j: 0 for j in g.target.outputs}
    for _, jy in classify_edges(f).unit_edges:
        un_f[rg[(SRC_OUT, jy)]] += 1
    out = []
    for j, n in e_gf.items():
        if n != k + 1:
            continue
        for u in f.source.outputs:
            if rgf[(SRC_OUT, u)] == j and wx[u] != 0:
                out.append(BoundaryViolation(j, "source-weight", f"ω_x({u!r}) = {wx[u]}"))
        if un_f[j]:
            out.append(BoundaryViolation(j, "unit-edges", f"#un(f)({j!r}) = {un_f[j]}"))
        if e_g[j] < 1:
            out.append(BoundaryViolation(j, "g-edges", f"#E(g)({j!r}) = 0"))
    return out


def weight_bound_propagates(f: Forest, wx: Mapping, wy: Mapping, k: int) -> bool:
    """If ``wy ≤ k`` then every source vertex has weight ``≤ k``."""
    if any(w > k for w in wy.values()):
        return True
    return not is_weighted_forest(f, wx, wy) or all(w <= k for w in wx.values())
