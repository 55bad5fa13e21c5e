"""Named property suites shared by the CLI and the test-suite.

A suite is a function ``case(rng, size) -> (ok, detail[, witness])`` where the
optional witness is a JSON document describing the failing instance.
``run_suite`` draws ``count`` cases from per-index seeds and, on failure,
re-runs the failing index at smaller sizes to report the smallest counterexample.
"""

from __future__ import annotations

import inspect
import random
from dataclasses import dataclass, field

from . import generators as gen
from .forests import (
    Forest,
    classify_edges,
    compose,
    edge_count_terms,
    validate_forest,
)
from .operads import TerminalOperad
from .serialize import forest_to_json, young_to_json
from .swiss_cheese import (
    SwissCheese,
    compose_value,
    expected_trees_alpha_morphisms,
    grid_oracle,
    trees_alpha_morphisms,
    trees_alpha_objects,
    validate_sc_value,
)
from .wconstruction import counit, point, reduce, w_act, w_equal, w_infty, w_sigma
from .weights import boundary_analysis_k_plus_1, is_weighted_forest, weight_bound_propagates, weighted_compose

DEFAULT_SIZE = 8


def case_rng(seed: int, index: int) -> random.Random:
    return random.Random(f"folab:{seed}:{index}")


# -- forest axioms -------------------------------------------------------------------


def _witness(**forests) -> dict:
    return {k: forest_to_json(v) for k, v in forests.items()}


def forest_axioms_case(rng, size=DEFAULT_SIZE):
    f, g, h = gen.random_composable(rng, 3, size)
    w = _witness(f=f, g=g, h=h)
    for k in (f, g, h):
        v = validate_forest(k)
        if not v:
            return False, f"generator produced an invalid forest: {v.reason}", w
    if compose(compose(h, g), f) != compose(h, compose(g, f)):
        return False, "associativity fails", w
    for k in (f, g, h):
        if compose(Forest.identity(k.target), k) != k or compose(k, Forest.identity(k.source)) != k:
            return False, "unit law fails", w
        c = classify_edges(k)
        if len(c.unit_edges) + len(c.leaves) != len(k.target.inputs):
            return False, "classification does not partition I_y", w
        if len(c.root_edges) + len(c.internal_edges) != len(k.source.outputs):
            return False, "classification does not partition J_x", w
    for a, b in ((g, f), (h, g), (h, compose(g, f))):
        for j, n in edge_count_terms(a, b).items():
            rhs = n["E_g"] + n["E_f"] - n["un_f"] + n["un_gf"] - n["un_g"]
            if n["E_gf"] != rhs:
                return False, f"corrected edge count fails at {j!r}: {n}", _witness(g=a, f=b)
    return True, ""


def eq7_literal_case(rng, size=DEFAULT_SIZE):
    """The edge count identity exactly as stated, without the unit-tree correction."""
    f, g, h = gen.random_composable(rng, 3, size)
    for a, b in ((g, f), (h, g), (h, compose(g, f))):
        for j, n in edge_count_terms(a, b).items():
            if n["E_gf"] != n["E_g"] + n["E_f"] - n["un_f"]:
                lit = n["E_g"] + n["E_f"] - n["un_f"]
                return False, f"#E(gf)({j!r}) = {n['E_gf']} but #E(g) + #E(f) - #un(f) = {lit}", _witness(g=a, f=b)
    return True, ""


# -- weights ---------------------------------------------------------------------------


def weights_case(rng, size=DEFAULT_SIZE):
    f, g = gen.random_composable(rng, 2, size)
    tight = rng.random() < 0.5
    wx = {j: 0 for j in f.source.outputs} if tight else gen.random_weights(rng, f.source)
    wy = gen.tight_weights(rng, f, wx, slack=0 if tight else 1)
    wz = gen.tight_weights(rng, g, wy, slack=0 if tight else 1)
    if not (is_weighted_forest(f, wx, wy) and is_weighted_forest(g, wy, wz)):
        return False, "generator produced unweighted forests", _witness(f=f, g=g)
    w = _witness(f=f, g=g)
    w["weights"] = {"x": {str(k): v for k, v in wx.items()}, "y": {str(k): v for k, v in wy.items()},
                    "z": {str(k): v for k, v in wz.items()}}
    res = weighted_compose(g, f, wx, wy, wz)
    if not res.ok:
        return False, f"weight bound fails for gf: slack {res.slack}", w
    k = max(wy.values(), default=0)
    if all(w <= k + 1 for w in wz.values()):
        viol = boundary_analysis_k_plus_1(g, f, wx, wy, wz, k)
        if viol:
            return False, f"boundary analysis violations: {viol}", w
    if not weight_bound_propagates(f, wx, wy, k):
        return False, "weight bound does not propagate to the source", w
    return True, ""


# -- W relations -----------------------------------------------------------------------


def square_case(rng, size=DEFAULT_SIZE):
    f, g, h = gen.random_composable(rng, 3, size)
    t = gen.random_labels(rng, g)
    left = w_infty(h, compose(g, f), w_sigma(g, f, t))
    right = w_sigma(compose(h, g), f, w_infty(h, g, t))
    if left != right:
        return False, f"square fails: {left} vs {right}", _witness(f=f, g=g, h=h)
    return True, ""


def _coend_instance(rng, size, operad):
    sc = isinstance(operad, SwissCheese)
    f, g = gen.random_composable(rng, 2, size, sc=operad.d if sc else False)
    t = gen.random_labels(rng, g)
    if sc:
        alpha = gen.random_sc_value(rng, f.source, operad.d)
    else:
        alpha = {j: None for j in f.source.outputs}
    return f, g, t, alpha


def coend_case(rng, size=DEFAULT_SIZE, operad=None, orders: int = 5):
    operad = operad or TerminalOperad()
    f, g, t, alpha = _coend_instance(rng, size, operad)
    p = point(compose(g, f), w_sigma(g, f, t), alpha, operad)
    q = point(g, t, operad.act(f, alpha), operad)
    if not w_equal(p, q):
        return False, "coend relation fails", _witness(f=f, g=g)
    base = reduce(p)
    for k in range(orders):
        other = reduce(p, random.Random(rng.random()))
        if not w_equal(base, other):
            return False, f"reduction order {k} gives a different normal form", _witness(f=f, g=g)
    return True, ""


def counit_case(rng, size=DEFAULT_SIZE, operad=None, tol=1e-9):
    operad = operad or SwissCheese(2)
    sc = isinstance(operad, SwissCheese)
    g, h = gen.random_composable(rng, 2, size, sc=operad.d if sc else False)
    t = gen.random_labels(rng, g)
    alpha = gen.random_sc_value(rng, g.source, operad.d) if sc else {j: None for j in g.source.outputs}
    p = point(g, t, alpha, operad)
    e = counit(p)
    if not operad.values_equal(counit(reduce(p)), e, tol):
        return False, "counit changes under reduction", _witness(g=g, h=h)
    if not operad.values_equal(counit(w_act(h, p)), operad.act(h, e), tol):
        return False, "counit is not natural", _witness(g=g, h=h)
    return True, ""


def w_relations_case(rng, size=DEFAULT_SIZE, tol=1e-9):
    for fn in (square_case, coend_case, counit_case):
        res = fn(rng, size, tol=tol) if fn is counit_case else fn(rng, size)
        if not res[0]:
            return (False, f"{fn.__name__}: {res[1]}") + tuple(res[2:])
    return coend_case(rng, size, SwissCheese(2))


# -- swiss cheese ---------------------------------------------------------------------


def sc_functoriality_case(rng, size=6, d=None, tol=1e-9):
    d = d or rng.choice([1, 2, 3])
    f, g = gen.random_composable(rng, 2, size, sc=d)
    alpha = gen.random_sc_value(rng, f.source, d)
    one = compose_value(compose(g, f), alpha, d)
    step = compose_value(g, compose_value(f, alpha, d), d)
    if not SwissCheese(d).values_equal(one, step, tol):
        return False, f"d={d}: composite differs from stepwise composition", _witness(f=f, g=g)
    if not validate_sc_value(g.target, one, d):
        return False, f"d={d}: composite is not a valid configuration", _witness(f=f, g=g)
    return True, ""


def sc_oracle_case(rng, size=4, d=None, n_points=10_000):
    d = d or rng.choice([1, 2, 3])
    x = gen.random_sc_young(rng, size, max_roots=1, d=d)
    if rng.random() < 0.5:
        alpha = gen.random_sc_value(rng, x, d, identity_prob=0.0)
    else:
        alpha = {j: gen.random_raw_local(rng, x, j, d) for j in x.outputs}
    claim = bool(validate_sc_value(x, alpha, d))
    oracle = grid_oracle(x, alpha, d, rng, n_points)
    if claim != oracle:
        return False, f"d={d}: validate says {claim}, grid oracle says {oracle}", {"x": young_to_json(x)}
    return True, ""


def sc_case(rng, size=6, tol=1e-9):
    res = sc_functoriality_case(rng, size, tol=tol)
    if not res[0]:
        return res
    return sc_oracle_case(rng, min(size, 4), n_points=2000)


# -- Trees_α ---------------------------------------------------------------------------


def trees_alpha_case(rng, size=4):
    T = gen.random_T(rng, max(1, min(size, 4)))
    objs = trees_alpha_objects(T)
    found = set()
    for A in objs:
        for B in objs:
            ms = trees_alpha_morphisms(A, B)
            if len(ms) > 1:
                return False, f"{len(ms)} morphisms {A.key} -> {B.key}", _witness(T=T)
            if ms:
                found.add((A.key, B.key))
    exp = expected_trees_alpha_morphisms(T)
    if found != exp:
        return False, f"unexpected {sorted(found - exp, key=str)}; missing {sorted(exp - found, key=str)}", _witness(T=T)
    return True, ""


SUITES = {
    "forest-axioms": (forest_axioms_case, DEFAULT_SIZE),
    "eq7": (eq7_literal_case, DEFAULT_SIZE),
    "weights": (weights_case, DEFAULT_SIZE),
    "w-relations": (w_relations_case, DEFAULT_SIZE),
    "sc-functoriality": (sc_case, 6),
    "trees-alpha": (trees_alpha_case, 4),
}


@dataclass
class SuiteReport:
    name: str
    seed: int
    count: int
    failures: list = field(default_factory=list)  # (index, size, detail), sorted by index
    witnesses: list = field(default_factory=list)  # JSON instance per failure, or None

    @property
    def ok(self) -> bool:
        return not self.failures


def _run(case, seed, index, size, kw):
    res = case(case_rng(seed, index), size, **kw)
    return res[0], res[1], (res[2] if len(res) > 2 else None)


def shrink(case, seed: int, index: int, size: int, **kw) -> tuple:
    """Smallest size at which case ``index`` still fails, with its detail and witness."""
    best = (size, None, None)
    for s in range(size - 1, 0, -1):
        ok, detail, witness = _run(case, seed, index, s, kw)
        if not ok:
            best = (s, detail, witness)
    return best


def run_suite(name: str, seed: int = 0, count: int = 100, stop_after: int = 1, tol: float | None = None) -> SuiteReport:
    case, size = SUITES[name]
    kw = {"tol": tol} if tol is not None and "tol" in inspect.signature(case).parameters else {}
    rep = SuiteReport(name, seed, count)
    for k in range(count):
        ok, detail, witness = _run(case, seed, k, size, kw)
        if not ok:
            s, d2, w2 = shrink(case, seed, k, size, **kw)
            rep.failures.append((k, s, d2 or detail))
            rep.witnesses.append(w2 if d2 else witness)
            if len(rep.failures) >= stop_after:
                break
    return rep
