import math
import random

import pytest

from folab import generators as gen
from folab.forests import Forest, compose, unit_insertion
from folab.instances import chain
from folab.operads import TerminalOperad
from folab.swiss_cheese import F, SwissCheese, compose_value, disc, identity_datum
from folab.wconstruction import (
    INF,
    counit,
    in_boundary_plus,
    in_weight_k,
    is_reduced,
    lemma_hook,
    point,
    reduce,
    w_act,
    w_equal,
    w_infty,
    w_sigma,
)

SC2 = SwissCheese(2)
T = TerminalOperad()


def _chain_point(labels, locals_, operad=SC2):
    g = chain([F] * len(locals_))
    alpha = {f"v{k}": {f"s{k}": D} for k, D in enumerate(locals_)}
    return point(g, labels, alpha, operad)


# -- relabeling maps --------------------------------------------------------------


def test_w_sigma_empty_fiber(running):
    assert w_sigma(running["g"], running["f"], {}) == {"u": 0.0}


def test_w_sigma_identity():
    rng = random.Random(41)
    for _ in range(30):
        (g,) = gen.random_composable(rng, 1)
        t = gen.random_labels(rng, g)
        assert w_sigma(g, Forest.identity(g.source), t) == t


def test_w_sigma_merged_edge_is_infinite():
    g = chain([F, F, F])
    # f replaces the middle vertex v1 by a unit edge
    f = unit_insertion(g.source, "v1")
    out = w_sigma(g, f, {"v0": 2.0, "v1": INF})
    assert out == {"v0": INF}


def test_w_infty_running(running):
    assert w_infty(running["g"], running["f"], {"u": 3.0}) == {"u": 3.0}


def test_w_infty_new_edge(running):
    # the running f has one internal edge that the empty labeling of id_x does not know
    assert w_infty(running["f"], Forest.identity(running["x"]), {}) == {"u": INF}


def test_w_infty_identity():
    rng = random.Random(42)
    for _ in range(30):
        (g,) = gen.random_composable(rng, 1)
        t = gen.random_labels(rng, g)
        assert w_infty(Forest.identity(g.target), g, t) == t


# -- reduction ----------------------------------------------------------------------


def test_zero_edge_composes():
    a, b = disc(0.4, (0.2, 0.1)), disc(0.5, (0.3, 0.0))
    p = _chain_point({"v0": 0.0}, [a, b])
    q = reduce(p)
    assert len(q.shape.source.outputs) == 1 and q.labels == {}
    (v,) = q.decoration
    (D,) = q.decoration[v].values()
    assert D.r == pytest.approx(0.2) and D.c == pytest.approx((0.4, 0.05))
    assert SC2.values_equal(counit(q), counit(p))


def test_identity_vertex_sums_labels():
    a, b = disc(0.4, (0.2, 0.1)), disc(0.5, (0.3, 0.0))
    p = _chain_point({"v0": 2.0, "v1": 5.0}, [a, identity_datum(F, 2), b])
    q = reduce(p)
    assert list(q.labels.values()) == [7.0]
    assert len(q.shape.source.outputs) == 2


def test_canonical_point_is_fixed():
    p = _chain_point({"v0": 1.5}, [disc(0.4, (0.2, 0.1)), disc(0.5, (0.3, 0.0))])
    assert is_reduced(p) and reduce(p) == p


def test_reduce_lowers_vertex_count_by_one():
    p = _chain_point({"v0": 0.0, "v1": 1.0}, [disc(0.3, (0.1, 0.1)), disc(0.5, (0.2, 0.0)), disc(0.6, (0.1, 0.0))])
    assert len(reduce(p).shape.source.outputs) == 2


# -- equality ---------------------------------------------------------------------


def test_relabeled_copies_are_equal():
    p = _chain_point({"v0": 1.0}, [disc(0.4, (0.2, 0.1)), disc(0.5, (0.3, 0.0))])
    ren = {"v0": "w0", "v1": "w1"}
    g2 = p.shape.relabel(src_jmap=ren, src_imap={"s0": "t0", "s1": "t1"})
    alpha2 = {ren[u]: {("t" + s[1:]): D for s, D in loc.items()} for u, loc in p.decoration.items()}
    q = point(g2, {"w0": 1.0}, alpha2, SC2)
    assert w_equal(p, q)


def test_different_labels_are_not_equal():
    locs = [disc(0.4, (0.2, 0.1)), disc(0.5, (0.3, 0.0))]
    assert not w_equal(_chain_point({"v0": 1.0}, locs), _chain_point({"v0": 2.0}, locs))


def test_reduction_orders_agree():
    rng = random.Random(43)
    for _ in range(50):
        f, g = gen.random_composable(rng, 2, 6, sc=2)
        t = gen.random_labels(rng, g)
        p = point(compose(g, f), w_sigma(g, f, t), gen.random_sc_value(rng, f.source, 2), SC2)
        assert w_equal(reduce(p), reduce(p, random.Random(rng.random())))


# -- operad structure and counit ----------------------------------------------------


def test_w_act_identity():
    p = _chain_point({"v0": 1.0}, [disc(0.4, (0.2, 0.1)), disc(0.5, (0.3, 0.0))])
    assert w_act(Forest.identity(p.shape.target), p) == p


def test_w_act_running_keeps_labels(running):
    p = point(running["f"], {"u": 2.5}, {j: None for j in running["x"].outputs}, T)
    q = w_act(running["g"], p)
    assert q.labels == {"u": 2.5}


def test_w_act_functorial():
    rng = random.Random(44)
    for _ in range(50):
        g, h, k = gen.random_composable(rng, 3, 5)
        p = point(g, gen.random_labels(rng, g), {j: None for j in g.source.outputs}, T)
        assert w_equal(w_act(k, w_act(h, p)), w_act(compose(k, h), p))


def test_counit_single_vertex():
    loc = {"1": disc(0.3, (0.1, -0.2))}
    from folab.instances import corolla

    y = corolla(1, F, root="r")
    p = point(Forest.identity(y), {}, {"r": loc}, SC2)
    assert SC2.values_equal(counit(p), {"r": loc})


def test_counit_terminal():
    rng = random.Random(45)
    (g,) = gen.random_composable(rng, 1)
    p = point(g, gen.random_labels(rng, g), {j: None for j in g.source.outputs}, T)
    assert counit(p) == {j: None for j in g.target.outputs}


def test_counit_invariant_under_reduce():
    rng = random.Random(46)
    for _ in range(50):
        (g,) = gen.random_composable(rng, 1, 6, sc=2)
        p = point(g, gen.random_labels(rng, g), gen.random_sc_value(rng, g.source, 2), SC2)
        assert SC2.values_equal(counit(reduce(p)), counit(p), 1e-9)


# -- boundary predicate ---------------------------------------------------------------


def test_in_boundary_plus_examples():
    locs = [disc(0.4, (0.2, 0.1)), disc(0.5, (0.3, 0.0)), disc(0.5, (0.1, 0.0))]
    assert in_boundary_plus(_chain_point({}, locs[:1]), 1)
    assert not in_boundary_plus(_chain_point({"v0": 1.0, "v1": 2.0}, locs), 1)
    assert in_boundary_plus(_chain_point({"v0": 1.0, "v1": INF}, locs), 1)
    assert in_boundary_plus(_chain_point({"v0": 1.0, "v1": 0.0}, locs), 1)
    assert in_boundary_plus(_chain_point({"v0": 1.0, "v1": 2.0}, [locs[0], identity_datum(F, 2), locs[2]]), 1)


def test_lemma_hook_random():
    rng = random.Random(47)
    fired = 0
    for _ in range(200):
        g, h = gen.random_composable(rng, 2, 6)
        p = point(g, gen.positive_finite_labels(rng, g), {j: None for j in g.source.outputs}, T)
        k = max(len(g.internal_edges()), 1)
        assert lemma_hook(h, p, k)
        fired += bool(h.internal_edges())
    assert fired > 20


def test_in_weight_k_counts_reduced_edges():
    p = _chain_point({"v0": 0.0, "v1": 1.0}, [disc(0.3, (0.1, 0.1)), disc(0.5, (0.2, 0.0)), disc(0.6, (0.1, 0.0))])
    assert not in_weight_k(p, 1, reduced=False)
    assert in_weight_k(p, 1)


def test_labels_must_cover_edges():
    with pytest.raises(ValueError):
        _chain_point({}, [disc(0.4, (0.2, 0.1)), disc(0.5, (0.3, 0.0))])
    with pytest.raises(ValueError):
        _chain_point({"v0": -1.0}, [disc(0.4, (0.2, 0.1)), disc(0.5, (0.3, 0.0))])
    assert math.isinf(INF)
