import random

import pytest

from folab import generators as gen
from folab.forests import Forest, compose
from folab.swiss_cheese import bullet_tree
from folab.weights import (
    OMEGA,
    WeightedYoungForest,
    boundary_analysis_k_plus_1,
    in_for_k,
    is_weighted_forest,
    minimal_target_weight,
    weight_bound_propagates,
    weighted_compose,
)

ZERO_X = {"u": 0, "v": 0}


def test_running_weight_one(running):
    assert is_weighted_forest(running["f"], ZERO_X, {"r": 1})


def test_running_weight_zero_fails(running):
    assert not is_weighted_forest(running["f"], ZERO_X, {"r": 0})


def test_identity_any_equal_weights(running):
    assert is_weighted_forest(Forest.identity(running["y"]), {"r": 5}, {"r": 5})


def test_in_for_k_examples(running):
    x = running["x"]
    assert in_for_k(WeightedYoungForest(x, {"u": 0, "v": 0}), 0)
    assert not in_for_k(WeightedYoungForest(x, {"u": 0, "v": 2}), 1)
    assert in_for_k(WeightedYoungForest(x, {"u": 9, "v": 9}), OMEGA)


def test_c_variant_exempts_single_f_roots():
    # one f input (plus a collapsed f•, which is not f-colored): exempt
    x = bullet_tree(1, 0, 1, 3)
    wx = WeightedYoungForest(x, {"rt": 7})
    assert not in_for_k(wx, 0)
    assert in_for_k(wx, 0, variant="c")


def test_c_variant_binds_with_five_f_inputs():
    # (1,0|5,3) has five f-colored inputs, so the bound applies
    wx = WeightedYoungForest(bullet_tree(1, 0, 5, 3), {"rt": 7})
    assert not in_for_k(wx, 0, variant="c")
    assert in_for_k(wx, 7, variant="c")


def test_c_variant_minus_one():
    assert in_for_k(WeightedYoungForest(bullet_tree(0, 0, 1, 2), {"rt": 0}), -1, variant="c")
    assert not in_for_k(WeightedYoungForest(bullet_tree(0, 0, 2, 0), {"rt": 0}), -1, variant="c")


def test_weights_must_be_total(running):
    with pytest.raises(ValueError):
        WeightedYoungForest(running["x"], {"u": 0})


def test_weighted_compose_running(running):
    res = weighted_compose(running["g"], running["f"], ZERO_X, {"r": 1}, {"R": 1})
    assert res.ok and res.slack == {"R": 0}


def test_weighted_compose_zero_target_fails(running):
    # g has no internal edges, so wz(R)=0 would need wy(r)=0, which f forbids
    with pytest.raises(ValueError):
        weighted_compose(running["g"], running["f"], ZERO_X, {"r": 1}, {"R": 0})
    assert not is_weighted_forest(compose(running["g"], running["f"]), ZERO_X, {"R": 0})


def test_weighted_compose_identity_reduces_to_g(running):
    g, y = running["g"], running["y"]
    for wy, wz in (({"r": 1}, {"R": 1}), ({"r": 2}, {"R": 2}), ({"r": 0}, {"R": 0})):
        res = weighted_compose(g, Forest.identity(y), wy, wy, wz)
        assert res.ok == is_weighted_forest(g, wy, wz)


def test_boundary_analysis_running_precondition(running):
    # ω_y(r)=0 is not a valid weight for f, so the analysis refuses to run
    assert not is_weighted_forest(running["f"], ZERO_X, {"r": 0})
    with pytest.raises(ValueError):
        boundary_analysis_k_plus_1(running["g"], running["f"], ZERO_X, {"r": 0}, {"R": 1}, 0)


def test_boundary_analysis_untriggered_is_empty(running):
    # k = 1: #E(gf)(R) = 1 ≤ k so nothing is checked
    assert boundary_analysis_k_plus_1(running["g"], running["f"], ZERO_X, {"r": 1}, {"R": 1}, 1) == []


def test_boundary_analysis_triggers_on_random_instances():
    rng = random.Random(21)
    triggered = 0
    for _ in range(500):
        f, g = gen.random_composable(rng, 2, 6)
        wx = {j: 0 for j in f.source.outputs}
        wy = minimal_target_weight(f, wx)
        wz = minimal_target_weight(g, wy)
        k = max(wy.values(), default=0)
        if any(w > k + 1 for w in wz.values()):
            continue
        gf_edges = len(compose(g, f).internal_edges())
        assert boundary_analysis_k_plus_1(g, f, wx, wy, wz, k) == []
        triggered += gf_edges >= k + 1
    assert triggered > 20


def test_filtration_monotone():
    rng = random.Random(22)
    for _ in range(200):
        x = gen.random_young(rng, ["a", "b"])
        w = WeightedYoungForest(x, gen.random_weights(rng, x, top=3))
        for k in range(4):
            if in_for_k(w, k):
                assert all(in_for_k(w, l) for l in range(k, 6))


def test_bound_propagates_to_source():
    rng = random.Random(23)
    for _ in range(200):
        (f,) = gen.random_composable(rng, 1)
        wx = gen.random_weights(rng, f.source)
        wy = gen.tight_weights(rng, f, wx)
        for k in range(5):
            assert weight_bound_propagates(f, wx, wy, k)
