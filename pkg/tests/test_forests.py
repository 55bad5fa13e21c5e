import itertools
import random

import pytest

from folab import generators as gen
from folab.colored import ColoredSet
from folab.forests import (
    IN,
    OUT,
    SRC_IN,
    SRC_OUT,
    Forest,
    ForestError,
    YoungForest,
    classify_edges,
    compose,
    contraction,
    decompose_into_trees,
    disjoint_union_forests,
    edge_count_terms,
    find_isos,
    find_morphisms_over,
    isos_over,
    as_forest,
    restrict_to_root,
    unit_insertion,
    validate_forest,
    wedge,
)
from folab.instances import corolla, unit_tree
from folab.swiss_cheese import FB, gamma


# -- validation ------------------------------------------------------------------


def test_running_f_is_valid(running):
    assert validate_forest(running["f"])


def test_identity_is_valid(running):
    assert validate_forest(Forest.identity(running["y"]))


def test_two_cycle_detected(running):
    v = validate_forest(running["cyclic"])
    assert not v and v.reason == "Cycle"


def test_color_and_bijection_failures():
    y = corolla(1, "a")
    x = YoungForest(ColoredSet({"p": "b"}), ColoredSet({"u": "b"}), {"p": "u"})
    bad = Forest(x, y, {(IN, "1"): (SRC_IN, "p"), (SRC_OUT, "u"): (OUT, "r")})
    assert validate_forest(bad).reason == "ColorBroken"
    x2 = YoungForest(ColoredSet({"p": "a", "q": "a"}), ColoredSet({"u": "a"}), {"p": "u", "q": "u"})
    bad2 = Forest(x2, y, {(IN, "1"): (SRC_IN, "p"), (SRC_OUT, "u"): (SRC_IN, "p")})
    assert validate_forest(bad2).reason == "NotBijection"


def test_root_mismatch():
    y = YoungForest(ColoredSet({"1": "a", "2": "a"}), ColoredSet({"r": "a", "s": "a"}), {"1": "r", "2": "s"})
    f = Forest(YoungForest.empty(), y, {(IN, "1"): (OUT, "s"), (IN, "2"): (OUT, "r")})
    assert validate_forest(f).reason == "RootMismatch"


# -- root map, composition, classification ------------------------------------------


def test_root_map(running):
    rm = running["f"].root_map()
    assert rm[(SRC_IN, "s")] == "r"
    assert rm[(OUT, "r")] == "r"
    assert Forest.identity(running["y"]).root_map()[(IN, "1")] == "r"


def test_compose_running(running):
    gf = compose(running["g"], running["f"])
    assert gf.attach == {
        (IN, "a"): (SRC_IN, "s"),
        (IN, "b"): (SRC_IN, "t"),
        (IN, "c"): (SRC_IN, "q"),
        (SRC_OUT, "u"): (SRC_IN, "p"),
        (SRC_OUT, "v"): (OUT, "R"),
    }


def test_unit_laws(running):
    g = running["g"]
    assert compose(Forest.identity(running["z"]), g) == g
    assert compose(g, Forest.identity(running["y"])) == g


def test_compose_boundary_mismatch(running):
    with pytest.raises(ForestError):
        compose(running["f"], running["g"])


def test_classify_running(running):
    c = classify_edges(running["f"])
    assert c.unit_edges == frozenset()
    assert c.leaves == {"1", "2", "3"}
    assert c.root_edges == {"v"}
    assert c.internal_edges == {"u"}


def test_classify_identity(running):
    y = running["y"]
    c = classify_edges(Forest.identity(y))
    assert (c.unit_edges, c.leaves, c.root_edges, c.internal_edges) == (frozenset(), set(y.inputs), set(y.outputs), frozenset())


def test_classify_unit_tree():
    c = classify_edges(unit_tree("c", "i", "j"))
    assert c.unit_edges == {("i", "j")}
    assert not (c.leaves or c.root_edges or c.internal_edges)


def test_edge_counts_running(running):
    n = edge_count_terms(running["g"], running["f"])["R"]
    assert (n["E_gf"], n["E_g"], n["E_f"], n["un_f"]) == (1, 0, 1, 0)


def test_literal_edge_count_breaks_on_unit_root():
    # f adds a unit tree j; g grows the vertex j into a whole tree of z
    f = unit_tree("a", "i", "j")
    y = f.target
    z = corolla(1, "a", root="R")
    g = Forest(y, z, {(IN, "1"): (SRC_IN, "i"), (SRC_OUT, "j"): (OUT, "R")})
    n = edge_count_terms(g, f)["R"]
    assert n["E_gf"] == 0
    assert n["E_g"] + n["E_f"] - n["un_f"] == -1
    assert n["E_gf"] == n["E_g"] + n["E_f"] - n["un_f"] + n["un_gf"] - n["un_g"]


# -- monoidal structure and surgery -------------------------------------------------


def test_disjoint_union_is_functorial():
    rng = random.Random(11)
    for _ in range(30):
        f, g = gen.random_composable(rng, 2, 5)
        f2, g2 = gen.random_composable(rng, 2, 5)
        lhs = compose(disjoint_union_forests(g, g2), disjoint_union_forests(f, f2))
        assert lhs == disjoint_union_forests(compose(g, f), compose(g2, f2))


def test_decompose_into_trees(running):
    trees = decompose_into_trees(running["f"].source)
    assert sorted(len(t.outputs) for t in trees) == [1, 1]
    assert sum(len(t.inputs) for t in trees) == 4


def test_restrict_to_root_is_valid():
    rng = random.Random(12)
    for _ in range(30):
        (f,) = gen.random_composable(rng, 1)
        for j in f.target.outputs:
            assert validate_forest(restrict_to_root(f, j))


def test_contraction_factors(running):
    c, g2 = contraction(running["f"], "u")
    assert compose(g2, c) == running["f"]
    assert len(g2.source.outputs) == 1


def test_unit_insertion_valid():
    y = YoungForest(ColoredSet({"1": "a", "p": "a"}), ColoredSet({"r": "a", "v": "a"}), {"1": "r", "p": "v"})
    nu = unit_insertion(y, "v")
    assert validate_forest(nu)
    assert classify_edges(nu).unit_edges == {("p", "v")}


# -- wedge -------------------------------------------------------------------------


def test_wedge_of_corollas():
    x = corolla(1, "a", root="r")
    w = corolla(1, "a", root="s")
    out = wedge(Forest.identity(x), Forest.identity(w), {"s": "r"})
    assert validate_forest(out)
    src = out.source
    assert src(("W", "s")) == "r" and src(("R", "1")) == ("R", "s")
    assert out.attach[(SRC_OUT, ("R", "s"))] == (SRC_IN, ("W", "s"))
    assert out.target(("R", "1")) == "r"


def test_wedge_running_gamma0(running):
    S = wedge(running["f"], gamma(0), {"b": "v"})
    assert S.source.inputs.color(("W", "b")) == FB
    assert S.source(("W", "b")) == "v"
    assert len(S.source.inputs) == len(running["f"].source.inputs) + 1


def test_wedge_with_empty_w(running):
    e = Forest.identity(YoungForest.empty())
    assert wedge(running["f"], e, {}) == running["f"]


def test_wedge_tau_not_total(running):
    with pytest.raises(ForestError):
        wedge(running["f"], gamma(0), {})


# -- isomorphisms ----------------------------------------------------------------------


def test_isos_of_corollas():
    assert len(find_isos(corolla(2), corolla(2))) == 2
    mixed = YoungForest.corolla({"1": "a", "2": "b"}, "r", "a")
    assert len(find_isos(mixed, mixed)) == 1
    assert find_isos(corolla(2), corolla(3)) == []


def test_forest_automorphisms(running):
    # swapping the leaves s, t of u together with the target inputs 1, 2
    assert len(find_isos(running["f"], running["f"])) == 2


def _brute_isos_over(g, g2):
    out = []
    for imap, jmap in find_isos(g.source, g2.source):
        if compose(g2, as_forest(imap, jmap, g.source, g2.source)) == g:
            out.append((imap, jmap))
    return out


def test_isos_over_matches_brute_force():
    rng = random.Random(13)
    for _ in range(60):
        f, g = gen.random_composable(rng, 2, 5)
        key = lambda m: sorted(map(repr, m[0].items())) + sorted(map(repr, m[1].items()))
        assert sorted(map(key, isos_over(g, g))) == sorted(map(key, _brute_isos_over(g, g)))


# -- morphisms over a fixed target: brute-force oracle ------------------------------


def _brute_morphisms_over(S, S2):
    x, x2 = S.source, S2.source
    dom = [(IN, i) for i in x2.inputs] + [(SRC_OUT, u) for u in x.outputs]
    cod = [(OUT, j) for j in x2.outputs] + [(SRC_IN, p) for p in x.inputs]
    if len(dom) != len(cod):
        return []
    out = []
    for perm in itertools.permutations(cod):
        phi = Forest(x, x2, dict(zip(dom, perm)))
        if validate_forest(phi) and compose(S2, phi) == S:
            out.append(phi)
    return out


def test_find_morphisms_over_matches_brute_force():
    rng = random.Random(14)
    checked = 0
    while checked < 40:
        f, g = gen.random_composable(rng, 2, 3)
        n = len(g.source.inputs) + len(f.source.outputs)
        if n > 7:
            continue
        S, S2 = compose(g, f), g
        fast = find_morphisms_over(S, S2)
        slow = _brute_morphisms_over(S, S2)
        assert f in fast
        assert len(fast) == len(slow) and all(p in slow for p in fast)
        checked += 1
