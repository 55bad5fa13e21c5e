import itertools
import random

import pytest

from folab.colored import ColoredMap, ColoredSet, ColorSet, disjoint_union, is_colored_iso

K = ColorSet(["a", "b"])


def test_union_tags_sides():
    u = disjoint_union(ColoredSet({"1": "a"}), ColoredSet({"1": "a", "2": "b"}))
    assert dict(u.coloring) == {("L", "1"): "a", ("R", "1"): "a", ("R", "2"): "b"}


def test_union_with_empty():
    u = disjoint_union(ColoredSet(), ColoredSet({"1": "a"}))
    assert dict(u.coloring) == {("R", "1"): "a"}


def test_union_two_colors():
    u = disjoint_union(ColoredSet({"1": "f"}), ColoredSet({"1": "h"}))
    assert dict(u.coloring) == {("L", "1"): "f", ("R", "1"): "h"}


def test_union_palette_mismatch():
    with pytest.raises(ValueError):
        disjoint_union(ColoredSet({"1": "a"}, K), ColoredSet({"1": "f"}, ColorSet(["f", "h"])))


def test_identity_is_iso():
    s = ColoredSet({"1": "a", "2": "b"})
    assert is_colored_iso(ColoredMap.identity(s))


def test_color_mismatch_is_not_iso():
    m = ColoredMap(ColoredSet({"1": "a"}), ColoredSet({"1": "b"}), {"1": "1"})
    assert not is_colored_iso(m)


def test_non_injective_is_not_iso():
    m = ColoredMap(ColoredSet({"1": "a", "2": "a"}), ColoredSet({"1": "a"}), {"1": "1", "2": "1"})
    assert not is_colored_iso(m)


def test_bad_inputs_rejected():
    with pytest.raises(ValueError):
        ColoredSet([("1", "a"), ("1", "b")])
    with pytest.raises(ValueError):
        ColoredSet({"1": "c"}, K)
    with pytest.raises(ValueError):
        ColoredMap(ColoredSet({"1": "a"}), ColoredSet({"1": "a"}), {})
    with pytest.raises(ValueError):
        ColorSet([])


def _random_set(rng, prefix):
    return ColoredSet({f"{prefix}{k}": rng.choice("ab") for k in range(rng.randint(0, 4))})


def test_union_associative_up_to_retagging():
    rng = random.Random(3)
    for _ in range(50):
        a, b, c = (_random_set(rng, p) for p in "xyz")
        left = disjoint_union(disjoint_union(a, b), c)
        right = disjoint_union(a, disjoint_union(b, c))
        # canonical re-tagging ((L,(L,e)) -> (L,e), ...)
        retag = {}
        for e in left:
            side, inner = e
            if side == "L":
                retag[e] = ("L", inner[1]) if inner[0] == "L" else ("R", ("L", inner[1]))
            else:
                retag[e] = ("R", ("R", inner))
        assert is_colored_iso(ColoredMap(left, right, retag))


def test_union_commutative_up_to_swap():
    rng = random.Random(4)
    for _ in range(50):
        a, b = _random_set(rng, "x"), _random_set(rng, "y")
        swap = {(s, e): ("R" if s == "L" else "L", e) for s, e in disjoint_union(a, b)}
        assert is_colored_iso(ColoredMap(disjoint_union(a, b), disjoint_union(b, a), swap))


def test_color_preservation_composes():
    rng = random.Random(5)
    for _ in range(200):
        s1, s2, s3 = (_random_set(rng, p) for p in "pqr")
        if not s2 or not s3:
            continue
        f = ColoredMap(s1, s2, {e: rng.choice(list(s2)) for e in s1})
        g = ColoredMap(s2, s3, {e: rng.choice(list(s3)) for e in s2})
        if f.preserves_colors and g.preserves_colors:
            assert f.then(g).preserves_colors


def test_permutations_of_a_set_are_isos():
    s = ColoredSet({"1": "a", "2": "a", "3": "b"})
    n = sum(is_colored_iso(ColoredMap(s, s, dict(zip(s, p)))) for p in itertools.permutations(s))
    assert n == 2
