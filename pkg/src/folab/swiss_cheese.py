"""The swiss-cheese operad as concrete disc configurations, and the Trees_α combinatorics.

Colors are ``f`` (full disc), ``h`` (half disc), ``f•`` (collapsed disc) and
``h•`` (collapsed half disc).  A value over a young forest ``x`` is a dict
``root -> {input slot -> DiscDatum}``.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .colored import ColoredSet, sorted_ids
from .forests import (
    IN,
    OUT,
    SRC_IN,
    SRC_OUT,
    Forest,
    YoungForest,
    compose,
    find_morphisms_over,
    unit_insertion,
    validate_forest,
    wedge,
)
from .operads import Operad, OperadError

F, H, FB, HB = "f", "h", "f•", "h•"
BULLETS = (FB, HB)
IDENTITY_TOL = 1e-12
BOUNDARY_TOL = 1e-12


@dataclass(frozen=True)
class DiscDatum:
    """One input of a configuration.

    ``f``/``h``: the affine embedding ``p -> r p + c``.  ``f•``/``h•``: the
    collapsed location ``q``.  An ``f•`` datum with ``q = None`` is the
    unique point sitting over an ``h•`` root.
    """

    color: str
    r: float | None = None
    c: tuple | None = None
    q: tuple | None = None

    @property
    def is_passthrough(self) -> bool:
        return self.color in BULLETS and self.q is None


def disc(r, c, color=F) -> DiscDatum:
    return DiscDatum(color, float(r), tuple(float(v) for v in c))


def half_disc(r, c) -> DiscDatum:
    return disc(r, c, H)


def collapsed(q, color=FB) -> DiscDatum:
    return DiscDatum(color, q=tuple(float(v) for v in q))


def identity_datum(color: str, d: int) -> DiscDatum:
    if color in BULLETS:
        return DiscDatum(color)
    return DiscDatum(color, 1.0, (0.0,) * d)


def _norm(v) -> float:
    return math.sqrt(sum(a * a for a in v))


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


# -- validation -------------------------------------------------------------------

CONTAINMENT, OVERLAP, COLOR_RULE, COLLAPSED_OUTSIDE = "Containment", "Overlap", "ColorRule", "CollapsedOutside"


@dataclass(frozen=True)
class SCValidation:
    ok: bool
    reason: str | None = None
    detail: str = ""

    def __bool__(self):
        return self.ok


def _dist_to_half_ball(a, c, r) -> float:
    """Distance from ``a`` to the closed half ball ``{|p - c| ≤ r, p_d ≥ 0}`` with ``c_d = 0``."""
    if a[-1] >= 0:
        return max(0.0, _norm(_sub(a, c)) - r)
    flat = tuple(a[:-1]) + (0.0,)
    planar = max(0.0, _norm(_sub(flat, c)) - r)
    return math.hypot(a[-1], planar)


def _shape_rules(x: YoungForest, j) -> str | None:
    cj = x.outputs.color(j)
    fib = x.fiber(j)
    colors = [x.inputs.color(i) for i in fib]
    if cj not in (F, H, HB):
        return f"root {j!r} has color {cj!r}"
    if cj == F and any(c != F for c in colors):
        return f"f-root {j!r} has a non-f input"
    if cj == HB and colors != [FB]:
        return f"h•-root {j!r} must have exactly one f• input"
    if cj == H and sum(c in BULLETS for c in colors) > 1:
        return f"h-root {j!r} has more than one collapsed input"
    return None


def realization_contains(local: Mapping, q, d: int | None = None) -> bool:
    """``q ∈ |β|`` for the configuration ``local`` over a single h root (closed complement of the holes)."""
    q = tuple(float(v) for v in q)
    if _norm(q) > 1 or q[-1] < 0:
        return False
    for D in local.values():
        if D.color in (F, H) and _norm(_sub(q, D.c)) < D.r:
            return False
    return True


def validate_local(x: YoungForest, j, local: Mapping, d: int) -> SCValidation:
    bad = _shape_rules(x, j)
    if bad:
        return SCValidation(False, COLOR_RULE, bad)
    fib = x.fiber(j)
    if set(local) != set(fib):
        return SCValidation(False, COLOR_RULE, f"data at {j!r} does not match its inputs")
    cj = x.outputs.color(j)
    if cj == HB:
        return SCValidation(True) if local[fib[0]].is_passthrough else SCValidation(False, COLOR_RULE, "h• root carries data")
    discs = []
    for i in fib:
        D = local[i]
        if D.color != x.inputs.color(i):
            return SCValidation(False, COLOR_RULE, f"datum color of {i!r} differs from the slot color")
        if D.color in BULLETS:
            continue
        if D.r is None or not D.r > 0 or D.c is None or len(D.c) != d:
            return SCValidation(False, COLOR_RULE, f"{i!r}: need r > 0 and a center in R^{d}")
        if D.color == H and D.c[-1] != 0:
            return SCValidation(False, COLOR_RULE, f"half disc {i!r} is not centered on the boundary")
        if _norm(D.c) + D.r > 1:
            return SCValidation(False, CONTAINMENT, f"{i!r} leaves the unit disc")
        if cj == H and D.color == F and D.c[-1] - D.r < 0:
            return SCValidation(False, CONTAINMENT, f"{i!r} crosses the boundary hyperplane")
        discs.append((i, D))
    for a in range(len(discs)):
        for b in range(a + 1, len(discs)):
            (ia, A), (ib, B) = discs[a], discs[b]
            if A.color == F and B.color == H:
                sep = _dist_to_half_ball(A.c, B.c, B.r) > A.r
            elif A.color == H and B.color == F:
                sep = _dist_to_half_ball(B.c, A.c, A.r) > B.r
            else:
                sep = _norm(_sub(A.c, B.c)) > A.r + B.r
            if not sep:
                return SCValidation(False, OVERLAP, f"{ia!r} and {ib!r} meet")
    for i in fib:
        D = local[i]
        if D.color not in BULLETS:
            continue
        if cj != H or D.q is None or len(D.q) != d:
            return SCValidation(False, COLOR_RULE, f"collapsed input {i!r} needs a point under an h root")
        if not realization_contains(local, D.q):
            return SCValidation(False, COLLAPSED_OUTSIDE, f"{i!r} lies in a hole or outside")
        if D.color == HB and D.q[-1] != 0:
            return SCValidation(False, COLLAPSED_OUTSIDE, f"{i!r} is off the boundary hyperplane")
    return SCValidation(True)


def validate_sc_value(x: YoungForest, alpha: Mapping, d: int) -> SCValidation:
    if set(alpha) != set(x.outputs):
        return SCValidation(False, COLOR_RULE, "data must cover every root")
    for j in sorted_ids(x.outputs):
        v = validate_local(x, j, alpha[j], d)
        if not v:
            return v
    return SCValidation(True)


@dataclass(frozen=True)
class SCElement:
    shape: YoungForest
    data: Mapping
    d: int


def validate_sc(e: SCElement) -> SCValidation:
    return validate_sc_value(e.shape, e.data, e.d)


# -- composition -----------------------------------------------------------------


def compose_value(f: Forest, alpha: Mapping, d: int) -> dict:
    """``SC_d(f)(α)``: chase each input of the target and compose the affine maps on the way."""
    x, y = f.source, f.target
    out = {j: {} for j in y.outputs}
    for i in y.inputs:
        color = y.inputs.color(i)
        r, c, q = 1.0, (0.0,) * d, None
        a = f.attach[(IN, i)]
        steps = 0
        while a[0] == SRC_IN:
            D = alpha[x(a[1])][a[1]]
            if D.color in BULLETS:
                if D.q is not None:
                    q = D.q
            elif q is not None:
                q = tuple(D.r * v + w for v, w in zip(q, D.c))
            else:
                r, c = D.r * r, tuple(D.r * v + w for v, w in zip(c, D.c))
            a = f.attach[(SRC_OUT, x(a[1]))]
            steps += 1
            if steps > len(x.inputs) + 1:
                raise OperadError("cycle while composing")
        if color in BULLETS:
            out[a[1]][i] = DiscDatum(color, q=q)
        else:
            out[a[1]][i] = DiscDatum(color, r, c)
    return out


def compose_sc(f: Forest, e: SCElement) -> SCElement:
    if e.shape != f.source:
        raise OperadError("shape mismatch: element does not live over f.source")
    return SCElement(f.target, compose_value(f, e.data, e.d), e.d)


class SwissCheese(Operad):
    """``SC_d`` together with its collapsed-point extension."""

    def __init__(self, d: int, tolerance: float = 1e-9):
        if d < 1:
            raise ValueError("d must be at least 1")
        self.d = d
        self.name = f"sc:{d}"
        self.tolerance = tolerance

    def act(self, f, alpha):
        return compose_value(f, alpha, self.d)

    def check_value(self, y, alpha):
        return bool(validate_sc_value(y, alpha, self.d))

    def is_identity(self, y, j, alpha):
        fib = y.fiber(j)
        if len(fib) != 1 or y.inputs.color(fib[0]) != y.outputs.color(j):
            return False
        D = alpha[j][fib[0]]
        if D.color in BULLETS:
            return False
        return abs(D.r - 1) <= IDENTITY_TOL and all(abs(v) <= IDENTITY_TOL for v in D.c)

    def values_equal(self, a, b, tol=None):
        tol = self.tolerance if tol is None else tol
        if set(a) != set(b):
            return False
        for j in a:
            if set(a[j]) != set(b[j]):
                return False
            for i, A in a[j].items():
                B = b[j][i]
                if A.color != B.color:
                    return False
                for u, v in ((A.r, B.r), (A.c, B.c), (A.q, B.q)):
                    if (u is None) != (v is None):
                        return False
                    if u is None:
                        continue
                    if np.max(np.abs(np.subtract(u, v))) > tol:
                        return False
        return True

    def encode_value(self, alpha):
        return sc_data_to_json(alpha)

    def decode_value(self, data):
        return sc_data_from_json(data)


# -- json ---------------------------------------------------------------------------


def datum_to_json(i, D: DiscDatum) -> dict:
    from .serialize import encode_id

    out = {"id": encode_id(i), "color": D.color}
    if D.r is not None:
        out["r"] = D.r
        out["c"] = list(D.c)
    if D.q is not None:
        out["q"] = list(D.q)
    return out


def datum_from_json(d: dict) -> tuple:
    from .serialize import decode_id

    c = tuple(float(v) for v in d["c"]) if "c" in d else None
    q = tuple(float(v) for v in d["q"]) if "q" in d else None
    r = float(d["r"]) if "r" in d else None
    return decode_id(d["id"]), DiscDatum(d["color"], r, c, q)


def sc_data_to_json(alpha: Mapping) -> dict:
    from .serialize import encode_id

    return {encode_id(j): [datum_to_json(i, D) for i, D in local.items()] for j, local in alpha.items()}


def sc_data_from_json(data: Mapping) -> dict:
    from .serialize import decode_id

    return {decode_id(j): dict(datum_from_json(v) for v in local) for j, local in data.items()}


def sc_element_to_json(e: SCElement) -> dict:
    from .serialize import young_to_json

    return {"d": e.d, "shape": young_to_json(e.shape), "data": sc_data_to_json(e.data)}


def sc_element_from_json(d: Mapping) -> SCElement:
    from .serialize import young_from_json

    return SCElement(young_from_json(d["shape"]), sc_data_from_json(d["data"]), int(d["d"]))


# -- geometric realization -----------------------------------------------------------


def boundary_classify(local: Mapping, q, tol: float = BOUNDARY_TOL) -> set:
    """Boundary strata of ``|β|`` containing ``q``: ``rt_boundary``, ``h_boundary`` and ``("input", i)``."""
    q = tuple(float(v) for v in q)
    if not realization_contains(local, q):
        raise ValueError("q is not in the realization")
    tags = set()
    on_sphere = abs(_norm(q) - 1) <= tol
    if on_sphere and q[-1] >= 0:
        tags.add("rt_boundary")
    h_holes = [(i, D) for i, D in local.items() if D.color == H]
    on_hemi = False
    for i, D in h_holes:
        if abs(_norm(_sub(q, D.c)) - D.r) <= tol and q[-1] >= 0:
            tags.add(("input", i))
            on_hemi = True
    flat = abs(q[-1]) <= tol and all(_norm(_sub(q, D.c)) >= D.r for _, D in h_holes)
    if flat or on_sphere or on_hemi:
        tags.add("h_boundary")
    return tags


def grid_oracle(x: YoungForest, alpha: Mapping, d: int, rng: random.Random, n_points: int = 10_000) -> bool:
    """Sampling check of containment and disjointness, independent of the closed forms.

    Samples a grid of about ``n_points`` points, random points inside every
    image, and the points of each image nearest to the others and to the
    ambient boundary.  Returns ``False`` when some sample lies in two images
    or an image sample leaves the codomain.
    """
    per_axis = max(2, round(n_points ** (1.0 / d)))
    axis = np.linspace(-1, 1, per_axis)
    grid = np.stack(np.meshgrid(*([axis] * d), indexing="ij"), axis=-1).reshape(-1, d)
    eps = 1e-12
    for j in x.outputs:
        local = alpha[j]
        discs = [(i, D) for i, D in local.items() if D.color in (F, H)]
        if not discs:
            continue
        root_h = x.outputs.color(j) == H
        samples = [grid]
        for _, D in discs:
            c = np.array(D.c)
            pts = np.array([rng.gauss(0, 1) for _ in range(64 * d)]).reshape(64, d)
            pts /= np.linalg.norm(pts, axis=1, keepdims=True)
            rad = np.array([rng.random() ** (1.0 / d) for _ in range(64)])[:, None]
            local_pts = pts * rad
            if D.color == H:
                local_pts[:, -1] = np.abs(local_pts[:, -1])
            extra = [c + D.r * local_pts]
            # extreme points toward the sphere and the hyperplane
            nc = np.linalg.norm(c)
            if nc > 0:
                extra.append((c + D.r * c / nc)[None, :])
            low = c.copy()
            low[-1] -= D.r if D.color == F else 0
            extra.append(low[None, :])
            for _, E in discs:
                e = np.array(E.c)
                v = e - c
                nv = np.linalg.norm(v)
                if nv == 0:
                    extra.append(c[None, :])
                    continue
                # the midpoint of the gap (or of the overlap) along the line of centers
                t = (D.r + nv - E.r) / 2
                extra.append((c + min(max(t, 0), D.r) * v / nv)[None, :])
            samples += extra
        P = np.concatenate(samples)

        def inside(D):
            c = np.array(D.c)
            m = np.linalg.norm(P - c, axis=1) <= D.r + eps
            if D.color == H:
                m &= P[:, -1] >= -eps
            return m

        masks = [inside(D) for _, D in discs]
        count = np.sum(masks, axis=0)
        if np.any(count > 1):
            return False
        any_img = np.any(masks, axis=0)
        outside = np.linalg.norm(P, axis=1) > 1 + eps
        if root_h:
            outside |= P[:, -1] < -eps
        if np.any(any_img & outside):
            return False
    return True


# -- the projection p ----------------------------------------------------------------


def _keep(s: ColoredSet):
    return [e for e in s if s.color(e) not in BULLETS]


def project_young(x: YoungForest) -> YoungForest:
    ins, outs = _keep(x.inputs), _keep(x.outputs)
    for i in ins:
        if x(i) not in set(outs):
            raise ValueError(f"input {i!r} sits over a collapsed root")
    return YoungForest(x.inputs.restrict(ins), x.outputs.restrict(outs), {i: x(i) for i in ins})


def project_forest(f: Forest) -> Forest:
    src, tgt = project_young(f.source), project_young(f.target)
    attach = {(IN, i): f.attach[(IN, i)] for i in tgt.inputs}
    attach.update({(SRC_OUT, u): f.attach[(SRC_OUT, u)] for u in src.outputs})
    out = Forest(src, tgt, attach)
    v = validate_forest(out)
    if not v:
        raise AssertionError(f"projection is not a forest: {v.reason}")
    return out


def project_value(x: YoungForest, alpha: Mapping) -> dict:
    return {j: {i: D for i, D in alpha[j].items() if D.color not in BULLETS} for j in _keep(x.outputs)}


def project_labels(f: Forest, t: Mapping) -> dict:
    pf = project_forest(f)
    return {e: t[e] for e in pf.internal_edges()}


def project_p(kind: str, obj, *extra):
    """Dispatch on ``"young" | "forest" | "value" | "element" | "labels"``."""
    if kind == "young":
        return project_young(obj)
    if kind == "forest":
        return project_forest(obj)
    if kind == "value":
        return project_value(obj, extra[0])
    if kind == "element":
        return SCElement(project_young(obj.shape), project_value(obj.shape, obj.data), obj.d)
    if kind == "labels":
        return project_labels(obj, extra[0])
    raise ValueError(f"unknown kind {kind!r}")


def bullet_set(k: int, l: int, n: int, m: int) -> ColoredSet:
    """``(k,l|n,m)``: f and h elements are ``"1".."n+m"``, collapsed ones ``"f•1"``, ``"h•1"``, ..."""
    pairs = [(f"f•{a + 1}", FB) for a in range(k)] + [(f"h•{a + 1}", HB) for a in range(l)]
    pairs += [(str(a + 1), F) for a in range(n)] + [(str(n + a + 1), H) for a in range(m)]
    return ColoredSet(pairs)


def nm_set(n: int, m: int) -> ColoredSet:
    return bullet_set(0, 0, n, m)


def bullet_tree(k: int, l: int, n: int, m: int, root="rt", root_color: str = H) -> YoungForest:
    ins = bullet_set(k, l, n, m)
    return YoungForest(ins, ColoredSet({root: root_color}), {i: root for i in ins})


# -- C_h predicates ----------------------------------------------------------------------


def in_C_h(x: YoungForest) -> bool:
    """Every root has color h."""
    return all(x.outputs.color(j) == H for j in x.outputs)


def in_C_h_f1(x: YoungForest) -> bool:
    """Every root is h and has at most one input colored f or f•."""
    return in_C_h(x) and all(
        sum(x.inputs.color(i) in (F, FB) for i in x.fiber(j)) <= 1 for j in x.outputs
    )


# -- Trees_α -------------------------------------------------------------------------------

ROOT_EDGE = "rt"


def gamma(k: int) -> Forest:
    """``Γ_0`` (a lone f• edge) or ``Γ_1`` (one h• vertex over an f• input)."""
    w_root = FB if k == 0 else HB
    w = YoungForest(ColoredSet({"a": FB}), ColoredSet({"b": w_root}), {"a": "b"})
    if k == 0:
        return Forest(YoungForest.empty(), w, {(IN, "a"): (OUT, "b")})
    z = YoungForest(ColoredSet({"c": FB}), ColoredSet({"v": HB}), {"c": "v"})
    return Forest(z, w, {(IN, "a"): (SRC_IN, "c"), (SRC_OUT, "v"): (OUT, "b")})


def edges_of(T: Forest) -> list:
    """The h-colored edges of ``T`` that admit an inserted vertex: h slots of the vertices and the root edge."""
    z = T.source
    return [i for i in sorted_ids(z.inputs) if z.inputs.color(i) == H] + [ROOT_EDGE]


def insert_unary(T: Forest, i) -> tuple:
    """``ν(i): T -> T(i)``; returns ``(T(i), ν, i_v, i_in, i_out)`` with ``None`` for non-internal edges."""
    z = T.source
    iv, slot = ("v", i), ("vin", i)
    color = H
    ins = list(z.inputs.coloring.items()) + [(slot, color)]
    outs = list(z.outputs.coloring.items()) + [(iv, color)]
    struct = dict(z.structure)
    struct[slot] = iv
    z2 = YoungForest(ColoredSet(ins), ColoredSet(outs), struct)
    attach = dict(T.attach)
    if i == ROOT_EDGE:
        (r,) = list(T.target.outputs)
        feeder = T.inverse[(OUT, r)]
        attach[feeder] = (SRC_IN, slot)
        attach[(SRC_OUT, iv)] = (OUT, r)
        i_out = None
    else:
        feeder = T.inverse[(SRC_IN, i)]
        attach[feeder] = (SRC_IN, slot)
        attach[(SRC_OUT, iv)] = (SRC_IN, i)
        i_out = iv
    i_in = feeder[1] if feeder[0] == SRC_OUT else None
    Ti = Forest(z2, T.target, attach)
    nu = unit_insertion(z2, iv)
    return Ti, nu, iv, i_in, i_out


@dataclass(frozen=True)
class TreesAlphaObject:
    key: tuple
    S: Forest
    nu: Forest
    E_alpha: tuple
    i_in: object = None
    i_out: object = None
    eps: object = None


def build_trees_alpha(T: Forest, which: tuple) -> TreesAlphaObject:
    """``S_{i,k}`` for ``which = ("i", i, k)`` or ``S_{j,k}`` for ``which = ("j", j, k)``."""
    kind, ell, k = which
    if k not in (0, 1):
        raise ValueError("k must be 0 or 1")
    G = gamma(k)
    eps = ("R", "v") if k == 1 else None
    if kind == "j":
        if ell not in T.source.outputs:
            raise ValueError(f"{ell!r} is not a vertex of T")
        S = wedge(T, G, {"b": ell})
        E = (eps,) if k else ()
        return TreesAlphaObject(which, S, Forest.identity(T.source), E, eps=eps)
    if ell != ROOT_EDGE and (ell not in T.source.inputs or T.source.inputs.color(ell) != H):
        raise ValueError(f"{ell!r} is not an h-colored edge of T")
    Ti, nu, iv, i_in, i_out = insert_unary(T, ell)
    S = wedge(Ti, G, {"b": iv})
    E = ((eps,) if k else ()) + tuple(e for e in (i_in, i_out) if e is not None)
    return TreesAlphaObject(which, S, nu, E, i_in, i_out, eps)


def trees_alpha_objects(T: Forest) -> list:
    objs = []
    for k in (0, 1):
        for i in edges_of(T):
            objs.append(build_trees_alpha(T, ("i", i, k)))
        for j in sorted_ids(T.source.outputs):
            objs.append(build_trees_alpha(T, ("j", j, k)))
    return objs


def trees_alpha_morphisms(A: TreesAlphaObject, B: TreesAlphaObject) -> list:
    """Morphisms ``A -> B`` over ``(1,0|n,m)`` compatible with the maps ``ν``."""
    out = []
    for phi in find_morphisms_over(A.S, B.S):
        if compose(project_forest(phi), A.nu) == B.nu:
            out.append(phi)
    return out


def expected_trees_alpha_morphisms(T: Forest) -> set:
    """The morphism pairs among ``S_{i,k}, S_{j,k}`` described for ``Trees_α`` (identities included)."""
    z = T.source
    exp = set()
    keys = [("i", i) for i in edges_of(T)] + [("j", j) for j in z.outputs]
    for key in keys:
        for k in (0, 1):
            for k2 in range(k + 1):
                exp.add((key + (k,), key + (k2,)))
    for i in edges_of(T):
        targets = []
        if i != ROOT_EDGE:
            targets.append(z(i))
            feeder = T.inverse[(SRC_IN, i)]
        else:
            feeder = T.inverse[(OUT, next(iter(T.target.outputs)))]
        if feeder[0] == SRC_OUT:
            targets.append(feeder[1])
        for j in targets:
            for k in (0, 1):
                for k2 in range(k + 1):
                    exp.add((("i", i, k), ("j", j, k2)))
    return exp


def w_alpha_membership(obj: TreesAlphaObject, s: Mapping, t_alpha: Mapping, variant: str = "plain") -> bool:
    """Membership of ``s: E_α(S) -> [0, ∞]`` in ``W_α(S)`` (or ``W_{α,1}(S)`` with ``variant="one"``).

    ``t_alpha`` maps the edge ``i`` of ``T`` to its length.  The sum
    constraint applies only when both ``i_in`` and ``i_out`` are edges of ``S``.
    """
    if set(s) != set(obj.E_alpha):
        raise ValueError("labeling domain must be E_α(S)")
    if any(not v >= 0 for v in s.values()):
        return False
    ok = True
    if obj.key[0] == "i" and obj.i_in is not None and obj.i_out is not None:
        ok = s[obj.i_in] + s[obj.i_out] == t_alpha[obj.key[1]]
    if variant == "one":
        ok = ok and any(v == math.inf for v in s.values())
    elif variant != "plain":
        raise ValueError(f"unknown variant {variant!r}")
    return ok


# -- the coordinate r ----------------------------------------------------------------------


def r_map(s_o: float, s_i: float) -> float:
    """``(1 - e^{-s_o}) / (1 - e^{-s_i})`` with ``e^{-∞} = 0``."""
    if s_o < 0 or s_i < 0:
        raise ValueError("lengths must be nonnegative")
    if s_o == 0 and s_i == 0:
        raise ValueError("s_o + s_i must be positive")
    if s_i == 0:
        return math.inf
    if s_o == 0:
        return 0.0
    num = 1.0 if s_o == math.inf else -math.expm1(-s_o)
    den = 1.0 if s_i == math.inf else -math.expm1(-s_i)
    return num / den
