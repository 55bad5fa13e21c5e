"""Seeded random instances.

Every generator takes a ``random.Random`` and a ``size`` knob so the suites
can shrink a failing case by re-running at a smaller size.
"""

from __future__ import annotations

import math
import random

from .colored import ColoredSet, sorted_ids
from .forests import IN, OUT, SRC_IN, SRC_OUT, Forest, YoungForest
from .swiss_cheese import BULLETS, FB, HB, F, H, DiscDatum, identity_datum, realization_contains, validate_local
from .weights import minimal_target_weight

DYADIC = (0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 4.0)
MAX_SET = 8


def random_palette(rng: random.Random, max_colors: int = 3) -> list:
    return ["a", "b", "c"][: rng.randint(1, max_colors)]


def random_young(rng: random.Random, colors, size: int = 8, prefix: str = "x", max_roots: int = 4) -> YoungForest:
    n_roots = rng.randint(1, max(1, min(max_roots, size)))
    n_in = rng.randint(0, min(size, MAX_SET))
    roots = [f"{prefix}v{k}" for k in range(n_roots)]
    outs = ColoredSet([(j, rng.choice(colors)) for j in roots])
    ins = ColoredSet([(f"{prefix}s{k}", rng.choice(colors)) for k in range(n_in)])
    return YoungForest(ins, outs, {i: rng.choice(roots) for i in ins})


def grow(x: YoungForest, rng: random.Random, prefix: str = "y", plug_prob: float = 0.6,
         max_units: int = 2, colors=None) -> Forest:
    """A random forest out of ``x``: vertices plug into free slots of later vertices.

    Free slots become inputs of the target, unplugged vertices its roots,
    and a few unit trees are added while the target stays small.
    """
    order = list(x.outputs)
    rng.shuffle(order)
    rank = {u: k for k, u in enumerate(order)}
    free = {p for p in x.inputs}
    attach = {}
    roots = []
    for u in order:
        cands = [p for p in sorted_ids(free) if rank[x(p)] > rank[u] and x.inputs.color(p) == x.outputs.color(u)]
        if cands and rng.random() < plug_prob:
            p = rng.choice(cands)
            free.discard(p)
            attach[(SRC_OUT, u)] = (SRC_IN, p)
        else:
            j = f"{prefix}r{len(roots)}"
            roots.append((j, x.outputs.color(u)))
            attach[(SRC_OUT, u)] = (OUT, j)
    leaves = sorted_ids(free)
    rng.shuffle(leaves)
    tgt_in = []
    for k, p in enumerate(leaves):
        i = f"{prefix}i{k}"
        tgt_in.append((i, x.inputs.color(p)))
        attach[(IN, i)] = (SRC_IN, p)
    palette = colors or sorted({c for _, c in roots} | set(x.inputs.colors_used()) | {"a"})
    n_units = rng.randint(0, max_units)
    for k in range(n_units):
        if len(tgt_in) >= MAX_SET or len(roots) >= MAX_SET:
            break
        c = rng.choice(palette)
        i, j = f"{prefix}u{k}", f"{prefix}ur{k}"
        tgt_in.append((i, c))
        roots.append((j, c))
        attach[(IN, i)] = (OUT, j)
    # the target structure is whatever the chase produces
    partial = {k: v for k, v in attach.items()}

    def chase(a):
        while a[0] == SRC_IN:
            a = partial[(SRC_OUT, x(a[1]))]
        return a[1]

    struct = {i: chase(attach[(IN, i)]) for i, _ in tgt_in}
    y = YoungForest(ColoredSet(tgt_in), ColoredSet(roots), struct)
    return Forest(x, y, attach)


def random_composable(rng: random.Random, length: int = 3, size: int = 8, colors=None, sc=False) -> list:
    """``[f, g, h, ...]`` with ``f: x -> y``, ``g: y -> z``, ...

    ``sc`` set to a dimension (or ``True`` for 2) keeps the SC shape rules.
    """
    colors = colors or random_palette(rng)
    if sc:
        x = random_sc_young(rng, size, d=2 if sc is True else int(sc))
    else:
        x = random_young(rng, colors, size)
    out = []
    for k in range(length):
        f = grow(x, rng, prefix="yzwv"[k % 4] + (str(k // 4) if k >= 4 else ""), max_units=2 if size > 3 else 1,
                 colors=[F, H] if sc else colors)
        out.append(f)
        x = f.target
    return out


def random_labels(rng: random.Random, g: Forest, zero_prob: float = 0.2, inf_prob: float = 0.15) -> dict:
    t = {}
    for e in sorted_ids(g.internal_edges()):
        u = rng.random()
        t[e] = 0.0 if u < zero_prob else (math.inf if u < zero_prob + inf_prob else rng.choice(DYADIC))
    return t


def positive_finite_labels(rng: random.Random, g: Forest) -> dict:
    return {e: rng.choice(DYADIC) for e in sorted_ids(g.internal_edges())}


# -- weights ------------------------------------------------------------------------------


def random_weights(rng: random.Random, x: YoungForest, top: int = 2) -> dict:
    return {j: rng.randint(0, top) for j in x.outputs}


def tight_weights(rng: random.Random, f: Forest, wx: dict, slack: int = 1) -> dict:
    w = minimal_target_weight(f, wx)
    return {j: v + rng.randint(0, slack) for j, v in w.items()}


# -- swiss cheese ---------------------------------------------------------------------------


def random_sc_young(rng: random.Random, size: int = 6, max_roots: int = 3, d: int = 2) -> YoungForest:
    """A young forest obeying the SC shape rules (no collapsed colors).

    For ``d = 1`` every half disc is centered at 0, so an h root takes at most one h input.
    """
    n_roots = rng.randint(1, max(1, min(max_roots, size)))
    roots = [(f"xv{k}", rng.choice([F, H])) for k in range(n_roots)]
    ins, struct = [], {}
    for k in range(rng.randint(0, min(size, MAX_SET))):
        j, cj = rng.choice(roots)
        c = F if cj == F else rng.choice([F, H])
        if d == 1 and c == H and any(struct[p] == j and cc == H for p, cc in ins):
            c = F
        i = f"xs{k}"
        ins.append((i, c))
        struct[i] = j
    return YoungForest(ColoredSet(ins), ColoredSet(roots), struct)


def _random_point_in_ball(rng, d):
    while True:
        p = [rng.uniform(-1, 1) for _ in range(d)]
        if sum(v * v for v in p) <= 1:
            return p


def random_local(rng: random.Random, x: YoungForest, j, d: int, identity_prob: float = 0.3,
                 max_tries: int = 200) -> dict:
    """A valid configuration at root ``j`` by rejection sampling with shrinking radii."""
    fib = x.fiber(j)
    cj = x.outputs.color(j)
    if len(fib) == 1 and x.inputs.color(fib[0]) == cj and rng.random() < identity_prob:
        return {fib[0]: identity_datum(cj, d)}
    if cj == HB:
        return {i: DiscDatum(x.inputs.color(i)) for i in fib}
    scale = 0.45 / max(1, len(fib)) ** (1.0 / d)
    for attempt in range(max_tries):
        local = {}
        for i in fib:
            ci = x.inputs.color(i)
            if ci in BULLETS:
                continue
            r = rng.uniform(0.2, 1.0) * scale * (0.97 ** (attempt // 10))
            # six decimals keep the JSON dumps short
            r = round(r, 6)
            if ci == H:
                c = _random_point_in_ball(rng, d - 1) if d > 1 else []
                c = [v * (1 - r) for v in c] + [0.0]
            else:
                c = [v * (1 - r) for v in _random_point_in_ball(rng, d)]
                if cj == H:
                    c[-1] = abs(c[-1])
            local[i] = DiscDatum(ci, r, tuple(round(v, 6) for v in c))
        for i in fib:
            if x.inputs.color(i) in BULLETS:
                q = _random_point_in_realization(rng, local, d, flat=x.inputs.color(i) == HB)
                if q is not None:
                    local[i] = DiscDatum(x.inputs.color(i), q=q)
        if validate_local(x, j, local, d):
            return local
    raise RuntimeError(f"could not sample a configuration at {j!r}")


def _random_point_in_realization(rng, local, d, flat=False, tries=200):
    for _ in range(tries):
        p = _random_point_in_ball(rng, d)
        p[-1] = 0.0 if flat else abs(p[-1])
        q = tuple(round(v, 6) for v in p)
        if realization_contains(local, q):
            return q
    return None


def random_sc_value(rng: random.Random, x: YoungForest, d: int, identity_prob: float = 0.3) -> dict:
    return {j: random_local(rng, x, j, d, identity_prob) for j in sorted_ids(x.outputs)}


def random_raw_local(rng: random.Random, x: YoungForest, j, d: int) -> dict:
    """A configuration with no validity guarantee (for oracle cross-checks)."""
    local = {}
    for i in x.fiber(j):
        ci = x.inputs.color(i)
        r = rng.uniform(0.05, 0.6)
        c = [rng.uniform(-0.8, 0.8) for _ in range(d)]
        if ci == H:
            c[-1] = 0.0
        elif x.outputs.color(j) == H:
            c[-1] = abs(c[-1])
        local[i] = DiscDatum(ci, r, tuple(c))
    return local


# -- four colors: collapsed discs ---------------------------------------------------------


def is_bullet_legal(x: YoungForest) -> bool:
    """Each root is a tree ``(0,0|n,m) -> h``, ``(1,0|n,m) -> h``, ``(0,1|n,m) -> h`` or ``(1,0|0,0) -> h•``."""
    for j in x.outputs:
        cols = [x.inputs.color(i) for i in x.fiber(j)]
        cj = x.outputs.color(j)
        if cj == HB:
            if cols != [FB]:
                return False
        elif cj != H or sum(c in BULLETS for c in cols) > 1:
            return False
    return True


def random_bullet_young(rng: random.Random, size: int = 6, max_roots: int = 3, d: int = 2) -> YoungForest:
    """A random legal young forest over the four colors ``f, h, f•, h•``."""
    n_roots = rng.randint(1, max(1, min(max_roots, size)))
    roots, ins, struct = [], [], {}
    for k in range(n_roots):
        j = f"xv{k}"
        kind = rng.choice(["plain", FB, HB, "vertex"])
        if kind == "vertex":
            roots.append((j, HB))
            i = f"xs{len(ins)}"
            ins.append((i, FB))
            struct[i] = j
            continue
        roots.append((j, H))
        n_h = 0
        for _ in range(rng.randint(0, min(size, 4))):
            c = rng.choice([F, H])
            if c == H and d == 1 and n_h:
                c = F
            n_h += c == H
            i = f"xs{len(ins)}"
            ins.append((i, c))
            struct[i] = j
        if kind == HB and d == 1 and n_h:
            kind = FB  # the only boundary point 0 lies inside the half disc
        if kind != "plain":
            i = f"xs{len(ins)}"
            ins.append((i, kind))
            struct[i] = j
    return YoungForest(ColoredSet(ins), ColoredSet(roots), struct)


def random_bullet_composable(rng: random.Random, length: int = 2, size: int = 6, d: int = 2,
                             max_tries: int = 200) -> list:
    """Composable legal forests over ``f, h, f•, h•`` (targets are resampled until legal)."""
    x = random_bullet_young(rng, size, d=d)
    out = []
    for k in range(length):
        for _ in range(max_tries):
            f = grow(x, rng, prefix="yzwv"[k % 4] + (str(k // 4) if k >= 4 else ""), max_units=1, colors=[H])
            y = f.target
            if is_bullet_legal(y) and (d > 1 or all(
                    sum(y.inputs.color(i) == H for i in y.fiber(j)) <= 1 for j in y.outputs)):
                break
        else:
            raise RuntimeError("could not grow a legal forest")
        out.append(f)
        x = f.target
    return out


def random_T(rng: random.Random, max_vertices: int = 4) -> Forest:
    """A random h-colored tree ``z -> (n,m) -> {h}`` with all vertices of color h."""
    nv = rng.randint(1, max_vertices)
    verts = [f"w{k}" for k in range(nv)]
    slots = []  # (slot id, color, vertex)
    for v in verts:
        for _ in range(rng.randint(0, 2)):
            slots.append((f"s{len(slots)}", F, v))
        for _ in range(rng.randint(0, 2)):
            slots.append((f"s{len(slots)}", H, v))
    attach = {}
    # vertex k > 0 plugs into a free h slot of a vertex with smaller index
    used = set()
    for k in range(1, nv):
        cands = [s for s, c, v in slots if c == H and s not in used and verts.index(v) < k]
        if not cands:
            host = rng.choice(verts[:k])
            s = f"s{len(slots)}"
            slots.append((s, H, host))
            cands = [s]
        s = rng.choice(cands)
        used.add(s)
        attach[(SRC_OUT, verts[k])] = (SRC_IN, s)
    attach[(SRC_OUT, verts[0])] = (OUT, "rt")
    z = YoungForest(ColoredSet([(s, c) for s, c, _ in slots]), ColoredSet({v: H for v in verts}),
                    {s: v for s, _, v in slots})
    free = [(s, c) for s, c, _ in slots if s not in used]
    f_free = [s for s, c in free if c == F]
    h_free = [s for s, c in free if c == H]
    rng.shuffle(f_free)
    rng.shuffle(h_free)
    names = {}
    for k, s in enumerate(f_free + h_free):
        names[s] = str(k + 1)
    n = len(f_free)
    tgt_in = ColoredSet([(names[s], F if k < n else H) for k, s in enumerate(f_free + h_free)])
    y = YoungForest(tgt_in, ColoredSet({"rt": H}), {i: "rt" for i in tgt_in})
    for s, nm in names.items():
        attach[(IN, nm)] = (SRC_IN, s)
    return Forest(z, y, attach)
