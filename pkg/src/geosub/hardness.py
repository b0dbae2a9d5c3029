"""Reduction generators that encode hard graph problems as geometric
instances, their graph-side oracles, and seeded random instance generators."""

from __future__ import annotations

import math
import random
from fractions import Fraction
from itertools import product

from .geometry import Box, Segment
from .sparse import SparseDigraph

HALF = Fraction(1, 2)
THICKNESS = Fraction(1, 4)
GRID = 1 << 20
SPACING = 4  # lattice step of generated positions; minimum-size objects on it never meet


# ---------------------------------------------------------------------------
# directed 3-cycles as 3-D boxes


def _check_digraph(n: int, edges) -> list:
    out = []
    for u, v in edges:
        u, v = int(u), int(v)
        if not (1 <= u <= n and 1 <= v <= n):
            raise ValueError(f"edge ({u}, {v}) leaves vertex range 1..{n}")
        if u == v:
            raise ValueError(f"self-loop at {u}")
        out.append((u, v))
    return sorted(set(out))


def _arcs(G, edges):
    """Accept ``(n, arcs on 1..n)`` or a 0-indexed :class:`SparseDigraph`."""
    if isinstance(G, SparseDigraph):
        return G.n, [(u + 1, v + 1) for u in range(G.n) for v in G.adj[u]]
    return int(G), list(edges or [])


def gen_boxes_from_digraph(G, edges=None) -> list:
    """Three boxes per arc ``(u, v)``: ``{u} x {v} x R``, ``R x {u} x {v}`` and
    ``{v} x R x {u}``, each flat side thickened to width 1/2 and each ``R``
    clipped to ``[0, n + 1]``. The intersection graph has a triangle iff the
    digraph has a directed 3-cycle. Colors are 0, 1, 2 by box family.

    ``G`` is a vertex count ``n`` with ``edges`` on ``1..n``, or a
    :class:`SparseDigraph` (0-indexed, shifted up by one). Arcs are
    deduplicated and sorted; box ``3 * i + f`` comes from arc ``i``.
    """
    n, edges = _arcs(G, edges)
    arcs = _check_digraph(n, edges)
    t = THICKNESS
    full = (0, n + 1)

    def flat(c):
        return (c - t, c + t)

    out = []
    for u, v in arcs:
        for f, sides in enumerate(((flat(u), flat(v), full), (full, flat(u), flat(v)), (flat(v), full, flat(u)))):
            out.append(Box(tuple(s[0] for s in sides), tuple(s[1] for s in sides), f))
    return out


def directed_triangle(G, edges=None) -> tuple | None:
    """First directed 3-cycle ``(a, b, c)`` with ``a`` smallest, by brute force."""
    n, edges = _arcs(G, edges)
    arcs = set(_check_digraph(n, edges))
    out = [[] for _ in range(n + 1)]
    for u, v in sorted(arcs):
        out[u].append(v)
    for a in range(1, n + 1):
        for b in out[a]:
            if b < a:
                continue
            for c in out[b]:
                if c > a and (c, a) in arcs:
                    return (a, b, c)
    return None


# ---------------------------------------------------------------------------
# 4-hypercliques as 6-D orthants

# Part order x, y, z, w. A hyperedge is a 4-tuple of indices in 1..N with
# exactly one None marking the missing part. The orthant family of a
# hyperedge is the index of the missing part shifted by one: xyz -> 0 (alpha),
# yzw -> 1 (beta), zwx -> 2 (gamma), wxy -> 3 (delta).
_FAMILY = {3: 0, 0: 1, 1: 2, 2: 3}


def _check_hyperedge(e, N: int) -> tuple:
    e = tuple(e)
    if len(e) != 4 or sum(v is None for v in e) != 1:
        raise ValueError(f"hyperedge {e!r} must name exactly three of the four parts")
    for v in e:
        if v is not None and not (isinstance(v, int) and 1 <= v <= N):
            raise ValueError(f"hyperedge {e!r} has an index outside 1..{N}")
    return e


def hyperedge_family(e) -> int:
    return _FAMILY[e.index(None)]


def gen_orthants_from_hypergraph(edges, N: int) -> list:
    """Orthants in six dimensions, one per hyperedge, whose intersection
    graph has an independent set with one orthant per family iff the
    4-partite 3-uniform hypergraph has a 4-hyperclique.

    Labels are scaled by ``U = N + 1`` per part so that sums of labels from
    two parts determine both summands. Each open side ``(-inf, t)`` becomes the
    closed ``[-M, t - 1/2]`` and ``(t, inf)`` becomes ``[t, M]``; with integer
    thresholds, two such sides are disjoint exactly when the open ones were.
    Orthant ``i`` comes from the ``i``-th hyperedge in sorted order and its
    color is its family.
    """
    if N < 1:
        raise ValueError("part size must be positive")
    es = sorted_hyperedges(edges, N)
    U = N + 1
    M = 4 * U**4
    out = []
    for e in es:
        fam = hyperedge_family(e)
        lo, hi = [-M] * 6, [M] * 6

        def below(dim, t):
            hi[dim] = t - HALF

        def above(dim, t):
            lo[dim] = t

        if fam == 0:
            x, y, z = e[0], e[1] * U, e[2] * U**2
            below(0, y + z), above(3, x + y), below(4, x - z)
        elif fam == 1:
            y, z, w = e[1] * U, e[2] * U**2, e[3] * U**3
            above(0, y + z), below(1, z + w), below(5, y - w)
        elif fam == 2:
            x, z, w = e[0], e[2] * U**2, e[3] * U**3
            above(1, z + w), below(2, w + x), above(4, x - z)
        else:
            x, y, w = e[0], e[1] * U, e[3] * U**3
            above(2, w + x), below(3, x + y), above(5, y - w)
        out.append(Box(tuple(lo), tuple(hi), fam))
    return out


def _edge_key(e):
    return tuple(-1 if v is None else v for v in e)


def sorted_hyperedges(edges, N: int) -> list:
    """Hyperedges in the order used by :func:`gen_orthants_from_hypergraph`."""
    return sorted({_check_hyperedge(e, N) for e in edges}, key=_edge_key)


def hyperclique(edges, N: int) -> tuple | None:
    """First 4-hyperclique ``(x, y, z, w)`` in lexicographic order, by brute force."""
    es = {_check_hyperedge(e, N) for e in edges}
    for x, y, z, w in product(range(1, N + 1), repeat=4):
        if (
            (x, y, z, None) in es
            and (None, y, z, w) in es
            and (x, None, z, w) in es
            and (x, y, None, w) in es
        ):
            return (x, y, z, w)
    return None


def clique_orthants(edges, N: int, q: tuple) -> tuple:
    """Indices of the four orthants realizing hyperclique ``q``, in family order."""
    x, y, z, w = q
    es = sorted_hyperedges(edges, N)
    pos = {e: i for i, e in enumerate(es)}
    return (pos[(x, y, z, None)], pos[(None, y, z, w)], pos[(x, None, z, w)], pos[(x, y, None, w)])


def all_hyperedges(N: int) -> list:
    out = []
    for miss in range(4):
        for idx in product(range(1, N + 1), repeat=3):
            e = list(idx)
            e.insert(miss, None)
            out.append(tuple(e))
    return out


def random_hypergraph(N: int, p: float, rng: random.Random, plant: bool = False) -> list:
    es = [e for e in all_hyperedges(N) if rng.random() < p]
    if plant:
        x, y, z, w = (rng.randint(1, N) for _ in range(4))
        es += [(x, y, z, None), (None, y, z, w), (x, None, z, w), (x, y, None, w)]
    return sorted(set(es), key=_edge_key)


def random_digraph(n: int, p: float, rng: random.Random) -> list:
    return [(u, v) for u in range(1, n + 1) for v in range(1, n + 1) if u != v and rng.random() < p]


# ---------------------------------------------------------------------------
# seeded random instances

KINDS = ("boxes", "segments", "fat", "rangegraph")


def _positions(rng: random.Random, n: int, d: int) -> list:
    """``n`` distinct lattice points with step SPACING inside ``[0, GRID)^d``."""
    cells = GRID // SPACING
    seen, out = set(), []
    while len(out) < n:
        p = tuple(SPACING * rng.randrange(cells) for _ in range(d))
        if p not in seen:
            seen.add(p)
            out.append(p)
    return out


def _color(rng: random.Random, k: int) -> int:
    return rng.randrange(k) if k > 1 else 0


def gen_random(kind: str, params: dict | None = None, seed: int = 0):
    """Reproducible random instance.

    ``params``: ``n`` objects, ``density`` (expected intersections per
    object, roughly), ``colors`` (number of color classes, default 1), ``d``
    for boxes, ``k`` parts for range graphs, ``squares`` (fraction of fat
    objects that are squares). All sizes grow monotonically with density
    for a fixed seed, and density 0 gives pairwise disjoint objects.
    """
    params = dict(params or {})
    n = int(params.get("n", 20))
    density = float(params.get("density", 1.0))
    k = int(params.get("colors", 1))
    if n < 0 or density < 0 or k < 1:
        raise ValueError("n and density must be non-negative and colors positive")
    rng = random.Random(seed)
    if kind in ("boxes", "rangegraph"):
        d = int(params.get("d", 2))
        if d < 1:
            raise ValueError("dimension must be positive")
        parts = int(params.get("k", max(k, 2))) if kind == "rangegraph" else k
        pos = _positions(rng, n, d)
        side = 0.5 * GRID * (density / max(n - 1, 1)) ** (1.0 / d)
        out = []
        for p in pos:
            f = [rng.uniform(0.5, 1.5) for _ in range(d)]
            c = _color(rng, parts)
            out.append(Box(p, tuple(x + max(1, int(fi * side)) for x, fi in zip(p, f)), c))
        if kind == "rangegraph":
            from .rangegraph import from_boxes

            return from_boxes(out, parts)
        return out
    if kind == "segments":
        pos = _positions(rng, n, 2)
        length = GRID * math.sqrt(math.pi * density / (2 * max(n - 1, 1)))
        out = []
        for p in pos:
            while True:
                a, b = rng.randint(-1024, 1024), rng.randint(-1024, 1024)
                if (a, b) != (0, 0):
                    break
            norm = math.hypot(a, b)
            want = max(1.0, rng.uniform(0.5, 1.5) * length)
            # length rounded down on a 1/1024 grid; the shortest ones stay
            # under 1.5 units, so density 0 keeps SPACING-separated segments apart
            lam = Fraction(max(1, math.floor(want / norm * 1024)), 1024)
            out.append(Segment(p, (p[0] + lam * a, p[1] + lam * b), _color(rng, k)))
        return out
    if kind == "fat":
        from .fat import FatObject

        sq = float(params.get("squares", 0.3))
        pos = _positions(rng, n, 2)
        r = GRID * math.sqrt(density / (4 * math.pi * max(n - 1, 1)))
        out = []
        for p in pos:
            ri = max(1, int(rng.uniform(0.5, 1.5) * r))
            c = _color(rng, k)
            if rng.random() < sq:
                out.append(FatObject.square(p[0] - ri, p[1] - ri, 2 * ri, c))
            else:
                out.append(FatObject.disk(p[0], p[1], ri, c))
        return out
    raise ValueError(f"unknown kind {kind!r}; expected one of {KINDS}")
