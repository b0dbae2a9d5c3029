"""Cycle and clique detectors for box intersection graphs built on biclique
covers: k-cycles through a layered cover graph, even cycles through
degeneracy, and 4-cliques (k-cliques) through the high-low split."""

from __future__ import annotations

import math
import random
from collections import defaultdict
from itertools import permutations
from typing import Sequence

import numpy as np

from . import _kernels
from .biclique import BicliqueCover, cover_boxes
from .geometry import Box, OrthRange, box_point, box_range
from .rangegraph import KPartiteRangeGraph, from_boxes, lift_compound
from .rangetree import enumerate_edges_up_to
from .sparse import (
    DEFAULT_DELTA,
    DEFAULT_K_CAP,
    START_BLOCK,
    SparseDigraph,
    dense_core,
    find_C3_lopsided,
    find_C4_lopsided,
    find_Ck_degenerate,
    find_Ck_sparse,
)
from .witness import CLIQUE, CYCLE, Witness


def _check_k(k: int, cap: int):
    if not 3 <= k <= cap:
        raise ValueError(f"k must lie in [3, {cap}]")


def _is_chromatic(objects, chromatic):
    if chromatic is None:
        return len({o.color for o in objects}) > 1
    return chromatic


def cyclic_orders(k: int):
    """Cyclic orders of ``range(k)`` up to rotation and reflection."""
    for p in permutations(range(1, k)):
        if k < 3 or p[0] < p[-1]:
            yield (0,) + p


# ------------------------------------------------------------ layered G'


def layered_cover_graph(covers: Sequence[BicliqueCover]):
    """Digraph with a vertex ``z`` per biclique of every consecutive cover
    and an edge ``z_i -> z_j`` whenever some vertex lies in ``B_i`` of cover
    ``l`` and in ``A_j`` of cover ``l + 1`` (cyclically). Covers are over
    vertex ids shared between consecutive layers. Returns the digraph, the
    layer of each z, and the witness vertex of each edge."""
    k = len(covers)
    offset = [0]
    for c in covers:
        offset.append(offset[-1] + len(c.pairs))
    n = offset[-1]
    layer = [0] * n
    for l in range(k):
        for i in range(offset[l], offset[l + 1]):
            layer[i] = l
    in_a = []
    for c in covers:
        idx = defaultdict(list)
        for i, (A, _) in enumerate(c.pairs):
            for v in A:
                idx[v].append(i)
        in_a.append(idx)
    adj = [[] for _ in range(n)]
    via = {}
    for l, c in enumerate(covers):
        nxt = (l + 1) % k
        for i, (_, B) in enumerate(c.pairs):
            zi = offset[l] + i
            for v in B:
                for j in in_a[nxt].get(v, ()):
                    zj = offset[nxt] + j
                    if (zi, zj) not in via:
                        via[(zi, zj)] = v
                        adj[zi].append(zj)
    return SparseDigraph(n, adj, parts=layer), layer, via


def _cycle_through_layers(covers, k, **kw):
    """k-cycle ``(v_0, ..., v_{k-1})`` with ``v_l`` on the A side of cover
    ``l``, or ``None``."""
    Gp, layer, via = layered_cover_graph(covers)
    w = find_Ck_sparse(Gp, k, layers=layer, **kw)
    if w is None:
        return None
    z = list(w.indices)
    # rotate so z[0] is in layer 0
    r = z.index(next(x for x in z if layer[x] == 0))
    z = z[r:] + z[:r]
    verts = [via[(z[(l - 1) % k], z[l])] for l in range(k)]
    return verts


def _two_part_graph(boxes: Sequence[Box], ids: Sequence[int]) -> KPartiteRangeGraph:
    pts = [box_point(boxes[i]) for i in ids]
    rgs = [box_range(boxes[i]) for i in ids]
    return KPartiteRangeGraph([list(ids), list(ids)], {(0, 1): pts, (1, 0): pts}, {(0, 1): rgs, (1, 0): rgs})


def full_cover_boxes(boxes: Sequence[Box], ids: Sequence[int] | None = None) -> BicliqueCover:
    """Cover of every ordered intersecting pair among ``ids`` (global ids).
    A box meets itself, so a pair may contain ``(v, v)``."""
    ids = list(range(len(boxes))) if ids is None else list(ids)
    cov = cover_boxes(_two_part_graph(boxes, ids), 0, 1)
    return BicliqueCover([([ids[a] for a in A], [ids[b] for b in B]) for A, B in cov.pairs])


def cover_csr(cover: BicliqueCover):
    aptr = np.zeros(len(cover.pairs) + 1, np.int64)
    bptr = np.zeros(len(cover.pairs) + 1, np.int64)
    for i, (A, B) in enumerate(cover.pairs):
        aptr[i + 1] = aptr[i] + len(A)
        bptr[i + 1] = bptr[i] + len(B)
    aidx = np.fromiter((a for A, _ in cover.pairs for a in A), np.int64, count=int(aptr[-1]))
    bidx = np.fromiter((b for _, B in cover.pairs for b in B), np.int64, count=int(bptr[-1]))
    return aptr, aidx, bptr, bidx


def color_coded_cycle(cover: BicliqueCover, n: int, k: int, rng: random.Random, trials: int):
    """Random k-colorings of the ``n`` vertices; for each coloring and each
    cyclic color order, walk the cover's biclique hops (the layered cover
    graph of that coloring, never materialized). Returns a k-cycle of
    vertex ids or ``None``."""
    csr = cover_csr(cover)
    orders = list(cyclic_orders(k))
    for _ in range(trials):
        col = np.array([rng.randrange(k) for _ in range(n)], np.int64)
        for order in orders:
            oa = np.asarray(order, np.int64)
            s, _ = _kernels.cover_layered_cycle(*csr, col, oa, k, START_BLOCK)
            if s >= 0:
                return _cover_walk_back(cover, int(s), col, order, k)
    return None


def _cover_walk_back(cover, s, col, order, k):
    layers = [{s: None}]
    for step in range(1, k + 1):
        want = order[step % k]
        cur = {}
        for A, B in cover.pairs:
            src = [a for a in A if a in layers[-1]]
            if not src:
                continue
            for b in B:
                if col[b] == want and b not in cur:
                    cur[b] = src[0]
        layers.append(cur)
    # layers[k] holds s; step back through the predecessors
    cyc = []
    v = layers[k][s]
    for step in range(k - 1, 0, -1):
        cyc.append(v)
        v = layers[step][v]
    return [s] + cyc[::-1]


# -------------------------------------------------------------- C_k boxes


def find_Ck_boxes(
    boxes: Sequence[Box],
    k: int,
    *,
    chromatic: bool | None = None,
    seed: int = 0,
    delta: float = DEFAULT_DELTA,
    trials: int | None = None,
    cap: int = DEFAULT_K_CAP,
) -> Witness | None:
    """k-cycle in the box intersection graph.

    Chromatic mode looks for a cycle using one box of each color
    ``0..k-1``: for every cyclic color order it covers each consecutive
    color pair, links the covers into a layered digraph and searches it.
    Uncolored inputs are randomly k-colored ``trials`` times (default
    ``ceil(e^k ln(1/delta))``), walking a single cover of the whole graph.
    """
    _check_k(k, cap)
    if not boxes:
        return None
    if _is_chromatic(boxes, chromatic):
        colors = {b.color for b in boxes}
        if not colors <= set(range(k)):
            raise ValueError(f"chromatic mode expects colors in 0..{k - 1}")
        if len(colors) < k:
            return None
        G = from_boxes(boxes, k)
        covers = {}
        for order in cyclic_orders(k):
            cs = []
            for l in range(k):
                a, b = order[l], order[(l + 1) % k]
                if (a, b) not in covers:
                    cov = cover_boxes(G, a, b)
                    covers[(a, b)] = BicliqueCover(
                        [([G.labels[a][x] for x in A], [G.labels[b][y] for y in B]) for A, B in cov.pairs]
                    )
                cs.append(covers[(a, b)])
            verts = _cycle_through_layers(cs, k)
            if verts is not None:
                return Witness(CYCLE, tuple(verts), {"order": list(order)})
        return None
    t = trials if trials is not None else math.ceil(math.exp(k) * math.log(1 / delta))
    cover = full_cover_boxes(boxes)
    cyc = color_coded_cycle(cover, len(boxes), k, random.Random(seed), t)
    return Witness(CYCLE, tuple(cyc), {"trials": t}) if cyc else None


# ------------------------------------------------------------ even C_k


def even_cycle_threshold(n: int, d: int, k: int, c: float | None = None, c_prime: float | None = None) -> int:
    c = 4 * k if c is None else c
    c_prime = d + 1 if c_prime is None else c_prime
    return max(1, math.ceil(c * math.log2(max(n, 2)) ** c_prime))


def biclique_cycle(A: Sequence[int], B: Sequence[int], half: int):
    """A 2*half-cycle alternating between disjoint halves chosen from A, B
    (which may overlap), or ``None`` when too small."""
    sa, sb = set(A), set(B)
    only_a = [a for a in A if a not in sb]
    only_b = [b for b in B if b not in sa]
    both = [x for x in A if x in sb]
    if len(only_a) + len(both) < half or len(only_b) + len(both) < half:
        return None
    xa = only_a[:half]
    need_a = half - len(xa)
    xa += both[:need_a]
    rest = both[need_a:]
    xb = only_b[:half]
    need_b = half - len(xb)
    if need_b > len(rest):
        return None
    xb += rest[:need_b]
    out = []
    for a, b in zip(xa, xb):
        out.extend((a, b))
    return out


def find_Ck_even_boxes(
    boxes: Sequence[Box],
    k: int,
    *,
    c: float | None = None,
    c_prime: float | None = None,
    seed: int = 0,
    delta: float = DEFAULT_DELTA,
    stats: dict | None = None,
) -> Witness | None:
    """Even k-cycle (uncolored) via the sparse-or-dense dichotomy.

    Up to ``n * D / 2`` edges are generated with ``D = ceil(c log^c' n)``.
    If the budget overflows or peeling vertices of degree <= D leaves a
    dense remainder, a cover of the remainder must hold a ``K_{k/2,k/2}``.
    Otherwise the graph has degeneracy <= D and a degenerate-graph search
    finishes the job.
    """
    if k % 2 or k < 4:
        raise ValueError("k must be even and >= 4")
    n = len(boxes)
    if n < k:
        return None
    d = boxes[0].d
    D = even_cycle_threshold(n, d, k, c, c_prime)
    edges, overflow = enumerate_edges_up_to(boxes, n * D // 2)
    info = {"threshold": D, "overflow": overflow}
    core = list(range(n))
    G = None
    if not overflow:
        G = SparseDigraph.from_edges(n, edges, directed=False)
        core = dense_core(G, D)
        if not core:
            info["branch"] = "degenerate"
            if stats is not None:
                stats.update(info)
            w = find_Ck_degenerate(G, k, seed=seed, delta=delta)
            return Witness(CYCLE, w.indices, info) if w else None
    info["branch"] = "dense"
    info["core"] = len(core)
    cover = full_cover_boxes(boxes, core)
    for A, B in cover.pairs:
        cyc = biclique_cycle(A, B, k // 2)
        if cyc is not None:
            if stats is not None:
                stats.update(info)
            return Witness(CYCLE, tuple(cyc), info)
    # the counting argument did not fire for these constants: the cover
    # then bounds the edge count, so search the explicit graph instead
    info["branch"] = "dense-fallback"
    if stats is not None:
        stats.update(info)
    if G is None:
        edges, _ = enumerate_edges_up_to(boxes, n * n)
        G = SparseDigraph.from_edges(n, edges, directed=False)
    w = find_Ck_degenerate(G, k, seed=seed, delta=delta)
    return Witness(CYCLE, w.indices, info) if w else None


# ------------------------------------------------------------------ K4


def _concat_graph(G: KPartiteRangeGraph, l1: int, l2: int, low: list, l3: int, l4: int) -> KPartiteRangeGraph:
    """Tripartite range graph: part 0 = low edges (v1, v2), parts 1, 2 the
    original parts ``l3`` and ``l4``. An edge joins (v1, v2) and w iff
    both v1 w and v2 w are edges."""
    labels = [list(range(len(low))), list(range(G.size(l3))), list(range(G.size(l4)))]
    points, ranges = {}, {}
    for t, lt in ((1, l3), (2, l4)):
        points[(0, t)] = [G.points[(l1, lt)][u] + G.points[(l2, lt)][v] for u, v in low]
        ranges[(0, t)] = [
            _product2(G.ranges[(l1, lt)][w], G.ranges[(l2, lt)][w]) for w in range(G.size(lt))
        ]
        points[(t, 0)] = [G.points[(lt, l1)][w] + G.points[(lt, l2)][w] for w in range(G.size(lt))]
        ranges[(t, 0)] = [_product2(G.ranges[(lt, l1)][u], G.ranges[(lt, l2)][v]) for u, v in low]
    points[(1, 2)] = G.points[(l3, l4)]
    ranges[(1, 2)] = G.ranges[(l3, l4)]
    points[(2, 1)] = G.points[(l4, l3)]
    ranges[(2, 1)] = G.ranges[(l4, l3)]
    return KPartiteRangeGraph(labels, points, ranges)


def _product2(r1: OrthRange, r2: OrthRange) -> OrthRange:
    return OrthRange(r1.dim + r2.dim, tuple(p + q for p in r1.pieces for q in r2.pieces))


def _restricted_graph(covers, keep):
    """Layered digraph of ``covers`` after intersecting each A and B with
    the allowed vertex sets ``keep[l] = (A-set, B-set)``."""
    cs = []
    for cov, (ka, kb) in zip(covers, keep):
        pairs = []
        for A, B in cov:
            A2 = [a for a in A if a in ka]
            B2 = [b for b in B if b in kb]
            if A2 and B2:
                pairs.append((A2, B2))
        cs.append(BicliqueCover(pairs))
    return cs


def find_K4_boxrange(
    G: KPartiteRangeGraph,
    r: float | None = None,
    delta: float | None = None,
    stats: dict | None = None,
):
    """4-clique with one vertex per part, as local ``(v1, v2, v3, v4)``.

    Edges in a biclique of size ``mu <= n / r`` are low. If some clique
    edge is low, low edges become vertices of a tripartite range graph
    whose triangles are 4-cliques; its layered cover graph goes to the
    lopsided triangle search. Otherwise the diagonals 1-3 and 2-4 lie in
    large bicliques ``i`` and ``j``; every such pair induces a 4-partite
    cycle search over the covers restricted to ``A_i, A_j, B_i, B_j``.
    """
    if G.k != 4:
        raise ValueError("need exactly four parts")
    n = sum(G.size(a) for a in range(4))
    if any(G.size(a) == 0 for a in range(4)):
        return None
    r = math.sqrt(n) if r is None else r
    bound = n / r
    cov = {(a, b): cover_boxes(G, a, b) for a in range(4) for b in range(4) if a != b}
    if stats is not None:
        stats.update({"r": r, "bound": bound})
    # Case 1: some clique edge is low
    for l1 in range(4):
        for l2 in range(l1 + 1, 4):
            l3, l4 = [x for x in range(4) if x not in (l1, l2)]
            low = set()
            for A, B in cov[(l1, l2)].pairs:
                if len(A) + len(B) <= bound:
                    low.update((a, b) for a in A for b in B)
            if not low:
                continue
            low = sorted(low)
            H = _concat_graph(G, l1, l2, low, l3, l4)
            c01 = cover_boxes(H, 0, 1)
            c12 = cover_boxes(H, 1, 2)
            c20 = cover_boxes(H, 2, 0)
            # shared ids: part 0 -> e, part 1 -> n0 + w, part 2 -> n0 + n1 + w
            n0, n1 = H.size(0), H.size(1)
            gid = (lambda x: x, lambda x: n0 + x, lambda x: n0 + n1 + x)
            covers = [
                BicliqueCover([([gid[0](a) for a in A], [gid[1](b) for b in B]) for A, B in c01.pairs]),
                BicliqueCover([([gid[1](a) for a in A], [gid[2](b) for b in B]) for A, B in c12.pairs]),
                BicliqueCover([([gid[2](a) for a in A], [gid[0](b) for b in B]) for A, B in c20.pairs]),
            ]
            Gp, layer, via = layered_cover_graph(covers)
            tri = find_C3_lopsided(Gp, delta)
            if tri is not None:
                z0, z1, z2 = tri.indices
                w1 = via[(z0, z1)] - n0
                w2 = via[(z1, z2)] - n0 - n1
                e = low[via[(z2, z0)]]
                out = [None] * 4
                out[l1], out[l2], out[l3], out[l4] = e[0], e[1], w1, w2
                if stats is not None:
                    stats["case"] = 1
                return tuple(out)
    # Case 2: all clique edges high; guess big bicliques for 1-3 and 2-4
    big13 = [(A, B) for A, B in cov[(0, 2)].pairs if len(A) + len(B) > bound]
    big24 = [(A, B) for A, B in cov[(1, 3)].pairs if len(A) + len(B) > bound]
    base = [
        [([(0, a) for a in A], [(1, b) for b in B]) for A, B in cov[(0, 1)].pairs],
        [([(1, a) for a in A], [(2, b) for b in B]) for A, B in cov[(1, 2)].pairs],
        [([(2, a) for a in A], [(3, b) for b in B]) for A, B in cov[(2, 3)].pairs],
        [([(3, a) for a in A], [(0, b) for b in B]) for A, B in cov[(3, 0)].pairs],
    ]
    for Ai, Bi in big13:
        s1 = {(0, a) for a in Ai}
        s3 = {(2, b) for b in Bi}
        for Aj, Bj in big24:
            s2 = {(1, a) for a in Aj}
            s4 = {(3, b) for b in Bj}
            cs = _restricted_graph(base, [(s1, s2), (s2, s3), (s3, s4), (s4, s1)])
            if any(not c.pairs for c in cs):
                continue
            Gp, layer, via = layered_cover_graph(cs)
            cyc = find_C4_lopsided(Gp)
            if cyc is not None:
                z = cyc.indices
                verts = [via[(z[(l - 1) % 4], z[l])] for l in range(4)]
                if stats is not None:
                    stats["case"] = 2
                return tuple(v[1] for v in verts)
    return None


def find_Kk_boxes(
    boxes: Sequence[Box],
    k: int,
    *,
    r: float | None = None,
    cap: int = 200_000,
    chromatic: bool | None = None,
    seed: int = 0,
    delta: float = DEFAULT_DELTA,
    trials: int | None = None,
) -> Witness | None:
    """k-clique for k a multiple of 4: parts are grouped four ways into
    compound vertices (cliques of size k/4) and the 4-clique search runs on
    the compound range graph. Chromatic mode takes colors ``0..k-1`` as
    parts; uncolored inputs are randomly colored ``trials`` times."""
    if k < 4 or k % 4:
        raise ValueError("k must be a positive multiple of 4")
    if not boxes:
        return None
    if _is_chromatic(boxes, chromatic):
        colors = {b.color for b in boxes}
        if not colors <= set(range(k)):
            raise ValueError(f"chromatic mode expects colors in 0..{k - 1}")
        return _kk_colored(boxes, k, [b.color for b in boxes], r, cap)
    t = trials if trials is not None else math.ceil(math.exp(k) * math.log(1 / delta))
    rng = random.Random(seed)
    for _ in range(t):
        col = [rng.randrange(k) for _ in boxes]
        w = _kk_colored(boxes, k, col, r, cap)
        if w is not None:
            return Witness(CLIQUE, w.indices, {"trials": t})
    return None


def _kk_colored(boxes, k, colors, r, cap):
    recolored = [Box(b.lo, b.hi, c) for b, c in zip(boxes, colors)]
    G = from_boxes(recolored, k)
    if any(G.size(a) == 0 for a in range(k)):
        return None
    H = lift_compound(G, k // 4, cap=cap)
    hit = find_K4_boxrange(H, r)
    if hit is None:
        return None
    flat = []
    for part, v in enumerate(hit):
        lab = H.labels[part][v]
        flat.extend(lab if isinstance(lab, tuple) else (lab,))
    return Witness(CLIQUE, tuple(flat))
