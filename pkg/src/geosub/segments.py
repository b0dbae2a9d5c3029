"""Detectors for segment intersection graphs: k-cycles through segment
biclique covers, 4-cycles through degeneracy, even cycles and girth through
planar separators, and the bichromatic disjoint pair."""

from __future__ import annotations

import bisect
import math
import random
from fractions import Fraction
from typing import Sequence

from .biclique import BicliqueCover, cover_segments
from .boxes import _cycle_through_layers, biclique_cycle, color_coded_cycle, cyclic_orders, even_cycle_threshold
from .geometry import Segment
from .separator import build_arrangement, split_segments, weighted_separator
from .sparse import DEFAULT_DELTA, DEFAULT_K_CAP, BoolMatrix, SparseDigraph, bool_mat_mul, dense_core, find_Ck_degenerate
from .witness import CYCLE, Witness

BASE_CASE = 64


def _check_k(k: int, cap: int):
    if not 3 <= k <= cap:
        raise ValueError(f"k must lie in [3, {cap}]")


def _symmetric(cover: BicliqueCover) -> BicliqueCover:
    return BicliqueCover(list(cover.pairs) + [(B, A) for A, B in cover.pairs])


def cover_edges(cover: BicliqueCover, limit: int | None = None) -> tuple[list, bool]:
    """Undirected edges of a cover, stopping once more than ``limit`` are
    found. Returns ``(edges, overflow)``."""
    seen = set()
    for A, B in cover.pairs:
        for a in A:
            for b in B:
                if a != b:
                    seen.add((a, b) if a < b else (b, a))
            if limit is not None and len(seen) > limit:
                return sorted(seen), True
    return sorted(seen), False


def _adjacency(n: int, edges) -> list:
    adj = [set() for _ in range(n)]
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    return adj


def _color_index(segments):
    palette = sorted({s.color for s in segments})
    where = {c: i for i, c in enumerate(palette)}
    return [where[s.color] for s in segments], len(palette)


# ------------------------------------------------------------------ C_k


def find_Ck_segments(
    segments: Sequence[Segment],
    k: int,
    *,
    chromatic: bool | None = None,
    seed: int = 0,
    delta: float = DEFAULT_DELTA,
    trials: int | None = None,
    cap: int = DEFAULT_K_CAP,
) -> Witness | None:
    """k-cycle in the segment intersection graph.

    A ``K_k`` met while building the cover is itself a k-cycle. Chromatic
    mode (k distinct colors) restricts the cover to each consecutive color
    pair of every cyclic order and searches the layered cover digraph.
    Otherwise the segments are randomly k-colored ``trials`` times.
    """
    _check_k(k, cap)
    if len(segments) < k:
        return None
    if chromatic is None:
        chromatic = len({s.color for s in segments}) > 1
    cover = cover_segments(segments, k)
    if isinstance(cover, Witness):
        if not chromatic or len({segments[i].color for i in cover.indices}) == k:
            return Witness(CYCLE, cover.indices, {"via": "clique"})
        # a clique with repeated colors proves nothing here: cover without the guard
        cover = cover_segments(segments, len(segments) + 1)
    sym = _symmetric(cover)
    if chromatic:
        col, ncol = _color_index(segments)
        if ncol != k:
            return None
        split = {}
        for a in range(k):
            for b in range(k):
                if a != b:
                    split[(a, b)] = BicliqueCover(
                        [
                            (x, y)
                            for x, y in (([u for u in A if col[u] == a], [v for v in B if col[v] == b]) for A, B in sym.pairs)
                            if x and y
                        ]
                    )
        for order in cyclic_orders(k):
            cs = [split[(order[l], order[(l + 1) % k])] for l in range(k)]
            verts = _cycle_through_layers(cs, k)
            if verts is not None:
                return Witness(CYCLE, tuple(verts), {"order": list(order)})
        return None
    t = trials if trials is not None else math.ceil(math.exp(k) * math.log(1 / delta))
    cyc = color_coded_cycle(sym, len(segments), k, random.Random(seed), t)
    return Witness(CYCLE, tuple(cyc), {"trials": t}) if cyc else None


# ------------------------------------------------------------------ C_4


def find_C4_segments(
    segments: Sequence[Segment],
    *,
    c: float | None = None,
    c_prime: float | None = None,
    stats: dict | None = None,
) -> Witness | None:
    """4-cycle via the sparse-or-dense dichotomy.

    Intersecting pairs are listed from the segment cover with an early stop
    after ``n * D / 2``, ``D = ceil(c log^c' n)``. A dense remainder after
    peeling degree <= D vertices must contain a ``K_{2,2}`` inside one
    biclique; a sparse graph is searched by its degeneracy orientation.
    """
    n = len(segments)
    info: dict = {}
    if stats is not None:
        stats.update(info)
    if n < 4:
        return None
    cover = cover_segments(segments, 4)
    if isinstance(cover, Witness):
        return Witness(CYCLE, cover.indices, {"branch": "clique"})
    D = even_cycle_threshold(n, 1, 4, c, c_prime)
    edges, overflow = cover_edges(cover, n * D // 2)
    info.update(threshold=D, overflow=overflow, edges=len(edges))
    core = list(range(n))
    G = None
    if not overflow:
        G = SparseDigraph.from_edges(n, edges, directed=False)
        core = dense_core(G, D)
        if not core:
            info["branch"] = "degenerate"
            if stats is not None:
                stats.update(info)
            w = find_Ck_degenerate(G, 4)
            return Witness(CYCLE, w.indices, info) if w else None
    info["branch"] = "dense"
    keep = set(core)
    for A, B in cover.pairs:
        cyc = biclique_cycle([a for a in A if a in keep], [b for b in B if b in keep], 2)
        if cyc is not None:
            if stats is not None:
                stats.update(info)
            return Witness(CYCLE, tuple(cyc), info)
    info["branch"] = "dense-fallback"
    if G is None:
        edges, _ = cover_edges(cover)
        info["edges"] = len(edges)
        G = SparseDigraph.from_edges(n, edges, directed=False)
    if stats is not None:
        stats.update(info)
    w = find_Ck_degenerate(G, 4)
    return Witness(CYCLE, w.indices, info) if w else None


# ---------------------------------------------------- color-sequence tables


class ColorSeqTable:
    """``f[gamma][u, v]``: some walk from ``u`` to ``v`` has color sequence
    ``gamma`` on the vertices after ``u``. Only sequences of distinct
    colors are stored, the only ones a colorful cycle can use."""

    def __init__(self, index: Sequence[int]):
        self.index = list(index)
        self.pos = {v: i for i, v in enumerate(self.index)}
        self.f: dict = {}

    def get(self, u: int, v: int, gamma: tuple) -> bool:
        M = self.f.get(tuple(gamma))
        return bool(M is not None and M.get(self.pos[u], self.pos[v]))

    def mark(self, u: int, v: int, gamma: tuple):
        M = self.f.get(gamma)
        if M is None:
            M = self.f[gamma] = BoolMatrix(len(self.index), len(self.index))
        M.data[self.pos[u]] |= 1 << self.pos[v]

    def entries(self):
        for gamma, M in self.f.items():
            for i, row in enumerate(M.data):
                for j in range(len(self.index)):
                    if row >> j & 1:
                        yield self.index[i], self.index[j], gamma


def _walks_from(adj, col, u, k, allowed, emit):
    """Enumerate walks from ``u`` with distinct colors after ``u`` and at
    most ``k`` steps, calling ``emit(v, gamma)`` for each endpoint."""
    gamma: list = []

    def dfs(v, used):
        if len(gamma) == k:
            return
        for w in adj[v]:
            if w not in allowed or used >> col[w] & 1:
                continue
            gamma.append(col[w])
            emit(w, tuple(gamma))
            dfs(w, used | 1 << col[w])
            gamma.pop()

    dfs(u, 0)


def _colorful_closed(adj, col, k, allowed, start):
    """A k-cycle through ``start`` using each color once, or ``None``."""
    path = [start]
    full = (1 << k) - 1

    def dfs(v, used):
        if len(path) == k:
            return used == full and start in adj[v]
        for w in adj[v]:
            if w in allowed and w != start and not used >> col[w] & 1:
                path.append(w)
                if dfs(w, used | 1 << col[w]):
                    return True
                path.pop()
        return False

    return tuple(path) if dfs(start, 1 << col[start]) else None


def _follow(adj, col, allowed, u, gamma):
    """Closed walk from ``u`` whose vertices after ``u`` carry ``gamma``."""
    layers = [{u: None}]
    for i, c in enumerate(gamma):
        nxt = {}
        for v in layers[-1]:
            for w in adj[v]:
                if w in allowed and col[w] == c and w not in nxt:
                    if i == len(gamma) - 1 and w != u:
                        continue
                    nxt[w] = v
        layers.append(nxt)
    if u not in layers[-1]:
        return None
    out = []
    v = u
    for i in range(len(gamma), 0, -1):
        v = layers[i][v]
        out.append(v)
    return tuple(reversed(out))


class _EvenCycleSearch:
    def __init__(self, segments, adj, col, k, base, stats):
        self.segments = segments
        self.adj = adj
        self.col = col
        self.k = k
        self.base = base
        self.stats = stats
        self.rounds = max(1, math.ceil(math.log2(k)))

    def solve(self, S: list, Q: list):
        """Returns ``(cycle or None, table over Q)``."""
        self.stats["nodes"] = self.stats.get("nodes", 0) + 1
        if len(S) <= self.base:
            return self._brute(S, Q)
        local = {v: i for i, v in enumerate(S)}
        pairs = [(local[a], local[b]) for a in S for b in self.adj[a] if b in local and local[a] < local[b]]
        H = build_arrangement([self.segments[i] for i in S], pairs)
        sep = weighted_separator(H)
        S1, S2, SB = (sorted(S[i] for i in part) for part in split_segments(H, sep))
        if max(len(S1), len(S2)) + len(SB) >= len(S):
            return self._brute(S, Q)
        self.stats["separators"] = self.stats.get("separators", 0) + 1
        X = list(dict.fromkeys(list(Q) + SB))
        T = ColorSeqTable(X)
        for part in (S1, S2):
            ps = set(part)
            Qi = [q for q in Q if q in ps] + SB
            cyc, Ti = self.solve(part + SB, list(dict.fromkeys(Qi)))
            if cyc is not None:
                return cyc, None
            for u, v, gamma in Ti.entries():
                T.mark(u, v, gamma)
        self._square(T)
        allowed = set(S)
        for u in SB:
            i = T.pos[u]
            for gamma, M in T.f.items():
                if len(gamma) == self.k and M.data[i] >> i & 1:
                    cyc = _follow(self.adj, self.col, allowed, u, gamma)
                    if cyc is not None:
                        return cyc, None
        out = ColorSeqTable(Q)
        for gamma, M in T.f.items():
            rows = [M.data[T.pos[q]] for q in Q]
            sub = BoolMatrix(len(Q), len(Q), [sum(1 << j for j, q in enumerate(Q) if r >> T.pos[q] & 1) for r in rows])
            if any(sub.data):
                out.f[gamma] = sub
        return None, out

    def _square(self, T: ColorSeqTable):
        k = self.k
        for _ in range(self.rounds):
            items = [(g, set(g), M) for g, M in T.f.items() if any(M.data)]
            new = {g: BoolMatrix(M.rows, M.cols, list(M.data)) for g, M in T.f.items()}
            for g1, s1, M1 in items:
                for g2, s2, M2 in items:
                    if len(g1) + len(g2) > k or s1 & s2:
                        continue
                    P = bool_mat_mul(M1, M2)
                    if any(P.data):
                        g = g1 + g2
                        cur = new.get(g)
                        if cur is None:
                            new[g] = P
                        else:
                            cur.data = [a | b for a, b in zip(cur.data, P.data)]
            T.f = new

    def _brute(self, S, Q):
        allowed = set(S)
        for v in S:
            if self.col[v] == 0:
                cyc = _colorful_closed(self.adj, self.col, self.k, allowed, v)
                if cyc is not None:
                    return cyc, None
        T = ColorSeqTable(Q)
        qs = set(Q)
        for u in Q:
            _walks_from(self.adj, self.col, u, self.k, allowed, lambda v, g, u=u: v in qs and T.mark(u, v, g))
        return None, T


def color_seq_table(segments: Sequence[Segment], k: int, colors: Sequence[int], Q: Sequence[int], base: int = BASE_CASE):
    """Color-sequence table over ``Q`` for the whole segment set computed by
    the separator recursion (``None`` when a colorful k-cycle cut the
    recursion short)."""
    edges, _ = cover_edges(cover_segments(segments, len(segments) + 1))
    adj = _adjacency(len(segments), edges)
    search = _EvenCycleSearch(segments, adj, list(colors), k, base, {})
    _, T = search.solve(list(range(len(segments))), list(Q))
    return T


def find_Ck_even_segments(
    segments: Sequence[Segment],
    k: int,
    *,
    chromatic: bool | None = None,
    seed: int = 0,
    delta: float = DEFAULT_DELTA,
    trials: int | None = None,
    base: int = BASE_CASE,
    cap: int = DEFAULT_K_CAP,
    stats: dict | None = None,
) -> Witness | None:
    """Even k-cycle (k >= 6) through separator recursion.

    A ``K_k`` or ``K_{k/2,k/2}`` inside the cover ends the search at once.
    Otherwise, for a coloring, every recursion node splits its segments by
    a separator of their arrangement, takes the children's walk tables on
    boundary segments, closes them under concatenation by repeated
    squaring, and reads colorful k-cycles off the diagonal. Chromatic mode
    uses the given k colors; otherwise ``trials`` random colorings.
    """
    if k % 2 or k < 6:
        raise ValueError("k must be even and >= 6")
    _check_k(k, cap)
    st = stats if stats is not None else {}
    n = len(segments)
    if n < k:
        return None
    if chromatic is None:
        chromatic = len({s.color for s in segments}) > 1
    cover = cover_segments(segments, k)
    if isinstance(cover, Witness):
        if not chromatic or len({segments[i].color for i in cover.indices}) == k:
            st["branch"] = "clique"
            return Witness(CYCLE, cover.indices, {"branch": "clique"})
        cover = cover_segments(segments, n + 1)
    if not chromatic:
        # the shortcuts ignore colors, so only the uncolored search may use them
        for A, B in cover.pairs:
            cyc = biclique_cycle(A, B, k // 2)
            if cyc is not None:
                st["branch"] = "biclique"
                return Witness(CYCLE, tuple(cyc), {"branch": "biclique"})
    edges, _ = cover_edges(cover)
    adj = _adjacency(n, edges)
    st["edges"] = len(edges)
    everything = list(range(n))
    if chromatic:
        col, ncol = _color_index(segments)
        if ncol != k:
            return None
        cyc, _ = _EvenCycleSearch(segments, adj, col, k, base, st).solve(everything, [])
        return Witness(CYCLE, cyc, {"branch": "separator"}) if cyc else None
    t = trials if trials is not None else math.ceil(math.exp(k) * math.log(1 / delta))
    rng = random.Random(seed)
    for trial in range(t):
        col = [rng.randrange(k) for _ in range(n)]
        cyc, _ = _EvenCycleSearch(segments, adj, col, k, base, st).solve(everything, [])
        if cyc is not None:
            return Witness(CYCLE, cyc, {"branch": "separator", "trial": trial})
    return None


# ---------------------------------------------------------------- girth


def _shortest_through(adj, allowed, s):
    dist = {s: 0}
    par = {s: None}
    branch = {s: s}
    order = [s]
    for v in order:
        for w in adj[v]:
            if w in allowed and w not in dist:
                dist[w] = dist[v] + 1
                par[w] = v
                branch[w] = w if v == s else branch[v]
                order.append(w)
    best = None
    for x in order:
        for y in adj[x]:
            if y in dist and x < y and par[x] != y and par[y] != x and branch[x] != branch[y]:
                L = dist[x] + dist[y] + 1
                if best is None or L < best[0]:
                    best = (L, x, y)
    if best is None:
        return None
    _, x, y = best
    left = [x]
    while left[-1] != s:
        left.append(par[left[-1]])
    right = [y]
    while right[-1] != s:
        right.append(par[right[-1]])
    return tuple(reversed(left)) + tuple(right[:-1])


def girth_segments(
    segments: Sequence[Segment],
    *,
    seed: int = 0,
    delta: float = DEFAULT_DELTA,
    base: int = BASE_CASE,
    stats: dict | None = None,
):
    """``(girth, shortest cycle)`` of the segment intersection graph, or
    ``None`` if it is acyclic. Triangles and 4-cycles are checked first;
    then the graph is sparse and a separator recursion runs a BFS from
    every boundary segment for the shortest cycle through it."""
    n = len(segments)
    st = stats if stats is not None else {}
    if n < 3:
        return None
    w = find_Ck_segments(segments, 3, chromatic=False, seed=seed, delta=delta)
    if w is not None:
        return 3, w
    w = find_C4_segments(segments)
    if w is not None:
        return 4, w
    edges, _ = cover_edges(cover_segments(segments, n + 1))
    adj = _adjacency(n, edges)
    st["edges"] = len(edges)
    best = _girth_rec(segments, adj, list(range(n)), base, st)
    if best is None:
        return None
    return len(best), Witness(CYCLE, best)


def _girth_rec(segments, adj, S, base, st):
    allowed = set(S)
    if len(S) <= base:
        best = None
        for s in S:
            c = _shortest_through(adj, allowed, s)
            if c is not None and (best is None or len(c) < len(best)):
                best = c
                if len(c) == 5:
                    break
        return best
    local = {v: i for i, v in enumerate(S)}
    pairs = [(local[a], local[b]) for a in S for b in adj[a] if b in local and local[a] < local[b]]
    H = build_arrangement([segments[i] for i in S], pairs)
    S1, S2, SB = (sorted(S[i] for i in part) for part in split_segments(H, weighted_separator(H)))
    if max(len(S1), len(S2)) + len(SB) >= len(S):
        return _girth_rec(segments, adj, S, len(S), st)
    st["separators"] = st.get("separators", 0) + 1
    best = None
    for s in SB:
        c = _shortest_through(adj, allowed, s)
        if c is not None and (best is None or len(c) < len(best)):
            best = c
    for part in (S1, S2):
        if best is not None and len(best) == 5:
            break
        c = _girth_rec(segments, adj, part, base, st)
        if c is not None and (best is None or len(c) < len(best)):
            best = c
    return best


# ---------------------------------------------------- bichromatic disjoint


class UpperHull:
    """Upper convex hull under point insertion, answering
    ``argmax y - m x`` by binary search over edge slopes."""

    def __init__(self):
        self.xs: list = []
        self.pts: list = []  # (x, y, tag)

    @staticmethod
    def _cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    def insert(self, x, y, tag):
        i = bisect.bisect_left(self.xs, x)
        if i < len(self.xs) and self.xs[i] == x:
            if self.pts[i][1] >= y:
                return
            del self.xs[i]
            del self.pts[i]
        p = (x, y, tag)
        if 0 < i < len(self.pts) and self._cross(self.pts[i - 1], self.pts[i], p) <= 0:
            return
        while i >= 2 and self._cross(self.pts[i - 2], self.pts[i - 1], p) >= 0:
            del self.xs[i - 1]
            del self.pts[i - 1]
            i -= 1
        while i + 1 < len(self.pts) and self._cross(p, self.pts[i], self.pts[i + 1]) >= 0:
            del self.xs[i]
            del self.pts[i]
        self.xs.insert(i, x)
        self.pts.insert(i, p)

    def argmax(self, m):
        pts = self.pts
        lo, hi = 0, len(pts) - 1
        while lo < hi:
            mid = (lo + hi) // 2
            a, b = pts[mid], pts[mid + 1]
            if (b[1] - a[1]) > m * (b[0] - a[0]):
                lo = mid + 1
            else:
                hi = mid
        return pts[lo]


def _shear_vertical(segs_a, segs_b):
    bad = set()
    for s in list(segs_a) + list(segs_b):
        dx, dy = s.q[0] - s.p[0], s.q[1] - s.p[1]
        if dy != 0:
            bad.add(Fraction(-dx) / dy)
    lam = 0
    while lam in bad:
        lam += 1

    def mp(pt):
        return (pt[0] + lam * pt[1], pt[1])

    return [(mp(s.p), mp(s.q)) for s in segs_a], [(mp(s.p), mp(s.q)) for s in segs_b]


def _above_sweep(P, Q):
    """Some P segment with slope >= the Q line's slope whose left endpoint
    lies strictly above that line. Segments are non-vertical endpoint
    pairs; returns ``(i, j)`` or ``None``."""
    ps = []
    for i, (a, b) in enumerate(P):
        left, right = min(a, b), max(a, b)
        ps.append((Fraction(right[1] - left[1]) / (right[0] - left[0]), left, i))
    qs = []
    for j, (a, b) in enumerate(Q):
        left, right = min(a, b), max(a, b)
        m = Fraction(right[1] - left[1]) / (right[0] - left[0])
        qs.append((m, left[1] - m * left[0], j))
    ps.sort(key=lambda t: -t[0])
    qs.sort(key=lambda t: -t[0])
    hull = UpperHull()
    k = 0
    for m, b, j in qs:
        while k < len(ps) and ps[k][0] >= m:
            _, (x, y), i = ps[k]
            hull.insert(x, y, i)
            k += 1
        if hull.pts:
            x, y, i = hull.argmax(m)
            if y - m * x > b:
                return i, j
    return None


def _normalize_line(a, b):
    A = b[1] - a[1]
    B = a[0] - b[0]
    C = A * a[0] + B * a[1]
    d = A if A != 0 else B
    return (Fraction(A) / d, Fraction(B) / d, Fraction(C) / d)


def find_disjoint_pair(red: Sequence[Segment], blue: Sequence[Segment]):
    """``(i, j)`` with ``red[i]`` and ``blue[j]`` disjoint, or ``None``.

    Disjoint segments on different lines have one strictly on one side of
    the other's line. Each side, slope order and color role is a sweep by
    decreasing slope maintaining the upper hull of candidate endpoints.
    Collinear pairs are compared as intervals on their common line.
    """
    if not red or not blue:
        return None
    R, B = _shear_vertical(red, blue)
    for swap in (False, True):
        P, Q = (B, R) if swap else (R, B)
        for fx in (1, -1):
            for fy in (1, -1):
                tP = [((a[0] * fx, a[1] * fy), (b[0] * fx, b[1] * fy)) for a, b in P]
                tQ = [((a[0] * fx, a[1] * fy), (b[0] * fx, b[1] * fy)) for a, b in Q]
                hit = _above_sweep(tP, tQ)
                if hit is not None:
                    return (hit[1], hit[0]) if swap else hit
    lines: dict = {}
    for tag, S in ((0, R), (1, B)):
        for i, (a, b) in enumerate(S):
            lines.setdefault(_normalize_line(a, b), ([], []))[tag].append((min(a, b)[0], max(a, b)[0], i))
    for reds, blues in lines.values():
        if not reds or not blues:
            continue
        for X, Y, flip in ((reds, blues, False), (blues, reds, True)):
            lo = min(X, key=lambda t: t[1])
            hi = max(Y, key=lambda t: t[0])
            if lo[1] < hi[0]:
                return (hi[2], lo[2]) if flip else (lo[2], hi[2])
    return None
