"""Explicit sparse-graph kernels: Boolean products, degeneracy, lopsided
triangle and 4-cycle search, and k-cycles in sparse or degenerate graphs."""

from __future__ import annotations

import math
import random
from collections import defaultdict
from dataclasses import dataclass, field
from itertools import permutations
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .witness import CYCLE, Witness

DEFAULT_K_CAP = 8
DEFAULT_DELTA = 1e-6
# exhaustive search runs when its path budget stays below this
EXHAUSTIVE_BUDGET = 2_000_000
START_BLOCK = 256


@dataclass
class SparseDigraph:
    """Out-adjacency lists; ``parts`` and ``colors`` are optional labels."""

    n: int
    adj: list = field(default_factory=list)
    parts: list | None = None
    colors: list | None = None

    def __post_init__(self):
        if not self.adj:
            self.adj = [[] for _ in range(self.n)]

    @classmethod
    def from_edges(cls, n: int, edges: Iterable, directed: bool = True, **labels) -> "SparseDigraph":
        g = cls(n, [[] for _ in range(n)], **labels)
        seen = set()
        for u, v in edges:
            if u == v:
                raise ValueError("self-loops are not allowed")
            for a, b in ((u, v),) if directed else ((u, v), (v, u)):
                if (a, b) not in seen:
                    seen.add((a, b))
                    g.adj[a].append(b)
        return g

    @property
    def m(self) -> int:
        return sum(len(a) for a in self.adj)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._sets()[u]

    def _sets(self):
        s = getattr(self, "_adjsets", None)
        if s is None or len(s) != self.n:
            s = [set(a) for a in self.adj]
            self._adjsets = s
        return s

    def csr(self) -> tuple[np.ndarray, np.ndarray]:
        indptr = np.zeros(self.n + 1, np.int64)
        for v, a in enumerate(self.adj):
            indptr[v + 1] = indptr[v] + len(a)
        indices = np.fromiter((u for a in self.adj for u in a), np.int64, count=int(indptr[-1]))
        return indptr, indices


# ----------------------------------------------------------- Boolean matrices


@dataclass
class BoolMatrix:
    """Row-major Boolean matrix; each row is a Python int bitset."""

    rows: int
    cols: int
    data: list = field(default_factory=list)

    def __post_init__(self):
        if not self.data:
            self.data = [0] * self.rows
        if len(self.data) != self.rows:
            raise ValueError("row count mismatch")

    @classmethod
    def from_dense(cls, M) -> "BoolMatrix":
        M = [list(r) for r in M]
        rows = len(M)
        cols = len(M[0]) if rows else 0
        data = []
        for r in M:
            if len(r) != cols:
                raise ValueError("ragged matrix")
            data.append(sum(1 << j for j, x in enumerate(r) if x))
        return cls(rows, cols, data)

    @classmethod
    def identity(cls, n: int) -> "BoolMatrix":
        return cls(n, n, [1 << i for i in range(n)])

    def get(self, i: int, j: int) -> bool:
        return bool(self.data[i] >> j & 1)

    def set(self, i: int, j: int, value: bool = True):
        if value:
            self.data[i] |= 1 << j
        else:
            self.data[i] &= ~(1 << j)

    def to_dense(self) -> list:
        return [[bool(r >> j & 1) for j in range(self.cols)] for r in self.data]

    def transpose(self) -> "BoolMatrix":
        out = BoolMatrix(self.cols, self.rows)
        for i, r in enumerate(self.data):
            while r:
                low = r & -r
                out.data[low.bit_length() - 1] |= 1 << i
                r ^= low
        return out

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BoolMatrix)
            and (self.rows, self.cols) == (other.rows, other.cols)
            and self.data == other.data
        )


def bool_mat_mul(A: BoolMatrix, B: BoolMatrix) -> BoolMatrix:
    """``C[i] = OR of B[t] over set bits t of A[i]``, a whole row of ``B`` per
    word-parallel OR. Rows of ``A`` with equal 8-bit chunks share work through
    per-chunk lookup tables (the four Russians trick)."""
    if A.cols != B.rows:
        raise ValueError(f"inner dimensions differ: {A.cols} vs {B.rows}")
    out = BoolMatrix(A.rows, B.cols)
    chunk = 8
    tables = []
    for base in range(0, B.rows, chunk):
        rows = B.data[base : base + chunk]
        table = [0] * (1 << len(rows))
        for mask in range(1, len(table)):
            low = mask & -mask
            table[mask] = table[mask ^ low] | rows[low.bit_length() - 1]
        tables.append(table)
    full = (1 << chunk) - 1
    for i, r in enumerate(A.data):
        acc = 0
        t = 0
        while r:
            part = r & full
            if part:
                acc |= tables[t][part]
            r >>= chunk
            t += 1
        out.data[i] = acc
    return out


# ----------------------------------------------------------------- degeneracy


def degeneracy_peel(G: SparseDigraph):
    """Repeatedly remove a minimum-degree vertex of the undirected graph
    ``G`` (symmetric adjacency). Returns ``(order, degeneracy, out)`` where
    ``out[v]`` lists neighbours removed after ``v``."""
    n = G.n
    nbrs = G._sets()
    deg = [len(nbrs[v]) for v in range(n)]
    maxd = max(deg, default=0)
    buckets = [set() for _ in range(maxd + 1)]
    for v in range(n):
        buckets[deg[v]].add(v)
    removed = [False] * n
    order = []
    degeneracy = 0
    d = 0
    for _ in range(n):
        d = max(d - 1, 0)
        while not buckets[d]:
            d += 1
        v = buckets[d].pop()
        degeneracy = max(degeneracy, d)
        removed[v] = True
        order.append(v)
        for u in nbrs[v]:
            if not removed[u]:
                buckets[deg[u]].discard(u)
                deg[u] -= 1
                buckets[deg[u]].add(u)
    pos = {v: i for i, v in enumerate(order)}
    out = [[u for u in G.adj[v] if pos[u] > pos[v]] for v in range(n)]
    return order, degeneracy, out


def dense_core(G: SparseDigraph, threshold: int) -> list:
    """Vertices left after repeatedly deleting vertices of degree <= threshold."""
    nbrs = G._sets()
    deg = [len(s) for s in nbrs]
    alive = [True] * G.n
    stack = [v for v in range(G.n) if deg[v] <= threshold]
    for v in stack:
        alive[v] = False
    while stack:
        v = stack.pop()
        for u in nbrs[v]:
            if alive[u]:
                deg[u] -= 1
                if deg[u] <= threshold:
                    alive[u] = False
                    stack.append(u)
    return [v for v in range(G.n) if alive[v]]


# -------------------------------------------------------------- lopsided C3


def _part_adj(G: SparseDigraph):
    """``nb[v][p]`` = set of neighbours of ``v`` in part ``p`` (undirected)."""
    nb = [defaultdict(set) for _ in range(G.n)]
    for v in range(G.n):
        for u in G.adj[v]:
            nb[v][G.parts[u]].add(u)
            nb[u][G.parts[v]].add(v)
    return nb


def find_C3_lopsided(G: SparseDigraph, delta: float | None = None):
    """Triangle ``(v1, v2, v3)`` with ``v_i`` in part ``i - 1``, or ``None``.

    Parts 0-1 and 1-2 carry ``m`` edges, part 2-0 carries ``m'``. Vertices of
    parts 0 and 2 are low with at most ``delta`` neighbours in part 1; part-1
    vertices are low with at most ``delta * m' / m`` neighbours in part 2.
    Low cases scan neighbours; the all-high case multiplies Boolean
    matrices restricted to high vertices.
    """
    c = _c3_lopsided(G, delta)
    return Witness(CYCLE, c) if c else None


def _c3_lopsided(G: SparseDigraph, delta: float | None = None):
    if G.parts is None:
        raise ValueError("tripartite graph needs part labels")
    nb = _part_adj(G)
    P = [[v for v in range(G.n) if G.parts[v] == p] for p in range(3)]
    m = max(1, sum(len(nb[v][1]) for v in P[0]), sum(len(nb[v][2]) for v in P[1]))
    m2 = max(1, sum(len(nb[v][0]) for v in P[2]))
    if delta is None:
        delta = max(1.0, m ** (1 / 3))
    if delta <= 0:
        raise ValueError("delta must be positive")
    low2 = delta * m2 / m
    # Case 1: v1 or v3 low, via the m' edges v1-v3
    for v1 in P[0]:
        for v3 in nb[v1][2]:
            if len(nb[v1][1]) <= delta:
                for v2 in nb[v1][1]:
                    if v3 in nb[v2][2]:
                        return (v1, v2, v3)
            if len(nb[v3][1]) <= delta:
                for v2 in nb[v3][1]:
                    if v1 in nb[v2][0]:
                        return (v1, v2, v3)
    # Case 2: v2 low, via the edges v1-v2
    for v2 in P[1]:
        if len(nb[v2][2]) <= low2:
            for v1 in nb[v2][0]:
                for v3 in nb[v2][2]:
                    if v1 in nb[v3][0]:
                        return (v1, v2, v3)
    # Case 3: all high, by multiplication over high vertices
    H1 = [v for v in P[0] if len(nb[v][1]) > delta]
    H3 = [v for v in P[2] if len(nb[v][1]) > delta]
    H2 = [v for v in P[1] if len(nb[v][2]) > low2]
    if not (H1 and H2 and H3):
        return None
    i2 = {v: i for i, v in enumerate(H2)}
    i3 = {v: i for i, v in enumerate(H3)}
    A = BoolMatrix(len(H1), len(H2), [sum(1 << i2[u] for u in nb[v][1] if u in i2) for v in H1])
    B = BoolMatrix(len(H2), len(H3), [sum(1 << i3[u] for u in nb[v][2] if u in i3) for v in H2])
    C = bool_mat_mul(A, B)
    for a, v1 in enumerate(H1):
        closing = C.data[a] & sum(1 << i3[u] for u in nb[v1][2] if u in i3)
        if closing:
            v3 = H3[(closing & -closing).bit_length() - 1]
            for v2 in nb[v1][1]:
                if v3 in nb[v2][2]:
                    return (v1, v2, v3)
    return None


# -------------------------------------------------------------- lopsided C4


def find_C4_lopsided(G: SparseDigraph, delta: float | None = None):
    """4-cycle ``(v1, v2, v3, v4)`` with ``v_i`` in part ``i - 1``, or ``None``.

    Pairs 0-1 and 2-3 carry ``m`` edges, pairs 1-2 and 3-0 carry ``m'``
    (roles are swapped when ``m' > m``). Part-1 (part-3) vertices are low
    with at most ``delta`` neighbours in part 2 (part 0). Low-low cycles are
    found by marking ``(v1, v3)`` pairs red and blue; a high ``v2`` or ``v4``
    gets a breadth-first search of depth two from it.
    """
    c = _c4_lopsided(G, delta)
    return Witness(CYCLE, c) if c else None


def _c4_lopsided(G: SparseDigraph, delta: float | None = None):
    if G.parts is None:
        raise ValueError("4-partite graph needs part labels")
    nb = _part_adj(G)
    P = [[v for v in range(G.n) if G.parts[v] == p] for p in range(4)]
    m = sum(len(nb[v][1]) for v in P[0]) + sum(len(nb[v][3]) for v in P[2])
    m2 = sum(len(nb[v][2]) for v in P[1]) + sum(len(nb[v][0]) for v in P[3])
    rot = 0
    if m2 > m:
        rot = 1  # relabel parts (1,2,3,0) -> (0,1,2,3)
        m, m2 = m2, m
    def part(p):
        return (p + rot) % 4

    Q = [P[part(p)] for p in range(4)]
    if delta is None:
        delta = max(1.0, math.sqrt(max(m2, 1)))

    def unrot(c):
        # c lists vertices of parts part(0..3); return in original part order
        out = [None] * 4
        for p, v in enumerate(c):
            out[part(p)] = v
        return tuple(out)

    red = {}
    for v2 in Q[1]:
        if len(nb[v2][part(2)]) <= delta:
            for v1 in nb[v2][part(0)]:
                for v3 in nb[v2][part(2)]:
                    red.setdefault((v1, v3), v2)
    for v4 in Q[3]:
        if len(nb[v4][part(0)]) <= delta:
            for v3 in nb[v4][part(2)]:
                for v1 in nb[v4][part(0)]:
                    if (v1, v3) in red:
                        return unrot((v1, red[(v1, v3)], v3, v4))
    for side in (1, 3):
        for h in Q[side]:
            if len(nb[h][part((side + 1) % 4)]) <= delta:
                continue
            # h = v2 (or v4); look for a, b around it with a common neighbour
            a_part, b_part, c_part = part((side - 1) % 4), part((side + 1) % 4), part((side + 2) % 4)
            seen = {}
            for a in nb[h][a_part]:
                for c in nb[a][c_part]:
                    seen.setdefault(c, a)
            for b in nb[h][b_part]:
                for c in nb[b][c_part]:
                    if c in seen:
                        a = seen[c]
                        if side == 1:
                            return unrot((a, h, b, c))
                        return unrot((b, c, a, h))
    return None


# ---------------------------------------------------------------- k-cycles


def trials_for(k: int, delta: float) -> int:
    return max(1, math.ceil(math.exp(k) * math.log(1 / delta)))


def _exhaustive_cycle(adj: Sequence, k: int, directed: bool, budget: int | None):
    """Depth-first search for a k-cycle whose smallest vertex is its start.
    Returns the cycle, ``None``, or ``False`` when the budget runs out."""
    n = len(adj)
    steps = 0
    for s in range(n):
        path = [s]
        on = {s}
        stack = [iter(adj[s])]
        while stack:
            for u in stack[-1]:
                steps += 1
                if budget is not None and steps > budget:
                    return False
                if len(path) == k:
                    if u == s and (directed or k > 2):
                        return tuple(path)
                    continue
                if u > s and u not in on:
                    path.append(u)
                    on.add(u)
                    stack.append(iter(adj[u]))
                    break
            else:
                stack.pop()
                on.discard(path.pop())
    return None


def _path_budget(G: SparseDigraph, k: int) -> float:
    degs = sorted((len(a) for a in G.adj), reverse=True)
    dmax = degs[0] if degs else 0
    return G.m * max(dmax, 1) ** max(k - 2, 0)


def find_layered_cycle(G: SparseDigraph, k: int, labels: Sequence[int], order: Sequence[int]):
    """Directed cycle ``v_0 .. v_{k-1}`` with ``labels[v_i] == order[i]``."""
    indptr, indices = G.csr()
    lab = np.asarray(labels, np.int64)
    s, last = _kernels.layered_cycle(indptr, indices, lab, np.asarray(order, np.int64), k, START_BLOCK)
    if s < 0:
        return None
    return _walk_back(G, int(s), int(last), labels, order, k)


def _walk_back(G, s, last, labels, order, k):
    layers = [{s: None}]
    for step in range(1, k):
        cur = {}
        for v in layers[-1]:
            for u in G.adj[v]:
                if labels[u] == order[step] and u not in cur:
                    cur[u] = v
        layers.append(cur)
    end = last if last in layers[-1] else next(v for v in layers[-1] if s in G._sets()[v])
    path = [end]
    for step in range(k - 1, 0, -1):
        path.append(layers[step][path[-1]])
    return tuple(reversed(path))


def _colorful_cycle(G: SparseDigraph, k: int, rng: random.Random, trials: int, directed: bool):
    indptr, indices = G.csr()
    orders = [(0,) + p for p in permutations(range(1, k))]
    if not directed:
        orders = [o for o in orders if o[1] < o[-1]]
    for _ in range(trials):
        col = np.array([rng.randrange(k) for _ in range(G.n)], np.int64)
        for order in orders:
            oa = np.asarray(order, np.int64)
            s, last = _kernels.layered_cycle(indptr, indices, col, oa, k, START_BLOCK)
            if s >= 0:
                return _walk_back(G, int(s), int(last), col.tolist(), order, k)
    return None


def find_Ck_sparse(
    G: SparseDigraph,
    k: int,
    *,
    seed: int = 0,
    delta: float = DEFAULT_DELTA,
    trials: int | None = None,
    layers: Sequence[int] | None = None,
    cap: int = DEFAULT_K_CAP,
    exhaustive_budget: int = EXHAUSTIVE_BUDGET,
):
    """Directed k-cycle as a ``Witness`` over vertex ids, or ``None``.

    ``layers`` declares a k-layered digraph whose edges go from layer ``l``
    to ``l + 1 (mod k)``; its cycles are found deterministically by
    propagating reachability bitsets layer by layer. Otherwise k = 3 uses
    a degree split with Boolean multiplication over high-degree vertices,
    small graphs use exhaustive search, and larger ones use color coding.
    """
    if not 3 <= k <= cap:
        raise ValueError(f"k must lie in [3, {cap}]")
    if layers is not None:
        c = find_layered_cycle(G, k, layers, list(range(k)))
        return Witness(CYCLE, c) if c else None
    if k == 3:
        c = _directed_triangle(G)
        return Witness(CYCLE, c) if c else None
    if _path_budget(G, k) <= exhaustive_budget:
        c = _exhaustive_cycle(G.adj, k, True, None)
        return Witness(CYCLE, c) if c else None
    t = trials if trials is not None else trials_for(k, delta)
    c = _colorful_cycle(G, k, random.Random(seed), t, True)
    return Witness(CYCLE, c) if c else None


def _directed_triangle(G: SparseDigraph):
    n = G.n
    out = G._sets()
    inn = [set() for _ in range(n)]
    for v in range(n):
        for u in G.adj[v]:
            inn[u].add(v)
    m = max(G.m, 1)
    delta = max(1.0, m ** (1 / 3))
    deg = [len(out[v]) + len(inn[v]) for v in range(n)]
    for v in range(n):
        if deg[v] <= delta:
            for u in inn[v]:
                for w in out[v]:
                    if w != u and u in out[w]:
                        return (u, v, w)
    high = [v for v in range(n) if deg[v] > delta]
    if not high:
        return None
    idx = {v: i for i, v in enumerate(high)}
    A = BoolMatrix(len(high), len(high), [sum(1 << idx[u] for u in out[v] if u in idx) for v in high])
    A2 = bool_mat_mul(A, A)
    AT = A.transpose()
    for i, v in enumerate(high):
        hit = A2.data[i] & AT.data[i]
        if hit:
            w = high[(hit & -hit).bit_length() - 1]
            for u in out[v]:
                if u in idx and w in out[u]:
                    return (v, u, w)
    return None


def find_Ck_degenerate(
    G: SparseDigraph,
    k: int,
    orientation: Sequence | None = None,
    *,
    seed: int = 0,
    delta: float = DEFAULT_DELTA,
    trials: int | None = None,
    exhaustive_budget: int = EXHAUSTIVE_BUDGET,
):
    """k-cycle (k even) in an undirected graph of small degeneracy.

    k = 4 marks, for every vertex ``w``, pairs of out-neighbours ``{u, v}``
    of the acyclic orientation and the pairs ``(w, v)`` with ``v`` an
    out-neighbour of an out-neighbour; a pair reached twice through
    different middles closes a 4-cycle. Larger k uses exhaustive search on
    small graphs and color coding otherwise.
    """
    if k % 2 or k < 4:
        raise ValueError("k must be even and >= 4")
    if orientation is None:
        _, _, orientation = degeneracy_peel(G)
    if k == 4:
        c = _c4_oriented(G, orientation)
        return Witness(CYCLE, c) if c else None
    if _path_budget(G, k) <= exhaustive_budget:
        c = _exhaustive_cycle(G.adj, k, False, None)
        return Witness(CYCLE, c) if c else None
    t = trials if trials is not None else trials_for(k, delta)
    c = _colorful_cycle(G, k, random.Random(seed), t, False)
    return Witness(CYCLE, c) if c else None


def _c4_oriented(G: SparseDigraph, out: Sequence):
    """Mark 2-paths ``u - w - v`` under the pair ``{u, v}`` when both edges
    leave ``w`` or the path is directed ``u -> w -> v``; a pair reached
    through two different middles closes a 4-cycle. Taking the earliest
    vertex of any 4-cycle in the orientation order shows one of its two
    diagonals is reached twice, and both kinds number O(m * degeneracy)."""
    mark = {}

    def hit(u, v, w):
        key = (u, v) if u < v else (v, u)
        prev = mark.setdefault(key, w)
        if prev != w:
            return (key[0], prev, key[1], w)
        return None

    for w in range(G.n):
        ow = out[w]
        for i in range(len(ow)):
            for j in range(i + 1, len(ow)):
                c = hit(ow[i], ow[j], w)
                if c:
                    return c
    for u in range(G.n):
        for w in out[u]:
            for v in out[w]:
                c = hit(u, v, w)
                if c:
                    return c
    return None
