import random
from itertools import combinations, permutations

import pytest
from hypothesis import given, strategies as st

from geosub.sparse import (
    BoolMatrix,
    SparseDigraph,
    bool_mat_mul,
    degeneracy_peel,
    find_C3_lopsided,
    find_C4_lopsided,
    find_Ck_degenerate,
    find_Ck_sparse,
)


def naive_mul(A, B):
    n, m, p = len(A), len(B), len(B[0])
    return [[int(any(A[i][t] and B[t][j] for t in range(m))) for j in range(p)] for i in range(n)]


def has_cycle(n, edges, k, directed):
    """Simple k-cycle by enumerating vertex sequences starting at their minimum."""
    adj = [set() for _ in range(n)]
    for u, v in edges:
        adj[u].add(v)
        if not directed:
            adj[v].add(u)

    def dfs(s, path):
        u = path[-1]
        if len(path) == k:
            return s in adj[u]
        return any(dfs(s, path + [v]) for v in adj[u] if v > s and v not in path)

    return any(dfs(s, [s]) for s in range(n))


def cycle_ok(G, c, k, directed):
    if len(c) != k or len(set(c)) != k:
        return False
    for a, b in zip(c, c[1:] + c[:1]):
        if not (G.has_edge(a, b) or (not directed and G.has_edge(b, a))):
            return False
    return True


def min_max_later_degree(n, edges):
    """Smallest possible maximum number of later neighbours over all removal
    orders, by dynamic programming over remaining vertex sets."""
    adj = [0] * n
    for u, v in edges:
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    best = {0: 0}
    for S in range(1, 1 << n):
        best[S] = min(
            max(bin(adj[v] & S).count("1"), best[S & ~(1 << v)]) for v in range(n) if S >> v & 1
        )
    return best[(1 << n) - 1]


# ------------------------------------------------------------ bool_mat_mul


def test_bool_mat_mul_identity_and_zero():
    A = BoolMatrix.from_dense([[1, 0, 1], [0, 1, 1], [1, 1, 0]])
    assert bool_mat_mul(BoolMatrix.identity(3), A) == A
    Z = BoolMatrix(3, 3)
    assert bool_mat_mul(A, Z) == Z


def test_bool_mat_mul_random_64():
    rng = random.Random(1)
    for density in (0.02, 0.1, 0.5):
        A = [[int(rng.random() < density) for _ in range(64)] for _ in range(64)]
        B = [[int(rng.random() < density) for _ in range(64)] for _ in range(64)]
        got = bool_mat_mul(BoolMatrix.from_dense(A), BoolMatrix.from_dense(B))
        assert got.to_dense() == naive_mul(A, B) or [list(map(int, r)) for r in got.to_dense()] == naive_mul(A, B)


@given(st.integers(1, 9), st.integers(1, 9), st.integers(1, 9), st.integers(0, 10**6))
def test_bool_mat_mul_rectangular(n, m, p, seed):
    rng = random.Random(seed)
    A = [[rng.randint(0, 1) for _ in range(m)] for _ in range(n)]
    B = [[rng.randint(0, 1) for _ in range(p)] for _ in range(m)]
    got = [list(map(int, r)) for r in bool_mat_mul(BoolMatrix.from_dense(A), BoolMatrix.from_dense(B)).to_dense()]
    assert got == naive_mul(A, B)


# ------------------------------------------------------------ degeneracy


def test_degeneracy_examples():
    tree = SparseDigraph.from_edges(6, [(0, 1), (0, 2), (1, 3), (1, 4), (2, 5)], directed=False)
    assert degeneracy_peel(tree)[1] == 1
    k5 = SparseDigraph.from_edges(5, combinations(range(5), 2), directed=False)
    assert degeneracy_peel(k5)[1] == 4


def test_degeneracy_matches_best_removal_order():
    rng = random.Random(19)
    for _ in range(150):
        n = rng.randint(1, 9)
        p = rng.random()
        edges = [e for e in combinations(range(n), 2) if rng.random() < p]
        G = SparseDigraph.from_edges(n, edges, directed=False)
        order, dg, out = degeneracy_peel(G)
        assert sorted(order) == list(range(n))
        assert max((len(o) for o in out), default=0) == dg == min_max_later_degree(n, edges)
        # out lists orient every edge exactly once
        assert sorted(tuple(sorted((v, u))) for v in range(n) for u in out[v]) == sorted(edges)


# ------------------------------------------------------------ lopsided


def test_c3_lopsided_examples():
    G = SparseDigraph.from_edges(3, [(0, 1), (1, 2), (2, 0)], parts=[0, 1, 2])
    w = find_C3_lopsided(G, 1)
    assert w is not None and sorted(w.indices) == [0, 1, 2]
    G = SparseDigraph.from_edges(4, [(0, 1), (1, 2), (2, 3)], parts=[0, 1, 0, 1])
    assert find_C3_lopsided(G, 1) is None


def _partite(rng, k):
    n = rng.randint(k, 18)
    parts = [i % k for i in range(n)]
    rng.shuffle(parts)
    p = rng.choice([0.1, 0.25, 0.5])
    edges = [(u, v) for u, v in combinations(range(n), 2) if parts[u] != parts[v] and rng.random() < p]
    return n, parts, edges


def test_c3_lopsided_matches_triple_loop():
    rng = random.Random(23)
    pos = 0
    for _ in range(200):
        n, parts, edges = _partite(rng, 3)
        E = {frozenset(e) for e in edges}
        want = any(
            {frozenset((a, b)), frozenset((b, c)), frozenset((c, a))} <= E
            for a in range(n) for b in range(n) for c in range(n)
            if (parts[a], parts[b], parts[c]) == (0, 1, 2)
        )
        G = SparseDigraph.from_edges(n, edges, parts=parts)
        for delta in (None, 1, 4):
            w = find_C3_lopsided(G, delta)
            assert (w is not None) == want
            if w:
                a, b, c = w.indices
                assert [parts[x] for x in w.indices] == [0, 1, 2]
                assert {frozenset((a, b)), frozenset((b, c)), frozenset((c, a))} <= E
        pos += want
    assert 20 < pos < 180


def test_c4_lopsided_examples():
    G = SparseDigraph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)], parts=[0, 1, 2, 3])
    assert find_C4_lopsided(G) is not None
    star = SparseDigraph.from_edges(5, [(0, i) for i in range(1, 5)], parts=[0, 1, 2, 3, 1])
    assert find_C4_lopsided(star) is None


def test_c4_lopsided_matches_four_loop():
    rng = random.Random(29)
    pos = 0
    for _ in range(200):
        n, parts, edges = _partite(rng, 4)
        E = {frozenset(e) for e in edges}
        P = [[v for v in range(n) if parts[v] == p] for p in range(4)]
        want = any(
            {frozenset((a, b)), frozenset((b, c)), frozenset((c, d)), frozenset((d, a))} <= E
            for a in P[0] for b in P[1] for c in P[2] for d in P[3]
        )
        G = SparseDigraph.from_edges(n, edges, parts=parts)
        for delta in (None, 1, 3):
            w = find_C4_lopsided(G, delta)
            assert (w is not None) == want
            if w:
                a, b, c, d = w.indices
                assert [parts[x] for x in w.indices] == [0, 1, 2, 3]
                assert {frozenset((a, b)), frozenset((b, c)), frozenset((c, d)), frozenset((d, a))} <= E
        pos += want
    assert 20 < pos < 180


# ------------------------------------------------------------ cycles


def test_ck_sparse_examples():
    tri = SparseDigraph.from_edges(3, [(0, 1), (1, 2), (2, 0)])
    assert sorted(find_Ck_sparse(tri, 3).indices) == [0, 1, 2]
    dag = SparseDigraph.from_edges(6, [(u, v) for u, v in combinations(range(6), 2)])
    for k in range(3, 7):
        assert find_Ck_sparse(dag, k) is None


def test_ck_sparse_matches_enumeration():
    rng = random.Random(31)
    for _ in range(200):
        n = rng.randint(3, 12)
        p = rng.choice([0.08, 0.15, 0.3])
        edges = [(u, v) for u, v in permutations(range(n), 2) if rng.random() < p]
        G = SparseDigraph.from_edges(n, edges)
        for k in range(3, 7):
            w = find_Ck_sparse(G, k, seed=rng.randrange(1 << 30))
            assert (w is not None) == has_cycle(n, edges, k, True)
            if w:
                assert cycle_ok(G, list(w.indices), k, True)


def test_ck_sparse_color_coding_path():
    # force the randomized branch; with the default failure bound it must
    # still agree on these seeds
    rng = random.Random(41)
    for _ in range(40):
        n = rng.randint(6, 12)
        edges = [(u, v) for u, v in permutations(range(n), 2) if rng.random() < 0.2]
        G = SparseDigraph.from_edges(n, edges)
        for k in (4, 5):
            w = find_Ck_sparse(G, k, seed=5, exhaustive_budget=0)
            assert (w is not None) == has_cycle(n, edges, k, True)


def test_ck_degenerate_examples():
    c4 = SparseDigraph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)], directed=False)
    w = find_Ck_degenerate(c4, 4)
    assert w is not None and cycle_ok(c4, list(w.indices), 4, False)
    tree = SparseDigraph.from_edges(7, [(i, (i - 1) // 2) for i in range(1, 7)], directed=False)
    assert find_Ck_degenerate(tree, 4) is None and find_Ck_degenerate(tree, 6) is None
    with pytest.raises(ValueError):
        find_Ck_degenerate(c4, 5)


def test_ck_degenerate_planted_and_oracle():
    rng = random.Random(37)
    for trial in range(120):
        n = rng.randint(6, 14)
        edges = {tuple(sorted(e)) for e in combinations(range(n), 2) if rng.random() < 0.12}
        if trial % 2 == 0:
            cyc = rng.sample(range(n), 6)
            edges |= {tuple(sorted((cyc[i], cyc[(i + 1) % 6]))) for i in range(6)}
        edges = sorted(edges)
        G = SparseDigraph.from_edges(n, edges, directed=False)
        for k in (4, 6):
            want = has_cycle(n, edges, k, False)
            if trial % 2 == 0 and k == 6:
                assert want
            w = find_Ck_degenerate(G, k, seed=trial)
            assert (w is not None) == want
            if w:
                assert cycle_ok(G, list(w.indices), k, False)
