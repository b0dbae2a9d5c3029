import random
from itertools import combinations, permutations

import pytest

from geosub.geometry import Box, Segment
from geosub.oracles import brute_detect, explicit_graph, girth

import corpora


def test_explicit_graph_examples():
    assert explicit_graph([]) == []
    adj = explicit_graph([Segment((0, 0), (2, 2)), Segment((0, 2), (2, 0))])
    assert adj == [{1}, {0}]
    with pytest.raises(ValueError):
        explicit_graph([Box((0,), (1,))] * 5, cap=4)


def test_explicit_graph_is_symmetric_and_loop_free():
    rng = random.Random(3)
    for objs in (corpora.rand_boxes(rng, 30, 2, 10, 4), corpora.rand_segments(rng, 30, 20, 8), corpora.rand_fat(rng, 30)):
        adj = explicit_graph(objs)
        assert all(i not in adj[i] for i in range(len(adj)))
        assert all(i in adj[j] for i in range(len(adj)) for j in adj[i])


def test_brute_detect_examples():
    tri = [{1, 2}, {0, 2}, {0, 1}]
    assert brute_detect(tri, "cycle", 3).indices == (0, 1, 2)
    empty = [set() for _ in range(5)]
    w = brute_detect(empty, "indep", 3, colors=[0, 0, 1, 1, 2])
    assert w.indices == (0, 2, 4)
    assert brute_detect(tri, "clique", 3).indices == (0, 1, 2)
    with pytest.raises(ValueError):
        brute_detect(empty, "star", 3)
    with pytest.raises(ValueError):
        brute_detect([set()] * 70, "cycle", 4, cap=60)


def naive_first(adj, pattern, k, colors):
    """First vertex tuple in lexicographic order of sorted sets / rotations."""
    n = len(adj)
    for S in combinations(range(n), k):
        if colors is not None and len({colors[v] for v in S}) < k:
            continue
        if pattern == "clique" and all(b in adj[a] for a, b in combinations(S, 2)):
            return True
        if pattern == "indep" and all(b not in adj[a] for a, b in combinations(S, 2)):
            return True
        if pattern == "cycle":
            for rest in permutations(S[1:]):
                c = (S[0],) + rest
                if all(c[(i + 1) % k] in adj[c[i]] for i in range(k)):
                    return True
    return False


def test_brute_detect_matches_subset_enumeration():
    rng = random.Random(79)
    for _ in range(60):
        n = rng.randint(3, 9)
        p = rng.random()
        adj = [set() for _ in range(n)]
        for a, b in combinations(range(n), 2):
            if rng.random() < p:
                adj[a].add(b)
                adj[b].add(a)
        colors = [rng.randrange(4) for _ in range(n)] if rng.random() < 0.5 else None
        for pattern in ("cycle", "clique", "indep"):
            for k in (3, 4):
                got = brute_detect(adj, pattern, k, colors=colors)
                assert (got is not None) == naive_first(adj, pattern, k, colors)


def test_subgraph_pattern_and_girth():
    c5 = [{1, 4}, {0, 2}, {1, 3}, {2, 4}, {3, 0}]
    w = brute_detect(c5, "subgraph", 4, pattern_edges=[(0, 1), (1, 2), (2, 3)])
    assert w is not None and all(w.indices[b] in c5[w.indices[a]] for a, b in [(0, 1), (1, 2), (2, 3)])
    assert brute_detect(c5, "subgraph", 3, pattern_edges=[(0, 1), (1, 2), (2, 0)]) is None
    g, cyc = girth(c5)
    assert g == 5 and len(cyc) == 5
    assert girth([{1}, {0, 2}, {1}]) is None
