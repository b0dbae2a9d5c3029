import random
from itertools import combinations, product

import pytest

from geosub.geometry import Box, box_intersects
from geosub.hardness import (
    all_hyperedges,
    clique_orthants,
    directed_triangle,
    gen_boxes_from_digraph,
    gen_orthants_from_hypergraph,
    gen_random,
    hyperclique,
    hyperedge_family,
    random_digraph,
    random_hypergraph,
    sorted_hyperedges,
)
from geosub.io import instance_to_json
from geosub.oracles import brute_detect, explicit_graph
from geosub.sparse import SparseDigraph


def has_directed_triangle(n, arcs):
    A = set(arcs)
    return any((a, b) in A and (b, c) in A and (c, a) in A for a, b, c in product(range(1, n + 1), repeat=3))


def box_triangle(boxes):
    return brute_detect(explicit_graph(boxes, cap=10**4), "cycle", 3, cap=10**4) is not None


def independent_quadruples(orthants, first=False):
    """Colorful independent 4-sets, enumerated one family at a time; with
    ``first`` stop after one."""
    fam = [[i for i, b in enumerate(orthants) if b.color == f] for f in range(4)]

    def apart(i, group):
        return [j for j in group if not box_intersects(orthants[i], orthants[j])]

    out = []
    for a in fam[0]:
        B = apart(a, fam[1])
        C0 = apart(a, fam[2])
        D0 = apart(a, fam[3])
        for b in B:
            C = apart(b, C0)
            D1 = apart(b, D0)
            for c in C:
                out.extend((a, b, c, d) for d in apart(c, D1))
                if first and out:
                    return out[:1]
    return out


# ------------------------------------------------------------ C3 boxes


def test_directed_triangle_gives_box_triangle():
    boxes = gen_boxes_from_digraph(3, [(1, 2), (2, 3), (3, 1)])
    assert len(boxes) == 9 and all(b.d == 3 for b in boxes)
    w = brute_detect(explicit_graph(boxes), "cycle", 3)
    assert w is not None
    assert sorted(boxes[i].color for i in w.indices) == [0, 1, 2]


def test_single_edge_has_no_triangle():
    boxes = gen_boxes_from_digraph(2, [(1, 2)])
    assert len(boxes) == 3 and not box_triangle(boxes)


def test_accepts_sparse_digraph():
    G = SparseDigraph.from_edges(3, [(0, 1), (1, 2), (2, 0)])
    assert gen_boxes_from_digraph(G) == gen_boxes_from_digraph(3, [(1, 2), (2, 3), (3, 1)])
    assert directed_triangle(G) == (1, 2, 3)


def test_digraph_validation():
    with pytest.raises(ValueError):
        gen_boxes_from_digraph(2, [(1, 3)])
    with pytest.raises(ValueError):
        gen_boxes_from_digraph(2, [(1, 1)])


def test_c3_reduction_random_digraphs():
    rng = random.Random(53)
    seen = [0, 0]
    for _ in range(100):
        n = rng.randint(1, 10)
        arcs = random_digraph(n, rng.choice([0.1, 0.2, 0.35]), rng)
        want = has_directed_triangle(n, arcs)
        assert (directed_triangle(n, arcs) is not None) == want
        assert box_triangle(gen_boxes_from_digraph(n, arcs)) == want
        seen[want] += 1
    assert min(seen) >= 10


# ------------------------------------------------------------ I4 orthants


def test_single_hyperclique_gives_its_orthants():
    q = (1, 2, 2, 1)
    x, y, z, w = q
    edges = [(x, y, z, None), (None, y, z, w), (x, None, z, w), (x, y, None, w)]
    orth = gen_orthants_from_hypergraph(edges, 2)
    assert [hyperedge_family(e) for e in sorted_hyperedges(edges, 2)] == [b.color for b in orth]
    found = independent_quadruples(orth)
    assert found == [clique_orthants(edges, 2, q)]
    assert brute_detect(explicit_graph(orth), "indep", 4, colors=[b.color for b in orth]) is not None


def test_empty_hypergraph():
    assert gen_orthants_from_hypergraph([], 3) == []
    assert hyperclique([], 3) is None


def test_hyperedge_validation():
    with pytest.raises(ValueError):
        gen_orthants_from_hypergraph([(1, 2, 3, 4)], 4)
    with pytest.raises(ValueError):
        gen_orthants_from_hypergraph([(1, 2, None, 5)], 4)


def test_every_hypergraph_with_one_vertex_per_part():
    es = all_hyperedges(1)
    for mask in range(1 << len(es)):
        sub = [e for i, e in enumerate(es) if mask >> i & 1]
        orth = gen_orthants_from_hypergraph(sub, 1)
        assert bool(independent_quadruples(orth, first=True)) == (hyperclique(sub, 1) is not None)


@pytest.mark.parametrize("N", [1, 2, 3])
def test_complete_hypergraph_independent_sets_are_hypercliques(N):
    # orthants of a sub-hypergraph are a subset of these, so matching the
    # independent 4-sets here settles every hypergraph with parts of size N
    es = all_hyperedges(N)
    orth = gen_orthants_from_hypergraph(es, N)
    got = set(independent_quadruples(orth))
    want = {clique_orthants(es, N, q) for q in product(range(1, N + 1), repeat=4)}
    assert got == want and len(got) == N**4


def test_i4_reduction_random_hypergraphs():
    rng = random.Random(67)
    seen = [0, 0]
    for t in range(150):
        N = rng.randint(1, 5)
        es = random_hypergraph(N, rng.choice([0.3, 0.6, 0.85]), rng, plant=t % 5 == 0)
        want = hyperclique(es, N) is not None
        assert bool(independent_quadruples(gen_orthants_from_hypergraph(es, N), first=True)) == want
        seen[want] += 1
    assert min(seen) >= 10


# ------------------------------------------------------------ random instances


@pytest.mark.parametrize("kind", ["boxes", "segments", "fat"])
def test_gen_random_is_reproducible(kind):
    a = instance_to_json(gen_random(kind, {"n": 30, "density": 2, "colors": 3}, seed=5), kind)
    b = instance_to_json(gen_random(kind, {"n": 30, "density": 2, "colors": 3}, seed=5), kind)
    assert a == b
    assert a != instance_to_json(gen_random(kind, {"n": 30, "density": 2, "colors": 3}, seed=6), kind)


@pytest.mark.parametrize("kind,params", [("boxes", {"d": 1}), ("boxes", {"d": 3}), ("segments", {}), ("fat", {})])
def test_density_zero_is_disjoint_and_edges_grow(kind, params):
    counts = []
    for density in (0, 0.5, 2, 8):
        objs = gen_random(kind, dict(params, n=60, density=density), seed=11)
        counts.append(sum(len(a) for a in explicit_graph(objs)) // 2)
    assert counts[0] == 0
    assert counts == sorted(counts) and counts[-1] > 0


def test_gen_random_rangegraph_and_errors():
    G = gen_random("rangegraph", {"n": 20, "k": 3, "d": 2}, seed=1)
    assert sum(G.size(a) for a in range(3)) == 20
    with pytest.raises(ValueError):
        gen_random("lines", {}, 0)
    with pytest.raises(ValueError):
        gen_random("boxes", {"n": -1}, 0)
