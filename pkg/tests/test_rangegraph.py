import random
from itertools import product

from hypothesis import given, strategies as st

from geosub.geometry import Box, box_intersects
from geosub.rangegraph import complement_pair, from_boxes, lift_compound


def rand_boxes(rng, n, d, k, L=10, W=5):
    out = []
    for _ in range(n):
        lo = [rng.randint(0, L) for _ in range(d)]
        out.append(Box(tuple(lo), tuple(x + rng.randint(0, W) for x in lo), rng.randrange(k)))
    return out


def test_three_intersecting_squares():
    bs = [Box((i, i), (i + 2, i + 2), i) for i in range(3)]
    G = from_boxes(bs, 3)
    assert all(G.edges(a, b) == {(0, 0)} for a in range(3) for b in range(3) if a != b)


def test_disjoint_pair_is_edgeless():
    G = from_boxes([Box((0,), (1,), 0), Box((5,), (6,), 1)], 2)
    assert G.edges(0, 1) == set()


def test_from_boxes_matches_all_pairs():
    rng = random.Random(5)
    bs = rand_boxes(rng, 40, 3, 3)
    G = from_boxes(bs, 3)
    for a in range(3):
        for b in range(3):
            if a == b:
                continue
            want = {
                (u, v)
                for u, i in enumerate(G.labels[a])
                for v, j in enumerate(G.labels[b])
                if box_intersects(bs[i], bs[j])
            }
            assert G.edges(a, b) == want
            assert G.symmetric_on(a, b)


def test_complement_pair():
    G = from_boxes([Box((0,), (1,), 0), Box((5,), (6,), 1)], 2)
    assert complement_pair(G, 0, 1).edges(0, 1) == {(0, 0)}
    rng = random.Random(9)
    bs = rand_boxes(rng, 20, 1, 2)
    G = from_boxes(bs, 2)
    H = complement_pair(G, 0, 1)
    for u, i in enumerate(G.labels[0]):
        for v, j in enumerate(G.labels[1]):
            assert H.adjacent(0, u, 1, v) == (not box_intersects(bs[i], bs[j]))
    assert complement_pair(H, 0, 1).edges(0, 1) == G.edges(0, 1)


@given(st.integers(0, 10_000))
def test_complement_is_involution(seed):
    bs = rand_boxes(random.Random(seed), 8, 2, 3)
    G = from_boxes(bs, 3)
    H = complement_pair(complement_pair(G, 1, 2), 1, 2)
    assert all(H.edges(a, b) == G.edges(a, b) for a in range(3) for b in range(3) if a != b)


def test_lift_identity_and_single_super_edge():
    bs = [Box((0,), (4,), c) for c in range(4)]
    G = from_boxes(bs, 4)
    assert lift_compound(G, 1) is G
    H = lift_compound(G, 2)
    assert H.k == 2 and H.edges(0, 1) == {(0, 0)}
    assert H.labels == [[(0, 1)], [(2, 3)]]


def test_lift_equals_conjunction_exhaustively():
    rng = random.Random(13)
    bs = rand_boxes(rng, 8, 2, 4, L=6)
    G = from_boxes(bs, 4)
    H = lift_compound(G, 2)
    for (s, t) in ((0, 1), (1, 0)):
        for x, cx in enumerate(H.labels[s]):
            for y, cy in enumerate(H.labels[t]):
                want = all(box_intersects(bs[i], bs[j]) for i, j in product(cx, cy))
                assert H.adjacent(s, x, t, y) == want
    # every compound is itself an intersecting pair of its group
    for s in range(2):
        for i, j in H.labels[s]:
            assert box_intersects(bs[i], bs[j])
