import random
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from geosub.geometry import Box, box_intersects
from geosub.independent import (
    find_I3_boxes,
    find_I4_boxes,
    find_I4_boxes_5d,
    find_I5_rects_2d,
    sw_extension_free,
    sw_free_rectangle,
)
from geosub.oracles import brute_detect, explicit_graph

import corpora


def unit(lo, color, side=1):
    return Box(tuple(lo), tuple(x + side for x in lo), color)


def test_i3_examples():
    apart = [unit((2 * i, 0, 0), i) for i in range(3)]
    w = find_I3_boxes(apart)
    assert w is not None and sorted(w.indices) == [0, 1, 2]
    shared = [Box((0, 0, 0), (5 + i, 5, 5), i % 3) for i in range(6)]
    assert find_I3_boxes(shared) is None


def test_i4_examples():
    apart = [unit((3 * i, i), i) for i in range(4)]
    assert find_I4_boxes(apart) is not None
    origin = [Box((-1 - i, -1), (1, 1 + i), i % 4) for i in range(8)]
    assert find_I4_boxes(origin) is None


def test_i4_5d_examples():
    apart = [unit((2 * i, 0, 0, 0, 0), i) for i in range(4)]
    assert find_I4_boxes_5d(apart) is not None
    giant = [Box((0,) * 5, (100,) * 5, 0)] + [unit((10 * i,) * 5, i) for i in range(1, 4)]
    assert find_I4_boxes_5d(giant) is None
    with pytest.raises(ValueError):
        find_I4_boxes_5d(apart[:3] + [unit((0, 0), 3)])


def test_i5_examples():
    diag = [unit((2 * i, 2 * i), i) for i in range(5)]
    w = find_I5_rects_2d(diag)
    assert w is not None and sorted(w.indices) == list(range(5))
    shared = [Box((0, 0), (3 + i, 3), i) for i in range(5)]
    assert find_I5_rects_2d(shared) is None
    with pytest.raises(ValueError):
        find_I5_rects_2d([unit((0, 0, 0), i) for i in range(5)])


@pytest.mark.parametrize("name", ["I3 boxes", "I4 boxes", "I4 boxes 5-D", "I5 rectangles"])
def test_independent_sets_agree_with_oracle(name):
    sw = corpora.sweep(name)
    assert sw.clean, sw.line()
    assert sw.instances >= 100
    assert 0 < sw.positives < sw.instances


@pytest.mark.parametrize("fn,k,d", [(find_I4_boxes, 4, 2), (find_I5_rects_2d, 5, 2)])
@pytest.mark.parametrize("r", [1, 2, 5, 40])
def test_threshold_does_not_change_answer(fn, k, d, r):
    rng = random.Random(61 + r)
    for _ in range(25):
        bs = corpora.rand_boxes(rng, 25, d, 20, 20, colors=k, wmin=rng.choice([2, 4, 6]))
        ref = brute_detect(explicit_graph(bs), "indep", k, colors=[b.color for b in bs])
        assert (fn(bs, r=r) is not None) == (ref is not None)


def disjoint_rectangles(rng, m):
    out = []
    while len(out) < m:
        x, y = rng.randint(0, 30), rng.randint(0, 30)
        b = Box((x, y), (x + rng.randint(0, 8), y + rng.randint(0, 8)))
        if not any(box_intersects(b, o) for o in out):
            out.append(b)
    return out


def test_sw_extension_lemma():
    for seed in range(200):
        rng = random.Random(seed)
        rects = disjoint_rectangles(rng, rng.randint(1, 10))
        assert any(sw_extension_free(rects, s) for s in range(len(rects)))
        s = sw_free_rectangle(rects)
        assert s is not None
        x2, y2 = rects[s].hi
        assert not any(o.lo[0] <= x2 and o.lo[1] <= y2 for j, o in enumerate(rects) if j != s)


@settings(max_examples=25)
@given(st.integers(0, 10**6))
def test_adding_a_box_keeps_an_independent_set(seed):
    rng = random.Random(seed)
    bs = corpora.rand_boxes(rng, 15, 2, 20, 12, colors=4, wmin=4)
    extra = corpora.rand_boxes(rng, 5, 2, 20, 12, colors=4, wmin=4)
    for fn in (find_I3_boxes, find_I4_boxes):
        sub = [b for b in bs if b.color < 3] if fn is find_I3_boxes else bs
        sup = sub + ([b for b in extra if b.color < 3] if fn is find_I3_boxes else extra)
        before = fn(sub) is not None
        assert fn(sup) is not None or not before


def test_brute_indep_uses_colors():
    bs = [unit((2 * i, 0), 0) for i in range(3)]
    assert brute_detect(explicit_graph(bs), "indep", 3, colors=[0, 0, 0]) is None
    assert brute_detect(explicit_graph(bs), "indep", 3) is not None
