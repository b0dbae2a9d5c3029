import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from geosub.geometry import (
    Box,
    Segment,
    box_disjoint_range,
    box_intersects,
    box_pair_encoding,
    segment_intersects,
    to_rational,
)

coord = st.integers(-6, 6)


@st.composite
def boxes(draw, d):
    lo = [draw(coord) for _ in range(d)]
    return Box(tuple(lo), tuple(x + draw(st.integers(0, 4)) for x in lo))


@st.composite
def segments(draw):
    p = (draw(coord), draw(coord))
    q = draw(st.tuples(coord, coord).filter(lambda q: q != p))
    return Segment(p, q)


def test_to_rational_exact():
    assert to_rational(0.5) == Fraction(1, 2)
    assert to_rational([3, 6]) == Fraction(1, 2)
    assert to_rational("4/2") == 2 and isinstance(to_rational("4/2"), int)
    with pytest.raises(ValueError):
        to_rational(float("nan"))
    with pytest.raises(TypeError):
        to_rational(True)


def test_box_validation():
    with pytest.raises(ValueError):
        Box((1,), (0,))
    with pytest.raises(ValueError):
        Box((0, 0), (1,))


def test_box_shared_edge_counts():
    assert box_intersects(Box((0, 0), (1, 1)), Box((1, 0), (2, 1)))
    assert not box_intersects(Box((0, 0), (1, 1)), Box((2, 2), (3, 3)))


def test_box_intersects_matches_interval_check():
    rng = random.Random(7)

    def overlap(a, b):
        # independent formulation: the intersection interval is non-empty on every axis
        return all(max(a.lo[i], b.lo[i]) <= min(a.hi[i], b.hi[i]) for i in range(a.d))

    for _ in range(1000):
        d = rng.randint(1, 4)
        bs = []
        for _ in range(2):
            lo = [rng.randint(0, 10) for _ in range(d)]
            bs.append(Box(tuple(lo), tuple(x + rng.randint(0, 5) for x in lo)))
        assert box_intersects(*bs) == overlap(*bs)


def test_segment_examples():
    assert segment_intersects(Segment((0, 0), (2, 2)), Segment((0, 2), (2, 0)))
    assert not segment_intersects(Segment((0, 0), (1, 0)), Segment((0, 1), (1, 1)))
    # touching at an endpoint and collinear overlap both count
    assert segment_intersects(Segment((0, 0), (1, 1)), Segment((1, 1), (2, 0)))
    assert segment_intersects(Segment((0, 0), (2, 0)), Segment((1, 0), (3, 0)))
    assert not segment_intersects(Segment((0, 0), (1, 0)), Segment((2, 0), (3, 0)))


def _param_oracle(s: Segment, t: Segment) -> bool:
    """Solve p + a(q - p) = r + b(u - r) exactly; collinear cases by projection."""
    (px, py), (qx, qy) = s.p, s.q
    (rx, ry), (ux, uy) = t.p, t.q
    dx, dy, ex, ey = qx - px, qy - py, ux - rx, uy - ry
    den = dx * ey - dy * ex
    if den != 0:
        a = Fraction((rx - px) * ey - (ry - py) * ex, den)
        b = Fraction((rx - px) * dy - (ry - py) * dx, den)
        return 0 <= a <= 1 and 0 <= b <= 1
    if (rx - px) * dy - (ry - py) * dx != 0:
        return False  # parallel, different lines
    L = dx * dx + dy * dy
    ts = [Fraction((x - px) * dx + (y - py) * dy, L) for x, y in (t.p, t.q)]
    return max(min(ts), 0) <= min(max(ts), 1)


def test_segment_intersects_matches_parametric_oracle():
    rng = random.Random(11)
    for _ in range(1000):
        segs = []
        while len(segs) < 2:
            p = (rng.randint(0, 6), rng.randint(0, 6))
            q = (rng.randint(0, 6), rng.randint(0, 6))
            if p != q:
                segs.append(Segment(p, q))
        assert segment_intersects(*segs) == _param_oracle(*segs)


@given(segments(), segments())
def test_segment_predicate_symmetric_and_endpoint_invariant(s, t):
    r = segment_intersects(s, t)
    assert r == segment_intersects(t, s)
    assert r == segment_intersects(Segment(s.q, s.p), t)
    assert r == _param_oracle(s, t)


def test_pair_encoding_examples():
    p, R = box_pair_encoding(1)
    assert p(Box((0,), (1,))) == (0, 1)
    assert p(Box((0,), (1,))) not in R(Box((2,), (3,)))
    assert p(Box((0,), (2,))) in R(Box((1,), (3,)))


@pytest.mark.parametrize("d", [1, 2, 3, 5])
def test_pair_encoding_agrees_with_predicate(d):
    rng = random.Random(3)
    p, R = box_pair_encoding(d)
    pd, Rd = box_pair_encoding(d, disjoint=True)
    for _ in range(500):
        bs = []
        for _ in range(2):
            lo = [rng.randint(0, 8) for _ in range(d)]
            bs.append(Box(tuple(lo), tuple(x + rng.randint(0, 4) for x in lo)))
        u, v = bs
        assert (p(u) in R(v)) == box_intersects(u, v)
        assert (pd(u) in Rd(v)) == (not box_intersects(u, v))


@given(st.integers(1, 3).flatmap(lambda d: st.tuples(boxes(d), boxes(d))))
def test_pair_encoding_symmetric(pair):
    u, v = pair
    p, R = box_pair_encoding(u.d)
    assert (p(u) in R(v)) == (p(v) in R(u)) == box_intersects(u, v)
    assert (box_disjoint_range(v).contains(p(u))) != box_intersects(u, v)
