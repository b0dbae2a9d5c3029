"""Exact geometric primitives and point/range encodings of box intersection.

Coordinates are exact rationals: Python ints or ``fractions.Fraction``.
Floats are accepted on input and converted exactly. Boxes and segments are
closed, so touching counts as intersecting.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from numbers import Rational
from typing import Callable, Sequence

INF = math.inf
DEFAULT_PIECE_CAP = 8


def to_rational(x) -> int | Fraction:
    """Convert ``x`` to an exact rational (int when integral)."""
    if isinstance(x, bool):
        raise TypeError("booleans are not coordinates")
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        v = x
    elif isinstance(x, float):
        if not math.isfinite(x):
            raise ValueError(f"non-finite coordinate {x!r}")
        v = Fraction(x)
    elif isinstance(x, str):
        v = Fraction(x)
    elif isinstance(x, (list, tuple)) and len(x) == 2:
        v = Fraction(int(x[0]), int(x[1]))
    elif isinstance(x, Rational):
        v = Fraction(x.numerator, x.denominator)
    else:
        try:
            import numpy as np

            if isinstance(x, np.integer):
                return int(x)
            if isinstance(x, np.floating):
                return to_rational(float(x))
        except ImportError:  # pragma: no cover
            pass
        raise TypeError(f"cannot convert {x!r} to a rational")
    return v.numerator if v.denominator == 1 else v


def _vec(xs) -> tuple:
    return tuple(to_rational(x) for x in xs)


@dataclass(frozen=True)
class Box:
    """Closed axis-parallel box ``[lo_1, hi_1] x ... x [lo_d, hi_d]``."""

    lo: tuple
    hi: tuple
    color: int = 0

    def __post_init__(self):
        lo, hi = _vec(self.lo), _vec(self.hi)
        if len(lo) != len(hi) or not lo:
            raise ValueError("lo and hi must have the same positive length")
        for a, b in zip(lo, hi):
            if a > b:
                raise ValueError(f"empty box side [{a}, {b}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        object.__setattr__(self, "color", int(self.color))

    @property
    def d(self) -> int:
        return len(self.lo)


@dataclass(frozen=True)
class Segment:
    """Closed 2-D segment between distinct endpoints ``p`` and ``q``."""

    p: tuple
    q: tuple
    color: int = 0

    def __post_init__(self):
        p, q = _vec(self.p), _vec(self.q)
        if len(p) != 2 or len(q) != 2:
            raise ValueError("segments live in the plane")
        if p == q:
            raise ValueError("segment endpoints must differ")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "color", int(self.color))


def box_intersects(a: Box, b: Box) -> bool:
    if a.d != b.d:
        raise ValueError(f"dimension mismatch: {a.d} vs {b.d}")
    return all(al <= bh and bl <= ah for al, ah, bl, bh in zip(a.lo, a.hi, b.lo, b.hi))


def orient(a, b, c) -> int:
    """Sign of the cross product (b - a) x (c - a)."""
    v = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    return (v > 0) - (v < 0)


def _on_segment(a, b, c) -> bool:
    # c is collinear with a-b; check it lies within the bounding box
    return min(a[0], b[0]) <= c[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= c[1] <= max(a[1], b[1])


def segment_intersects(s: Segment, t: Segment) -> bool:
    a, b, c, d = s.p, s.q, t.p, t.q
    o1, o2 = orient(a, b, c), orient(a, b, d)
    o3, o4 = orient(c, d, a), orient(c, d, b)
    if o1 * o2 < 0 and o3 * o4 < 0:
        return True
    if o1 == 0 and _on_segment(a, b, c):
        return True
    if o2 == 0 and _on_segment(a, b, d):
        return True
    if o3 == 0 and _on_segment(c, d, a):
        return True
    if o4 == 0 and _on_segment(c, d, b):
        return True
    return False


# ---------------------------------------------------------------- ranges


@dataclass(frozen=True)
class Interval:
    """One coordinate of a range piece; infinite ends use ``math.inf``."""

    lo: object = -INF
    hi: object = INF
    lo_open: bool = False
    hi_open: bool = False

    def contains(self, x) -> bool:
        if self.lo_open:
            if not x > self.lo:
                return False
        elif not x >= self.lo:
            return False
        if self.hi_open:
            return x < self.hi
        return x <= self.hi

    def is_empty(self) -> bool:
        if self.lo > self.hi:
            return True
        return self.lo == self.hi and (self.lo_open or self.hi_open)

    def intersect(self, other: "Interval") -> "Interval":
        if other.lo > self.lo or (other.lo == self.lo and other.lo_open):
            lo, lo_open = other.lo, other.lo_open
        else:
            lo, lo_open = self.lo, self.lo_open
        if other.hi < self.hi or (other.hi == self.hi and other.hi_open):
            hi, hi_open = other.hi, other.hi_open
        else:
            hi, hi_open = self.hi, self.hi_open
        return Interval(lo, hi, lo_open, hi_open)

    def complement(self) -> list["Interval"]:
        out = []
        if self.lo != -INF:
            out.append(Interval(-INF, self.lo, False, not self.lo_open))
        if self.hi != INF:
            out.append(Interval(self.hi, INF, not self.hi_open, False))
        return out

    def is_full(self) -> bool:
        return self.lo == -INF and self.hi == INF


FULL = Interval()

Piece = tuple  # tuple of Interval, one per coordinate


def piece_contains(piece: Piece, point: Sequence) -> bool:
    return all(iv.contains(x) for iv, x in zip(piece, point))


def piece_intersect(a: Piece, b: Piece) -> Piece | None:
    out = tuple(x.intersect(y) for x, y in zip(a, b))
    if any(iv.is_empty() for iv in out):
        return None
    return out


@dataclass(frozen=True)
class OrthRange:
    """Union of orthogonal pieces in ``dim`` dimensions."""

    dim: int
    pieces: tuple = field(default_factory=tuple)

    def __contains__(self, point) -> bool:
        return any(piece_contains(p, point) for p in self.pieces)

    def contains(self, point) -> bool:
        return point in self

    def intersect(self, other: "OrthRange") -> "OrthRange":
        if other.dim != self.dim:
            raise ValueError("dimension mismatch")
        out = []
        for a, b in product(self.pieces, other.pieces):
            c = piece_intersect(a, b)
            if c is not None:
                out.append(c)
        return OrthRange(self.dim, tuple(out))

    def complement(self, cap: int | None = DEFAULT_PIECE_CAP) -> "OrthRange":
        """Complement as a union of pieces.

        Each piece's complement is a union of at most ``2 * dim`` halfspaces;
        the complement of the union is the intersection of those unions.
        ``cap`` bounds the number of input pieces: at most ``2 * dim * cap``
        halfspaces are produced by a single-piece complement, and a
        multi-piece complement is simplified before the size check.
        """
        if cap is not None and len(self.pieces) > cap:
            raise ValueError(f"range has {len(self.pieces)} pieces, cap is {cap}")
        acc = [tuple([FULL] * self.dim)]
        for p in self.pieces:
            halves = []
            for i, iv in enumerate(p):
                for c in iv.complement():
                    h = [FULL] * self.dim
                    h[i] = c
                    halves.append(tuple(h))
            nxt = []
            for a in acc:
                for h in halves:
                    c = piece_intersect(a, h)
                    if c is not None:
                        nxt.append(c)
            acc = _dedupe(nxt)
            if not acc:
                break
        return OrthRange(self.dim, tuple(acc))


def _dedupe(pieces):
    seen, out = set(), []
    for p in pieces:
        if p not in seen:
            seen.add(p)
            out.append(p)
    return out


def box_point(u: Box) -> tuple:
    """``(lo_1, hi_1, ..., lo_d, hi_d)``."""
    out = []
    for a, b in zip(u.lo, u.hi):
        out.extend((a, b))
    return tuple(out)


def box_range(v: Box) -> OrthRange:
    """Points ``p(u)`` of every box ``u`` that meets ``v``.

    ``u`` meets ``v`` iff ``lo_i(u) <= hi_i(v)`` and ``hi_i(u) >= lo_i(v)``
    for every axis, a single unbounded piece.
    """
    piece = []
    for a, b in zip(v.lo, v.hi):
        piece.append(Interval(-INF, b))
        piece.append(Interval(a, INF))
    return OrthRange(2 * v.d, (tuple(piece),))


def box_disjoint_range(v: Box) -> OrthRange:
    """Points ``p(u)`` of every box ``u`` disjoint from ``v`` (2d halfspaces)."""
    pieces = []
    D = 2 * v.d
    for i, (a, b) in enumerate(zip(v.lo, v.hi)):
        h = [FULL] * D
        h[2 * i] = Interval(b, INF, lo_open=True)
        pieces.append(tuple(h))
        h = [FULL] * D
        h[2 * i + 1] = Interval(-INF, a, hi_open=True)
        pieces.append(tuple(h))
    return OrthRange(D, tuple(pieces))


def box_pair_encoding(d: int, disjoint: bool = False) -> tuple[Callable, Callable]:
    """Return ``(point_map, range_map)`` encoding box intersection in ``2d`` dims.

    With ``disjoint=True`` the range map encodes non-intersection instead.
    """
    if d < 1:
        raise ValueError("d must be >= 1")

    def point_map(u: Box) -> tuple:
        if u.d != d:
            raise ValueError("dimension mismatch")
        return box_point(u)

    def range_map(v: Box) -> OrthRange:
        if v.d != d:
            raise ValueError("dimension mismatch")
        return box_disjoint_range(v) if disjoint else box_range(v)

    return point_map, range_map
