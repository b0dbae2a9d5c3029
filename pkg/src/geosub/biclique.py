"""Biclique covers of box range graphs and of segment intersection graphs."""

from __future__ import annotations

from bisect import bisect_right
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import lcm
from typing import Sequence

from .geometry import Segment, orient, segment_intersects
from .rangegraph import KPartiteRangeGraph
from .rangetree import RangeTree
from .witness import CLIQUE, Witness

SEGMENT_BASE_CASE = 8


@dataclass
class BicliqueCover:
    """Pairs ``(A_i, B_i)`` whose products union to an edge set."""

    pairs: list = field(default_factory=list)

    @property
    def size(self) -> int:
        return sum(len(a) + len(b) for a, b in self.pairs)

    def __len__(self) -> int:
        return len(self.pairs)

    def edges(self, symmetric: bool = False) -> set:
        out = set()
        for A, B in self.pairs:
            for a in A:
                for b in B:
                    out.add((min(a, b), max(a, b)) if symmetric else (a, b))
        return out

    def membership(self) -> tuple[Counter, Counter]:
        """How many A-sides and B-sides each vertex appears in."""
        ca, cb = Counter(), Counter()
        for A, B in self.pairs:
            ca.update(A)
            cb.update(B)
        return ca, cb

    def biclique_at_least(self, t: int):
        """First pair with both sides of size >= t and disjoint sides."""
        for A, B in self.pairs:
            if len(A) >= t and len(B) >= t:
                sa = set(A)
                if not sa.intersection(B):
                    return A, B
        return None


def verify_cover(cover: BicliqueCover, oracle_edges, symmetric: bool = False) -> tuple[bool, list]:
    """Compare the cover's edge union with ``oracle_edges`` exactly.

    Returns ``(ok, discrepancies)`` where each discrepancy is an edge present
    on exactly one side.
    """
    if symmetric:
        want = {(min(a, b), max(a, b)) for a, b in oracle_edges}
    else:
        want = set(oracle_edges)
    got = cover.edges(symmetric)
    diff = sorted(got ^ want)
    return not diff, diff


# ------------------------------------------------------------------ boxes


def cover_boxes(G: KPartiteRangeGraph, a: int, b: int) -> BicliqueCover:
    """Cover of the a-b edges: ``A_i`` are part-``a`` vertices, ``B_i`` a
    canonical subset of part ``b`` from a range tree over part-``b`` points.
    Vertices are local indices within their parts."""
    if a == b:
        raise ValueError("parts must differ")
    tree = RangeTree(G.points[(b, a)])
    charged = defaultdict(set)
    for u, rng in enumerate(G.ranges[(b, a)]):
        for piece in rng.pieces:
            for node in tree.canonical(piece):
                charged[node].add(u)
    pairs = [(sorted(us), sorted(tree.members(node))) for node, us in charged.items()]
    pairs.sort()
    return BicliqueCover(pairs)


# --------------------------------------------------------------- segments


class ShearedSegments:
    """Segments mapped exactly to integer coordinates by a linear bijection
    under which no two distinct points share an x-coordinate.

    Intersections are preserved, no segment is vertical, and every endpoint
    has an even x, so odd x lines never pass through an endpoint.
    """

    def __init__(self, segments: Sequence[Segment]):
        self.segments = list(segments)
        den = 1
        for s in self.segments:
            for c in (*s.p, *s.q):
                if isinstance(c, Fraction):
                    den = lcm(den, c.denominator)
        ys = [int(c * den) for s in self.segments for c in (s.p[1], s.q[1])]
        q = (max(ys) - min(ys) + 1) if ys else 1
        self.left = []
        self.right = []
        for s in self.segments:
            a = self._map(s.p, den, q)
            b = self._map(s.q, den, q)
            if a[0] > b[0]:
                a, b = b, a
            self.left.append(a)
            self.right.append(b)

    @staticmethod
    def _map(p, den, q):
        x, y = int(p[0] * den), int(p[1] * den)
        return (2 * (q * x + y), y)

    def y_at(self, i: int, x) -> Fraction:
        (x0, y0), (x1, y1) = self.left[i], self.right[i]
        return y0 + Fraction((y1 - y0) * (x - x0), x1 - x0)

    def clip(self, i: int, xl, xr) -> tuple:
        a, b = self.left[i], self.right[i]
        if a[0] < xl:
            a = (xl, self.y_at(i, xl))
        if b[0] > xr:
            b = (xr, self.y_at(i, xr))
        return a, b

    def meets(self, i: int, j: int) -> bool:
        return segment_intersects(self.segments[i], self.segments[j])


def color_long_segments(
    segments: Sequence[Segment] | ShearedSegments,
    k: int,
    slab: tuple | None = None,
    members: Sequence[int] | None = None,
):
    """Properly color segments spanning a vertical slab so that same-colored
    segments do not meet inside the slab, using fewer than ``k`` colors.

    Returns ``(colors, None)`` with ``colors[i]`` the class of ``members[i]``,
    or ``(None, Witness)`` holding ``k`` pairwise crossing segments.
    ``slab`` is in the coordinates of ``segments`` (a plain list is used
    as-is; every segment must span the slab).
    """
    if k < 2:
        raise ValueError("k must be >= 2")
    sh = segments if isinstance(segments, ShearedSegments) else None
    if members is None:
        members = list(range(len(sh.segments if sh else segments)))
    ends = []
    for i in members:
        if sh is not None:
            xl, xr = slab
            a, b = sh.left[i], sh.right[i]
            if a[0] > xl or b[0] < xr:
                raise ValueError(f"segment {i} does not span the slab")
            ends.append((sh.y_at(i, xl), sh.y_at(i, xr)))
        else:
            s = segments[i]
            a, b = sorted((s.p, s.q))
            xl, xr = slab if slab is not None else (None, None)
            if xl is None:
                raise ValueError("slab required for plain segments")
            if a[0] > xl or b[0] < xr or a[0] == b[0]:
                raise ValueError(f"segment {i} does not span the slab")
            ends.append(
                (
                    a[1] + Fraction((b[1] - a[1]) * (xl - a[0]), b[0] - a[0]),
                    a[1] + Fraction((b[1] - a[1]) * (xr - a[0]), b[0] - a[0]),
                )
            )
    # in this order, positions i < j meet iff right[i] >= right[j]
    order = sorted(range(len(members)), key=lambda t: (ends[t][0], -ends[t][1]))
    tops: list = []  # negated right ends of pile tops, non-decreasing
    top_id: list = []
    back = {}
    pile = [0] * len(members)
    for t in order:
        y = ends[t][1]
        # leftmost pile whose top is < y, i.e. -top > -y
        p = bisect_right(tops, -y)
        back[t] = top_id[p - 1] if p > 0 else None
        if p == len(tops):
            tops.append(-y)
            top_id.append(t)
        else:
            tops[p] = -y
            top_id[p] = t
        pile[t] = p
        if p + 1 >= k:
            chain = [t]
            while back[chain[-1]] is not None and len(chain) < k:
                chain.append(back[chain[-1]])
            return None, Witness(CLIQUE, tuple(members[c] for c in reversed(chain)))
    return pile, None


def _rank_nodes(lo: int, hi: int, a: int, b: int, out: list):
    if b <= lo or hi <= a or a >= b:
        return
    if a <= lo and hi <= b:
        out.append((lo, hi))
        return
    mid = (lo + hi) // 2
    _rank_nodes(lo, mid, a, b, out)
    _rank_nodes(mid, hi, a, b, out)


def _above(sh: ShearedSegments, c: int, pt) -> int:
    return orient(sh.left[c], sh.right[c], pt)


def cover_segments(segments: Sequence[Segment], k: int, stats: dict | None = None):
    """Biclique cover of the full intersection graph, or a ``K_k`` witness.

    Vertical slabs are split at the median endpoint. Segments spanning a
    child slab are colored into non-crossing classes; every segment meeting
    the slab queries each class for a contiguous interval of ranks, covered
    by canonical nodes of a 1-D tree over the ranks. Segments with an
    endpoint strictly inside the child slab recurse.
    """
    if k < 3:
        raise ValueError("k must be >= 3")
    sh = ShearedSegments(segments)
    n = len(sh.segments)
    pairs: list = []
    if stats is not None:
        stats.setdefault("nodes", 0)
        stats.setdefault("max_depth", 0)
    stack = [(list(range(n)), None, None, 0)]
    while stack:
        S, xl, xr, depth = stack.pop()
        if stats is not None:
            stats["nodes"] += 1
            stats["max_depth"] = max(stats["max_depth"], depth)
        inside = []
        for i in S:
            for p in (sh.left[i], sh.right[i]):
                if (xl is None or p[0] > xl) and (xr is None or p[0] < xr):
                    inside.append(p[0])
        # endpoints sharing an x are the same point: those segments meet pairwise
        mult = Counter()
        for i in S:
            seen = set()
            for p in (sh.left[i], sh.right[i]):
                if (xl is None or p[0] > xl) and (xr is None or p[0] < xr) and p[0] not in seen:
                    seen.add(p[0])
                    mult[p[0]] += 1
        x_hot, m_hot = mult.most_common(1)[0] if mult else (None, 0)
        if m_hot >= k:
            group = [i for i in S if sh.left[i][0] == x_hot or sh.right[i][0] == x_hot][:k]
            return Witness(CLIQUE, tuple(group))
        distinct = sorted(set(inside))
        if len(S) <= SEGMENT_BASE_CASE or len(distinct) < 2:
            adj = set()
            for a in range(len(S)):
                for b in range(a + 1, len(S)):
                    if sh.meets(S[a], S[b]):
                        pairs.append(([S[a]], [S[b]]))
                        adj.add((a, b))
            if k <= len(S) <= SEGMENT_BASE_CASE:
                for group in combinations(range(len(S)), k):
                    if all(e in adj for e in combinations(group, 2)):
                        return Witness(CLIQUE, tuple(S[g] for g in group))
            continue
        inside.sort()
        med = inside[(len(inside) - 1) // 2]
        if med == distinct[-1]:
            med = distinct[-2]
        cut = med + 1  # odd, strictly between two distinct endpoint x values
        for cl, cr in ((xl, cut), (cut, xr)):
            short, long_ = [], []
            for i in S:
                a, b = sh.left[i][0], sh.right[i][0]
                if (cl is None or b > cl) and (cr is None or a < cr):
                    if (cl is None or a > cl) or (cr is None or b < cr):
                        short.append(i)
                    else:
                        long_.append(i)
            if long_:
                w = _cover_longs(sh, long_, short, cl, cr, k, pairs)
                if w is not None:
                    return w
            if short:
                stack.append((short, cl, cr, depth + 1))
    return BicliqueCover(pairs)


def _cover_longs(sh, longs, shorts, xl, xr, k, pairs):
    colors, w = color_long_segments(sh, k, (xl, xr), longs)
    if w is not None:
        return w
    classes = defaultdict(list)
    for i, c in zip(longs, colors):
        classes[c].append(i)
    queries = longs + shorts
    pieces = {q: sh.clip(q, xl, xr) for q in queries}
    for c, mem in classes.items():
        mem.sort(key=lambda i: sh.y_at(i, xl))
        own = set(mem)
        charged = defaultdict(list)
        m = len(mem)
        for q in queries:
            if q in own:
                continue
            p0, p1 = pieces[q]
            # first rank not strictly below the piece, first rank strictly above it
            lo, hi = 0, m
            while lo < hi:
                mid = (lo + hi) // 2
                if _above(sh, mem[mid], p0) > 0 and _above(sh, mem[mid], p1) > 0:
                    lo = mid + 1
                else:
                    hi = mid
            a = lo
            lo, hi = a, m
            while lo < hi:
                mid = (lo + hi) // 2
                if _above(sh, mem[mid], p0) < 0 and _above(sh, mem[mid], p1) < 0:
                    hi = mid
                else:
                    lo = mid + 1
            b = lo
            nodes: list = []
            _rank_nodes(0, m, a, b, nodes)
            for node in nodes:
                charged[node].append(q)
        for (lo, hi), qs in charged.items():
            pairs.append((qs, mem[lo:hi]))
    return None
