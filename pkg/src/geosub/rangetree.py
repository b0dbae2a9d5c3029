"""Multi-level orthogonal range trees with explicit canonical subsets.

Each level is a balanced tree over the points sorted by one coordinate,
stored implicitly as index ranges of the sorted order. A node of level ``j``
owns a lazily built tree of level ``j + 1`` over its own points. A query box
decomposes into ``O(log^D n)`` canonical nodes at the last level.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from itertools import count
from typing import Iterable, Sequence

from .geometry import Box, OrthRange, Piece, box_point, box_range, piece_intersect

SMALL_NODE = 4


class _Level:
    _uids = count()

    def __init__(self, tree: "RangeTree", ids: list, j: int):
        self.uid = next(_Level._uids)
        self.tree = tree
        self.j = j
        pts = tree.points
        self.ids = sorted(ids, key=lambda i: (pts[i][j], i))
        self.keys = [pts[i][j] for i in self.ids]
        self.children: dict = {}

    def span(self, iv) -> tuple[int, int]:
        if iv.lo_open:
            a = bisect_right(self.keys, iv.lo)
        else:
            a = bisect_left(self.keys, iv.lo)
        if iv.hi_open:
            b = bisect_left(self.keys, iv.hi)
        else:
            b = bisect_right(self.keys, iv.hi)
        return a, b

    def child(self, lo: int, hi: int) -> "_Level":
        lv = self.children.get((lo, hi))
        if lv is None:
            lv = _Level(self.tree, self.ids[lo:hi], self.j + 1)
            self.children[(lo, hi)] = lv
            self.tree._levels[lv.uid] = lv
        return lv


def _decompose(lo: int, hi: int, a: int, b: int, out: list):
    """Canonical nodes of the implicit balanced tree on [lo, hi) covering [a, b)."""
    if b <= lo or hi <= a or a >= b:
        return
    if a <= lo and hi <= b:
        out.append((lo, hi))
        return
    mid = (lo + hi) // 2
    _decompose(lo, mid, a, b, out)
    _decompose(mid, hi, a, b, out)


class RangeTree:
    """Range tree over ``points`` (tuples of equal length)."""

    def __init__(self, points: Sequence[Sequence]):
        self.points = [tuple(p) for p in points]
        dims = {len(p) for p in self.points}
        if len(dims) > 1:
            raise ValueError(f"mixed point dimensions {sorted(dims)}")
        self.dim = dims.pop() if dims else 0
        self._levels: dict = {}
        self.root = _Level(self, list(range(len(self.points))), 0)
        self._levels[self.root.uid] = self.root
        self._extreme: dict = {}

    def __len__(self) -> int:
        return len(self.points)

    # canonical nodes are (level uid, lo, hi); a singleton filtered out of a
    # small node is (-1, i, i + 1) with i the point index
    def members(self, node: tuple) -> list:
        uid, lo, hi = node
        if uid < 0:
            return [lo]
        return self._levels[uid].ids[lo:hi]

    def canonical(self, piece: Piece) -> list:
        if not self.points:
            return []
        if len(piece) != self.dim:
            raise ValueError("query dimension mismatch")
        out = []
        self._canon(self.root, piece, out)
        return out

    def _canon(self, level: _Level, piece: Piece, out: list):
        a, b = level.span(piece[level.j])
        if a >= b:
            return
        nodes = []
        _decompose(0, len(level.ids), a, b, nodes)
        last = level.j == self.dim - 1
        for lo, hi in nodes:
            if last:
                out.append((level.uid, lo, hi))
            elif hi - lo <= SMALL_NODE:
                for i in level.ids[lo:hi]:
                    p = self.points[i]
                    if all(piece[t].contains(p[t]) for t in range(level.j + 1, self.dim)):
                        out.append((-1, i, i + 1))
            else:
                self._canon(level.child(lo, hi), piece, out)

    def canonical_range(self, q: OrthRange) -> list:
        out = []
        for piece in q.pieces:
            out.extend(self.canonical(piece))
        return out

    def report(self, q: OrthRange | Piece) -> set:
        pieces = q.pieces if isinstance(q, OrthRange) else (q,)
        found = set()
        for piece in pieces:
            for node in self.canonical(piece):
                found.update(self.members(node))
        return found

    def _node_extreme(self, node, key: int, maximize: bool):
        hit = self._extreme.get((node, key, maximize))
        if hit is None:
            ids = self.members(node)
            if maximize:
                best = max(ids, key=lambda i: (self.points[i][key], -i))
            else:
                best = min(ids, key=lambda i: (self.points[i][key], i))
            hit = (self.points[best][key], best)
            self._extreme[(node, key, maximize)] = hit
        return hit

    def query_min(self, q: OrthRange, key: int, maximize: bool = False, also: OrthRange | None = None):
        """Point of ``q`` (intersected with ``also`` when given) with the
        smallest (largest) coordinate ``key``; ``None`` when empty."""
        if not 0 <= key < max(self.dim, 1):
            raise ValueError("key coordinate out of range")
        pieces = list(q.pieces)
        if also is not None:
            pieces = [c for a in q.pieces for b in also.pieces if (c := piece_intersect(a, b)) is not None]
        best = None
        for piece in pieces:
            for node in self.canonical(piece):
                val, i = self._node_extreme(node, key, maximize)
                if best is None:
                    best = (val, i)
                elif maximize and (val > best[0] or (val == best[0] and i < best[1])):
                    best = (val, i)
                elif not maximize and (val, i) < best:
                    best = (val, i)
        if best is None:
            return None
        return best[1], best[0]


def build(points: Sequence[Sequence]) -> RangeTree:
    return RangeTree(points)


def query_min(tree: RangeTree, q: OrthRange, key: int, maximize: bool = False, also: OrthRange | None = None):
    return tree.query_min(q, key, maximize, also)


def enumerate_edges_up_to(boxes: Sequence[Box], limit: int) -> tuple[list, bool]:
    """All intersecting pairs ``(i, j)``, ``i < j``, if there are at most
    ``limit`` of them; otherwise the first ``limit + 1`` found and ``True``.

    Each box reports its neighbours through canonical subsets, stopping as
    soon as the budget is exhausted, so the cost is near-linear in output.
    """
    if limit < 0:
        raise ValueError("limit must be >= 0")
    tree = RangeTree([box_point(b) for b in boxes])
    edges = []
    for v, b in enumerate(boxes):
        for piece in box_range(b).pieces:
            for node in tree.canonical(piece):
                for u in tree.members(node):
                    if u > v:
                        edges.append((v, u))
                        if len(edges) > limit:
                            return edges, True
    return edges, False


def canonical_multiplicity(tree: RangeTree, queries: Iterable[Piece]) -> int:
    """Largest number of canonical nodes any single query returns."""
    return max((len(tree.canonical(p)) for p in queries), default=0)
