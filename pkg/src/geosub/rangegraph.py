"""Implicit k-partite range graphs.

A vertex ``u`` of part ``a`` carries a point ``p[a,b](u)`` for every other
part ``b``; a vertex ``v`` of part ``b`` carries a range ``R[a,b](v)``. The
pair is adjacent iff ``p[a,b](u)`` lies in ``R[a,b](v)``. Ranges are unions
of orthogonal pieces, so adjacency questions reduce to range searching.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Sequence

from .geometry import Box, OrthRange, box_point, box_range

DEFAULT_COMPOUND_CAP = 200_000


@dataclass
class KPartiteRangeGraph:
    """``labels[a][u]`` is the provenance of local vertex ``u`` in part ``a``
    (an object index, or a tuple of them for compound vertices).
    ``points[(a, b)][u]`` and ``ranges[(a, b)][v]`` realize the a-b edges."""

    labels: list
    points: dict
    ranges: dict

    @property
    def k(self) -> int:
        return len(self.labels)

    def size(self, a: int) -> int:
        return len(self.labels[a])

    def dim(self, a: int, b: int) -> int:
        if self.ranges[(a, b)]:
            return self.ranges[(a, b)][0].dim
        return len(self.points[(a, b)][0]) if self.points[(a, b)] else 0

    def adjacent(self, a: int, u: int, b: int, v: int) -> bool:
        if a == b:
            raise ValueError("vertices of the same part are never adjacent")
        return self.points[(a, b)][u] in self.ranges[(a, b)][v]

    def edges(self, a: int, b: int) -> set:
        """All (u, v) local pairs between parts ``a`` and ``b``, by brute force."""
        pts, rgs = self.points[(a, b)], self.ranges[(a, b)]
        return {(u, v) for u, p in enumerate(pts) for v, r in enumerate(rgs) if p in r}

    def symmetric_on(self, a: int, b: int) -> bool:
        return all(
            self.adjacent(a, u, b, v) == self.adjacent(b, v, a, u)
            for u in range(self.size(a))
            for v in range(self.size(b))
        )


def from_boxes(boxes: Sequence[Box], k: int, assignment: dict | None = None) -> KPartiteRangeGraph:
    """Range graph whose part ``a`` holds the boxes with ``assignment[color] == a``.

    Without an assignment, colors ``0..k-1`` map to themselves.
    """
    if k < 2:
        raise ValueError("need at least two parts")
    if assignment is None:
        assignment = {c: c for c in range(k)}
    labels = [[] for _ in range(k)]
    for i, b in enumerate(boxes):
        if b.color not in assignment:
            raise ValueError(f"color {b.color} is not assigned to a part")
        part = assignment[b.color]
        if not 0 <= part < k:
            raise ValueError(f"part {part} out of range")
        labels[part].append(i)
    points, ranges = {}, {}
    pts = [[box_point(boxes[i]) for i in labels[a]] for a in range(k)]
    rgs = [[box_range(boxes[i]) for i in labels[a]] for a in range(k)]
    for a in range(k):
        for b in range(k):
            if a != b:
                points[(a, b)] = pts[a]
                ranges[(a, b)] = rgs[b]
    return KPartiteRangeGraph(labels, points, ranges)


def complement_pair(G: KPartiteRangeGraph, a: int, b: int) -> KPartiteRangeGraph:
    """Invert the a-b edges, leaving every other part pair untouched."""
    if a == b:
        raise ValueError("parts must differ")
    if not (0 <= a < G.k and 0 <= b < G.k):
        raise ValueError("part out of range")
    ranges = dict(G.ranges)
    for x, y in ((a, b), (b, a)):
        ranges[(x, y)] = [r.complement() for r in G.ranges[(x, y)]]
    return KPartiteRangeGraph(G.labels, G.points, ranges)


def _product_range(rs: Sequence[OrthRange]) -> OrthRange:
    dim = sum(r.dim for r in rs)
    pieces = tuple(sum(combo, ()) for combo in product(*(r.pieces for r in rs)))
    return OrthRange(dim, pieces)


def lift_compound(G: KPartiteRangeGraph, q: int, cap: int = DEFAULT_COMPOUND_CAP) -> KPartiteRangeGraph:
    """Group every ``q`` consecutive parts into a super-part whose vertices are
    the q-cliques of the group (one vertex per part). Two compounds are
    adjacent iff all ``q * q`` cross pairs are adjacent."""
    if q < 1 or G.k % q:
        raise ValueError(f"part count {G.k} not divisible by {q}")
    if q == 1:
        return G
    groups = [list(range(s * q, (s + 1) * q)) for s in range(G.k // q)]
    cliques = []
    for g in groups:
        total = 1
        for a in g:
            total *= max(G.size(a), 1)
        if total > cap:
            raise ValueError(f"compound enumeration of {total} tuples exceeds cap {cap}")
        found = []
        for tup in product(*(range(G.size(a)) for a in g)):
            if all(G.adjacent(g[i], tup[i], g[j], tup[j]) for i, j in combinations(range(q), 2)):
                found.append(tup)
        cliques.append(found)
    labels = [[tuple(G.labels[g[i]][t[i]] for i in range(q)) for t in cl] for g, cl in zip(groups, cliques)]
    points, ranges = {}, {}
    K = len(groups)
    for s in range(K):
        for t in range(K):
            if s == t:
                continue
            pairs = [(a, b) for a in range(q) for b in range(q)]
            points[(s, t)] = [
                sum((G.points[(groups[s][a], groups[t][b])][tup[a]] for a, b in pairs), ())
                for tup in cliques[s]
            ]
            ranges[(s, t)] = [
                _product_range([G.ranges[(groups[s][a], groups[t][b])][tup[b]] for a, b in pairs])
                for tup in cliques[t]
            ]
    return KPartiteRangeGraph(labels, points, ranges)
