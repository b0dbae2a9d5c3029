"""Fat objects in the plane and fixed-pattern detection in their intersection
graphs by dynamic programming over shifted compressed quadtrees."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Sequence

from .geometry import to_rational
from .witness import SUBGRAPH, Witness

D_FAT = 2
DEFAULT_PATTERN_CAP = 6
LEAF_SIZE = 4
BOUNDARY_C = 8


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


@dataclass(frozen=True)
class FatObject:
    """A disk ``(cx, cy, r)`` or a convex polygon given by its vertices in
    counter-clockwise order (squares are polygons)."""

    shape: str
    params: tuple
    color: int = 0

    def __post_init__(self):
        if self.shape == "disk":
            cx, cy, r = (to_rational(v) for v in self.params)
            if r < 0:
                raise ValueError("negative radius")
            object.__setattr__(self, "params", (cx, cy, r))
        elif self.shape == "polygon":
            pts = [tuple(to_rational(v) for v in p) for p in self.params]
            if not 3 <= len(pts) <= 8:
                raise ValueError("polygons need 3 to 8 vertices")
            area = sum(a[0] * b[1] - a[1] * b[0] for a, b in zip(pts, pts[1:] + pts[:1]))
            if area == 0:
                raise ValueError("degenerate polygon")
            if area < 0:
                pts.reverse()
            m = len(pts)
            if any(_cross(pts[i], pts[(i + 1) % m], pts[(i + 2) % m]) < 0 for i in range(m)):
                raise ValueError("polygon is not convex")
            object.__setattr__(self, "params", tuple(pts))
        else:
            raise ValueError(f"unknown shape {self.shape!r}")

    @classmethod
    def disk(cls, cx, cy, r, color: int = 0) -> "FatObject":
        return cls("disk", (cx, cy, r), color)

    @classmethod
    def square(cls, x, y, side, color: int = 0) -> "FatObject":
        x, y, s = to_rational(x), to_rational(y), to_rational(side)
        return cls("polygon", ((x, y), (x + s, y), (x + s, y + s), (x, y + s)), color)

    @classmethod
    def polygon(cls, vertices, color: int = 0) -> "FatObject":
        return cls("polygon", tuple(vertices), color)

    def bbox(self) -> tuple:
        if self.shape == "disk":
            cx, cy, r = self.params
            return (cx - r, cy - r), (cx + r, cy + r)
        xs = [p[0] for p in self.params]
        ys = [p[1] for p in self.params]
        return (min(xs), min(ys)), (max(xs), max(ys))

    @property
    def side(self):
        lo, hi = self.bbox()
        return max(hi[0] - lo[0], hi[1] - lo[1])

    def corners(self) -> list:
        lo, hi = self.bbox()
        return [(x, y) for x in (lo[0], hi[0]) for y in (lo[1], hi[1])]

    def map(self, scale, shift) -> "FatObject":
        """Image under ``p -> scale * p + shift`` (``scale > 0``)."""
        sx, sy = shift
        if self.shape == "disk":
            cx, cy, r = self.params
            params = (_num(cx * scale + sx), _num(cy * scale + sy), _num(r * scale))
        else:
            params = tuple((_num(x * scale + sx), _num(y * scale + sy)) for x, y in self.params)
        # a positive similarity keeps a valid shape valid: skip re-validation
        out = object.__new__(FatObject)
        object.__setattr__(out, "shape", self.shape)
        object.__setattr__(out, "params", params)
        object.__setattr__(out, "color", self.color)
        return out


def _num(v):
    return v.numerator if isinstance(v, Fraction) and v.denominator == 1 else v


def _seg_dist2(p, a, b):
    dx, dy = b[0] - a[0], b[1] - a[1]
    L = dx * dx + dy * dy
    t = Fraction((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / L
    t = min(max(t, 0), 1)
    qx, qy = a[0] + t * dx - p[0], a[1] + t * dy - p[1]
    return qx * qx + qy * qy


def _disk_poly(disk, pts):
    cx, cy, r = disk
    c = (cx, cy)
    m = len(pts)
    if all(_cross(pts[i], pts[(i + 1) % m], c) >= 0 for i in range(m)):
        return True
    return any(_seg_dist2(c, pts[i], pts[(i + 1) % m]) <= r * r for i in range(m))


def _poly_poly(P, Q):
    for A in (P, Q):
        m = len(A)
        for i in range(m):
            a, b = A[i], A[(i + 1) % m]
            nx, ny = b[1] - a[1], a[0] - b[0]
            pa = [nx * x + ny * y for x, y in P]
            qa = [nx * x + ny * y for x, y in Q]
            if max(pa) < min(qa) or max(qa) < min(pa):
                return False
    return True


def fat_intersects(s: FatObject, t: FatObject) -> bool:
    """Closed shapes share a point (exact)."""
    if s.shape == "disk" and t.shape == "disk":
        (x1, y1, r1), (x2, y2, r2) = s.params, t.params
        return (x1 - x2) ** 2 + (y1 - y2) ** 2 <= (r1 + r2) ** 2
    if s.shape == "disk":
        return _disk_poly(s.params, t.params)
    if t.shape == "disk":
        return _disk_poly(t.params, s.params)
    return _poly_poly(s.params, t.params)


def _meets_box(s: FatObject, lo, w) -> bool:
    """``s`` meets the closed square ``[lo, lo + w]``."""
    if s.shape == "disk":
        cx, cy, r = s.params
        dx = max(lo[0] - cx, 0, cx - lo[0] - w)
        dy = max(lo[1] - cy, 0, cy - lo[1] - w)
        return dx * dx + dy * dy <= r * r
    box = ((lo[0], lo[1]), (lo[0] + w, lo[1]), (lo[0] + w, lo[1] + w), (lo[0], lo[1] + w))
    return _poly_poly(s.params, box)


def normalize(objects: Sequence[FatObject]) -> list:
    """Translate and scale uniformly into ``[0, 1/2]^2`` (exact); scaling
    preserves every intersection."""
    if not objects:
        return []
    boxes = [o.bbox() for o in objects]
    lx = min(b[0][0] for b in boxes)
    ly = min(b[0][1] for b in boxes)
    ext = max(max(b[1][0] for b in boxes) - lx, max(b[1][1] for b in boxes) - ly)
    scale = Fraction(1, 2) / ext if ext > 0 else Fraction(1)
    return [o.map(scale, (-lx * scale, -ly * scale)) for o in objects]


# ------------------------------------------------------------ quadtree cells

MAX_LEVEL = 200


@dataclass(frozen=True)
class QuadtreeCell:
    """``[i_1/2^j, (i_1+1)/2^j) x [i_2/2^j, (i_2+1)/2^j)``."""

    level: int
    index: tuple

    @property
    def width(self) -> Fraction:
        return Fraction(1) / Fraction(2) ** self.level

    @property
    def origin(self) -> tuple:
        w = self.width
        return tuple(i * w for i in self.index)

    def contains_point(self, p) -> bool:
        w = self.width
        return all(i * w <= x < (i + 1) * w for i, x in zip(self.index, p))

    @classmethod
    def of_point(cls, p, level) -> "QuadtreeCell":
        scale = Fraction(2) ** level
        return cls(level, tuple(math.floor(x * scale) for x in p))


def _idx(X: int, level: int, den: int) -> int:
    """Cell index along one axis of the point ``X / den`` at ``level``."""
    return (X << level) // den if level >= 0 else X // (den << -level)


def _same(lo, hi, level, den) -> bool:
    return all(_idx(a, level, den) == _idx(b, level, den) for a, b in zip(lo, hi))


def _split_level(lo, hi, den, start: int = -1) -> int:
    """Deepest level >= ``start`` whose cell holds the integer box
    ``[lo, hi] / den`` (which the cell at ``start`` is assumed to hold)."""
    if lo == hi:
        return MAX_LEVEL
    step = 1
    good = start
    while good + step <= MAX_LEVEL and _same(lo, hi, good + step, den):
        good += step
        step *= 2
    bad = min(good + step, MAX_LEVEL + 1)
    while bad - good > 1:
        mid = (good + bad) // 2
        if _same(lo, hi, mid, den):
            good = mid
        else:
            bad = mid
    return good


def _common_den(values) -> int:
    den = 1
    for v in values:
        if isinstance(v, Fraction):
            den = math.lcm(den, v.denominator)
    return den


def smallest_cell(points) -> QuadtreeCell:
    """Smallest quadtree cell containing every point."""
    den = _common_den(c for p in points for c in p)
    ints = [tuple(int(c * den) for c in p) for p in points]
    lo = tuple(min(p[a] for p in ints) for a in range(len(ints[0])))
    hi = tuple(max(p[a] for p in ints) for a in range(len(ints[0])))
    L = _split_level(lo, hi, den)
    return QuadtreeCell(L, tuple(_idx(x, L, den) for x in lo))


def _aligned_box(lo, hi, den, c) -> bool:
    R = max(b - a for a, b in zip(lo, hi))
    if R == 0:
        return True
    L = _split_level(lo, hi, den)
    # cell side 2^-L <= c * R / den
    return den <= c * R << L if L >= 0 else den << -L <= c * R


def is_aligned(s: FatObject, c: int) -> bool:
    """``s`` lies in a quadtree cell of side at most ``c * side(s)``."""
    lo, hi = s.bbox()
    den = _common_den(lo + hi)
    return _aligned_box(tuple(int(v * den) for v in lo), tuple(int(v * den) for v in hi), den, c)


def shift_vector(j: int, K: int) -> tuple:
    return (Fraction(j, K), Fraction(j, K))


def shifted_integer(ints: Sequence[FatObject], den: int, j: int, K: int) -> tuple[list, int]:
    """Integer objects (unit ``1 / den``) shifted by ``(j/K, j/K)``, in
    units of ``1 / (den K)``."""
    off = j * den
    return [o.map(K, (off, off)) for o in ints], den * K


def shift_align(objects: Sequence[FatObject], k: int, d: int = D_FAT) -> list:
    """For every ``j`` in ``range(K)``, ``K = 2dk + 1``, the indices of the
    objects (already in ``[0, 1)^d``) whose shift by ``(j/K, ..., j/K)``
    is ``2K``-aligned."""
    K = 2 * d * k + 1
    ints, den = integer_scaled(objects)
    boxes = [o.bbox() for o in ints]
    out = []
    for j in range(K):
        off = j * den
        D = den * K
        out.append(
            (
                j,
                [
                    i
                    for i, (lo, hi) in enumerate(boxes)
                    if _aligned_box(
                        (lo[0] * K + off, lo[1] * K + off), (hi[0] * K + off, hi[1] * K + off), D, 2 * K
                    )
                ],
            )
        )
    return out


# -------------------------------------------------------- compressed quadtree


@dataclass
class QNode:
    outer: QuadtreeCell
    cell: QuadtreeCell
    children: list = field(default_factory=list)
    inside: list = field(default_factory=list)  # objects contained in ``outer``
    boundary: list = field(default_factory=list)  # objects meeting ``outer`` but not inside
    own: list = field(default_factory=list)  # objects whose corners' LCA is this node


def _scaled(o: FatObject, factor: int) -> FatObject:
    return o if factor == 1 else o.map(factor, (0, 0))


def integer_scaled(objects: Sequence[FatObject]) -> tuple[list, int]:
    """Objects multiplied by the common denominator ``den`` of their
    coordinates, and ``den``."""
    den = _common_den(v for o in objects for v in _flat(o))
    return [_scaled(o, den) for o in objects], den


def build_compressed_quadtree(
    objects: Sequence[FatObject], k: int | None = None, threshold: int | None = None, den: int | None = None
):
    """Compressed quadtree over bounding-box corners. Every node keeps the
    cell it was split from (``outer``) and its shrunk cell, the objects
    inside, and the boundary objects found by descending from each object's
    corner LCA. With ``k``, a boundary set larger than ``threshold`` is
    searched for a ``K_k``; returns ``(root, clique or None)``. With
    ``den``, objects are integer coordinates in units of ``1 / den``."""
    if den is None:
        ints, den = integer_scaled(objects)
    else:
        ints = list(objects)
    corners = [[tuple(int(c) for c in p) for p in o.corners()] for o in ints]
    root_outer = QuadtreeCell(-1, (0, 0))
    allp = sorted({p for cs in corners for p in cs})

    def build(outer, points):
        lo = (min(p[0] for p in points), min(p[1] for p in points))
        hi = (max(p[0] for p in points), max(p[1] for p in points))
        L = _split_level(lo, hi, den, outer.level)
        cell = QuadtreeCell(L, tuple(_idx(x, L, den) for x in lo))
        node = QNode(outer, cell)
        if L < MAX_LEVEL:
            groups = {}
            for p in points:
                groups.setdefault((_idx(p[0], L + 1, den), _idx(p[1], L + 1, den)), []).append(p)
            for key in sorted(groups):
                node.children.append(build(QuadtreeCell(L + 1, key), groups[key]))
        return node

    def holds(cell, p):
        return all(_idx(x, cell.level, den) == i for x, i in zip(p, cell.index))

    def meets(i, cell):
        # compare in units of den / 2^level so everything stays integral
        l = cell.level
        f = 1 << l if l >= 0 else 1
        unit = den if l >= 0 else den << -l
        x, y = cell.index
        o = ints[i]
        if o.shape == "disk":
            cx, cy, r = (v * f for v in o.params)
            dx = max(x * unit - cx, 0, cx - (x + 1) * unit)
            dy = max(y * unit - cy, 0, cy - (y + 1) * unit)
            return dx * dx + dy * dy <= r * r
        return _meets_box(_scaled(o, f), (x * unit, y * unit), unit)

    root = build(root_outer, allp) if allp else QNode(root_outer, root_outer)
    for i in range(len(objects)):
        cs = corners[i]
        v = root
        v.inside.append(i)
        while True:
            nxt = next((c for c in v.children if all(holds(c.outer, p) for p in cs)), None)
            if nxt is None:
                break
            v = nxt
            v.inside.append(i)
        v.own.append(i)
        stack = list(v.children)
        while stack:
            u = stack.pop()
            if meets(i, u.outer):
                u.boundary.append(i)
                stack.extend(u.children)
    clique = None
    if k is not None:
        limit = threshold if threshold is not None else boundary_threshold(k)
        for u in _nodes(root):
            if len(u.boundary) > limit:
                clique = _find_clique([ints[i] for i in u.boundary], k)
                if clique is not None:
                    clique = tuple(u.boundary[i] for i in clique)
                    break
    return root, clique


def _flat(o: FatObject):
    if o.shape == "disk":
        return o.params
    return [c for p in o.params for c in p]


def boundary_threshold(k: int, d: int = D_FAT) -> int:
    K = 2 * d * k + 1
    return BOUNDARY_C * k * K ** (d - 1)


def _nodes(root):
    out = [root]
    for v in out:
        out.extend(v.children)
    return out


def _find_clique(objs, k):
    n = len(objs)
    adj = [{j for j in range(n) if j != i and fat_intersects(objs[i], objs[j])} for i in range(n)]
    chosen = []

    def grow(cands):
        if len(chosen) == k:
            return True
        for v in sorted(cands):
            if len(chosen) + len([c for c in cands if c >= v]) < k:
                return False
            chosen.append(v)
            if grow({c for c in cands if c > v and c in adj[v]}):
                return True
            chosen.pop()
        return False

    return tuple(chosen) if grow(set(range(n))) else None


# ---------------------------------------------------------------- DP


class _PatternDP:
    """``solve(node, I, phi)`` returns an extension mapping every pattern
    vertex in ``I`` to an object inside ``node.outer`` and agreeing with
    ``phi`` (pattern vertex -> boundary object of ``node``), such that
    every pattern edge among them is realized; or ``None``."""

    def __init__(self, objects, k, edges):
        self.objects = objects
        self.k = k
        self.nbr = [set() for _ in range(k)]
        for a, b in edges:
            self.nbr[a].add(b)
            self.nbr[b].add(a)
        self.memo = {}
        self.meets_cache = {}
        self.node_info = {}
        self.comp_cache = {}
        self.states = 0

    def meets(self, a, b):
        key = (a, b) if a < b else (b, a)
        r = self.meets_cache.get(key)
        if r is None:
            r = self.meets_cache[key] = fat_intersects(self.objects[a], self.objects[b])
        return r

    def fits(self, mapping, i, s):
        """``s`` may play pattern vertex ``i`` next to ``mapping``."""
        for j in self.nbr[i]:
            t = mapping.get(j)
            if t is not None and not self.meets(s, t):
                return False
        return True

    def extend(self, mapping, verts, pool):
        """All injective extensions of ``mapping`` sending ``verts`` into
        ``pool`` with every pattern edge realized."""
        if not verts:
            yield mapping
            return
        i, rest = verts[0], verts[1:]
        used = set(mapping.values())
        for s in pool:
            if s not in used and self.fits(mapping, i, s):
                m = dict(mapping)
                m[i] = s
                yield from self.extend(m, rest, pool)

    def solve(self, node, I: frozenset, phi: tuple):
        key = (id(node), I, phi)
        if key in self.memo:
            return self.memo[key]
        self.states += 1
        res = self._solve(node, I, dict(phi))
        self.memo[key] = res
        return res

    def _info(self, node):
        info = self.node_info.get(id(node))
        if info is None:
            bnd = [set(c.boundary) for c in node.children]
            cross = [s for s in node.inside if any(s in b for b in bnd)]
            info = self.node_info[id(node)] = (bnd, cross)
        return info

    def _solve(self, node, I, phi):
        if not I:
            return dict(phi)
        if len(node.inside) < len(I):
            return None
        if len(node.inside) <= LEAF_SIZE or not node.children:
            return next(self.extend(phi, sorted(I), node.inside), None)
        child_bnd, cross = self._info(node)
        Il = sorted(I)
        for r in range(len(Il) + 1):
            for IBp in combinations(Il, r):
                rest = tuple(i for i in Il if i not in IBp)
                comps = self._components(rest)
                for tilde in self.extend(phi, list(IBp), cross):
                    got = self._assign(node, comps, tilde, child_bnd)
                    if got is not None:
                        return got
        return None

    def _components(self, verts):
        got = self.comp_cache.get(verts)
        if got is not None:
            return got
        vs = set(verts)
        comps = []
        seen = set()
        for v in verts:
            if v in seen:
                continue
            comp = [v]
            seen.add(v)
            for x in comp:
                for y in self.nbr[x]:
                    if y in vs and y not in seen:
                        seen.add(y)
                        comp.append(y)
            comps.append(comp)
        self.comp_cache[verts] = comps
        return comps

    def _assign(self, node, comps, tilde, child_bnd):
        kids = node.children
        for choice in product(range(len(kids)), repeat=len(comps)):
            groups = [[] for _ in kids]
            for comp, c in zip(comps, choice):
                groups[c].extend(comp)
            out = dict(tilde)
            ok = True
            for c, g in enumerate(groups):
                if not g:
                    continue
                if len(kids[c].inside) < len(g):
                    ok = False
                    break
                bc = child_bnd[c]
                sub_phi = tuple(sorted((i, s) for i, s in tilde.items() if s in bc))
                # a pattern edge to an interface object missing this child cannot be realized
                if any(j in tilde and tilde[j] not in bc for i in g for j in self.nbr[i]):
                    ok = False
                    break
                got = self.solve(kids[c], frozenset(g), sub_phi)
                if got is None:
                    ok = False
                    break
                out.update(got)
            if ok:
                return out
        return None


def detect_pattern_fat(
    objects: Sequence[FatObject],
    k: int,
    edges: Sequence,
    *,
    cap: int = DEFAULT_PATTERN_CAP,
    stats: dict | None = None,
) -> Witness | None:
    """Non-induced copy of the pattern ``([k], edges)`` in the intersection
    graph of fat objects; the witness lists the object of each pattern
    vertex.

    Objects are normalized into the unit square and, for each shift guess,
    the aligned ones are organized in a compressed quadtree. A boundary set
    too large for fat objects must hold a ``K_k``, which contains the
    pattern. Otherwise a memoized DP places pattern vertices inside
    children cells or on interface objects crossing child boundaries.
    """
    if not 1 <= k <= cap:
        raise ValueError(f"pattern size must lie in [1, {cap}]")
    for a, b in edges:
        if a == b or not (0 <= a < k and 0 <= b < k):
            raise ValueError(f"bad pattern edge ({a}, {b})")
    n = len(objects)
    if n < k:
        return None
    norm = normalize(objects)
    K = 2 * D_FAT * k + 1
    base, den0 = integer_scaled(norm)
    info = {"shifts": 0, "states": 0, "max_boundary": 0}
    for j, keep in shift_align(norm, k):
        info["shifts"] += 1
        if len(keep) < k:
            continue
        moved, den = shifted_integer([base[i] for i in keep], den0, j, K)
        root, clique = build_compressed_quadtree(moved, k, den=den)
        info["max_boundary"] = max(info["max_boundary"], max(len(u.boundary) for u in _nodes(root)))
        if clique is not None:
            info["branch"] = "clique"
            if stats is not None:
                stats.update(info)
            return Witness(SUBGRAPH, tuple(keep[i] for i in clique), dict(info, shift=j))
        dp = _PatternDP(moved, k, edges)
        got = dp.solve(root, frozenset(range(k)), ())
        info["states"] += dp.states
        if got is not None:
            info["branch"] = "dp"
            if stats is not None:
                stats.update(info)
            return Witness(SUBGRAPH, tuple(keep[got[i]] for i in range(k)), dict(info, shift=j))
    if stats is not None:
        stats.update(info)
    return None
