"""Colorful independent sets (pairwise disjoint boxes) by greedy range-min
chains over guessed separating directions.

Boxes are mapped to a rank matrix ``C`` with two columns per axis:
``C[:, 2a] = hi_a`` and ``C[:, 2a + 1] = -lo_a``, using distinct ranks per
axis (ties broken symbolically: lower sides before upper sides, then by
index), which preserves the intersection graph. Column ``c`` is a
*direction*: ``u`` lies before ``w`` in direction ``c`` iff
``C[u, c] + C[w, c ^ 1] < 0``, and two boxes are disjoint iff some
direction separates them.
"""

from __future__ import annotations

import math
from itertools import combinations, permutations
from typing import Sequence

import numpy as np

from . import _kernels
from .geometry import Box
from .witness import INDEPENDENT, Witness

DENSE_LIMIT = 1 << 16
NONE = np.iinfo(np.int64).min // 4  # threshold that nothing satisfies


# ------------------------------------------------------------ rank space


def _scaled(values: list) -> list:
    """Integers ordered like the rational ``values`` (common denominator)."""
    den = math.lcm(*(v.denominator for v in values)) if values else 1
    return [v.numerator * (den // v.denominator) for v in values]


def rank_matrix(boxes: Sequence[Box]) -> np.ndarray:
    n = len(boxes)
    d = boxes[0].d if boxes else 0
    if any(b.d != d for b in boxes):
        raise ValueError("boxes of mixed dimension")
    C = np.zeros((n, 2 * d), np.int64)
    idx = np.arange(n)
    for a in range(d):
        nums = _scaled([b.lo[a] for b in boxes] + [b.hi[a] for b in boxes])
        side = np.repeat([0, 1], n)
        if nums and max(abs(x) for x in nums) < 1 << 62:
            order = np.lexsort((np.concatenate([idx, idx]), side, np.asarray(nums, np.int64)))
        else:
            order = np.asarray(sorted(range(2 * n), key=lambda e: (nums[e], e >= n, e % n)), np.int64)
        rank = np.empty(2 * n, np.int64)
        rank[order] = np.arange(2 * n)
        C[:, 2 * a] = rank[n:]
        C[:, 2 * a + 1] = -rank[:n]
    return C


def color_parts(objects, k: int):
    """Parts (lists of indices) by sorted distinct color, or ``None`` when
    fewer than ``k`` colors occur."""
    colors = sorted({o.color for o in objects}, key=lambda c: (str(type(c)), c))
    if len(colors) > k:
        raise ValueError(f"expected at most {k} colors, got {len(colors)}")
    if len(colors) < k:
        return None
    pos = {c: i for i, c in enumerate(colors)}
    parts = [[] for _ in range(k)]
    for i, o in enumerate(objects):
        parts[pos[o.color]].append(i)
    return parts


def disjoint_atom(C: np.ndarray, u: np.ndarray):
    """Disjunction: ``w`` is disjoint from box ``u`` (per query row)."""
    return ("or", [(c ^ 1, -C[u, c] - 1) for c in range(C.shape[1])])


# ------------------------------------------------------ range-min oracle


class RangeMin:
    """Batched minimum queries over one part. A query row is a conjunction of
    atoms ``("le", col, t)`` meaning ``C[w, col] <= t`` and ``("or", alts)``
    meaning some ``C[w, col] <= t`` holds among ``alts``. ``argmin`` returns
    for each row and each key column the member minimizing that column,
    ties by index, or -1."""

    def __init__(self, C: np.ndarray, members: Sequence[int], dense_limit: int = DENSE_LIMIT):
        self.C = C
        self.members = np.asarray(sorted(members), np.int64)
        self.sub = C[self.members]
        self.dense_limit = dense_limit
        self._trees = {}
        self.queries = 0

    def argmin(self, atoms: list, keys: Sequence[int], q: int) -> np.ndarray:
        self.queries += q
        out = np.full((q, len(keys)), -1, np.int64)
        m = len(self.members)
        if m == 0 or q == 0:
            return out
        if q * m <= self.dense_limit:
            return self._dense(atoms, keys, q)
        alts = [[]]
        for atom in atoms:
            if atom[0] == "le":
                alts = [a + [(atom[1], atom[2])] for a in alts]
            else:
                alts = [a + [alt] for a in alts for alt in atom[1]]
        for conj in alts:
            merged = {}
            for col, t in conj:
                t = np.broadcast_to(np.asarray(t, np.int64), (q,))
                merged[col] = np.minimum(merged[col], t) if col in merged else t
            for j, key in enumerate(keys):
                rows = self._query(merged, key, q)
                hit = rows >= 0
                cand = np.where(hit, self.members[np.maximum(rows, 0)], -1)
                cur = out[:, j]
                cv = np.where(cand >= 0, self.C[np.maximum(cand, 0), key], 0)
                ov = np.where(cur >= 0, self.C[np.maximum(cur, 0), key], 0)
                take = (cand >= 0) & ((cur < 0) | (cv < ov) | ((cv == ov) & (cand < cur)))
                out[:, j] = np.where(take, cand, cur)
        return out

    def _dense(self, atoms, keys, q):
        sub = self.sub
        mask = np.ones((q, len(self.members)), bool)
        for atom in atoms:
            if atom[0] == "le":
                t = np.broadcast_to(np.asarray(atom[2], np.int64), (q,))
                mask &= sub[None, :, atom[1]] <= t[:, None]
            else:
                anym = np.zeros_like(mask)
                for col, t in atom[1]:
                    t = np.broadcast_to(np.asarray(t, np.int64), (q,))
                    anym |= sub[None, :, col] <= t[:, None]
                mask &= anym
        big = np.iinfo(np.int64).max
        out = np.empty((q, len(keys)), np.int64)
        for j, key in enumerate(keys):
            vals = np.where(mask, sub[None, :, key], big)
            idx = np.argmin(vals, axis=1)
            ok = vals[np.arange(q), idx] != big
            out[:, j] = np.where(ok, self.members[idx], -1)
        return out

    def _query(self, merged: dict, key: int, q: int) -> np.ndarray:
        sub = self.sub
        kv = np.ascontiguousarray(sub[:, key])
        ids = np.arange(len(self.members), dtype=np.int64)
        cols = sorted(merged)
        if not cols:
            best = int(np.argmin(kv))
            return np.full(q, best, np.int64)
        if len(cols) == 1:
            return _kernels.dom1_offline(np.ascontiguousarray(sub[:, cols[0]]), kv, ids, merged[cols[0]].copy())
        if len(cols) == 2:
            return _kernels.dom2_offline(
                np.ascontiguousarray(sub[:, cols[0]]),
                np.ascontiguousarray(sub[:, cols[1]]),
                kv,
                ids,
                merged[cols[0]].copy(),
                merged[cols[1]].copy(),
            )
        tkey = (tuple(cols), key)
        if tkey not in self._trees:
            self._trees[tkey] = _kernels.dom_build(np.ascontiguousarray(sub[:, cols]), kv, ids)
        T = np.ascontiguousarray(np.stack([merged[c] for c in cols], axis=1))
        return _kernels.dom_query_batch(*self._trees[tkey], kv, ids, len(cols), T)


def _separated(C, a, b, c):
    """Row-wise: ``a`` before ``b`` in direction ``c`` (both valid)."""
    ok = (a >= 0) & (b >= 0)
    sa = np.maximum(a, 0)
    sb = np.maximum(b, 0)
    return ok & (C[sa, c] + C[sb, c ^ 1] < 0)


def _thresh_after(C, v, c):
    """Threshold on column ``c ^ 1`` selecting boxes after ``v`` in
    direction ``c``; rows with ``v < 0`` select nothing."""
    return np.where(v >= 0, -C[np.maximum(v, 0), c] - 1, NONE)


def _witness(boxes, idx, info=None):
    return Witness(INDEPENDENT, tuple(int(i) for i in idx), info or {})


# -------------------------------------------------------------------- I3


def find_I3_boxes(boxes: Sequence[Box], stats: dict | None = None) -> Witness | None:
    """Three pairwise disjoint boxes of three different colors.

    For every v1 of the first color and every direction c, take the box of
    the second color disjoint from v1 that comes first in direction c and
    the box of the third color that comes last; they are disjoint iff some
    valid pair in that direction is.
    """
    parts = color_parts(boxes, 3)
    if parts is None:
        return None
    C = rank_matrix(boxes)
    D2 = C.shape[1]
    v1 = np.asarray(parts[0], np.int64)
    q = len(v1)
    rm2, rm3 = RangeMin(C, parts[1]), RangeMin(C, parts[2])
    atoms = [disjoint_atom(C, v1)]
    keys = list(range(D2))
    c2 = rm2.argmin(atoms, keys, q)
    c3 = rm3.argmin(atoms, keys, q)
    if stats is not None:
        stats["queries"] = rm2.queries + rm3.queries
    # c ranges over both orientations of every axis
    for c in range(D2):
        hit = _separated(C, c2[:, c], c3[:, c ^ 1], c)
        if hit.any():
            r = int(np.flatnonzero(hit)[0])
            return _witness(boxes, (v1[r], c2[r, c], c3[r, c ^ 1]), {"direction": c})
    return None


# -------------------------------------------------------------------- I4


def interval_buckets(values: np.ndarray, r: float) -> tuple[np.ndarray, np.ndarray]:
    """Split sorted distinct ``values`` into about ``r`` runs of equal size.
    Returns (bucket id of each value in input order, boundary values),
    where each boundary is the first value of a run after the first."""
    n = len(values)
    if n == 0:
        return np.zeros(0, np.int64), np.zeros(0, np.int64)
    width = max(1, math.ceil(n / max(1.0, r)))
    order = np.argsort(values, kind="mergesort")
    bucket = np.empty(n, np.int64)
    bucket[order] = np.arange(n) // width
    bounds = values[order][width::width]
    return bucket, bounds


def find_I4_boxes(boxes: Sequence[Box], r: float | None = None, stats: dict | None = None) -> Witness | None:
    """Four pairwise disjoint boxes of four different colors.

    For each direction ``c12`` separating v1 before v2, the sorted oriented
    coordinates are cut into ``r`` runs (default sqrt n). Pairs inside one
    run (low pairs) are listed and, for each direction ``c34``, the first
    third-color box and last fourth-color box disjoint from both are
    compared. Otherwise a run boundary x separates v1 and v2: for every
    boundary and every v4, greedy v1 (before x) and v2 (after x) minimize
    their coordinate toward v3, and one emptiness query finds v3.
    """
    parts = color_parts(boxes, 4)
    if parts is None:
        return None
    n = len(boxes)
    r = math.sqrt(n) if r is None else r
    C = rank_matrix(boxes)
    D2 = C.shape[1]
    keys = list(range(D2))
    rms = [RangeMin(C, p) for p in parts]
    P = [np.asarray(p, np.int64) for p in parts]
    info = {"r": r, "low_pairs": 0}
    try:
        for c12 in range(D2):
            w = _i4_low(C, P, rms, c12, r, keys, info)
            if w is not None:
                info["case"] = 1
                return _witness(boxes, w, dict(info))
            w = _i4_high(C, P, rms, c12, r, keys, info)
            if w is not None:
                info["case"] = 2
                return _witness(boxes, w, dict(info))
        return None
    finally:
        info["queries"] = sum(x.queries for x in rms)
        if stats is not None:
            stats.update(info)


def _oriented(C, P, c12):
    val1 = C[P[0], c12]
    val2 = -C[P[1], c12 ^ 1]
    return val1, val2


def _i4_low(C, P, rms, c12, r, keys, info):
    val1, val2 = _oriented(C, P, c12)
    allv = np.concatenate([val1, val2])
    bucket, _ = interval_buckets(allv, r)
    b1, b2 = bucket[: len(val1)], bucket[len(val1):]
    by2 = {}
    for j, b in enumerate(b2):
        by2.setdefault(int(b), []).append(j)
    pa, pb = [], []
    for i, b in enumerate(b1):
        for j in by2.get(int(b), ()):
            if val1[i] < val2[j]:
                pa.append(P[0][i])
                pb.append(P[1][j])
    if not pa:
        return None
    info["low_pairs"] += len(pa)
    v1 = np.asarray(pa, np.int64)
    v2 = np.asarray(pb, np.int64)
    atoms = [disjoint_atom(C, v1), disjoint_atom(C, v2)]
    c3 = rms[2].argmin(atoms, keys, len(v1))
    c4 = rms[3].argmin(atoms, keys, len(v1))
    for c34 in keys:
        hit = _separated(C, c3[:, c34], c4[:, c34 ^ 1], c34)
        if hit.any():
            t = int(np.flatnonzero(hit)[0])
            return (v1[t], v2[t], c3[t, c34], c4[t, c34 ^ 1])
    return None


def _i4_high(C, P, rms, c12, r, keys, info):
    val1, val2 = _oriented(C, P, c12)
    _, bounds = interval_buckets(np.concatenate([val1, val2]), r)
    if len(bounds) == 0 or len(P[3]) == 0:
        return None
    # rows enumerate (boundary x, v4)
    xs = np.repeat(bounds, len(P[3]))
    v4 = np.tile(P[3], len(bounds))
    q = len(v4)
    d4 = disjoint_atom(C, v4)
    g1 = rms[0].argmin([("le", c12, xs - 1), d4], keys, q)
    g2 = rms[1].argmin([("le", c12 ^ 1, -xs), d4], keys, q)
    for c13 in keys:
        v1 = g1[:, c13]
        if not (v1 >= 0).any():
            continue
        e3 = rms[2].argmin([d4, ("le", c13 ^ 1, _thresh_after(C, v1, c13))], keys, q)
        for c23 in keys:
            v2 = g2[:, c23]
            v3 = e3[:, c23 ^ 1]
            hit = (v1 >= 0) & _separated(C, v2, v3, c23)
            if hit.any():
                t = int(np.flatnonzero(hit)[0])
                return (v1[t], v2[t], v3[t], v4[t])
    return None


# ----------------------------------------------------------------- I4 5-D


def find_I4_boxes_5d(boxes: Sequence[Box], stats: dict | None = None) -> Witness | None:
    """Four pairwise disjoint colorful boxes in five dimensions.

    Six separated pairs over five axes force two pairs onto one axis, so in
    some direction one box (v1) precedes two others; call v4 the one of
    those with the earlier near side. Per v4, greedy v1 ends before v4,
    greedy v2 starts after v4's near side and misses v4, and an emptiness
    query looks for v3 separated from v1, v2 and v4.
    """
    if any(b.d != 5 for b in boxes):
        raise ValueError("find_I4_boxes_5d needs 5-dimensional boxes")
    parts = color_parts(boxes, 4)
    if parts is None:
        return None
    C = rank_matrix(boxes)
    D2 = C.shape[1]
    keys = list(range(D2))
    rms = [RangeMin(C, p) for p in parts]
    try:
        for i1, i4, i2, i3 in permutations(range(4)):
            v4 = np.asarray(parts[i4], np.int64)
            q = len(v4)
            if q == 0:
                continue
            d4 = disjoint_atom(C, v4)
            for c in keys:
                g1 = rms[i1].argmin([("le", c, -C[v4, c ^ 1] - 1)], keys, q)
                g2 = rms[i2].argmin([("le", c ^ 1, C[v4, c ^ 1] - 1), d4], keys, q)
                for c13 in keys:
                    v1 = g1[:, c13]
                    if not (v1 >= 0).any():
                        continue
                    e3 = rms[i3].argmin([d4, ("le", c13 ^ 1, _thresh_after(C, v1, c13))], keys, q)
                    for c23 in keys:
                        v2 = g2[:, c23]
                        v3 = e3[:, c23 ^ 1]
                        hit = (v1 >= 0) & _separated(C, v2, v3, c23)
                        if hit.any():
                            t = int(np.flatnonzero(hit)[0])
                            out = [0] * 4
                            out[i1], out[i2], out[i3], out[i4] = v1[t], v2[t], v3[t], v4[t]
                            return _witness(boxes, out, {"direction": c})
        return None
    finally:
        if stats is not None:
            stats["queries"] = sum(x.queries for x in rms)


# ------------------------------------------------------------------ I5 2-D


def sw_free_rectangle(rects: Sequence[Box]) -> int | None:
    """Index of a rectangle whose SW extension ``(-inf, x2] x (-inf, y2]``
    meets no other rectangle. For pairwise disjoint rectangles one always
    exists: among rectangles whose bottom side is visible from below, the
    one with the leftmost left side works."""
    n = len(rects)
    if n == 0:
        return None

    def blocks_below(t, s):
        # t lies (partly) in the vertical strip under s's bottom side
        return t.lo[0] <= s.hi[0] and t.hi[0] >= s.lo[0] and t.lo[1] < s.lo[1]

    good = [i for i in range(n) if not any(j != i and blocks_below(rects[j], rects[i]) for j in range(n))]
    if not good:
        return None
    s = min(good, key=lambda i: (rects[i].lo[0], i))
    if sw_extension_free(rects, s):
        return s
    return None


def sw_extension_free(rects: Sequence[Box], s: int) -> bool:
    x2, y2 = rects[s].hi
    return not any(j != s and rects[j].lo[0] <= x2 and rects[j].lo[1] <= y2 for j in range(len(rects)))


def _staircase(points: list, minimal: bool) -> list:
    """Pareto-minimal (or maximal) grid corners ``(gx, gy, id)``."""
    sign = 1 if minimal else -1
    pts = sorted(points, key=lambda p: (sign * p[0], sign * p[1], p[2]))
    out = []
    best = None
    for gx, gy, i in pts:
        if best is None or sign * gy < sign * best:
            out.append((gx, gy, i))
            best = gy
    return out


def find_I5_rects_2d(rects: Sequence[Box], r: float | None = None, stats: dict | None = None) -> Witness | None:
    """Five pairwise disjoint rectangles of five different colors.

    An ``r x r`` grid (default ``r = n^(2/3)``) puts about ``2n / r`` sides
    in each column and row; a disjoint pair is low when two of its sides
    share a column or a row. If some solution edge is low, low pairs are
    listed and a greedy chain (v3 first in a direction, then v4 and v5 past
    v3) completes them. Otherwise a grid-aligned SW quadrant around one
    solution rectangle and a NE quadrant around another are disjoint from
    the rest; minimal quadrants form staircases and every disjoint pair of
    them seeds the same chain.
    """
    if any(b.d != 2 for b in rects):
        raise ValueError("find_I5_rects_2d needs 2-dimensional rectangles")
    parts = color_parts(rects, 5)
    if parts is None:
        return None
    n = len(rects)
    r = n ** (2 / 3) if r is None else r
    C = rank_matrix(rects)
    w = max(1, math.ceil(2 * n / max(1.0, r)))
    rms = [RangeMin(C, p) for p in parts]
    info = {"r": r, "width": w, "low_pairs": 0}
    try:
        hit = _i5_low(rects, C, parts, rms, w, info)
        if hit is not None:
            info["case"] = 1
            return _witness(rects, hit, dict(info))
        hit = _i5_high(C, parts, rms, w, info)
        if hit is not None:
            info["case"] = 2
            return _witness(rects, hit, dict(info))
        return None
    finally:
        info["queries"] = sum(x.queries for x in rms)
        if stats is not None:
            stats.update(info)


def _chain(C, rms, roles, atoms, q):
    """Greedy v3, v4, v5 against the per-row constraints ``atoms``.
    Returns (row, v3, v4, v5) or ``None``."""
    i3, i4, i5 = roles
    keys = [0, 1, 2, 3]
    g3 = rms[i3].argmin(atoms, keys, q)
    for c3 in keys:
        v3 = g3[:, c3]
        if not (v3 >= 0).any():
            continue
        past = atoms + [("le", c3 ^ 1, _thresh_after(C, v3, c3))]
        g4 = rms[i4].argmin(past, keys, q)
        g5 = rms[i5].argmin(past, keys, q)
        for c45 in keys:
            hit = _separated(C, g4[:, c45], g5[:, c45 ^ 1], c45)
            if hit.any():
                t = int(np.flatnonzero(hit)[0])
                return t, v3[t], g4[t, c45], g5[t, c45 ^ 1]
    return None


def _i5_low(rects, C, parts, rms, w, info):
    cells = {}
    for p, mem in enumerate(parts):
        for i in mem:
            keys = {("x", int(C[i, 0]) // w), ("x", int(-C[i, 1]) // w), ("y", int(C[i, 2]) // w), ("y", int(-C[i, 3]) // w)}
            for key in keys:
                cells.setdefault(key, [[] for _ in range(5)])[p].append(i)
    for a, b in combinations(range(5), 2):
        pairs = set()
        for lists in cells.values():
            for u in lists[a]:
                for v in lists[b]:
                    if _disjoint(C, u, v):
                        pairs.add((u, v))
        if not pairs:
            continue
        pairs = sorted(pairs)
        info["low_pairs"] += len(pairs)
        v1 = np.asarray([p[0] for p in pairs], np.int64)
        v2 = np.asarray([p[1] for p in pairs], np.int64)
        atoms = [disjoint_atom(C, v1), disjoint_atom(C, v2)]
        rest = [x for x in range(5) if x not in (a, b)]
        for i3 in rest:
            i4, i5 = [x for x in rest if x != i3]
            got = _chain(C, rms, (i3, i4, i5), atoms, len(v1))
            if got is not None:
                t, x3, x4, x5 = got
                out = [0] * 5
                out[a], out[b], out[i3], out[i4], out[i5] = v1[t], v2[t], x3, x4, x5
                return out
    return None


def _disjoint(C, u, v):
    return bool(np.any(C[u] + C[v, np.arange(C.shape[1]) ^ 1] < 0))


def _i5_high(C, parts, rms, w, info):
    # grid line g sits between ranks g*w - 1 and g*w
    sw = []
    ne = []
    for p, mem in enumerate(parts):
        sw.append(_staircase([(int(C[i, 0]) // w + 1, int(C[i, 2]) // w + 1, i) for i in mem], True))
        ne.append(_staircase([(int(-C[i, 1]) // w, int(-C[i, 3]) // w, i) for i in mem], False))
    info["staircase"] = max(len(s) for s in sw + ne) if parts else 0
    for a in range(5):
        for b in range(5):
            if a == b:
                continue
            combos = [(s, t) for s in sw[a] for t in ne[b] if t[0] >= s[0] or t[1] >= s[1]]
            if not combos:
                continue
            X1 = np.asarray([s[0] * w - 1 for s, _ in combos], np.int64)
            Y1 = np.asarray([s[1] * w - 1 for s, _ in combos], np.int64)
            X2 = np.asarray([t[0] * w for _, t in combos], np.int64)
            Y2 = np.asarray([t[1] * w for _, t in combos], np.int64)
            atoms = [
                ("or", [(1, -X1 - 1), (3, -Y1 - 1)]),  # misses the SW quadrant
                ("or", [(0, X2 - 1), (2, Y2 - 1)]),  # misses the NE quadrant
            ]
            rest = [x for x in range(5) if x not in (a, b)]
            for i3 in rest:
                i4, i5 = [x for x in rest if x != i3]
                got = _chain(C, rms, (i3, i4, i5), atoms, len(combos))
                if got is not None:
                    t, x3, x4, x5 = got
                    out = [0] * 5
                    out[a], out[b] = combos[t][0][2], combos[t][1][2]
                    out[i3], out[i4], out[i5] = x3, x4, x5
                    return out
    return None
