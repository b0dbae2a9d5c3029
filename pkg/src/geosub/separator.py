"""Segment arrangements as weighted plane graphs and a Lipton-Tarjan
separator over them."""

from __future__ import annotations

import functools
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .geometry import Segment, orient, segment_intersects

TWO_THIRDS = Fraction(2, 3)


@dataclass
class ArrangementGraph:
    """Plane graph with exact vertex positions. For an arrangement, vertices
    are endpoints and crossing points and each segment spreads weight 1
    evenly over the vertices on it."""

    points: list
    adj: list
    weight: list
    seg_vertices: list = field(default_factory=list)

    @property
    def N(self) -> int:
        return len(self.points)

    def edges(self) -> list:
        return sorted((u, v) for u in range(self.N) for v in self.adj[u] if u < v)

    def total_weight(self) -> Fraction:
        return sum(self.weight, Fraction(0))

    @classmethod
    def from_plane_graph(cls, points: Sequence, edges: Iterable, weights: Sequence | None = None):
        """Straight-line plane graph (edges must not cross)."""
        adj = [set() for _ in points]
        for u, v in edges:
            if u != v:
                adj[u].add(v)
                adj[v].add(u)
        w = [Fraction(x) for x in weights] if weights is not None else [Fraction(1)] * len(points)
        return cls([tuple(p) for p in points], adj, w)


def segment_crossings(s: Segment, t: Segment) -> list:
    """Points shared by two segments: the crossing point, or for collinear
    overlaps the endpoints lying on the other segment."""
    if not segment_intersects(s, t):
        return []
    (x1, y1), (x2, y2) = s.p, s.q
    (x3, y3), (x4, y4) = t.p, t.q
    rx, ry = x2 - x1, y2 - y1
    sx, sy = x4 - x3, y4 - y3
    den = rx * sy - ry * sx
    if den != 0:
        a = Fraction((x3 - x1) * sy - (y3 - y1) * sx, 1) / den
        return [(_norm(x1 + a * rx), _norm(y1 + a * ry))]
    out = set()
    for p, seg in ((s.p, t), (s.q, t), (t.p, s), (t.q, s)):
        if orient(seg.p, seg.q, p) == 0 and min(seg.p, seg.q) <= p <= max(seg.p, seg.q):
            out.add(p)
    return sorted(out)


def _norm(v):
    v = Fraction(v)
    return v.numerator if v.denominator == 1 else v


def build_arrangement(segments: Sequence[Segment], pairs: Iterable | None = None, cap: int | None = None) -> ArrangementGraph:
    """Arrangement graph of ``segments``. ``pairs`` lists the intersecting
    index pairs when already known; otherwise all pairs are tested. More
    than ``cap`` intersecting pairs raise ``ValueError``."""
    n = len(segments)
    if pairs is None:
        pairs = [(i, j) for i in range(n) for j in range(i + 1, n) if segment_intersects(segments[i], segments[j])]
    pairs = list(pairs)
    if cap is not None and len(pairs) > cap:
        raise ValueError(f"{len(pairs)} intersecting pairs exceed the cap {cap}")
    on = [{s.p, s.q} for s in segments]
    for i, j in pairs:
        for pt in segment_crossings(segments[i], segments[j]):
            on[i].add(pt)
            on[j].add(pt)
    index = {}
    points = []
    seg_vertices = []
    for i, s in enumerate(segments):
        # order along the segment: lexicographic order of points matches
        # the order along any non-degenerate segment
        pts = sorted(on[i], reverse=s.p > s.q)
        ids = []
        for pt in pts:
            if pt not in index:
                index[pt] = len(points)
                points.append(pt)
            ids.append(index[pt])
        seg_vertices.append(ids)
    adj = [set() for _ in points]
    weight = [Fraction(0)] * len(points)
    for ids in seg_vertices:
        share = Fraction(1, len(ids))
        for v in ids:
            weight[v] += share
        for a, b in zip(ids, ids[1:]):
            adj[a].add(b)
            adj[b].add(a)
    return ArrangementGraph(points, adj, weight, seg_vertices)


# ----------------------------------------------------------- embedding


def _angle_key(origin):
    ox, oy = origin

    def cmp(p, q):
        ax, ay = p[0] - ox, p[1] - oy
        bx, by = q[0] - ox, q[1] - oy
        ha = 0 if (ay > 0 or (ay == 0 and ax > 0)) else 1
        hb = 0 if (by > 0 or (by == 0 and bx > 0)) else 1
        if ha != hb:
            return ha - hb
        c = ax * by - ay * bx
        return -1 if c > 0 else (1 if c < 0 else 0)

    return functools.cmp_to_key(cmp)


def rotation_system(H: ArrangementGraph) -> list:
    """Neighbours of every vertex in counter-clockwise order."""
    out = []
    for v in range(H.N):
        key = _angle_key(H.points[v])
        out.append(sorted(H.adj[v], key=lambda u: key(H.points[u])))
    return out


class _Embedded:
    """Multigraph with a rotation system over edge ids."""

    def __init__(self):
        self.ends = []  # edge id -> (a, b)
        self.rot = {}  # vertex -> list of edge ids

    def add_edge(self, a, b) -> int:
        self.ends.append((a, b))
        return len(self.ends) - 1

    def other(self, e, v):
        a, b = self.ends[e]
        return b if a == v else a

    def faces(self):
        pos = {(v, e): i for v, es in self.rot.items() for i, e in enumerate(es)}
        seen = set()
        faces = []
        for v, es in self.rot.items():
            for e in es:
                if (v, e) in seen:
                    continue
                face = []
                cur = (v, e)
                while cur not in seen:
                    seen.add(cur)
                    face.append(cur)
                    a, e2 = cur
                    b = self.other(e2, a)
                    rb = self.rot[b]
                    cur = (b, rb[(pos[(b, e2)] + 1) % len(rb)])
                faces.append(face)
        return faces


# ----------------------------------------------------------- separator


def _components(adj, verts):
    verts = set(verts)
    seen = set()
    comps = []
    for s in sorted(verts):
        if s in seen:
            continue
        comp = [s]
        seen.add(s)
        for v in comp:
            for u in adj[v]:
                if u in verts and u not in seen:
                    seen.add(u)
                    comp.append(u)
        comps.append(comp)
    return comps


def _group(pieces, weight):
    """Largest-first assignment of pieces to the lighter side."""
    sides = ([], [])
    ws = [Fraction(0), Fraction(0)]
    for piece, w in sorted(((p, sum((weight[v] for v in p), Fraction(0))) for p in pieces if p), key=lambda t: -t[1]):
        i = 0 if ws[0] <= ws[1] else 1
        sides[i].extend(piece)
        ws[i] += w
    return sides


def weighted_separator(H: ArrangementGraph, stats: dict | None = None):
    """Partition vertices into ``(V1, V2, VB)``: both sides weigh at most
    2/3 of the total and no edge joins V1 and V2.

    BFS levels of the heaviest component give a median level and two thin
    levels around it. If the part between them is still too heavy, levels
    below are contracted, faces are triangulated by a new vertex per face,
    and the fundamental cycle of a BFS tree splitting the weight is added.
    """
    N = H.N
    W = H.total_weight()
    comps = _components(H.adj, range(N))
    wt = H.weight
    cw = [sum((wt[v] for v in c), Fraction(0)) for c in comps]
    if not comps:
        return [], [], []
    hi = max(range(len(comps)), key=lambda i: cw[i])
    others = [c for i, c in enumerate(comps) if i != hi]
    if cw[hi] <= TWO_THIRDS * W:
        V1, V2 = _group(comps, wt)
        return sorted(V1), sorted(V2), []
    comp = comps[hi]
    root = min(comp)
    level = {root: 0}
    parent = {root: None}
    order = [root]
    for v in order:
        for u in sorted(H.adj[v]):
            if u not in level:
                level[u] = level[v] + 1
                parent[u] = v
                order.append(u)
    top = max(level.values())
    L = [[] for _ in range(top + 2)]
    for v in comp:
        L[level[v]].append(v)
    acc = Fraction(0)
    l1 = top
    for i in range(top + 1):
        acc += sum((wt[v] for v in L[i]), Fraction(0))
        if acc >= cw[hi] / 2:
            l1 = i
            break
    l0 = min(range(l1 + 1), key=lambda l: (len(L[l]) + (l1 - l), -l))
    l2 = min(range(l1 + 1, top + 2), key=lambda l: (len(L[l]) + (l - l1 - 1), l))
    sep = list(L[l0]) + list(L[l2])
    low = [v for v in comp if level[v] < l0]
    high = [v for v in comp if level[v] > l2]
    mid = [v for v in comp if l0 < level[v] < l2]
    wm = sum((wt[v] for v in mid), Fraction(0))
    info = {"l0": l0, "l1": l1, "l2": l2, "phase": 2}
    if wm <= TWO_THIRDS * W:
        pieces = [low, mid, high] + others
    else:
        info["phase"] = 3
        inside, outside, cyc = _cycle_split(H, level, parent, l0, l2, mid)
        sep += cyc
        pieces = [low, inside, outside, high] + others
    V1, V2 = _group(pieces, wt)
    V1, V2, VB = _shrink(H, set(V1), set(V2), set(sep), W)
    if stats is not None:
        stats.update(info)
    return sorted(V1), sorted(V2), sorted(VB)


def _shrink(H, V1, V2, VB, W):
    """Move separator vertices into a side when that keeps the partition
    valid."""
    w1 = sum((H.weight[v] for v in V1), Fraction(0))
    w2 = sum((H.weight[v] for v in V2), Fraction(0))
    for v in sorted(VB):
        touch1 = any(u in V1 for u in H.adj[v])
        touch2 = any(u in V2 for u in H.adj[v])
        if touch1 and touch2:
            continue
        wv = H.weight[v]
        opts = []
        if not touch2 and w1 + wv <= TWO_THIRDS * W:
            opts.append((w1, 1))
        if not touch1 and w2 + wv <= TWO_THIRDS * W:
            opts.append((w2, 2))
        if not opts:
            continue
        _, side = min(opts)
        VB.discard(v)
        if side == 1:
            V1.add(v)
            w1 += wv
        else:
            V2.add(v)
            w2 += wv
    return V1, V2, VB


def _cycle_split(H, level, parent, l0, l2, mid):
    rot_geo = rotation_system(H)
    midset = set(mid)
    low = {v for v, l in level.items() if l <= l0}
    R = -1
    G = _Embedded()
    eid = {}
    for v in mid:
        for u in H.adj[v]:
            if u in midset and (u, v) not in eid:
                eid[(u, v)] = eid[(v, u)] = G.add_edge(v, u)
            elif u in low:
                eid[(v, u)] = eid[(u, v)] = G.add_edge(v, R)
    for v in mid:
        G.rot[v] = [eid[(v, u)] for u in rot_geo[v] if (v, u) in eid]
    # rotation at the contracted vertex: walk around the BFS tree of the
    # contracted levels, listing edges that leave it
    root = next(v for v, l in level.items() if l == 0)
    rr = []
    if rot_geo[root]:
        start = (root, 0)
        cur = start
        while True:
            v, i = cur
            u = rot_geo[v][i]
            if u in low and (parent.get(u) == v or parent.get(v) == u):
                j = rot_geo[u].index(v)
                cur = (u, (j + 1) % len(rot_geo[u]))
            else:
                if u in midset:
                    rr.append(eid[(u, v)])
                cur = (v, (i + 1) % len(rot_geo[v]))
            if cur == start:
                break
    G.rot[R] = rr
    G.rot = {v: es for v, es in G.rot.items() if es}
    real_edges = len(G.ends)
    # stellate every face
    faces = G.faces()
    pos = {(v, e): i for v, es in G.rot.items() for i, e in enumerate(es)}
    insert_after = {}
    dummies = []
    for fi, face in enumerate(faces):
        f = ("f", fi)
        dummies.append(f)
        fe = []
        prev_in = face[-1][1]
        for a, e_out in face:
            e_new = G.add_edge(f, a)
            fe.append(e_new)
            # corner at a sits between the arriving edge and e_out
            insert_after[(a, prev_in)] = e_new
            prev_in = e_out
        G.rot[f] = fe[::-1]
    for v in list(G.rot):
        if isinstance(v, tuple):
            continue
        new = []
        for e in G.rot[v]:
            new.append(e)
            if (v, e) in insert_after:
                new.append(insert_after[(v, e)])
        G.rot[v] = new
    tri = G.faces()
    if any(len(f) != 3 for f in tri):
        raise AssertionError("triangulation failed: embedding is not planar")
    # BFS tree over the original edges from the contracted vertex
    tpar = {R: None}
    tdepth = {R: 0}
    tedge = set()
    queue = deque([R])
    while queue:
        v = queue.popleft()
        for e in G.rot.get(v, []):
            if e >= real_edges:
                continue
            u = G.other(e, v)
            if u not in tpar:
                tpar[u] = v
                tdepth[u] = tdepth[v] + 1
                tedge.add(e)
                queue.append(u)
    for f in dummies:
        e = G.rot[f][0]
        a = G.other(e, f)
        tpar[f] = a
        tdepth[f] = tdepth[a] + 1
        tedge.add(e)
    # dual tree over the non-tree edges
    face_of = {}
    for fi, face in enumerate(tri):
        for dart in face:
            face_of[dart] = fi
    dual = [[] for _ in tri]
    for e, (a, b) in enumerate(G.ends):
        if e in tedge:
            continue
        fa, fb = face_of[(a, e)], face_of[(b, e)]
        dual[fa].append((fb, e))
        dual[fb].append((fa, e))
    dpar = [-1] * len(tri)
    dpar_edge = [-1] * len(tri)
    ddepth = [0] * len(tri)
    dorder = [0]
    seen = {0}
    for f in dorder:
        for g, e in dual[f]:
            if g not in seen:
                seen.add(g)
                dpar[g] = f
                dpar_edge[g] = e
                ddepth[g] = ddepth[f] + 1
                dorder.append(g)
    up = [dpar[:]]
    while True:
        prev = up[-1]
        nxt = [prev[p] if p >= 0 else -1 for p in prev]
        up.append(nxt)
        if all(x < 0 for x in nxt):
            break

    def lca(a, b):
        if ddepth[a] < ddepth[b]:
            a, b = b, a
        diff = ddepth[a] - ddepth[b]
        k = 0
        while diff:
            if diff & 1:
                a = up[k][a]
            diff >>= 1
            k += 1
        if a == b:
            return a
        for k in range(len(up) - 1, -1, -1):
            if up[k][a] != up[k][b]:
                a, b = up[k][a], up[k][b]
        return dpar[a]

    wt = H.weight
    home = {}
    Wl = [Fraction(0)] * len(tri)
    for v in mid:
        fs = [face_of[(v, e)] for e in G.rot.get(v, [])]
        if not fs:
            continue
        h = fs[0]
        for f in fs[1:]:
            h = lca(h, f)
        home[v] = h
        Wl[h] += wt[v]
    sub = Wl[:]
    for f in reversed(dorder):
        if dpar[f] >= 0:
            sub[dpar[f]] += sub[f]
    tin, tout = {}, {}
    children = [[] for _ in tri]
    for f in dorder[1:]:
        children[dpar[f]].append(f)
    clock = 0
    stack = [(0, False)]
    while stack:
        f, done = stack.pop()
        if done:
            tout[f] = clock
            continue
        tin[f] = clock
        clock += 1
        stack.append((f, True))
        for g in children[f]:
            stack.append((g, False))
    wm = sum((wt[v] for v in mid), Fraction(0))
    best = None
    for c in dorder[1:]:
        e = dpar_edge[c]
        a, b = G.ends[e]
        cyc = _tree_path(a, b, tpar, tdepth)
        real = [v for v in cyc if isinstance(v, int) and v != R]
        wc = sum((wt[v] for v in real), Fraction(0))
        inside = sub[c] - sum((wt[v] for v in real if v in home and tin[c] <= tin[home[v]] < tout[c]), Fraction(0))
        outside = wm - inside - wc
        score = max(inside, outside)
        if best is None or score < best[0]:
            best = (score, c, real)
        if score <= TWO_THIRDS * wm:
            break
    _, c, real = best
    on = set(real)
    inside = [v for v in mid if v not in on and v in home and tin[c] <= tin[home[v]] < tout[c]]
    ins = set(inside)
    outside = [v for v in mid if v not in on and v not in ins]
    return inside, outside, real


def _tree_path(a, b, par, depth):
    pa, pb = [a], [b]
    while depth[pa[-1]] > depth[pb[-1]]:
        pa.append(par[pa[-1]])
    while depth[pb[-1]] > depth[pa[-1]]:
        pb.append(par[pb[-1]])
    while pa[-1] != pb[-1]:
        pa.append(par[pa[-1]])
        pb.append(par[pb[-1]])
    return pa + pb[-2::-1]


def check_separator(H: ArrangementGraph, V1, V2, VB) -> None:
    """Raise ``AssertionError`` unless ``(V1, V2, VB)`` partitions the
    vertices, no edge joins V1 and V2, and both sides weigh <= 2/3."""
    s1, s2, sb = set(V1), set(V2), set(VB)
    if len(s1) + len(s2) + len(sb) != H.N or (s1 | s2 | sb) != set(range(H.N)):
        raise AssertionError("not a partition")
    for u in s1:
        if any(v in s2 for v in H.adj[u]):
            raise AssertionError("edge between the two sides")
    W = H.total_weight()
    for s in (s1, s2):
        if sum((H.weight[v] for v in s), Fraction(0)) > TWO_THIRDS * W:
            raise AssertionError("side heavier than 2/3")


def split_segments(H: ArrangementGraph, separator) -> tuple[list, list, list]:
    """Segments with a vertex in VB, and segments entirely on each side."""
    V1, _, VB = separator
    s1, sb = set(V1), set(VB)
    S1, S2, SB = [], [], []
    for i, ids in enumerate(H.seg_vertices):
        if any(v in sb for v in ids):
            SB.append(i)
        elif ids[0] in s1:
            S1.append(i)
        else:
            S2.append(i)
    return S1, S2, SB
