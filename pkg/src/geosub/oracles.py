"""Brute-force reference oracles: explicit intersection graphs and exhaustive
pattern search."""

from __future__ import annotations

from typing import Callable, Sequence

from .geometry import Box, Segment, box_intersects, segment_intersects
from .witness import CLIQUE, CYCLE, INDEPENDENT, SUBGRAPH, Witness

GRAPH_CAP = 3000
SMALL_K_CAP = 60
LARGE_K_CAP = 40


def predicate_for(objects: Sequence) -> Callable:
    if not objects:
        return lambda a, b: False
    first = objects[0]
    if isinstance(first, Box):
        return box_intersects
    if isinstance(first, Segment):
        return segment_intersects
    from .fat import FatObject, fat_intersects

    if isinstance(first, FatObject):
        return fat_intersects
    raise TypeError(f"no intersection predicate for {type(first).__name__}")


def explicit_graph(objects: Sequence, cap: int = GRAPH_CAP, meets: Callable | None = None) -> list:
    """All-pairs adjacency as a list of sets."""
    n = len(objects)
    if n > cap:
        raise ValueError(f"{n} objects exceed the explicit-graph cap {cap}")
    meets = meets or predicate_for(objects)
    adj = [set() for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if meets(objects[i], objects[j]):
                adj[i].add(j)
                adj[j].add(i)
    return adj


def _check_cap(n: int, k: int, cap: int | None):
    limit = cap if cap is not None else (SMALL_K_CAP if k <= 4 else LARGE_K_CAP)
    if n > limit:
        raise ValueError(f"brute force over {n} vertices exceeds cap {limit} for k={k}")


def brute_detect(
    adj: Sequence,
    pattern: str,
    k: int | None = None,
    colors: Sequence | None = None,
    pattern_edges: Sequence | None = None,
    cap: int | None = None,
) -> Witness | None:
    """Exhaustive search for ``pattern`` in {"cycle", "clique", "indep",
    "subgraph"}. With ``colors``, the k chosen vertices must carry k
    distinct colors. Returns the lexicographically first witness."""
    n = len(adj)
    if pattern == "subgraph":
        if pattern_edges is None or k is None:
            raise ValueError("subgraph search needs k and pattern_edges")
        _check_cap(n, k, cap)
        return _subgraph(adj, k, pattern_edges, colors)
    if k is None or k < 1:
        raise ValueError("k must be positive")
    _check_cap(n, k, cap)
    if pattern == "cycle":
        return _cycle(adj, k, colors)
    if pattern == "clique":
        return _clique(adj, k, colors, want=True)
    if pattern in ("indep", "independent", INDEPENDENT):
        return _clique(adj, k, colors, want=False)
    raise ValueError(f"unknown pattern {pattern!r}")


def _cycle(adj, k, colors):
    if k < 3:
        raise ValueError("cycles have length >= 3")
    n = len(adj)
    order = [sorted(a) for a in adj]
    for s in range(n):
        path = [s]
        used = {colors[s]} if colors is not None else None

        def dfs(v):
            if len(path) == k:
                return s in adj[v]
            for u in order[v]:
                if u <= s or u in path:
                    continue
                if used is not None:
                    if colors[u] in used:
                        continue
                    used.add(colors[u])
                path.append(u)
                if dfs(u):
                    return True
                path.pop()
                if used is not None:
                    used.discard(colors[u])
            return False

        if dfs(s):
            return Witness(CYCLE, tuple(path))
    return None


def _clique(adj, k, colors, want: bool):
    n = len(adj)
    chosen: list = []

    def ok(u):
        for v in chosen:
            if (u in adj[v]) != want:
                return False
            if colors is not None and colors[u] == colors[v]:
                return False
        return True

    def dfs(start):
        if len(chosen) == k:
            return True
        for u in range(start, n - (k - len(chosen)) + 1):
            if ok(u):
                chosen.append(u)
                if dfs(u + 1):
                    return True
                chosen.pop()
        return False

    if dfs(0):
        return Witness(CLIQUE if want else INDEPENDENT, tuple(chosen))
    return None


def _subgraph(adj, k, pattern_edges, colors):
    n = len(adj)
    nbr = [set() for _ in range(k)]
    for a, b in pattern_edges:
        if a == b or not (0 <= a < k and 0 <= b < k):
            raise ValueError(f"bad pattern edge ({a}, {b})")
        nbr[a].add(b)
        nbr[b].add(a)
    phi: list = []

    def dfs():
        i = len(phi)
        if i == k:
            return True
        for u in range(n):
            if u in phi:
                continue
            if colors is not None and any(colors[u] == colors[w] for w in phi):
                continue
            if all(phi[j] in adj[u] for j in nbr[i] if j < i):
                phi.append(u)
                if dfs():
                    return True
                phi.pop()
        return False

    if dfs():
        return Witness(SUBGRAPH, tuple(phi))
    return None


def girth(adj: Sequence) -> tuple[int, tuple] | None:
    """Shortest cycle length and one shortest cycle, by BFS from every vertex."""
    n = len(adj)
    best = None
    for s in range(n):
        dist = {s: 0}
        par = {s: None}
        queue = [s]
        for v in queue:
            if best is not None and 2 * dist[v] + 1 >= best[0]:
                break
            for u in adj[v]:
                if u not in dist:
                    dist[u] = dist[v] + 1
                    par[u] = v
                    queue.append(u)
                elif par[v] != u:
                    length = dist[u] + dist[v] + 1
                    if best is None or length < best[0]:
                        cyc = _join(par, v, u)
                        if cyc is not None:
                            best = (len(cyc), cyc)
    return best


def _join(par, a, b):
    pa, pb = [a], [b]
    while par[pa[-1]] is not None:
        pa.append(par[pa[-1]])
    while par[pb[-1]] is not None:
        pb.append(par[pb[-1]])
    sa = set(pa)
    # lowest common ancestor: first vertex of b's chain that lies on a's chain
    lca = next(x for x in pb if x in sa)
    left = pa[: pa.index(lca) + 1]
    right = pb[: pb.index(lca)]
    cyc = tuple(reversed(left)) + tuple(right)
    return cyc if len(set(cyc)) == len(cyc) and len(cyc) >= 3 else None
