"""Compiled inner loops (numba) for walk searches and dominance range-min."""

from __future__ import annotations

import numpy as np
from numba import njit

WORD = 64


@njit(cache=True)
def layered_cycle(indptr, indices, label, order, k, start_block):
    """Search closed walks ``v_0 -> ... -> v_{k-1} -> v_0`` with
    ``label[v_i] == order[i]``. Starts are processed in blocks of
    ``start_block`` bits. Returns ``(v_0, v_{k-1})`` or ``(-1, -1)``."""
    n = indptr.shape[0] - 1
    starts = np.empty(n, np.int64)
    n0 = 0
    for v in range(n):
        if label[v] == order[0]:
            starts[n0] = v
            n0 += 1
    words = (start_block + WORD - 1) // WORD
    reach = np.zeros((n, words), np.uint64)
    nxt = np.zeros((n, words), np.uint64)
    for base in range(0, n0, start_block):
        top = min(n0, base + start_block)
        reach[:, :] = 0
        for t in range(base, top):
            b = t - base
            reach[starts[t], b // WORD] |= np.uint64(1) << np.uint64(b % WORD)
        for step in range(k - 1):
            nxt[:, :] = 0
            for v in range(n):
                if label[v] != order[step]:
                    continue
                nz = False
                for w in range(words):
                    if reach[v, w] != 0:
                        nz = True
                        break
                if not nz:
                    continue
                for e in range(indptr[v], indptr[v + 1]):
                    u = indices[e]
                    if label[u] == order[step + 1]:
                        for w in range(words):
                            nxt[u, w] |= reach[v, w]
            reach[:, :] = nxt
        for v in range(n):
            if label[v] != order[k - 1]:
                continue
            for e in range(indptr[v], indptr[v + 1]):
                u = indices[e]
                if label[u] != order[0]:
                    continue
                # bit index of u among starts of this block
                lo, hi = base, top
                while lo < hi:
                    mid = (lo + hi) // 2
                    if starts[mid] < u:
                        lo = mid + 1
                    else:
                        hi = mid
                if lo < top and starts[lo] == u:
                    b = lo - base
                    if (reach[v, b // WORD] >> np.uint64(b % WORD)) & np.uint64(1):
                        return u, v
    return -1, -1


@njit(cache=True)
def cover_layered_cycle(aptr, aidx, bptr, bidx, color, order, k, start_block):
    """Closed colored walks through biclique hops: a step goes from a vertex
    of ``A_p`` to any vertex of ``B_p``. Same contract as ``layered_cycle``
    but returns ``(v_0, -1)`` on success."""
    n = color.shape[0]
    npairs = aptr.shape[0] - 1
    starts = np.empty(n, np.int64)
    n0 = 0
    for v in range(n):
        if color[v] == order[0]:
            starts[n0] = v
            n0 += 1
    words = (start_block + WORD - 1) // WORD
    reach = np.zeros((n, words), np.uint64)
    nxt = np.zeros((n, words), np.uint64)
    agg = np.zeros(words, np.uint64)
    for base in range(0, n0, start_block):
        top = min(n0, base + start_block)
        reach[:, :] = 0
        for t in range(base, top):
            b = t - base
            reach[starts[t], b // WORD] |= np.uint64(1) << np.uint64(b % WORD)
        for step in range(k):
            nxt[:, :] = 0
            cnext = order[(step + 1) % k]
            for p in range(npairs):
                agg[:] = 0
                nz = False
                for e in range(aptr[p], aptr[p + 1]):
                    a = aidx[e]
                    if color[a] == order[step]:
                        for w in range(words):
                            if reach[a, w] != 0:
                                agg[w] |= reach[a, w]
                                nz = True
                if not nz:
                    continue
                for e in range(bptr[p], bptr[p + 1]):
                    u = bidx[e]
                    if color[u] == cnext:
                        for w in range(words):
                            nxt[u, w] |= agg[w]
            reach[:, :] = nxt
        for t in range(base, top):
            b = t - base
            if (reach[starts[t], b // WORD] >> np.uint64(b % WORD)) & np.uint64(1):
                return starts[t], -1
    return -1, -1


# ------------------------------------------------------------ dominance min
#
# A structure answers: among points with ``c_j <= t_j`` for every constraint
# column j, return the one with the smallest key (ties by point id). It is a
# nested tree: level j sorts a node's points by column j; every heap node of
# a non-final level owns a structure for the next column over its points.
# The last level keeps a prefix-argmin over its sorted order.


@njit(cache=True)
def _sort_by(members, col, ids_key):
    keys = col[members] * np.int64(1 << 31) + ids_key[members]
    return members[np.argsort(keys, kind="mergesort")]


@njit(cache=True)
def dom_build(cols, key, ids):
    """``cols`` is (m, D) int64 rank columns, ``key`` int64, ``ids`` int64
    point ids. Returns flat arrays describing the nested structure."""
    m, D = cols.shape
    # arrays grow on demand; trimmed at the end
    cap_s = 1024
    cap_c = 2 * m + 4
    s_depth = np.empty(cap_s, np.int64)
    s_start = np.empty(cap_s, np.int64)
    s_size = np.empty(cap_s, np.int64)
    s_pad = np.empty(cap_s, np.int64)
    s_blk = np.empty(cap_s, np.int64)
    vals = np.empty(cap_c, np.int64)
    pre = np.empty(cap_c, np.int64)
    blk = np.empty(1024, np.int64)
    ns = 0
    nc = 0
    nb = 0
    # explicit stack of (struct id, column, member array offset, length)
    work_members = np.empty(cap_c, np.int64)
    wm = 0
    st_s = np.empty(cap_s, np.int64)
    st_off = np.empty(cap_s, np.int64)
    st_len = np.empty(cap_s, np.int64)
    sp = 0
    rid = np.arange(m).astype(np.int64)
    for i in range(m):
        work_members[wm + i] = rid[i]
    s_depth[0] = 0
    ns = 1
    st_s[0] = 0
    st_off[0] = 0
    st_len[0] = m
    wm = m
    sp = 1
    while sp > 0:
        sp -= 1
        s = st_s[sp]
        off = st_off[sp]
        ln = st_len[sp]
        j = s_depth[s]
        if nc + ln > vals.shape[0]:
            v2 = np.empty(2 * (nc + ln) + 4, np.int64)
            v2[:nc] = vals[:nc]
            vals = v2
            p2 = np.empty(2 * (nc + ln) + 4, np.int64)
            p2[:nc] = pre[:nc]
            pre = p2
        mem = _sort_by(work_members[off:off + ln].copy(), cols[:, j], ids)
        s_start[s] = nc
        s_size[s] = ln
        for i in range(ln):
            vals[nc + i] = cols[mem[i], j]
        if j == D - 1:
            best = -1
            for i in range(ln):
                p = mem[i]
                if best < 0 or key[p] < key[best] or (key[p] == key[best] and ids[p] < ids[best]):
                    best = p
                pre[nc + i] = best
            nc += ln
            s_pad[s] = 0
            s_blk[s] = -1
            continue
        nc += ln
        P = 1
        while P < ln:
            P *= 2
        s_pad[s] = P
        s_blk[s] = nb
        if nb + 2 * P > blk.shape[0]:
            nbk = np.empty(2 * (nb + 2 * P), np.int64)
            nbk[:nb] = blk[:nb]
            blk = nbk
        for h in range(2 * P):
            blk[nb + h] = -1
        # heap node h covers [lo, hi) of the padded order
        for h in range(1, 2 * P):
            level = 0
            x = h
            while x > 1:
                x //= 2
                level += 1
            width = P >> level
            lo = (h - (1 << level)) * width
            hi = min(lo + width, ln)
            if lo >= ln:
                continue
            if ns >= s_depth.shape[0]:
                grow = 2 * s_depth.shape[0]
                a1 = np.empty(grow, np.int64); a1[:ns] = s_depth[:ns]; s_depth = a1
                a2 = np.empty(grow, np.int64); a2[:ns] = s_start[:ns]; s_start = a2
                a3 = np.empty(grow, np.int64); a3[:ns] = s_size[:ns]; s_size = a3
                a4 = np.empty(grow, np.int64); a4[:ns] = s_pad[:ns]; s_pad = a4
                a5 = np.empty(grow, np.int64); a5[:ns] = s_blk[:ns]; s_blk = a5
            c = ns
            ns += 1
            s_depth[c] = j + 1
            blk[nb + h] = c
            if wm + (hi - lo) > work_members.shape[0]:
                w2 = np.empty(2 * (wm + hi - lo), np.int64)
                w2[:wm] = work_members[:wm]
                work_members = w2
            for i in range(lo, hi):
                work_members[wm + i - lo] = mem[i]
            if sp >= st_s.shape[0]:
                grow = 2 * st_s.shape[0]
                b1 = np.empty(grow, np.int64); b1[:sp] = st_s[:sp]; st_s = b1
                b2 = np.empty(grow, np.int64); b2[:sp] = st_off[:sp]; st_off = b2
                b3 = np.empty(grow, np.int64); b3[:sp] = st_len[:sp]; st_len = b3
            st_s[sp] = c
            st_off[sp] = wm
            st_len[sp] = hi - lo
            sp += 1
            wm += hi - lo
        nb += 2 * P
    return (s_depth[:ns].copy(), s_start[:ns].copy(), s_size[:ns].copy(), s_pad[:ns].copy(),
            s_blk[:ns].copy(), vals[:nc].copy(), pre[:nc].copy(), blk[:nb].copy())


@njit(cache=True)
def _count_le(vals, start, size, t):
    lo, hi = 0, size
    while lo < hi:
        mid = (lo + hi) // 2
        if vals[start + mid] <= t:
            lo = mid + 1
        else:
            hi = mid
    return lo


@njit(cache=True)
def dom_query_batch(s_depth, s_start, s_size, s_pad, s_blk, vals, pre, blk, key, ids, D, T):
    """For each row of ``T`` (q, D) return the point index (row into the
    build arrays) with minimum key among points dominated by the row, or -1."""
    q = T.shape[0]
    out = np.full(q, -1, np.int64)
    stack = np.empty(4096, np.int64)
    for r in range(q):
        best = -1
        sp = 0
        stack[0] = 0
        sp = 1
        while sp > 0:
            sp -= 1
            s = stack[sp]
            j = s_depth[s]
            cnt = _count_le(vals, s_start[s], s_size[s], T[r, j])
            if cnt == 0:
                continue
            if j == D - 1:
                p = pre[s_start[s] + cnt - 1]
                if best < 0 or key[p] < key[best] or (key[p] == key[best] and ids[p] < ids[best]):
                    best = p
                continue
            P = s_pad[s]
            base = s_blk[s]
            lo = P
            hi = P + cnt
            while lo < hi:
                if lo & 1:
                    c = blk[base + lo]
                    if c >= 0:
                        if sp >= stack.shape[0]:
                            ns = np.empty(2 * stack.shape[0], np.int64)
                            ns[:sp] = stack[:sp]
                            stack = ns
                        stack[sp] = c
                        sp += 1
                    lo += 1
                if hi & 1:
                    hi -= 1
                    c = blk[base + hi]
                    if c >= 0:
                        if sp >= stack.shape[0]:
                            ns = np.empty(2 * stack.shape[0], np.int64)
                            ns[:sp] = stack[:sp]
                            stack = ns
                        stack[sp] = c
                        sp += 1
                lo //= 2
                hi //= 2
        out[r] = best
    return out


# Offline variants: all queries known up front, so at most two constraint
# columns are handled by a sweep over the first column and a Fenwick tree
# of running minima over the second.


@njit(cache=True)
def _better(p, b, key, ids):
    return b < 0 or key[p] < key[b] or (key[p] == key[b] and ids[p] < ids[b])


@njit(cache=True)
def dom1_offline(ca, key, ids, ta):
    m = ca.shape[0]
    order = np.argsort(ca, kind="mergesort")
    sa = ca[order]
    pre = np.empty(m, np.int64)
    best = -1
    for i in range(m):
        p = order[i]
        if _better(p, best, key, ids):
            best = p
        pre[i] = best
    cnt = np.searchsorted(sa, ta, side="right")
    out = np.full(ta.shape[0], -1, np.int64)
    for r in range(ta.shape[0]):
        if cnt[r] > 0:
            out[r] = pre[cnt[r] - 1]
    return out


@njit(cache=True)
def dom2_offline(ca, cb, key, ids, ta, tb):
    m = ca.shape[0]
    q = ta.shape[0]
    out = np.full(q, -1, np.int64)
    if m == 0:
        return out
    porder = np.argsort(ca, kind="mergesort")
    qorder = np.argsort(ta, kind="mergesort")
    bs = np.unique(cb)
    nb = bs.shape[0]
    brank = np.searchsorted(bs, cb)
    qcnt = np.searchsorted(bs, tb, side="right")
    bit = np.full(nb + 1, -1, np.int64)
    j = 0
    for t in range(q):
        r = qorder[t]
        while j < m and ca[porder[j]] <= ta[r]:
            p = porder[j]
            i = brank[p] + 1
            while i <= nb:
                if _better(p, bit[i], key, ids):
                    bit[i] = p
                i += i & (-i)
            j += 1
        best = -1
        i = qcnt[r]
        while i > 0:
            b = bit[i]
            if b >= 0 and _better(b, best, key, ids):
                best = b
            i -= i & (-i)
        out[r] = best
    return out
