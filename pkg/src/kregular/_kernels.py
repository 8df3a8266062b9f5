"""Flat-array graph kernels: left-right planarity and component DFS.

Everything here works on plain int64 numpy arrays so the functions can
be jitted with numba.  Set KREGULAR_PURE=1 to run the same code without
compilation (used to cross-check the fallback path in tests).

The planarity test is the left-right criterion: orient the graph by
DFS, sort outgoing edges by nesting depth, then sweep a stack of
conflict pairs of back-edge intervals; the graph is planar iff no pair
ever needs both of its intervals on the same side.  Interval bounds are
edge ids; -1 encodes "none".  ``ref`` is allocated one slot long so the
algorithm's harmless writes through a -1 index land in a scratch cell.
"""

from __future__ import annotations

import os

import numpy as np

if os.environ.get("KREGULAR_PURE"):
    NUMBA_ENABLED = False
else:
    try:
        from numba import njit as _njit

        NUMBA_ENABLED = True
    except ImportError:  # pragma: no cover
        NUMBA_ENABLED = False

if NUMBA_ENABLED:
    def _compiled(fn):
        return _njit(cache=True)(fn)
else:
    def _compiled(fn):
        return fn


@_compiled
def _dfs1_finish(v, ei, height, par_edge, lowpt, lowpt2, nesting):
    """Nesting depth of a finished edge and lowpoint update of its parent."""
    nd = 2 * lowpt[ei]
    if lowpt2[ei] < height[v]:  # chordal
        nd += 1
    nesting[ei] = nd
    e = par_edge[v]
    if e != -1:
        if lowpt[ei] < lowpt[e]:
            lowpt2[e] = min(lowpt[e], lowpt2[ei])
            lowpt[e] = lowpt[ei]
        elif lowpt[ei] > lowpt[e]:
            lowpt2[e] = min(lowpt2[e], lowpt[ei])
        else:
            lowpt2[e] = min(lowpt2[e], lowpt2[ei])


@_compiled
def _add_constraints(
    ei, e, sp, SL_lo, SL_hi, SR_lo, SR_hi, stack_bottom, lowpt, lowpt_edge, ref
):
    """Fold the conflict pairs created under edge ei into one pair.

    Returns (ok, stack height); ok False means the graph is not planar.
    """
    PL_lo = np.int64(-1)
    PL_hi = np.int64(-1)
    PR_lo = np.int64(-1)
    PR_hi = np.int64(-1)
    # merge return edges of e_i into P.right
    while True:
        sp -= 1
        QL_lo = SL_lo[sp]
        QL_hi = SL_hi[sp]
        QR_lo = SR_lo[sp]
        QR_hi = SR_hi[sp]
        if QL_lo != -1 or QL_hi != -1:
            QL_lo, QR_lo = QR_lo, QL_lo
            QL_hi, QR_hi = QR_hi, QL_hi
        if QL_lo != -1 or QL_hi != -1:
            return False, sp
        if QR_lo != -1 and lowpt[QR_lo] > lowpt[e]:
            if PR_lo == -1 and PR_hi == -1:  # topmost interval
                PR_hi = QR_hi
            else:
                ref[PR_lo] = QR_hi
            PR_lo = QR_lo
        else:  # align
            ref[QR_lo] = lowpt_edge[e]
        if sp == stack_bottom[ei]:
            break
    # merge conflicting return edges of e_1 ... e_{i-1} into P.left
    while sp > 0:
        tL_hi = SL_hi[sp - 1]
        tR_hi = SR_hi[sp - 1]
        conf_l = tL_hi != -1 and lowpt[tL_hi] > lowpt[ei]
        conf_r = tR_hi != -1 and lowpt[tR_hi] > lowpt[ei]
        if not (conf_l or conf_r):
            break
        sp -= 1
        QL_lo = SL_lo[sp]
        QL_hi = SL_hi[sp]
        QR_lo = SR_lo[sp]
        QR_hi = SR_hi[sp]
        if QR_hi != -1 and lowpt[QR_hi] > lowpt[ei]:
            QL_lo, QR_lo = QR_lo, QL_lo
            QL_hi, QR_hi = QR_hi, QL_hi
        if QR_hi != -1 and lowpt[QR_hi] > lowpt[ei]:
            return False, sp
        # merge interval below lowpt(e_i) into P.right
        ref[PR_lo] = QR_hi
        if QR_lo != -1:
            PR_lo = QR_lo
        if PL_lo == -1 and PL_hi == -1:  # topmost interval
            PL_hi = QL_hi
        else:
            ref[PL_lo] = QL_hi
        PL_lo = QL_lo
    if PL_lo != -1 or PL_hi != -1 or PR_lo != -1 or PR_hi != -1:
        SL_lo[sp] = PL_lo
        SL_hi[sp] = PL_hi
        SR_lo[sp] = PR_lo
        SR_hi[sp] = PR_hi
        sp += 1
    return True, sp


@_compiled
def _remove_back_edges(
    e, sp, SL_lo, SL_hi, SR_lo, SR_hi, lowpt, height, esrc, edst, ref
):
    """Trim back edges that return to the tail of tree edge e."""
    u = esrc[e]
    # drop conflict pairs whose lowest return point is u itself
    while sp > 0:
        tL_lo = SL_lo[sp - 1]
        tL_hi = SL_hi[sp - 1]
        tR_lo = SR_lo[sp - 1]
        tR_hi = SR_hi[sp - 1]
        l_empty = tL_lo == -1 and tL_hi == -1
        r_empty = tR_lo == -1 and tR_hi == -1
        if l_empty and r_empty:
            lowest = np.int64(-2)
        elif l_empty:
            lowest = lowpt[tR_lo] if tR_lo != -1 else np.int64(-2)
        elif r_empty:
            lowest = lowpt[tL_lo] if tL_lo != -1 else np.int64(-2)
        else:
            a = lowpt[tL_lo] if tL_lo != -1 else np.int64(-2)
            b = lowpt[tR_lo] if tR_lo != -1 else np.int64(-2)
            lowest = min(a, b)
        if lowest != height[u]:
            break
        sp -= 1
    if sp > 0:  # one more conflict pair to consider
        sp -= 1
        PL_lo = SL_lo[sp]
        PL_hi = SL_hi[sp]
        PR_lo = SR_lo[sp]
        PR_hi = SR_hi[sp]
        while PL_hi != -1 and edst[PL_hi] == u:
            PL_hi = ref[PL_hi]
        if PL_hi == -1 and PL_lo != -1:  # just emptied
            ref[PL_lo] = PR_lo
            PL_lo = np.int64(-1)
        while PR_hi != -1 and edst[PR_hi] == u:
            PR_hi = ref[PR_hi]
        if PR_hi == -1 and PR_lo != -1:  # just emptied
            ref[PR_lo] = PL_lo
            PR_lo = np.int64(-1)
        SL_lo[sp] = PL_lo
        SL_hi[sp] = PL_hi
        SR_lo[sp] = PR_lo
        SR_hi[sp] = PR_hi
        sp += 1
    # side of e is the side of a highest return edge
    if lowpt[e] < height[u] and sp > 0:
        hl = SL_hi[sp - 1]
        hr = SR_hi[sp - 1]
        if hl != -1 and (hr == -1 or lowpt[hl] > lowpt[hr]):
            ref[e] = hl
        else:
            ref[e] = hr
    return sp


@_compiled
def lr_planar(n, eu, ev):
    """Left-right planarity of a simple graph on vertices 0..n-1."""
    m = eu.shape[0]
    if m == 0 or n <= 2:
        return True
    if m > 3 * n - 6:
        return False

    # incidence lists in input order
    inc_start = np.zeros(n + 1, np.int64)
    for i in range(m):
        inc_start[eu[i] + 1] += 1
        inc_start[ev[i] + 1] += 1
    for v in range(n):
        inc_start[v + 1] += inc_start[v]
    inc_other = np.empty(2 * m, np.int64)
    inc_eid = np.empty(2 * m, np.int64)
    fill = inc_start[:n].copy()
    for i in range(m):
        u = eu[i]
        v = ev[i]
        inc_other[fill[u]] = v
        inc_eid[fill[u]] = i
        fill[u] += 1
        inc_other[fill[v]] = u
        inc_eid[fill[v]] = i
        fill[v] += 1

    height = np.full(n, -1, np.int64)
    par_edge = np.full(n, -1, np.int64)
    oriented = np.zeros(m, np.bool_)
    tree = np.zeros(m, np.bool_)
    esrc = np.empty(m, np.int64)
    edst = np.empty(m, np.int64)
    lowpt = np.zeros(m, np.int64)
    lowpt2 = np.zeros(m, np.int64)
    nesting = np.zeros(m, np.int64)

    stack_v = np.empty(n + 1, np.int64)
    stack_ptr = np.empty(n + 1, np.int64)

    # phase 1: DFS orientation, lowpoints, nesting order
    for r in range(n):
        if height[r] != -1:
            continue
        height[r] = 0
        sp = 0
        stack_v[sp] = r
        stack_ptr[sp] = inc_start[r]
        sp += 1
        while sp > 0:
            v = stack_v[sp - 1]
            ptr = stack_ptr[sp - 1]
            if ptr < inc_start[v + 1]:
                stack_ptr[sp - 1] = ptr + 1
                eid = inc_eid[ptr]
                if oriented[eid]:
                    continue
                w = inc_other[ptr]
                oriented[eid] = True
                esrc[eid] = v
                edst[eid] = w
                lowpt[eid] = height[v]
                lowpt2[eid] = height[v]
                if height[w] == -1:  # tree edge
                    tree[eid] = True
                    par_edge[w] = eid
                    height[w] = height[v] + 1
                    stack_v[sp] = w
                    stack_ptr[sp] = inc_start[w]
                    sp += 1
                else:  # back edge, finished immediately
                    lowpt[eid] = height[w]
                    _dfs1_finish(v, eid, height, par_edge, lowpt, lowpt2, nesting)
            else:
                sp -= 1
                pe = par_edge[v]
                if pe != -1:
                    _dfs1_finish(esrc[pe], pe, height, par_edge, lowpt, lowpt2, nesting)

    # phase 2 prep: outgoing edges per vertex ordered by nesting depth
    big_nest = 2 * np.int64(n) + 3
    big_eid = np.int64(m) + 1
    keys = np.empty(m, np.int64)
    for e in range(m):
        keys[e] = (esrc[e] * big_nest + nesting[e]) * big_eid + e
    oeid = np.argsort(keys)
    ostart = np.zeros(n + 1, np.int64)
    for e in range(m):
        ostart[esrc[e] + 1] += 1
    for v in range(n):
        ostart[v + 1] += ostart[v]

    # phase 2: conflict-pair sweep
    cap = m + 2
    SL_lo = np.empty(cap, np.int64)
    SL_hi = np.empty(cap, np.int64)
    SR_lo = np.empty(cap, np.int64)
    SR_hi = np.empty(cap, np.int64)
    sp = 0
    stack_bottom = np.zeros(m, np.int64)
    lowpt_edge = np.full(m, -1, np.int64)
    ref = np.full(m + 1, -1, np.int64)  # slot m absorbs writes via index -1

    fv = np.empty(n + 1, np.int64)
    fptr = np.empty(n + 1, np.int64)
    fpend = np.empty(n + 1, np.int64)

    for r in range(n):
        if par_edge[r] != -1:
            continue  # only tree roots start a sweep
        fsp = 0
        fv[fsp] = r
        fptr[fsp] = ostart[r]
        fpend[fsp] = -1
        fsp += 1
        while fsp > 0:
            v = fv[fsp - 1]
            if fpend[fsp - 1] != -1:
                # integrate the child edge whose subtree just finished
                ei = fpend[fsp - 1]
                fpend[fsp - 1] = -1
                if lowpt[ei] < height[v]:
                    if fptr[fsp - 1] - 1 == ostart[v]:  # e_i = e_1
                        lowpt_edge[par_edge[v]] = lowpt_edge[ei]
                    else:
                        ok, sp = _add_constraints(
                            ei,
                            par_edge[v],
                            sp,
                            SL_lo,
                            SL_hi,
                            SR_lo,
                            SR_hi,
                            stack_bottom,
                            lowpt,
                            lowpt_edge,
                            ref,
                        )
                        if not ok:
                            return False
            descended = False
            while fptr[fsp - 1] < ostart[v + 1]:
                pos = fptr[fsp - 1]
                ei = oeid[pos]
                fptr[fsp - 1] = pos + 1
                stack_bottom[ei] = sp
                if tree[ei]:
                    fpend[fsp - 1] = ei
                    w = edst[ei]
                    fv[fsp] = w
                    fptr[fsp] = ostart[w]
                    fpend[fsp] = -1
                    fsp += 1
                    descended = True
                    break
                # back edge
                lowpt_edge[ei] = ei
                SL_lo[sp] = -1
                SL_hi[sp] = -1
                SR_lo[sp] = ei
                SR_hi[sp] = ei
                sp += 1
                if lowpt[ei] < height[v]:
                    if pos == ostart[v]:  # e_i = e_1
                        lowpt_edge[par_edge[v]] = lowpt_edge[ei]
                    else:
                        ok, sp = _add_constraints(
                            ei,
                            par_edge[v],
                            sp,
                            SL_lo,
                            SL_hi,
                            SR_lo,
                            SR_hi,
                            stack_bottom,
                            lowpt,
                            lowpt_edge,
                            ref,
                        )
                        if not ok:
                            return False
            if descended:
                continue
            e = par_edge[v]
            if e != -1:
                sp = _remove_back_edges(
                    e, sp, SL_lo, SL_hi, SR_lo, SR_hi, lowpt, height, esrc, edst, ref
                )
            fsp -= 1
    return True


@_compiled
def comp_dfs(nv, adj_start, adj_to, weight):
    """DFS over one connected local graph (vertices 0..nv-1).

    Returns (parent, tin, tout, low, subw): DFS tree parents, Euler
    discovery/finish intervals, lowpoints over discovery times, and
    subtree weight sums.  Tree edge (parent[v], v) is a bridge iff
    low[v] > tin[parent[v]]; subtree membership is the half-open
    interval test tin[v] <= tin[x] < tout[v].
    """
    parent = np.full(nv, -1, np.int64)
    tin = np.full(nv, -1, np.int64)
    tout = np.zeros(nv, np.int64)
    low = np.zeros(nv, np.int64)
    subw = weight.astype(np.int64).copy()

    stack_v = np.empty(nv + 1, np.int64)
    stack_ptr = np.empty(nv + 1, np.int64)
    sp = 0
    stack_v[sp] = 0
    stack_ptr[sp] = adj_start[0]
    sp += 1
    tin[0] = 0
    low[0] = 0
    timer = 1
    while sp > 0:
        v = stack_v[sp - 1]
        ptr = stack_ptr[sp - 1]
        if ptr < adj_start[v + 1]:
            stack_ptr[sp - 1] = ptr + 1
            w = adj_to[ptr]
            if w == parent[v]:
                continue
            if tin[w] != -1:
                if tin[w] < low[v]:
                    low[v] = tin[w]
            else:
                parent[w] = v
                tin[w] = timer
                low[w] = timer
                timer += 1
                stack_v[sp] = w
                stack_ptr[sp] = adj_start[w]
                sp += 1
        else:
            sp -= 1
            tout[v] = timer
            p = parent[v]
            if p != -1:
                if low[v] < low[p]:
                    low[p] = low[v]
                subw[p] += subw[v]
    return parent, tin, tout, low, subw


@_compiled
def comp_build(members, adj_mat, deg, k, lookup):
    """Local CSR (sorted rows) of one component from global padded arrays.

    ``lookup`` is an n-sized scratch array; entries for the member
    vertices are overwritten, so no clearing between calls is needed.
    """
    verts = np.sort(members)
    nv = verts.shape[0]
    dsub = np.empty(nv, np.int64)
    adj_start = np.zeros(nv + 1, np.int64)
    for i in range(nv):
        v = verts[i]
        dsub[i] = deg[v]
        adj_start[i + 1] = adj_start[i] + dsub[i]
        lookup[v] = i
    adj_to = np.empty(adj_start[nv], np.int64)
    pos = 0
    row = np.empty(k, np.int64)
    for i in range(nv):
        v = verts[i]
        d = dsub[i]
        for j in range(d):  # insertion sort; d <= k is tiny
            x = lookup[adj_mat[v, j]]
            p = j
            while p > 0 and row[p - 1] > x:
                row[p] = row[p - 1]
                p -= 1
            row[p] = x
        for j in range(d):
            adj_to[pos] = row[j]
            pos += 1
    weights = k - dsub
    return verts, adj_start, adj_to, weights
