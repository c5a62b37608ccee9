"""GF(2) column reductions pairing edges with triangles.

Compiled with numba: experiment pipelines handle hundreds of thousands of
triangles per run.  Columns are kept as sorted arrays of row indices; XOR
is a merge dropping duplicates.  Reduced columns live in a growable flat
arena.

Two independent routes produce the same edge/triangle pairing:

``reduce_dim2``
    Textbook left-to-right reduction of the triangle boundary matrix.
    Almost every column reduces to zero (at most one triangle column can
    pivot on each edge), so the merge cascades dominate and the cost grows
    quickly with triangle count.
``pair_edges_cofacets``
    Reduction of the anti-transposed matrix: one column per edge holding
    its cofacet triangles, processed in reverse filtration order with the
    earliest triangle as pivot.  The pairing is identical by the
    anti-transposition symmetry of the reduction pivots.  Columns are kept
    implicitly: what is stored per finished column is the short list of
    edges whose combined cofacet sets form it, and a working column lives
    in a lazy binary heap where duplicate entries cancel in pairs on
    extraction.  Most edges pair instantly with their earliest cofacet,
    so the cascades that dominate ``reduce_dim2`` rarely happen.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def merging_edge_mask(edges: np.ndarray, n_vertices: int) -> np.ndarray:
    """Union-find over edges in order; True where the edge joins two
    components (union by size, path halving)."""
    parent = np.arange(n_vertices, dtype=np.int64)
    size = np.ones(n_vertices, dtype=np.int64)
    out = np.zeros(edges.shape[0], dtype=np.bool_)
    for e in range(edges.shape[0]):
        a = edges[e, 0]
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        b = edges[e, 1]
        while parent[b] != b:
            parent[b] = parent[parent[b]]
            b = parent[b]
        if a != b:
            if size[a] < size[b]:
                a, b = b, a
            parent[b] = a
            size[a] += size[b]
            out[e] = True
    return out


@njit(cache=True)
def enumerate_triangles(d: np.ndarray, threshold: float):
    """All i<j<k with pairwise distances <= threshold, plus each triangle's
    value (its longest edge).  Rows come out in lexicographic vertex order."""
    n = d.shape[0]
    count = 0
    for i in range(n):
        for j in range(i + 1, n):
            if d[i, j] > threshold:
                continue
            for k in range(j + 1, n):
                if d[i, k] <= threshold and d[j, k] <= threshold:
                    count += 1
    tris = np.empty((count, 3), np.int32)
    values = np.empty(count, np.float64)
    m = 0
    for i in range(n):
        for j in range(i + 1, n):
            dij = d[i, j]
            if dij > threshold:
                continue
            for k in range(j + 1, n):
                dik = d[i, k]
                djk = d[j, k]
                if dik <= threshold and djk <= threshold:
                    tris[m, 0] = i
                    tris[m, 1] = j
                    tris[m, 2] = k
                    v = dij
                    if dik > v:
                        v = dik
                    if djk > v:
                        v = djk
                    values[m] = v
                    m += 1
    return tris, values


@njit(cache=True)
def reduce_dim2(tri_rows: np.ndarray, n_edges: int) -> np.ndarray:
    """Reduce triangle columns left to right; return pair_tri.

    tri_rows: (T, 3) int64, each row the triangle's boundary edge indices in
    filtration order, sorted ascending within the row.  Triangles must be in
    filtration order.  pair_tri[e] is the index of the triangle whose reduced
    column has lowest one at edge e, or -1 if e is never a pivot.
    """
    T = tri_rows.shape[0]
    pair_tri = np.full(n_edges, -1, np.int64)
    pivot_owner = np.full(n_edges, -1, np.int64)

    cap = 6 * T + 64
    data = np.empty(cap, np.int64)
    head = 0
    col_start = np.empty(max(T, 1), np.int64)
    col_len = np.empty(max(T, 1), np.int64)
    n_stored = 0

    work = np.empty(n_edges + 1, np.int64)
    buf = np.empty(n_edges + 1, np.int64)

    for t in range(T):
        work[0] = tri_rows[t, 0]
        work[1] = tri_rows[t, 1]
        work[2] = tri_rows[t, 2]
        wlen = 3
        while wlen > 0:
            low = work[wlen - 1]
            owner = pivot_owner[low]
            if owner == -1:
                if head + wlen > cap:
                    newcap = cap * 2
                    while newcap < head + wlen:
                        newcap *= 2
                    grown = np.empty(newcap, np.int64)
                    grown[:head] = data[:head]
                    data = grown
                    cap = newcap
                col_start[n_stored] = head
                col_len[n_stored] = wlen
                for q in range(wlen):
                    data[head + q] = work[q]
                head += wlen
                pivot_owner[low] = n_stored
                n_stored += 1
                pair_tri[low] = t
                break
            # XOR with the stored column owning this pivot (sorted merge,
            # equal entries cancel).
            s = col_start[owner]
            m = col_len[owner]
            i = 0
            j = 0
            k = 0
            while i < wlen and j < m:
                a = work[i]
                b = data[s + j]
                if a == b:
                    i += 1
                    j += 1
                elif a < b:
                    buf[k] = a
                    k += 1
                    i += 1
                else:
                    buf[k] = b
                    k += 1
                    j += 1
            while i < wlen:
                buf[k] = work[i]
                k += 1
                i += 1
            while j < m:
                buf[k] = data[s + j]
                k += 1
                j += 1
            wlen = k
            for q in range(k):
                work[q] = buf[q]
    return pair_tri


@njit(cache=True)
def pair_edges_cofacets(tri_rows: np.ndarray, n_edges: int) -> np.ndarray:
    """Pair edges with triangles by reducing edge cofacet columns.

    Same contract as :func:`reduce_dim2`: tri_rows is (T, 3) int64 with
    triangles in filtration order, and the result maps each edge to the
    triangle it is paired with (-1 when unpaired).  One column per edge
    holds its cofacet triangles; columns are reduced from the last edge
    down with the smallest surviving triangle index as pivot.

    An edge whose earliest cofacet is unclaimed pairs immediately and is
    stored as a view into the cofacet table.  The rare remaining columns
    are reduced in a bitset over triangle indices: successive pivots only
    ever increase, so one forward scan per column finds every pivot, and
    folding an owning column in is a bit flip per stored entry.
    """
    T = tri_rows.shape[0]
    pair_tri = np.full(n_edges, -1, np.int64)
    if T == 0:
        return pair_tri
    owner = np.full(T, -1, np.int64)

    # Counting sort of triangle indices into per-edge cofacet lists; the
    # t loop runs in increasing order so each list comes out sorted.
    counts = np.zeros(n_edges + 1, np.int64)
    for t in range(T):
        counts[tri_rows[t, 0] + 1] += 1
        counts[tri_rows[t, 1] + 1] += 1
        counts[tri_rows[t, 2] + 1] += 1
    start = np.cumsum(counts)
    fill = start[:n_edges].copy()
    cof = np.empty(3 * T, np.int64)
    for t in range(T):
        for q in range(3):
            e = tri_rows[t, q]
            cof[fill[e]] = t
            fill[e] += 1

    # Finished columns: either a view into cof (fast path) or a slice of
    # the overflow arena (cascading path), selected by in_cof.
    col_start = np.empty(n_edges, np.int64)
    col_len = np.empty(n_edges, np.int64)
    in_cof = np.empty(n_edges, np.uint8)
    n_stored = 0
    cap = 1024
    data = np.empty(cap, np.int64)
    head = 0

    n_words = (T + 64) >> 6
    bits = np.zeros(n_words, np.uint64)
    one = np.uint64(1)

    for e in range(n_edges - 1, -1, -1):
        ncof = start[e + 1] - start[e]
        if ncof == 0:
            continue
        t0 = cof[start[e]]
        if owner[t0] == -1:
            col_start[n_stored] = start[e]
            col_len[n_stored] = ncof
            in_cof[n_stored] = 1
            owner[t0] = n_stored
            n_stored += 1
            pair_tri[e] = t0
            continue

        # Cascading path.  The bitset is empty here: every earlier cascade
        # either cancelled completely or was cleared during extraction.
        for q in range(start[e], start[e + 1]):
            t = cof[q]
            bits[t >> 6] ^= one << np.uint64(t & 63)
        w = t0 >> 6
        while True:
            # Forward scan for the next pivot.
            while w < n_words and bits[w] == 0:
                w += 1
            if w == n_words:
                break  # column cancelled to zero; the edge stays unpaired
            word = bits[w]
            b = 0
            while (word >> np.uint64(b)) & one == 0:
                b += 1
            pivot = (w << 6) | b
            own = owner[pivot]
            if own == -1:
                # Extract ascending from the pivot, clearing as we go.
                if head + T - pivot > cap:
                    newcap = cap * 2
                    while newcap < head + T - pivot:
                        newcap *= 2
                    grown = np.empty(newcap, np.int64)
                    grown[:head] = data[:head]
                    data = grown
                    cap = newcap
                col_start[n_stored] = head
                k = 0
                for ww in range(w, n_words):
                    word = bits[ww]
                    while word != 0:
                        bb = 0
                        while (word >> np.uint64(bb)) & one == 0:
                            bb += 1
                        data[head + k] = (ww << 6) | bb
                        k += 1
                        word ^= one << np.uint64(bb)
                    bits[ww] = 0
                col_len[n_stored] = k
                in_cof[n_stored] = 0
                head += k
                owner[pivot] = n_stored
                n_stored += 1
                pair_tri[e] = pivot
                break
            # Fold in the owning column; the shared pivot bit cancels and
            # every other folded entry is larger, so the scan resumes at w.
            s = col_start[own]
            m = col_len[own]
            if in_cof[own] == 1:
                for q in range(s, s + m):
                    t = cof[q]
                    bits[t >> 6] ^= one << np.uint64(t & 63)
            else:
                for q in range(s, s + m):
                    t = data[q]
                    bits[t >> 6] ^= one << np.uint64(t & 63)
    return pair_tri
