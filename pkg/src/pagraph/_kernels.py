"""Numba kernels for the hot loops: growth sampling and pattern counting.

Importing this module triggers JIT setup, so the callers that need the fast
paths pull it in lazily.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def fenwick_build(tree):
    """In-place Fenwick construction from leaf values stored at tree[1:]."""
    size = len(tree) - 1
    for i in range(1, size + 1):
        j = i + (i & (-i))
        if j <= size:
            tree[j] += tree[i]


@njit(cache=True)
def grow_kernel(tree, tree_size, start_n, steps, m, p, q, uniforms, parents_out):
    """Run `steps` arrivals on a scaled-integer Fenwick tree.

    Vertex v sits at position v + 1. The m draws of one step read the tree
    before any of the step's updates land, so the step's weights stay frozen.
    """
    n = start_n
    t = 0
    for _ in range(steps):
        size = n + 1
        bit = 1
        while (bit << 1) <= size:
            bit <<= 1
        for _ in range(m):
            rem = uniforms[t]
            idx = 0
            b = bit
            while b:
                nxt = idx + b
                if nxt <= size and tree[nxt] <= rem:
                    idx = nxt
                    rem -= tree[nxt]
                b >>= 1
            parents_out[t] = idx
            t += 1
        for j in range(m):
            pos = parents_out[t - m + j] + 1
            while pos <= tree_size:
                tree[pos] += q
                pos += pos & (-pos)
        pos = n + 2
        w = m * q + p
        while pos <= tree_size:
            tree[pos] += w
            pos += pos & (-pos)
        n += 1


@njit(cache=True, inline="always")
def _row_has(indptr, indices, u, w):
    lo = indptr[u]
    hi = indptr[u + 1]
    while lo < hi:
        mid = (lo + hi) >> 1
        x = indices[mid]
        if x < w:
            lo = mid + 1
        elif x > w:
            hi = mid
        else:
            return True
    return False


@njit(cache=True, inline="always")
def _lower_bound(indices, lo, hi, val):
    while lo < hi:
        mid = (lo + hi) >> 1
        if indices[mid] < val:
            lo = mid + 1
        else:
            hi = mid
    return lo


@njit(cache=True)
def count_copies_kernel(indptr, indices, k, anchors, chk_off, chk_lab, nv):
    """Count increasing embeddings of a k-label pattern into a CSR graph.

    Labels are mapped in order onto a strictly increasing vertex sequence.
    anchors[d] names an already-placed neighbor label whose adjacency list
    supplies the candidates at depth d, or -1 for a plain vertex scan.
    chk_lab[chk_off[d]:chk_off[d+1]] lists the other placed labels that must
    also be adjacent to the candidate.
    """
    image = np.empty(k, dtype=np.int64)
    cursor = np.empty(k, dtype=np.int64)
    count = 0
    d = 0
    # depth 0 has no placed labels, so anchors[0] is always -1
    cursor[0] = 0
    while d >= 0:
        a = anchors[d]
        limit = nv - (k - 1 - d)
        found = np.int64(-1)
        if a >= 0:
            row_end = indptr[image[a] + 1]
            i = cursor[d]
            while i < row_end:
                w = indices[i]
                i += 1
                if w >= limit:
                    break
                ok = True
                for ci in range(chk_off[d], chk_off[d + 1]):
                    if not _row_has(indptr, indices, image[chk_lab[ci]], w):
                        ok = False
                        break
                if ok:
                    found = w
                    cursor[d] = i
                    break
        else:
            w = cursor[d]
            while w < limit:
                ok = True
                for ci in range(chk_off[d], chk_off[d + 1]):
                    if not _row_has(indptr, indices, image[chk_lab[ci]], w):
                        ok = False
                        break
                if ok:
                    found = w
                    cursor[d] = w + 1
                    break
                w += 1
        if found < 0:
            d -= 1
            continue
        image[d] = found
        if d == k - 1:
            count += 1
            continue
        d += 1
        lo = found + 1
        a2 = anchors[d]
        if a2 >= 0:
            u = image[a2]
            cursor[d] = _lower_bound(indices, indptr[u], indptr[u + 1], lo)
        else:
            cursor[d] = lo
    return count
