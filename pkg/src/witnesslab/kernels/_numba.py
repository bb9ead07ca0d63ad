"""Numba-compiled inner loops.

Every function here has a twin of the same name in ``_numpy`` that returns
bit-identical arrays; the test suite checks the two against each other.
"""

import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def _image(mask, masks, x):
    img = np.int64(0)
    q = 0
    while mask:
        if mask & 1:
            img |= masks[q, x]
        mask >>= 1
        q += 1
    return img


@njit(cache=True, nogil=True)
def subset_bfs(masks, start, nbits):
    """Accessible subset construction over bitmask state sets.

    ``masks[q, x]`` is the successor set of NFA state ``q`` on letter ``x``.
    Returns ``(subsets, table)`` with subsets in breadth-first discovery order.
    """
    k = masks.shape[1]
    index = np.full(1 << nbits, -1, np.int32)
    cap = 256
    subsets = np.empty(cap, np.int64)
    table = np.empty((cap, k), np.int32)
    subsets[0] = start
    index[start] = 0
    count = 1
    head = 0
    while head < count:
        s = subsets[head]
        for x in range(k):
            img = _image(s, masks, x)
            j = index[img]
            if j < 0:
                if count == cap:
                    cap *= 2
                    grown = np.empty(cap, np.int64)
                    grown[:count] = subsets[:count]
                    subsets = grown
                    grown_t = np.empty((cap, k), np.int32)
                    grown_t[:count] = table[:count]
                    table = grown_t
                j = count
                subsets[count] = img
                index[img] = count
                count += 1
            table[head, x] = j
        head += 1
    return subsets[:count].copy(), table[:count].copy()


@njit(cache=True, nogil=True)
def product_bfs(t1, t2, s1, s2):
    """Accessible direct product of two complete transition tables.

    Returns ``(left, right, table)``; pair ``i`` is ``(left[i], right[i])``.
    """
    n2 = t2.shape[0]
    k = t1.shape[1]
    total = t1.shape[0] * n2
    index = np.full(total, -1, np.int32)
    left = np.empty(total, np.int32)
    right = np.empty(total, np.int32)
    table = np.empty((total, k), np.int32)
    left[0] = s1
    right[0] = s2
    index[s1 * n2 + s2] = 0
    count = 1
    head = 0
    while head < count:
        p = left[head]
        q = right[head]
        for x in range(k):
            p2 = t1[p, x]
            q2 = t2[q, x]
            key = p2 * n2 + q2
            j = index[key]
            if j < 0:
                j = count
                left[count] = p2
                right[count] = q2
                index[key] = count
                count += 1
            table[head, x] = j
        head += 1
    return left[:count].copy(), right[:count].copy(), table[:count].copy()


@njit(cache=True, nogil=True)
def reach_bfs(table, start):
    """States reachable from ``start``, in breadth-first (letter-order) discovery order."""
    n = table.shape[0]
    k = table.shape[1]
    seen = np.zeros(n, np.bool_)
    order = np.empty(n, np.int32)
    order[0] = start
    seen[start] = True
    count = 1
    head = 0
    while head < count:
        p = order[head]
        for x in range(k):
            q = table[p, x]
            if not seen[q]:
                seen[q] = True
                order[count] = q
                count += 1
        head += 1
    return order[:count].copy()


@njit(cache=True, nogil=True)
def _canonical(group, ngroups):
    """Renumber group ids by first occurrence."""
    remap = np.full(ngroups, -1, np.int64)
    out = np.empty(group.size, np.int64)
    nxt = 0
    for s in range(group.size):
        g = group[s]
        if remap[g] < 0:
            remap[g] = nxt
            nxt += 1
        out[s] = remap[g]
    return out, nxt


@njit(cache=True, nogil=True)
def first_occurrence_labels(keys):
    n = keys.size
    order = np.argsort(keys, kind="mergesort")
    group = np.empty(n, np.int64)
    g = -1
    prev = np.int64(0)
    for i in range(n):
        key = keys[order[i]]
        if i == 0 or key != prev:
            g += 1
            prev = key
        group[order[i]] = g
    return _canonical(group, g + 1)


@njit(cache=True, nogil=True)
def pair_labels(a, na, b, nb):
    """Label states by the pair ``(a[s], b[s])`` in linear time, numbered by first occurrence."""
    n = a.size
    # stable counting sort on a
    start = np.zeros(na + 1, np.int64)
    for s in range(n):
        start[a[s] + 1] += 1
    for i in range(na):
        start[i + 1] += start[i]
    order = np.empty(n, np.int64)
    fill = start[:na].copy()
    for s in range(n):
        order[fill[a[s]]] = s
        fill[a[s]] += 1
    # within each a-bucket, group by b using a stamped scratch table
    stamp = np.full(nb, -1, np.int64)
    gid = np.empty(nb, np.int64)
    group = np.empty(n, np.int64)
    g = 0
    for i in range(na):
        for j in range(start[i], start[i + 1]):
            s = order[j]
            v = b[s]
            if stamp[v] != i:
                stamp[v] = i
                gid[v] = g
                g += 1
            group[s] = gid[v]
    return _canonical(group, g)


@njit(cache=True, nogil=True)
def refine_partition(table, finals):
    """Moore refinement to the coarsest stable partition.

    Block ids are numbered by smallest member. Returns ``(blocks, count)``.
    """
    n = table.shape[0]
    k = table.shape[1]
    blocks, count = first_occurrence_labels(finals.astype(np.int64))
    while True:
        labels = blocks.copy()
        c = count
        for x in range(k):
            labels, c = pair_labels(labels, c, blocks[table[:, x]], count)
        if c == count:
            return blocks, count
        blocks = labels
        count = c
