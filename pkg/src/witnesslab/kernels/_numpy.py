"""Pure-numpy kernels, frontier-at-a-time.

A level-synchronous BFS that scans each frontier in order, and each state's
successors in letter order, discovers states in exactly the same order as a
queue-driven BFS; that is what keeps these outputs identical to ``_numba``.
"""

import numpy as np


def _new_in_order(candidates, index):
    """Unseen values of ``candidates`` in first-occurrence order."""
    fresh = candidates[index[candidates] < 0]
    if fresh.size == 0:
        return fresh
    uniq, first = np.unique(fresh, return_index=True)
    return uniq[np.argsort(first, kind="stable")]


def _images(frontier, masks):
    n, k = masks.shape
    out = np.zeros((frontier.size, k), np.int64)
    for q in range(n):
        hit = ((frontier >> q) & 1).astype(bool)
        if hit.any():
            out[hit] |= masks[q]
    return out


def subset_bfs(masks, start, nbits):
    masks = np.asarray(masks, np.int64)
    k = masks.shape[1]
    index = np.full(1 << nbits, -1, np.int32)
    index[start] = 0
    chunks = [np.array([start], np.int64)]
    rows = []
    frontier = chunks[0]
    count = 1
    while frontier.size:
        img = _images(frontier, masks)
        fresh = _new_in_order(img.ravel(), index)
        index[fresh] = np.arange(count, count + fresh.size, dtype=np.int32)
        count += fresh.size
        rows.append(index[img])
        chunks.append(fresh)
        frontier = fresh
    subsets = np.concatenate(chunks)
    table = np.concatenate(rows).reshape(-1, k).astype(np.int32)
    return subsets, table


def product_bfs(t1, t2, s1, s2):
    t1 = np.asarray(t1, np.int32)
    t2 = np.asarray(t2, np.int32)
    n2 = t2.shape[0]
    k = t1.shape[1]
    index = np.full(t1.shape[0] * n2, -1, np.int32)
    start = np.array([s1 * n2 + s2], np.int64)
    index[start] = 0
    chunks = [start]
    rows = []
    frontier = start
    count = 1
    while frontier.size:
        p, q = np.divmod(frontier, n2)
        keys = t1[p].astype(np.int64) * n2 + t2[q]
        fresh = _new_in_order(keys.ravel(), index)
        index[fresh] = np.arange(count, count + fresh.size, dtype=np.int32)
        count += fresh.size
        rows.append(index[keys])
        chunks.append(fresh)
        frontier = fresh
    keys = np.concatenate(chunks)
    left, right = np.divmod(keys, n2)
    table = np.concatenate(rows).reshape(-1, k).astype(np.int32)
    return left.astype(np.int32), right.astype(np.int32), table


def reach_bfs(table, start):
    table = np.asarray(table, np.int32)
    index = np.full(table.shape[0], -1, np.int32)
    index[start] = 0
    chunks = [np.array([start], np.int32)]
    frontier = chunks[0]
    count = 1
    while frontier.size:
        fresh = _new_in_order(table[frontier].ravel(), index)
        index[fresh] = np.arange(count, count + fresh.size, dtype=np.int32)
        count += fresh.size
        chunks.append(fresh.astype(np.int32))
        frontier = fresh
    return np.concatenate(chunks)


def first_occurrence_labels(keys):
    _, first, inverse = np.unique(keys, return_index=True, return_inverse=True)
    rank = np.empty(first.size, np.int64)
    rank[np.argsort(first, kind="stable")] = np.arange(first.size)
    return rank[inverse.ravel()], first.size


def refine_partition(table, finals):
    table = np.asarray(table, np.int32)
    n = table.shape[0]
    blocks, count = first_occurrence_labels(np.asarray(finals, np.int64))
    while True:
        sig = np.column_stack([blocks, blocks[table]])
        # rows of sig -> one int64 key per state, by successive pairing
        labels = sig[:, 0]
        for col in range(1, sig.shape[1]):
            labels, _ = first_occurrence_labels(labels * n + sig[:, col])
        labels, c = first_occurrence_labels(labels)
        if c == count:
            return blocks, count
        blocks, count = labels, c
