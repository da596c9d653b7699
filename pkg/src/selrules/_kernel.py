"""Compiled database pass for the counting tree.

The tree is flattened into the classic linked-list layout: each node stores
its item, its first child and its next sibling, with siblings in ascending
item order.  Because transactions are sorted the same way, finding the
successors of a node is a merge of two sorted sequences.
"""

from __future__ import annotations

import numpy as np

try:
    from numba import njit
except ImportError:  # pragma: no cover - exercised only without numba
    njit = None

HAVE_NUMBA = njit is not None


def _count_csr(indptr, indices, in_tree, node_item, first_child, next_sibling, counter):
    n_nodes = node_item.shape[0]
    stack_node = np.empty(n_nodes + 1, dtype=np.int64)
    stack_start = np.empty(n_nodes + 1, dtype=np.int64)
    buf = np.empty(in_tree.shape[0] + 1, dtype=np.int64)
    for r in range(indptr.shape[0] - 1):
        k = 0
        for x in range(indptr[r], indptr[r + 1]):
            item = indices[x]
            if in_tree[item]:
                buf[k] = item
                k += 1
        if k == 0:
            continue
        stack_node[0] = 0
        stack_start[0] = 0
        sp = 1
        while sp > 0:
            sp -= 1
            c = first_child[stack_node[sp]]
            j = stack_start[sp]
            while c >= 0 and j < k:
                ci = node_item[c]
                tj = buf[j]
                if ci < tj:
                    c = next_sibling[c]
                elif ci > tj:
                    j += 1
                else:
                    counter[c] += 1
                    if first_child[c] >= 0 and j + 1 < k:
                        stack_node[sp] = c
                        stack_start[sp] = j + 1
                        sp += 1
                    c = next_sibling[c]
                    j += 1


count_csr = njit(cache=True, nogil=True)(_count_csr) if HAVE_NUMBA else None
