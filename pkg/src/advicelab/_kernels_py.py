"""Pure-Python kernels; used when the compiled extension is unavailable.

Graphs are passed in CSR form: ``indptr`` (length n+1) and ``indices``.
"""
from collections import deque

import numpy as np


def bfs_dist(indptr, indices, src, radius=-1):
    """BFS from ``src`` up to ``radius`` hops (negative means unbounded).

    Returns ``(order, dist)``: visited node indices in BFS order and their
    distances, as int64 arrays.
    """
    indptr = np.asarray(indptr).tolist()
    indices = np.asarray(indices).tolist()
    seen = {src: 0}
    order = [src]
    queue = deque([src])
    while queue:
        u = queue.popleft()
        du = seen[u]
        if du == radius:
            continue
        for k in range(indptr[u], indptr[u + 1]):
            w = indices[k]
            if w not in seen:
                seen[w] = du + 1
                order.append(w)
                queue.append(w)
    return (np.array(order, dtype=np.int64),
            np.array([seen[u] for u in order], dtype=np.int64))


def eccentricities(indptr, indices):
    """Eccentricity of every node; -1 everywhere if the graph is disconnected."""
    n = len(indptr) - 1
    ecc = np.empty(n, dtype=np.int64)
    for v in range(n):
        order, dist = bfs_dist(indptr, indices, v)
        if len(order) != n:
            ecc[:] = -1
            return ecc
        ecc[v] = dist[-1]
    return ecc


def flood_max(indptr, indices, values, rounds):
    """Max of ``values`` over every closed ball of radius ``rounds``."""
    indptr = np.asarray(indptr, dtype=np.int64)
    indices = np.asarray(indices, dtype=np.int64)
    cur = np.array(values, dtype=np.int64)
    deg = np.diff(indptr)
    owner = np.repeat(np.arange(len(cur)), deg)
    for _ in range(rounds):
        nxt = cur.copy()
        np.maximum.at(nxt, owner, cur[indices])
        if np.array_equal(nxt, cur):
            break
        cur = nxt
    return cur
