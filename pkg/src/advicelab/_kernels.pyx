# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled BFS and flooding kernels over CSR adjacency arrays."""
import numpy as np
cimport numpy as cnp

ctypedef cnp.int64_t i64


def bfs_dist(indptr, indices, Py_ssize_t src, Py_ssize_t radius=-1):
    cdef const i64[:] ip = np.ascontiguousarray(indptr, dtype=np.int64)
    cdef const i64[:] ix = np.ascontiguousarray(indices, dtype=np.int64)
    cdef Py_ssize_t n = ip.shape[0] - 1
    cdef i64[:] dist = np.full(n, -1, dtype=np.int64)
    cdef i64[:] order = np.empty(n, dtype=np.int64)
    cdef Py_ssize_t head = 0, tail = 1, u, w, k
    order[0] = src
    dist[src] = 0
    while head < tail:
        u = order[head]
        head += 1
        if dist[u] == radius:
            continue
        for k in range(ip[u], ip[u + 1]):
            w = ix[k]
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                order[tail] = w
                tail += 1
    out = np.asarray(order[:tail]).copy()
    return out, np.asarray(dist)[out]


def eccentricities(indptr, indices):
    cdef const i64[:] ip = np.ascontiguousarray(indptr, dtype=np.int64)
    cdef const i64[:] ix = np.ascontiguousarray(indices, dtype=np.int64)
    cdef Py_ssize_t n = ip.shape[0] - 1
    cdef i64[:] dist = np.empty(n, dtype=np.int64)
    cdef i64[:] queue = np.empty(n, dtype=np.int64)
    cdef i64[:] ecc = np.empty(n, dtype=np.int64)
    cdef Py_ssize_t v, head, tail, u, w, k
    for v in range(n):
        dist[:] = -1
        dist[v] = 0
        queue[0] = v
        head = 0
        tail = 1
        while head < tail:
            u = queue[head]
            head += 1
            for k in range(ip[u], ip[u + 1]):
                w = ix[k]
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    queue[tail] = w
                    tail += 1
        if tail != n:
            ecc[:] = -1
            return np.asarray(ecc)
        ecc[v] = dist[queue[n - 1]]
    return np.asarray(ecc)


def flood_max(indptr, indices, values, Py_ssize_t rounds):
    cdef const i64[:] ip = np.ascontiguousarray(indptr, dtype=np.int64)
    cdef const i64[:] ix = np.ascontiguousarray(indices, dtype=np.int64)
    cdef Py_ssize_t n = ip.shape[0] - 1
    cdef i64[:] cur = np.array(values, dtype=np.int64)
    cdef i64[:] nxt = np.empty(n, dtype=np.int64)
    cdef i64[:] tmp
    cdef Py_ssize_t r, u, k
    cdef i64 best
    cdef bint changed
    for r in range(rounds):
        changed = False
        for u in range(n):
            best = cur[u]
            for k in range(ip[u], ip[u + 1]):
                if cur[ix[k]] > best:
                    best = cur[ix[k]]
            if best != cur[u]:
                changed = True
            nxt[u] = best
        tmp = cur
        cur = nxt
        nxt = tmp
        if not changed:
            break
    return np.asarray(cur).copy()
