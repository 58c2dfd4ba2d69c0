# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled hot kernels. Mirrors ``_purepy`` step for step."""

import numpy as np


def pairwise_sq(X):
    cdef double[:, ::1] x = np.ascontiguousarray(X, dtype=np.float64)
    cdef Py_ssize_t n = x.shape[0]
    cdef Py_ssize_t m = x.shape[1]
    cdef Py_ssize_t i, j, f
    cdef double s, t
    out = np.zeros((n, n), dtype=np.float64)
    cdef double[:, ::1] o = out
    for i in range(n):
        for j in range(i + 1, n):
            s = 0.0
            for f in range(m):
                t = x[i, f] - x[j, f]
                s += t * t
            o[i, j] = s
            o[j, i] = s
    return out


def scan_partitions(X, int k, long long scale):
    cdef long long[:, ::1] x = np.ascontiguousarray(X, dtype=np.int64)
    cdef Py_ssize_t n = x.shape[0]
    cdef Py_ssize_t m = x.shape[1]
    cdef long long[::1] a = np.full(n, -1, dtype=np.int64)
    cdef long long[::1] best_a = np.zeros(n, dtype=np.int64)
    cdef long long[::1] sizes = np.zeros(k, dtype=np.int64)
    cdef long long[:, ::1] counts = np.zeros((k, m), dtype=np.int64)
    cdef long long[::1] used_upto = np.zeros(n + 1, dtype=np.int64)
    cdef long long best = -1
    cdef long long examined = 0
    cdef long long score, s, nb, used, limit, v, nxt
    cdef Py_ssize_t i, b, f

    a[0] = 0
    sizes[0] += 1
    for f in range(m):
        counts[0, f] += x[0, f]
    used_upto[1] = 1
    i = 1
    while i >= 1:
        if i == n:
            score = 0
            for b in range(k):
                nb = sizes[b]
                s = 0
                for f in range(m):
                    s += counts[b, f] * (nb - counts[b, f])
                score += (scale // nb) * s
            examined += 1
            if best < 0 or score < best:
                best = score
                best_a[:] = a
            i -= 1
            continue
        if a[i] >= 0:
            b = a[i]
            sizes[b] -= 1
            for f in range(m):
                counts[b, f] -= x[i, f]
        used = used_upto[i]
        limit = used if used < k else k - 1
        v = a[i] + 1
        while v <= limit:
            nxt = used if used > v + 1 else v + 1
            if k - nxt > n - i - 1:
                v += 1
            else:
                break
        if v > limit:
            a[i] = -1
            i -= 1
            continue
        a[i] = v
        sizes[v] += 1
        for f in range(m):
            counts[v, f] += x[i, f]
        used_upto[i + 1] = used if used > v + 1 else v + 1
        i += 1
    return [int(t) for t in best_a], int(best), int(examined)
