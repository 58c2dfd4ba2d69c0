"""Pure-Python versions of the hot kernels.

Must stay operation-for-operation identical to ``_kernels.pyx`` so both
backends return bit-identical results.
"""

import numpy as np


def pairwise_sq(X):
    """Dense matrix of squared Euclidean distances between rows of ``X``."""
    X = np.ascontiguousarray(X, dtype=np.float64)
    n, m = X.shape
    rows = X.tolist()
    out = np.zeros((n, n), dtype=np.float64)
    for i in range(n):
        xi = rows[i]
        for j in range(i + 1, n):
            xj = rows[j]
            s = 0.0
            for f in range(m):
                t = xi[f] - xj[f]
                s += t * t
            out[i, j] = s
            out[j, i] = s
    return out


def scan_partitions(X, k, scale):
    """Exhaustive restricted-growth-string scan for the minimum-WCSS k-partition.

    ``X`` is a binary integer matrix and ``scale`` a common multiple of
    1..n, so every candidate score ``scale * WCSS`` is an exact integer.
    Returns ``(best_rgs, best_score, examined)``; ties keep the first string
    in lexicographic order.
    """
    X = np.ascontiguousarray(X, dtype=np.int64)
    n, m = X.shape
    rows = X.tolist()
    a = [-1] * n
    sizes = [0] * k
    counts = [[0] * m for _ in range(k)]
    used_upto = [0] * (n + 1)

    def add(i, b):
        sizes[b] += 1
        cb = counts[b]
        ri = rows[i]
        for f in range(m):
            cb[f] += ri[f]

    def remove(i, b):
        sizes[b] -= 1
        cb = counts[b]
        ri = rows[i]
        for f in range(m):
            cb[f] -= ri[f]

    best = None
    best_rgs = None
    examined = 0

    a[0] = 0
    add(0, 0)
    used_upto[1] = 1
    i = 1
    while i >= 1:
        if i == n:
            score = 0
            for b in range(k):
                nb = sizes[b]
                cb = counts[b]
                s = 0
                for f in range(m):
                    s += cb[f] * (nb - cb[f])
                score += (scale // nb) * s
            examined += 1
            if best is None or score < best:
                best = score
                best_rgs = list(a)
            i -= 1
            continue
        if a[i] >= 0:
            remove(i, a[i])
        used = used_upto[i]
        limit = used if used < k else k - 1
        v = a[i] + 1
        while v <= limit and k - max(used, v + 1) > n - i - 1:
            v += 1
        if v > limit:
            a[i] = -1
            i -= 1
            continue
        a[i] = v
        add(i, v)
        used_upto[i + 1] = max(used, v + 1)
        i += 1
    return best_rgs, best, examined
