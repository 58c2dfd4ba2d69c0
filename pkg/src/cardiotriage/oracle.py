"""Exhaustive-partition oracle for small datasets.

Scores every k-partition exactly: for binary data a block of size ``n``
with per-feature one-counts ``c`` has WCSS ``sum(c * (n - c)) / n``, so
``lcm(1..N) * WCSS`` is an integer and comparisons are free of rounding.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from typing import Iterator, Sequence

from . import _backend
from .dataset import Dataset
from .kmeans import ClusterModel
from .metrics import argmin, sq_euclidean

DEFAULT_CAP = 12

# Clusters listed alongside the reference table. P10 appears twice.
PAPER_CLUSTERS = (
    ("P4", "P7", "P3", "P9", "P10"),
    ("P8", "P2", "P1"),
    ("P5", "P6", "P10"),
)


@lru_cache(maxsize=None)
def stirling2(n: int, k: int) -> int:
    """Stirling number of the second kind, by S(n,k) = k S(n-1,k) + S(n-1,k-1)."""
    if n == k:
        return 1
    if k == 0 or k > n:
        return 0
    return k * stirling2(n - 1, k) + stirling2(n - 1, k - 1)


def _check(n: int, k: int, cap: int):
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got n={n}, k={k}")
    if n > cap:
        raise ValueError(f"n={n} exceeds the enumeration cap {cap}")


def restricted_growth_strings(n: int, k: int, cap: int = DEFAULT_CAP) -> Iterator[tuple[int, ...]]:
    """Restricted growth strings of length ``n`` using exactly ``k`` values, lexicographically."""
    _check(n, k, cap)
    a = [0] * n

    def rec(i, used):
        if i == n:
            if used == k:
                yield tuple(a)
            return
        # not enough positions left to open the missing blocks
        if k - used > n - i:
            return
        for v in range(min(used + 1, k)):
            a[i] = v
            yield from rec(i + 1, max(used, v + 1))

    a[0] = 0
    yield from rec(1, 1)


def rgs_to_blocks(rgs: Sequence[int]) -> list[list[int]]:
    blocks: list[list[int]] = [[] for _ in range(max(rgs) + 1)]
    for i, b in enumerate(rgs):
        blocks[b].append(i)
    return blocks


def enumerate_partitions(n: int, k: int, cap: int = DEFAULT_CAP) -> Iterator[list[list[int]]]:
    """Every partition of ``range(n)`` into exactly ``k`` non-empty blocks, once each."""
    for rgs in restricted_growth_strings(n, k, cap):
        yield rgs_to_blocks(rgs)


def exact_wcss(blocks: Sequence[Sequence[int]], d: Dataset) -> Fraction:
    rows = d.rows()
    total = Fraction(0)
    for block in blocks:
        nb = len(block)
        for f in range(d.arity):
            c = sum(rows[i][f] for i in block)
            total += Fraction(c * (nb - c), nb)
    return total


@dataclass(frozen=True)
class PartitionCertificate:
    partition: tuple[tuple[int, ...], ...]
    ids: tuple[tuple[str, ...], ...]
    wcss: Fraction
    examined: int
    locally_optimal: bool | None = None

    @property
    def wcss_float(self) -> float:
        return float(self.wcss)


def global_optimum(d: Dataset, k: int, cap: int = DEFAULT_CAP) -> PartitionCertificate:
    """Minimum-WCSS partition over all S(N, k); ties go to the first in canonical order."""
    _check(d.n, k, cap)
    scale = reduce(math.lcm, range(1, d.n + 1), 1)
    rgs, score, examined = _backend.scan_partitions(d.rows(), k, scale)
    blocks = rgs_to_blocks(rgs)
    ids = d.ids
    return PartitionCertificate(
        partition=tuple(tuple(b) for b in blocks),
        ids=tuple(tuple(ids[i] for i in b) for b in blocks),
        wcss=Fraction(score, scale),
        examined=examined,
    )


def certify_local_optimum(m: ClusterModel, d: Dataset) -> bool:
    """True iff no single patient has a strictly closer centroid it may move to.

    Centroids are recomputed from the assignment; a patient alone in its
    segment is never movable.
    """
    if len(m.state.assignment) != d.n:
        raise ValueError("model does not cover this dataset")
    rows = d.rows()
    blocks = m.state.partition()
    centroids = []
    for b in blocks:
        if b:
            centroids.append([sum(rows[i][f] for i in b) / len(b) for f in range(d.arity)])
        else:
            centroids.append(None)
    for i, a in enumerate(m.state.assignment):
        if a is None:
            return False
        if len(blocks[a]) <= 1:
            continue
        ds = [math.inf if c is None else sq_euclidean(rows[i], c) for c in centroids]
        if argmin(ds, prefer=a) != a:
            return False
    return True


def heuristic_exact_wcss(m: ClusterModel, d: Dataset) -> Fraction:
    return exact_wcss([b for b in m.state.partition() if b], d)


def rand_index(labels_a: Sequence, labels_b: Sequence) -> float:
    """Fraction of point pairs on which two labelings agree (same vs different)."""
    if len(labels_a) != len(labels_b):
        raise ValueError("labelings differ in length")
    pairs = list(itertools.combinations(range(len(labels_a)), 2))
    if not pairs:
        return 1.0
    agree = sum(
        (labels_a[i] == labels_a[j]) == (labels_b[i] == labels_b[j]) for i, j in pairs
    )
    return agree / len(pairs)


def paper_labelings(ids: Sequence[str]) -> dict[str, list[int]]:
    """The reported clustering as label vectors, once per placement of P10."""
    out = {}
    for name, drop_from in (("P10-in-first", 2), ("P10-in-third", 0)):
        labels = {}
        for c, members in enumerate(PAPER_CLUSTERS):
            for pid in members:
                if pid == "P10" and c == drop_from:
                    continue
                labels[pid] = c
        out[name] = [labels[i] for i in ids]
    return out


def paper_agreement(m: ClusterModel) -> dict[str, float]:
    labels = [m.state.assignment[i] for i in range(len(m.ids))]
    return {name: rand_index(labels, ref) for name, ref in paper_labelings(m.ids).items()}
