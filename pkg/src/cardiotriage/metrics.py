"""Distances between records/centroids and the pairwise dissimilarity matrix."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import _backend
from .dataset import Dataset

METRICS = ("hamming", "euclidean", "squared-euclidean")


def _check_lengths(a, b):
    if len(a) != len(b):
        raise ValueError(f"length mismatch: {len(a)} != {len(b)}")


def hamming(a: Sequence[int], b: Sequence[int]) -> int:
    _check_lengths(a, b)
    return sum(1 for x, y in zip(a, b) if x != y)


def sq_euclidean(a: Sequence[float], b: Sequence[float]) -> float:
    _check_lengths(a, b)
    s = 0.0
    for x, y in zip(a, b):
        t = x - y
        s += t * t
    return s


def euclidean(a: Sequence[float], b: Sequence[float]) -> float:
    return math.sqrt(sq_euclidean(a, b))


# Distances from binary rows to mean centroids are rationals with small
# denominators; values this close are equal up to rounding.
TIE_RTOL = 1e-9


def argmin(values: Sequence[float], prefer: Optional[int] = None) -> int:
    """Index of the smallest value, treating near-equal values as ties.

    Ties go to ``prefer`` when it is among the smallest, otherwise to the
    lowest index.
    """
    best = min(values)
    bound = best + TIE_RTOL * max(1.0, abs(best))
    if prefer is not None and values[prefer] <= bound:
        return prefer
    for j, v in enumerate(values):
        if v <= bound:
            return j
    raise ValueError("argmin of an empty or NaN sequence")


@dataclass(frozen=True)
class DissimilarityMatrix:
    ids: tuple[str, ...]
    entries: np.ndarray
    metric: str

    @property
    def n(self) -> int:
        return len(self.ids)

    def __getitem__(self, pair: tuple[str, str]) -> float:
        i, j = pair
        return float(self.entries[self.ids.index(i), self.ids.index(j)])

    def to_csv(self) -> str:
        out = io.StringIO()
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["id", *self.ids])
        for pid, row in zip(self.ids, self.entries):
            if self.metric == "hamming":
                w.writerow([pid, *(int(v) for v in row)])
            else:
                w.writerow([pid, *(repr(float(v)) for v in row)])
        return out.getvalue()


def dissimilarity_matrix(d: Dataset, metric: str = "hamming") -> DissimilarityMatrix:
    if metric not in METRICS:
        raise ValueError(f"unknown metric {metric!r}; expected one of {METRICS}")
    if d.n == 0:
        raise ValueError("dissimilarity matrix of an empty dataset")
    sq = _backend.pairwise_sq(np.asarray(d.rows(), dtype=np.float64).reshape(d.n, d.arity))
    if metric == "euclidean":
        entries = np.sqrt(sq)
    else:
        # on {0,1} vectors the squared distance is the mismatch count
        entries = sq
    entries.setflags(write=False)
    return DissimilarityMatrix(tuple(d.ids), entries, metric)
