"""Sequential K-means with singleton seeding and per-move centroid updates.

The procedure:

1. seed segment ``j`` with record ``j`` for the first ``k`` records;
2. walk the remaining records in order, each joining the nearest centroid
   (ties to the lowest index), updating that centroid straight away;
3. refinement passes: visit every record in order and move it when another
   centroid is strictly closer, updating the losing and gaining centroids at
   once; a move that would empty a segment is skipped;
4. stop after a pass with no moves (or at the pass cap).

All distance comparisons use squared Euclidean distance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable, Optional

from .dataset import Dataset
from .metrics import argmin, sq_euclidean

MovedCallback = Callable[["ClusterState", int, int, int], None]


@dataclass
class ClusterState:
    """Partial or complete assignment of patients to ``k`` segments.

    ``assignment[i]`` is the segment index of record ``i`` or ``None`` while
    unassigned.
    """

    k: int
    centroids: list[list[float]]
    assignment: list[Optional[int]]
    sizes: list[int]

    def copy(self) -> "ClusterState":
        return ClusterState(
            self.k,
            [list(c) for c in self.centroids],
            list(self.assignment),
            list(self.sizes),
        )

    @property
    def complete(self) -> bool:
        return all(a is not None for a in self.assignment)

    def members(self, segment: int) -> list[int]:
        return [i for i, a in enumerate(self.assignment) if a == segment]

    def partition(self) -> list[list[int]]:
        return [self.members(j) for j in range(self.k)]


@dataclass(frozen=True)
class KMeansConfig:
    max_passes: Optional[int] = None  # None: 100 * N
    metric: str = "squared-euclidean"
    ordering: str = "dataset"

    def pass_cap(self, n: int) -> int:
        return 100 * n if self.max_passes is None else self.max_passes


@dataclass
class ClusterModel:
    state: ClusterState
    passes: int
    moves: int
    converged: bool
    config: KMeansConfig
    ids: tuple[str, ...] = ()
    features: tuple[str, ...] = ()

    @property
    def k(self) -> int:
        return self.state.k

    @property
    def centroids(self) -> list[list[float]]:
        return self.state.centroids

    @property
    def arity(self) -> int:
        return len(self.state.centroids[0])

    def member_ids(self, segment: int) -> list[str]:
        return [self.ids[i] for i in self.state.members(segment)]


@dataclass(frozen=True)
class SegmentStats:
    mean: tuple[float, ...]
    std: tuple[float, ...]
    proportion: float
    size: int


@dataclass(frozen=True)
class ClusterStats:
    segments: tuple[SegmentStats, ...] = field(default=())

    @property
    def proportions(self) -> list[float]:
        return [s.proportion for s in self.segments]


def _check_k(d: Dataset, k: int):
    if not isinstance(k, int) or k < 1:
        raise ValueError(f"k must be a positive integer, got {k!r}")
    if k > d.n:
        raise ValueError(f"k={k} exceeds the number of records N={d.n}")


def _nearest(x, centroids, prefer: Optional[int] = None) -> int:
    return argmin([sq_euclidean(x, c) for c in centroids], prefer=prefer)


def recompute_centroids(s: ClusterState, d: Dataset) -> list[list[float]]:
    """Batch means of every segment from the assignment alone."""
    rows = d.rows()
    m = d.arity
    sums = [[0.0] * m for _ in range(s.k)]
    counts = [0] * s.k
    for i, a in enumerate(s.assignment):
        if a is None:
            continue
        counts[a] += 1
        acc = sums[a]
        for f, v in enumerate(rows[i]):
            acc[f] += v
    out = []
    for j in range(s.k):
        if counts[j] == 0:
            out.append(list(s.centroids[j]))
        else:
            out.append([v / counts[j] for v in sums[j]])
    return out


def _join(s: ClusterState, x, j: int):
    n = s.sizes[j]
    c = s.centroids[j]
    for f in range(len(c)):
        c[f] += (x[f] - c[f]) / (n + 1)
    s.sizes[j] = n + 1


def _leave(s: ClusterState, x, j: int):
    n = s.sizes[j]
    c = s.centroids[j]
    for f in range(len(c)):
        c[f] -= (x[f] - c[f]) / (n - 1)
    s.sizes[j] = n - 1


def seed_initial(d: Dataset, k: int) -> ClusterState:
    _check_k(d, k)
    rows = d.rows()
    assignment: list[Optional[int]] = [None] * d.n
    for j in range(k):
        assignment[j] = j
    return ClusterState(
        k=k,
        centroids=[[float(v) for v in rows[j]] for j in range(k)],
        assignment=assignment,
        sizes=[1] * k,
    )


def assign_remaining(s: ClusterState, d: Dataset) -> ClusterState:
    s = s.copy()
    rows = d.rows()
    for i in range(d.n):
        if s.assignment[i] is not None:
            continue
        j = _nearest(rows[i], s.centroids)
        s.assignment[i] = j
        _join(s, rows[i], j)
    s.centroids = recompute_centroids(s, d)
    return s


def refine_pass(
    s: ClusterState, d: Dataset, on_move: Optional[MovedCallback] = None
) -> tuple[ClusterState, int]:
    """One refinement sweep; returns the new state and the number of moves.

    ``on_move(state, patient, source, target)`` fires after every executed
    move, with centroids already updated.
    """
    if not s.complete:
        raise ValueError("refine_pass needs every patient assigned")
    s = s.copy()
    rows = d.rows()
    moves = 0
    for i in range(d.n):
        cur = s.assignment[i]
        target = _nearest(rows[i], s.centroids, prefer=cur)
        if target == cur or s.sizes[cur] <= 1:
            continue
        _leave(s, rows[i], cur)
        _join(s, rows[i], target)
        s.assignment[i] = target
        moves += 1
        if on_move is not None:
            on_move(s, i, cur, target)
    # bound drift of the running means
    s.centroids = recompute_centroids(s, d)
    return s, moves


def wcss(s: ClusterState, d: Dataset) -> float:
    if not s.complete:
        raise ValueError("wcss needs every patient assigned")
    rows = d.rows()
    return sum(sq_euclidean(rows[i], s.centroids[a]) for i, a in enumerate(s.assignment))


def run(
    d: Dataset,
    k: int,
    config: Optional[KMeansConfig] = None,
    on_move: Optional[MovedCallback] = None,
) -> ClusterModel:
    config = config or KMeansConfig()
    _check_k(d, k)
    cap = config.pass_cap(d.n)
    if cap < 1:
        raise ValueError(f"max_passes must be >= 1, got {cap}")
    s = assign_remaining(seed_initial(d, k), d)
    passes = 0
    total_moves = 0
    converged = False
    while passes < cap:
        s, moved = refine_pass(s, d, on_move)
        passes += 1
        total_moves += moved
        if moved == 0:
            converged = True
            break
    return ClusterModel(
        state=s,
        passes=passes,
        moves=total_moves,
        converged=converged,
        config=replace(config, max_passes=cap),
        ids=tuple(d.ids),
        features=tuple(d.schema.names),
    )


def cluster_stats(m: ClusterModel, d: Dataset) -> ClusterStats:
    if d.n != len(m.state.assignment):
        raise ValueError("model does not cover this dataset")
    rows = d.rows()
    segments = []
    for j in range(m.k):
        idx = m.state.members(j)
        n_j = len(idx)
        if n_j == 0:
            zeros = tuple(0.0 for _ in range(d.arity))
            segments.append(SegmentStats(zeros, zeros, 0.0, 0))
            continue
        mean = [sum(rows[i][f] for i in idx) / n_j for f in range(d.arity)]
        std = [
            math.sqrt(sum((rows[i][f] - mean[f]) ** 2 for i in idx) / n_j)
            for f in range(d.arity)
        ]
        segments.append(SegmentStats(tuple(mean), tuple(std), n_j / d.n, n_j))
    return ClusterStats(tuple(segments))
