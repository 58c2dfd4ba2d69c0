"""Nearest-centroid classification and the triage report for a new patient."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .autocorr import RiskScore, RiskThresholds, TriageCategory, autocorrelation, category_for
from .dataset import Dataset, PatientRecord
from .kmeans import ClusterModel
from .metrics import argmin, sq_euclidean

__all__ = [
    "MappingUnavailable",
    "TriageCategory",
    "TriageReport",
    "classify",
    "cluster_distances",
    "map_categories",
    "triage",
]


class MappingUnavailable(ValueError):
    """Cluster-to-category mapping is only defined for exactly three clusters."""


def _check_query(m: ClusterModel, q: Sequence[int]):
    if len(q) != m.arity:
        raise ValueError(f"arity mismatch: query has {len(q)} entries, model has {m.arity}")


def cluster_distances(m: ClusterModel, q: Sequence[float]) -> list[float]:
    """Squared Euclidean distance from ``q`` to every centroid."""
    _check_query(m, q)
    return [sq_euclidean(q, c) for c in m.centroids]


def classify(m: ClusterModel, q: Sequence[float]) -> tuple[int, float]:
    """Nearest cluster (lowest index on ties) and its Euclidean distance."""
    sq = cluster_distances(m, q)
    best = argmin(sq)
    return best, math.sqrt(sq[best])


def symptom_load(centroid: Sequence[float]) -> float:
    return sum(centroid) / len(centroid)


def map_categories(m: ClusterModel) -> dict[int, TriageCategory]:
    """Rank clusters by mean centroid entry: lightest Normal, heaviest Cardiac."""
    if m.k != 3:
        raise MappingUnavailable(f"category mapping needs k=3, model has k={m.k}")
    order = sorted(range(3), key=lambda j: (symptom_load(m.centroids[j]), j))
    return {j: TriageCategory(rank) for rank, j in enumerate(order)}


@dataclass(frozen=True)
class TriageReport:
    query: tuple[int, ...]
    cluster: int
    distance: float
    distances: tuple[float, ...]
    category: TriageCategory
    precedents: tuple[str, ...]
    risk: RiskScore
    query_id: Optional[str] = None

    def to_dict(self) -> dict:
        return {
            "query_id": self.query_id,
            "query": list(self.query),
            "cluster": self.cluster,
            "distance": self.distance,
            "distances": list(self.distances),
            "category": self.category.label,
            "precedents": list(self.precedents),
            "risk": {
                "lag": self.risk.lag,
                "r": self.risk.r,
                "defined": self.risk.defined,
                "category": self.risk.category.label if self.risk.category is not None else None,
            },
        }


def triage(
    m: ClusterModel,
    d: Optional[Dataset],
    q: PatientRecord | Sequence[int],
    lag: int = 1,
    thresholds: Optional[RiskThresholds] = None,
) -> TriageReport:
    """Classify ``q``, name its category and list the precedent patients.

    Precedents are the members of the assigned cluster. When ``d`` is given
    its ids must match those the model was trained on.
    """
    thresholds = thresholds or RiskThresholds()
    qid = q.id if isinstance(q, PatientRecord) else None
    vec = tuple(q.features if isinstance(q, PatientRecord) else q)
    for v in vec:
        if v not in (0, 1):
            raise ValueError(f"query entries must be 0 or 1, got {v!r}")
    _check_query(m, vec)
    if d is not None and tuple(d.ids) != tuple(m.ids):
        raise ValueError("dataset ids do not match the model's training records")

    cluster, dist = classify(m, vec)
    categories = map_categories(m)
    ac = autocorrelation(vec, lag)
    risk = RiskScore(qid or "query", lag, ac.value, ac.defined,
                     category_for(ac.value, ac.defined, thresholds))
    return TriageReport(
        query=vec,
        cluster=cluster,
        distance=dist,
        distances=tuple(math.sqrt(s) for s in cluster_distances(m, vec)),
        category=categories[cluster],
        precedents=tuple(m.member_ids(cluster)),
        risk=risk,
        query_id=qid,
    )
