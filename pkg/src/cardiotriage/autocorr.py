"""Lag-k autocorrelation of each patient's symptom row, and risk bands."""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace
from typing import Iterable, Optional, Sequence

from .dataset import Dataset


class TriageCategory(enum.IntEnum):
    NORMAL = 0
    PRO_CARDIAC = 1
    CARDIAC = 2

    @property
    def label(self) -> str:
        return {0: "Normal", 1: "ProCardiac", 2: "Cardiac"}[int(self)]

    @classmethod
    def from_label(cls, label: str) -> "TriageCategory":
        for c in cls:
            if c.label == label:
                return c
        raise ValueError(f"unknown category {label!r}")


@dataclass(frozen=True)
class Autocorrelation:
    value: float
    defined: bool


@dataclass(frozen=True)
class RiskScore:
    id: str
    lag: Optional[int]  # None when the lag is unknown (reported values)
    r: float
    defined: bool
    category: Optional[TriageCategory] = None


@dataclass(frozen=True)
class RiskThresholds:
    cardiac: float = 0.8
    pro: float = 0.5

    def __post_init__(self):
        if not self.cardiac > self.pro:
            raise ValueError(
                f"cardiac threshold ({self.cardiac}) must exceed pro-cardiac threshold ({self.pro})"
            )


# R1..R10 as listed alongside the reference table; not reproducible from the
# table itself (rows P4 and P6 are constant), kept as categorisation input.
REPORTED_R = (0.3, 0.3, 0.1, 0.0023, 0.7, 0.9, 0.11, 0.3, 0.1, 0.72)


def autocorrelation(series: Sequence[float], k: int) -> Autocorrelation:
    """r_k = sum_{t>k} (y_t - m)(y_{t-k} - m) / sum_t (y_t - m)^2.

    A constant series has a zero denominator: returned as value 0 with
    ``defined=False``.
    """
    n = len(series)
    if n < 2:
        raise ValueError(f"series needs at least 2 values, got {n}")
    if not 1 <= k <= n - 1:
        raise ValueError(f"lag must be in [1, {n - 1}], got {k}")
    mean = sum(series) / n
    dev = [y - mean for y in series]
    den = sum(v * v for v in dev)
    if den == 0.0:
        return Autocorrelation(0.0, False)
    num = sum(dev[t] * dev[t - k] for t in range(k, n))
    r = num / den
    # rounding can push a perfectly correlated ratio a hair past the bound
    return Autocorrelation(min(1.0, max(-1.0, r)), True)


def risk_scores(d: Dataset, k: int = 1) -> list[RiskScore]:
    if d.arity < 2:
        raise ValueError("autocorrelation needs at least 2 features")
    if not 1 <= k <= d.arity - 1:
        raise ValueError(f"lag must be in [1, {d.arity - 1}], got {k}")
    out = []
    for rec in d.records:
        ac = autocorrelation(rec.features, k)
        out.append(RiskScore(rec.id, k, ac.value, ac.defined))
    return out


def category_for(r: float, defined: bool, t: RiskThresholds) -> TriageCategory:
    if not defined:
        return TriageCategory.NORMAL
    if r >= t.cardiac:
        return TriageCategory.CARDIAC
    if r >= t.pro:
        return TriageCategory.PRO_CARDIAC
    return TriageCategory.NORMAL


def categorize_risk(
    scores: Iterable[RiskScore], t: Optional[RiskThresholds] = None
) -> list[RiskScore]:
    t = t or RiskThresholds()
    return [replace(s, category=category_for(s.r, s.defined, t)) for s in scores]


def reported_scores() -> list[RiskScore]:
    """The reported R values as pre-computed scores for P1..P10 (lag not stated)."""
    return [RiskScore(f"P{i}", None, r, True) for i, r in enumerate(REPORTED_R, start=1)]
