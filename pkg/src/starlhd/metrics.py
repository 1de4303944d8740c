"""Interpoint-distance criteria: minimum (MID) and average (AID) distance."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.spatial.distance import pdist


@dataclass(frozen=True)
class DistanceSummary:
    mid: float
    aid: float
    n: int
    d: int
    columns: tuple[int, ...] | None = None

    def to_dict(self) -> dict:
        return {
            "columns": None if self.columns is None else [c + 1 for c in self.columns],
            "n": self.n,
            "d": self.d,
            "mid": self.mid,
            "aid": self.aid,
        }


def _points(design, columns: Sequence[int] | None) -> np.ndarray:
    x = np.asarray(getattr(design, "points", design), dtype=float)
    if x.ndim != 2:
        raise ValueError("design must be an n x d array")
    if columns is not None:
        x = x[:, list(columns)]
    if x.shape[0] < 2:
        raise ValueError(f"need at least two points, got {x.shape[0]}")
    return x


def pairwise_distances(design, columns: Sequence[int] | None = None) -> np.ndarray:
    """Condensed Euclidean distances in row-pair order (0,1), (0,2), ..."""
    return pdist(_points(design, columns))


def mid(design, columns: Sequence[int] | None = None) -> float:
    """Minimum interpoint distance, optionally over a subset of columns."""
    return float(pairwise_distances(design, columns).min())


def aid(design, columns: Sequence[int] | None = None) -> float:
    """Average interpoint distance over all ``n(n-1)/2`` pairs."""
    dist = pairwise_distances(design, columns)
    return math.fsum(dist) / dist.size


def summarize(design, columns: Sequence[int] | None = None) -> DistanceSummary:
    dist = pairwise_distances(design, columns)
    x = np.asarray(getattr(design, "points", design))
    d = x.shape[1] if columns is None else len(columns)
    return DistanceSummary(
        mid=float(dist.min()),
        aid=math.fsum(dist) / dist.size,
        n=x.shape[0],
        d=d,
        columns=None if columns is None else tuple(columns),
    )


def projection_summary(design, k: int) -> list[DistanceSummary]:
    """Summaries for every ``k``-subset of columns, in lexicographic order."""
    d = np.asarray(getattr(design, "points", design)).shape[1]
    if not 1 <= k <= d:
        raise ValueError(f"projection size k={k} must be in [1, {d}]")
    return [summarize(design, cols) for cols in itertools.combinations(range(d), k)]
