"""Shared data types and the squared-error clustering objective.

Everything here is immutable after construction: arrays are copied in and
marked read-only, so values can be shared freely across worker threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

__all__ = [
    "Dataset",
    "CenterSet",
    "ClusteringSolution",
    "clustering_error",
    "stirling2",
]

# Exact integer arithmetic is cheap up to this point count; the cap keeps the
# contract explicit rather than silently returning astronomically large values.
STIRLING_MAX_N = 64


def _freeze(a: np.ndarray, dtype) -> np.ndarray:
    out = np.array(a, dtype=dtype, copy=True)
    out.flags.writeable = False
    return out


@dataclass(frozen=True)
class Dataset:
    """Immutable N x D matrix of datapoints, one row per point."""

    points: np.ndarray

    def __post_init__(self):
        pts = np.array(self.points, dtype=np.float64, copy=True)
        if pts.ndim != 2:
            raise ValueError(f"points must be a 2-d matrix, got shape {pts.shape}")
        if pts.shape[0] < 1 or pts.shape[1] < 1:
            raise ValueError(f"need at least one point and one attribute, got shape {pts.shape}")
        if not np.isfinite(pts).all():
            raise ValueError("points contain NaN or Inf")
        pts.flags.writeable = False
        object.__setattr__(self, "points", pts)

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def d(self) -> int:
        return self.points.shape[1]

    @cached_property
    def sq_norms(self) -> np.ndarray:
        """Per-point squared norms, cached for distance expansions."""
        sq = np.einsum("ij,ij->i", self.points, self.points)
        sq.flags.writeable = False
        return sq

    @cached_property
    def points_t(self) -> np.ndarray:
        """Transposed copy (D x N, contiguous) for column-wise kernels."""
        t = np.ascontiguousarray(self.points.T)
        t.flags.writeable = False
        return t


@dataclass(frozen=True)
class CenterSet:
    """Ordered k x D matrix of cluster centers; row j owns cluster j."""

    centers: np.ndarray

    def __post_init__(self):
        c = np.array(self.centers, dtype=np.float64, copy=True)
        if c.ndim != 2 or c.shape[0] < 1:
            raise ValueError(f"centers must be a non-empty 2-d matrix, got shape {c.shape}")
        if not np.isfinite(c).all():
            raise ValueError("centers contain NaN or Inf")
        c.flags.writeable = False
        object.__setattr__(self, "centers", c)

    @property
    def k(self) -> int:
        return self.centers.shape[0]

    @property
    def d(self) -> int:
        return self.centers.shape[1]


@dataclass(frozen=True)
class ClusteringSolution:
    """Result of one k-means run.

    `distances` holds each point's squared distance to its nearest center in
    `centers` (the final assignment pass), kept so incremental sweeps can
    reuse it without recomputation. `trace` is the per-iteration error
    sequence recorded by the run.
    """

    centers: CenterSet
    labels: np.ndarray
    error: float
    iterations: int
    distances: np.ndarray
    trace: tuple[float, ...] = ()

    def __post_init__(self):
        labels = _freeze(self.labels, np.int64)
        dist = _freeze(self.distances, np.float64)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "distances", dist)
        if labels.ndim != 1 or dist.shape != labels.shape:
            raise ValueError("labels and distances must be equal-length vectors")
        if labels.min(initial=0) < 0 or labels.max(initial=0) >= self.centers.k:
            raise ValueError("label out of range for the center set")
        if self.error < 0:
            raise ValueError("clustering error cannot be negative")


def clustering_error(dataset: Dataset, centers: CenterSet, labels: np.ndarray) -> float:
    """Sum over points of the squared distance to the assigned center.

    Summation runs in point-index order (numpy pairwise reduction), so the
    result is deterministic for a given input.
    """
    if centers.d != dataset.d:
        raise ValueError(f"dimension mismatch: dataset d={dataset.d}, centers d={centers.d}")
    labels = np.asarray(labels, dtype=np.int64)
    if labels.shape != (dataset.n,):
        raise ValueError(f"labels must have shape ({dataset.n},), got {labels.shape}")
    if labels.min() < 0 or labels.max() >= centers.k:
        raise ValueError("label out of range for the center set")
    diff = dataset.points - centers.centers[labels]
    return float(np.einsum("ij,ij->i", diff, diff).sum())


def stirling2(n: int, k: int) -> int:
    """Number of partitions of n objects into k non-empty groups.

    Computed with the additive recurrence S(n,k) = k*S(n-1,k) + S(n-1,k-1)
    in exact integer arithmetic. The alternating-sum closed form is avoided
    here because of cancellation; it lives in the test suite as an
    independent oracle.
    """
    if n < 0 or k < 0 or k > n:
        raise ValueError(f"require 0 <= k <= n, got n={n}, k={k}")
    if n > STIRLING_MAX_N:
        raise ValueError(f"n is capped at {STIRLING_MAX_N}, got {n}")
    prev = [1] + [0] * k  # row n=0: S(0,0)=1, S(0,j)=0 otherwise
    for m in range(1, n + 1):
        cur = [0] * (k + 1)
        for j in range(1, min(m, k) + 1):
            cur[j] = j * prev[j] + prev[j - 1]
        prev = cur
    return prev[k]
