"""Lloyd's local search: nearest-center assignment and mean updates.

This is the inner engine every method in the package drives. Assignment
breaks ties toward the lowest center index and the error reduction order is
fixed, so runs are bit-reproducible regardless of caller-side parallelism.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import CenterSet, ClusteringSolution, Dataset

__all__ = ["LloydConfig", "assign", "update_centers", "run_lloyd"]

# Guards the relative-improvement test when the error is at or near zero.
_REL_EPS = 1e-300

# Points-times-centers elements per distance block; sized so the working
# set stays cache-resident (three live B x k buffers at 8192 are ~192 KiB).
_ASSIGN_BLOCK_ELEMENTS = 8192


def _assign_arrays(Xt: np.ndarray, C: np.ndarray):
    # Distances accumulate per dimension as direct squared differences, not
    # via the norm expansion: a point on a center gets exactly 0, never a
    # stray ulp, and no BLAS call is involved (results cannot depend on
    # thread pools). Xt is the D x N transposed point matrix.
    d, n = Xt.shape
    k = C.shape[0]
    block = max(1, _ASSIGN_BLOCK_ELEMENTS // k)
    labels = np.empty(n, dtype=np.int64)
    dmin = np.empty(n)
    gather = np.arange(min(block, n))
    for s in range(0, n, block):
        e = min(s + block, n)
        d2 = None
        for j in range(d):
            tmp = Xt[j, s:e][:, None] - C[:, j][None, :]
            np.multiply(tmp, tmp, out=tmp)
            if d2 is None:
                d2 = tmp
            else:
                d2 += tmp
        lab = d2.argmin(axis=1)
        labels[s:e] = lab
        dmin[s:e] = d2[gather[: e - s], lab]
    return labels, dmin


@dataclass(frozen=True)
class LloydConfig:
    """Convergence settings shared by every method in the package."""

    tol: float = 1e-6
    max_iter: int = 300

    def __post_init__(self):
        if self.tol < 0:
            raise ValueError("tol must be >= 0")
        if self.max_iter < 1:
            raise ValueError("max_iter must be >= 1")


def _update_arrays(X: np.ndarray, labels: np.ndarray, k: int, previous: np.ndarray) -> np.ndarray:
    counts = np.bincount(labels, minlength=k)
    means = np.empty((k, X.shape[1]))
    for j in range(X.shape[1]):
        means[:, j] = np.bincount(labels, weights=X[:, j], minlength=k)
    means /= np.where(counts == 0, 1, counts)[:, None]
    empty = counts == 0
    if empty.any():
        means[empty] = previous[empty]
    return means


def assign(dataset: Dataset, centers: CenterSet):
    """Label each point with its nearest center; lowest index wins ties.

    Returns (labels, nearest_sq): the label vector and the attained squared
    distances.
    """
    if centers.d != dataset.d:
        raise ValueError(f"dimension mismatch: dataset d={dataset.d}, centers d={centers.d}")
    return _assign_arrays(dataset.points_t, centers.centers)


def update_centers(dataset: Dataset, labels: np.ndarray, k: int,
                   previous: CenterSet | None = None):
    """Move each center to the mean of its assigned points.

    Empty clusters are reported, not re-seeded: their row inherits
    `previous` when given (the run_lloyd policy) and is zero otherwise.
    Returns (CenterSet, empty_cluster_indices).
    """
    labels = np.asarray(labels, dtype=np.int64)
    if labels.shape != (dataset.n,):
        raise ValueError(f"labels must have shape ({dataset.n},), got {labels.shape}")
    if labels.min() < 0 or labels.max() >= k:
        raise ValueError("label out of range")
    prev = previous.centers if previous is not None else np.zeros((k, dataset.d))
    if prev.shape != (k, dataset.d):
        raise ValueError("previous centers have the wrong shape")
    means = _update_arrays(dataset.points, labels, k, prev)
    empty = [int(j) for j in np.flatnonzero(np.bincount(labels, minlength=k) == 0)]
    return CenterSet(means), empty


def run_lloyd(dataset: Dataset, initial_centers: CenterSet,
              config: LloydConfig = LloydConfig()) -> ClusteringSolution:
    """Alternate assignment and mean updates until the error stops improving.

    Stops when the updated centers repeat bitwise, when the relative error
    decrease between consecutive passes falls below config.tol, or after
    config.max_iter passes. A cluster that empties keeps its previous center
    for the next pass. The returned labels, error, and distances are all
    measured against the returned centers; a floating-point error uptick
    (possible at most a few ulps from convergence) terminates the loop and
    the previous pass is returned, so the recorded trace is non-increasing
    by construction.
    """
    if initial_centers.d != dataset.d:
        raise ValueError(f"dimension mismatch: dataset d={dataset.d}, centers d={initial_centers.d}")
    X = dataset.points
    Xt = dataset.points_t
    k = initial_centers.k
    centers = initial_centers.centers
    trace: list[float] = []
    state = None  # (centers, labels, distances, error) of the last recorded pass
    iterations = 0
    for t in range(1, config.max_iter + 1):
        labels, dmin = _assign_arrays(Xt, centers)
        error = float(dmin.sum())
        if state is not None and error > state[3]:
            break  # fp uptick: keep the previous pass
        prev = state
        trace.append(error)
        iterations = t
        state = (centers, labels, dmin, error)
        if prev is not None and np.array_equal(labels, prev[1]):
            # same labels reproduce the same means bitwise: a fixed point
            break
        new_centers = _update_arrays(X, labels, k, centers)
        if np.array_equal(new_centers, centers):
            break
        if prev is not None and prev[3] - error < config.tol * max(prev[3], _REL_EPS):
            break
        centers = new_centers
    centers, labels, dmin, error = state
    return ClusteringSolution(
        centers=CenterSet(centers),
        labels=labels,
        error=error,
        iterations=iterations,
        distances=dmin,
        trace=tuple(trace),
    )
