"""Randomized center initialization: uniform and squared-distance weighted.

All randomness in the package flows through one fixed generator algorithm,
PCG64 (numpy's default 64-bit bit generator), so a seed fully determines
every draw sequence on every platform.
"""

from __future__ import annotations

import numpy as np

from .core import CenterSet, Dataset

__all__ = [
    "DegenerateDistribution",
    "make_rng",
    "substream",
    "d2_probabilities",
    "sample_index",
    "kmeanspp_seed",
    "uniform_seed",
]

PRNG_NAME = "PCG64"


class DegenerateDistribution(ValueError):
    """Every nearest-center distance is zero; there is nothing to sample."""


def make_rng(seed) -> np.random.Generator:
    """PCG64-backed generator from an integer seed.

    An existing Generator passes through unchanged, so library entry points
    can accept either form.
    """
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.Generator(np.random.PCG64(seed))


def substream(seed: int, *key: int) -> np.random.Generator:
    """Independent child stream identified by (seed, *key).

    Streams for distinct keys never overlap and do not consume draws from
    one another, which keeps parallel fan-out reproducible.
    """
    ss = np.random.SeedSequence([int(seed), *(int(x) for x in key)])
    return np.random.Generator(np.random.PCG64(ss))


def d2_probabilities(d: np.ndarray) -> np.ndarray:
    """Selection weights proportional to squared distance: p_i = d_i / sum d."""
    d = np.asarray(d, dtype=np.float64)
    if d.ndim != 1:
        raise ValueError(f"distances must be a vector, got shape {d.shape}")
    if (d < 0).any():
        raise ValueError("distances must be non-negative")
    total = d.sum()
    if total <= 0.0:
        raise DegenerateDistribution("all distances are zero")
    return d / total


def sample_index(p: np.ndarray, rng) -> int:
    """One inverse-CDF draw from the probability vector.

    Uses a single uniform variate; an index with zero probability is never
    returned.
    """
    p = np.asarray(p, dtype=np.float64)
    cdf = np.cumsum(p)
    total = cdf[-1]
    if total <= 0.0:
        raise DegenerateDistribution("all probabilities are zero")
    rng = make_rng(rng)
    u = rng.random() * total
    idx = int(np.searchsorted(cdf, u, side="right"))
    if idx >= p.size:  # u rounded up to the total; take the last positive mass
        idx = int(np.flatnonzero(p > 0)[-1])
    return idx


def _sq_dist_to(X: np.ndarray, point: np.ndarray) -> np.ndarray:
    diff = X - point
    return np.einsum("ij,ij->i", diff, diff)


def kmeanspp_seed(dataset: Dataset, K: int, rng) -> CenterSet:
    """Squared-distance weighted seeding over the datapoints.

    The first center is uniform; each next one is sampled proportionally to
    the squared distance from the nearest already-chosen center. When every
    remaining point coincides with a chosen center, the rest are picked
    uniformly among the unchosen indices. Returns K distinct datapoints.
    """
    if not 1 <= K <= dataset.n:
        raise ValueError(f"require 1 <= K <= N, got K={K}, N={dataset.n}")
    rng = make_rng(rng)
    X = dataset.points
    chosen = np.empty(K, dtype=np.int64)
    chosen[0] = rng.integers(dataset.n)
    d = _sq_dist_to(X, X[chosen[0]])
    for t in range(1, K):
        total = d.sum()
        if total > 0.0:
            idx = sample_index(d / total, rng)
        else:
            pool = np.ones(dataset.n, dtype=bool)
            pool[chosen[:t]] = False
            remaining = np.flatnonzero(pool)
            idx = int(remaining[rng.integers(remaining.size)])
        chosen[t] = idx
        np.minimum(d, _sq_dist_to(X, X[idx]), out=d)
    return CenterSet(X[chosen])


def uniform_seed(dataset: Dataset, K: int, rng) -> CenterSet:
    """K distinct datapoints chosen uniformly without replacement."""
    if not 1 <= K <= dataset.n:
        raise ValueError(f"require 1 <= K <= N, got K={K}, N={dataset.n}")
    rng = make_rng(rng)
    idx = rng.choice(dataset.n, size=K, replace=False)
    return CenterSet(dataset.points[idx])
