"""Incremental sweeps that add one center at a time, from k=1 up to K.

Four methods share the warm-start strategy: the k-1 converged centers stay
fixed and only the starting spot of the new center varies. They differ in
how starting spots are chosen: every datapoint (full enumeration), the
top-L guaranteed-reduction points, or L draws from the squared-distance
distribution (batch or sequential).
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .core import CenterSet, ClusteringSolution, Dataset
from .lloyd import LloydConfig, run_lloyd
from .seeding import make_rng, sample_index

__all__ = [
    "CandidateSet",
    "EmptyCandidates",
    "IncrementalRun",
    "solve_k1",
    "global_kmeans",
    "fgkm_bounds",
    "fgkm",
    "batch_sample",
    "sequential_sample",
    "global_kmeanspp",
]

SAMPLERS = ("batch", "sequential", "exhaustive")

# ~16 MiB of float64 per pairwise block in fgkm_bounds.
_BLOCK_ELEMENTS = 1 << 21


class EmptyCandidates(Exception):
    """No point has positive distance mass; no further center can help."""


@dataclass(frozen=True)
class CandidateSet:
    """Distinct point indices proposed as starting spots for the next center.

    `shortfall` marks that fewer than the requested number of indices had
    positive mass.
    """

    indices: tuple[int, ...]
    shortfall: bool = False

    def __post_init__(self):
        if len(set(self.indices)) != len(self.indices):
            raise ValueError("candidate indices must be distinct")


@dataclass(frozen=True)
class IncrementalRun:
    """Solutions for k = 1..K plus per-k bookkeeping.

    solutions[i] is the solution for k = i + 1. `lloyd_iterations[i]` lists
    the iteration count of every k-means execution spent on that k, and
    `candidates_used[i]` how many starting spots were tried (0 for k = 1).
    """

    solutions: tuple[ClusteringSolution, ...]
    wall_ms: tuple[float, ...]
    candidates_used: tuple[int, ...]
    lloyd_iterations: tuple[tuple[int, ...], ...]
    degenerate: bool = False
    truncated: bool = False

    @property
    def k_max(self) -> int:
        return len(self.solutions)

    def solution(self, k: int) -> ClusteringSolution:
        if not 1 <= k <= len(self.solutions):
            raise ValueError(f"no solution for k={k}")
        return self.solutions[k - 1]

    @property
    def errors(self) -> np.ndarray:
        return np.array([s.error for s in self.solutions])

    def iteration_log(self) -> dict[int, tuple[int, ...]]:
        """Per-k iteration counts, keyed by k, for iteration averaging."""
        return {k: counts for k, counts in enumerate(self.lloyd_iterations, start=1)}


def solve_k1(dataset: Dataset) -> ClusteringSolution:
    """The exact one-cluster solution: the center is the dataset mean."""
    mean = dataset.points.mean(axis=0, keepdims=True)
    diff = dataset.points - mean
    d = np.einsum("ij,ij->i", diff, diff)
    return ClusteringSolution(
        centers=CenterSet(mean),
        labels=np.zeros(dataset.n, dtype=np.int64),
        error=float(d.sum()),
        iterations=0,
        distances=d,
    )


def batch_sample(d: np.ndarray, L: int, rng) -> CandidateSet:
    """Draw up to L distinct indices weighted by d, without replacement.

    The weight vector is formed once; each draw zeroes the chosen index and
    renormalizes the residual. If fewer than L indices carry positive mass,
    all of them are returned with the shortfall flag set.
    """
    if L < 1:
        raise ValueError("L must be >= 1")
    d = np.array(d, dtype=np.float64, copy=True)
    if d.ndim != 1:
        raise ValueError(f"distances must be a vector, got shape {d.shape}")
    if d.sum() <= 0.0:
        raise EmptyCandidates("all distance mass is zero")
    rng = make_rng(rng)
    out: list[int] = []
    for _ in range(L):
        total = d.sum()
        if total <= 0.0:
            return CandidateSet(tuple(out), shortfall=True)
        idx = sample_index(d / total, rng)
        out.append(idx)
        d[idx] = 0.0
    return CandidateSet(tuple(out))


def sequential_sample(dataset: Dataset, centers: CenterSet, d: np.ndarray,
                      L: int, rng) -> CandidateSet:
    """Draw L candidates one at a time, re-weighting after every draw.

    Each drawn point is treated as a provisional center: the weights become
    min(d_i, squared distance to the draw), which zeroes the draw's own mass
    and pulls sampling toward still-uncovered regions. The caller's d is not
    modified. `centers` is accepted for interface symmetry; their distances
    are already folded into d.
    """
    if L < 1:
        raise ValueError("L must be >= 1")
    if centers.d != dataset.d:
        raise ValueError(f"dimension mismatch: dataset d={dataset.d}, centers d={centers.d}")
    d = np.array(d, dtype=np.float64, copy=True)
    if d.shape != (dataset.n,):
        raise ValueError(f"distances must have shape ({dataset.n},), got {d.shape}")
    if d.sum() <= 0.0:
        raise EmptyCandidates("all distance mass is zero")
    rng = make_rng(rng)
    X = dataset.points
    out: list[int] = []
    for _ in range(L):
        total = d.sum()
        if total <= 0.0:
            return CandidateSet(tuple(out), shortfall=True)
        idx = sample_index(d / total, rng)
        out.append(idx)
        diff = X - X[idx]
        np.minimum(d, np.einsum("ij,ij->i", diff, diff), out=d)
    return CandidateSet(tuple(out))


def fgkm_bounds(dataset: Dataset, d: np.ndarray, block_points: int | None = None) -> np.ndarray:
    """Guaranteed error reduction from inserting a center at each point.

    b[n] = sum_j max(d[j] - ||x_n - x_j||^2, 0). Pairwise distances are
    evaluated in row blocks of at most `block_points` points, so no full
    N x N matrix is ever held.
    """
    X = dataset.points
    n = dataset.n
    d = np.asarray(d, dtype=np.float64)
    if d.shape != (n,):
        raise ValueError(f"distances must have shape ({n},), got {d.shape}")
    if block_points is None:
        block_points = max(1, _BLOCK_ELEMENTS // n)
    x_sq = dataset.sq_norms
    b = np.empty(n)
    for s in range(0, n, block_points):
        e = min(s + block_points, n)
        pd = X[s:e] @ X.T
        pd *= -2.0
        pd += x_sq[s:e, None]
        pd += x_sq[None, :]
        np.maximum(pd, 0.0, out=pd)
        gain = d[None, :] - pd
        np.maximum(gain, 0.0, out=gain)
        b[s:e] = gain.sum(axis=1)
    return b


def _check_sweep_args(dataset: Dataset, K: int) -> None:
    if not 2 <= K <= dataset.n:
        raise ValueError(f"require 2 <= K <= N, got K={K}, N={dataset.n}")


def _best_over_candidates(dataset: Dataset, base: np.ndarray, indices, cfg: LloydConfig,
                          workers: int):
    """Run one warm-started Lloyd per candidate index and keep the best.

    The winner is the minimum by (error, point index), so the result does
    not depend on scheduling or worker count.
    """
    X = dataset.points

    def one(i: int) -> ClusteringSolution:
        return run_lloyd(dataset, CenterSet(np.vstack([base, X[i : i + 1]])), cfg)

    iters: list[int] = []
    best = None
    best_i = -1
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(one, indices))
    else:
        results = map(one, indices)
    for i, sol in zip(indices, results):
        iters.append(sol.iterations)
        if best is None or (sol.error, i) < (best.error, best_i):
            best, best_i = sol, i
    return best, best_i, iters


def _padded_copy(sol: ClusteringSolution, k: int) -> ClusteringSolution:
    """Duplicate-center padding: repeat the last center row up to k rows."""
    base = sol.centers.centers
    pad = np.repeat(base[-1:], k - base.shape[0], axis=0)
    return ClusteringSolution(
        centers=CenterSet(np.vstack([base, pad])),
        labels=sol.labels,
        error=sol.error,
        iterations=0,
        distances=sol.distances,
    )


class _SweepBuilder:
    """Accumulates per-k results and assembles the frozen IncrementalRun."""

    def __init__(self, dataset: Dataset):
        t0 = time.perf_counter()
        k1 = solve_k1(dataset)
        self.solutions = [k1]
        self.wall_ms = [(time.perf_counter() - t0) * 1000.0]
        self.candidates_used = [0]
        self.lloyd_iterations: list[tuple[int, ...]] = [()]
        self.degenerate = False
        self.truncated = False
        self.started = t0

    @property
    def last(self) -> ClusteringSolution:
        return self.solutions[-1]

    def add(self, sol: ClusteringSolution, used: int, iters, elapsed_s: float) -> None:
        self.solutions.append(sol)
        self.candidates_used.append(used)
        self.lloyd_iterations.append(tuple(iters))
        self.wall_ms.append(elapsed_s * 1000.0)

    def pad_to(self, K: int) -> None:
        self.degenerate = True
        for k in range(len(self.solutions) + 1, K + 1):
            t0 = time.perf_counter()
            self.add(_padded_copy(self.last, k), 0, (), time.perf_counter() - t0)

    def over_budget(self, budget_s: float | None) -> bool:
        if budget_s is None:
            return False
        return time.perf_counter() - self.started > budget_s

    def build(self) -> IncrementalRun:
        return IncrementalRun(
            solutions=tuple(self.solutions),
            wall_ms=tuple(self.wall_ms),
            candidates_used=tuple(self.candidates_used),
            lloyd_iterations=tuple(self.lloyd_iterations),
            degenerate=self.degenerate,
            truncated=self.truncated,
        )


def global_kmeans(dataset: Dataset, K: int, lloyd_cfg: LloydConfig = LloydConfig(),
                  workers: int = 1, budget_s: float | None = None) -> IncrementalRun:
    """Full enumeration: per k, try every datapoint as the new center's start.

    Deterministic; keeps the minimum-error solution per k, breaking ties
    toward the lowest datapoint index. Cost is N k-means executions per k.
    """
    _check_sweep_args(dataset, K)
    X = dataset.points
    sweep = _SweepBuilder(dataset)
    for k in range(2, K + 1):
        if sweep.over_budget(budget_s):
            sweep.truncated = True
            break
        t0 = time.perf_counter()
        base = sweep.last.centers.centers

        def one(i: int) -> ClusteringSolution:
            return run_lloyd(dataset, CenterSet(np.vstack([base, X[i : i + 1]])), lloyd_cfg)

        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as ex:
                results = list(ex.map(one, range(dataset.n)))
        else:
            results = map(one, range(dataset.n))
        iters: list[int] = []
        best = None
        best_i = -1
        for i, sol in enumerate(results):
            iters.append(sol.iterations)
            if best is None or (sol.error, i) < (best.error, best_i):
                best, best_i = sol, i
        sweep.add(best, dataset.n, iters, time.perf_counter() - t0)
    return sweep.build()


def fgkm(dataset: Dataset, K: int, L: int, lloyd_cfg: LloydConfig = LloydConfig(),
         workers: int = 1, budget_s: float | None = None) -> IncrementalRun:
    """Fast variant: per k, try only the L points with the largest guaranteed
    error reduction (ties toward the lowest index). Deterministic."""
    _check_sweep_args(dataset, K)
    if not 1 <= L <= dataset.n:
        raise ValueError(f"require 1 <= L <= N, got L={L}, N={dataset.n}")
    sweep = _SweepBuilder(dataset)
    for k in range(2, K + 1):
        if sweep.over_budget(budget_s):
            sweep.truncated = True
            break
        t0 = time.perf_counter()
        prev = sweep.last
        b = fgkm_bounds(dataset, prev.distances)
        top = np.argsort(-b, kind="stable")[:L]
        best, _, iters = _best_over_candidates(
            dataset, prev.centers.centers, [int(i) for i in top], lloyd_cfg, workers)
        sweep.add(best, len(top), iters, time.perf_counter() - t0)
    return sweep.build()


def global_kmeanspp(dataset: Dataset, K: int, L: int, sampler: str = "batch",
                    rng=0, lloyd_cfg: LloydConfig = LloydConfig(),
                    workers: int = 1, budget_s: float | None = None) -> IncrementalRun:
    """Sampled relaxation: per k, L candidate starts drawn from the
    squared-distance distribution of the converged (k-1) solution.

    sampler is one of "batch", "sequential", or "exhaustive"; the last
    enumerates every datapoint and reproduces the full enumeration method
    exactly. The distances feeding the sampler are the ones the previous
    Lloyd run's final assignment pass produced; no extra distance work is
    done. If sampling degenerates (every point sits on a center), the
    remaining k are padded with duplicate-center copies of the last solution
    and the run is flagged degenerate.
    """
    _check_sweep_args(dataset, K)
    if L < 1:
        raise ValueError("L must be >= 1")
    if sampler not in SAMPLERS:
        raise ValueError(f"unknown sampler {sampler!r}; pick one of {SAMPLERS}")
    rng = make_rng(rng)
    sweep = _SweepBuilder(dataset)
    for k in range(2, K + 1):
        if sweep.over_budget(budget_s):
            sweep.truncated = True
            break
        t0 = time.perf_counter()
        prev = sweep.last
        if sampler == "exhaustive":
            cand = CandidateSet(tuple(range(dataset.n)))
        else:
            try:
                if sampler == "batch":
                    cand = batch_sample(prev.distances, L, rng)
                else:
                    cand = sequential_sample(dataset, prev.centers, prev.distances, L, rng)
            except EmptyCandidates:
                sweep.pad_to(K)
                break
        best, _, iters = _best_over_candidates(
            dataset, prev.centers.centers, cand.indices, lloyd_cfg, workers)
        sweep.add(best, len(cand.indices), iters, time.perf_counter() - t0)
    return sweep.build()
