"""Cross-method comparison metrics: percentage error, error gaps, iteration means."""

from __future__ import annotations

from collections import defaultdict
from typing import Iterable, Mapping, Sequence

__all__ = ["percentage_error", "error_difference", "aggregate_iterations"]


def percentage_error(e: float, e_star: float) -> float:
    """Relative gap versus a baseline error, in percent.

    Negative values mean the compared method beat the baseline.
    """
    if e_star <= 0:
        raise ValueError(f"baseline error must be positive, got {e_star}")
    return (e - e_star) / e_star * 100.0


def error_difference(e: float, e_best: float) -> float:
    """Gap to the best error among the compared methods at the same k."""
    if e < e_best:
        raise ValueError(f"e_best must be the per-k minimum, got e={e} < e_best={e_best}")
    return e - e_best


def aggregate_iterations(
    logs: Iterable[Mapping[int, Sequence[int]]],
) -> dict[int, float]:
    """Mean Lloyd iterations per execution, per k, pooled across runs.

    Each log maps k to the iteration counts of the k-means executions spent
    on that k (an IncrementalRun.iteration_log(), or the same shape built
    from restart sets). k values with no executions are omitted.
    """
    logs = list(logs)
    if not logs:
        raise ValueError("no runs to aggregate")
    totals: dict[int, list[int]] = defaultdict(lambda: [0, 0])
    for log in logs:
        for k, counts in log.items():
            totals[k][0] += sum(counts)
            totals[k][1] += len(counts)
    return {k: t / c for k, (t, c) in sorted(totals.items()) if c > 0}
