"""Benchmark harness: method sweeps over k and L, timing, and report emission.

Incremental methods run one sweep per (L, seed) cell and produce every
k = 1..K_max; the kmeanspp and random baselines re-run from scratch per k
with `restarts` independent seedings (defaulting to L, so the comparison
stays fair) and keep the per-k minimum.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, replace
from pathlib import Path
from statistics import fmean

from threadpoolctl import threadpool_limits

from .core import Dataset
from .evaluation import error_difference, percentage_error
from .incremental import SAMPLERS, IncrementalRun, fgkm, global_kmeans, global_kmeanspp
from .ingestion import gen_gaussian_blobs, load_matrix, minmax_normalize
from .lloyd import LloydConfig, run_lloyd
from .seeding import kmeanspp_seed, substream, uniform_seed

__all__ = [
    "METHODS",
    "INCREMENTAL_METHODS",
    "FileSpec",
    "BlobSpec",
    "ExperimentConfig",
    "ReportRow",
    "ExperimentReport",
    "load_source",
    "run_experiment",
    "emit_report",
    "parse_report",
]

METHODS = ("global", "gkmpp-batch", "gkmpp-seq", "fgkm", "kmeanspp", "random")
INCREMENTAL_METHODS = ("global", "gkmpp-batch", "gkmpp-seq", "fgkm")

# Fixed stream separation codes; changing these would change every sampled
# candidate sequence, so they are part of the reproducibility contract.
_METHOD_CODE = {m: i for i, m in enumerate(METHODS)}
_IMPLIED_SAMPLER = {"gkmpp-batch": "batch", "gkmpp-seq": "sequential"}

_CSV_HEADER = "method,L,seed,k,error,pe,err_diff,mean_iters,wall_ms"


@dataclass(frozen=True)
class FileSpec:
    """Delimited text input; see ingestion.load_matrix for the options."""

    path: str
    delimiter: str | None = ","
    has_header: bool = False
    label_column: int | None = None


@dataclass(frozen=True)
class BlobSpec:
    """Synthetic Gaussian blob input; see ingestion.gen_gaussian_blobs."""

    clusters: int = 15
    per_cluster: int = 40
    dim: int = 2
    spread: float = 0.4
    box: tuple[float, float] = (0.0, 10.0)
    seed: int = 0


def load_source(source) -> Dataset:
    if isinstance(source, FileSpec):
        return load_matrix(source.path, delimiter=source.delimiter,
                           has_header=source.has_header, label_column=source.label_column)
    if isinstance(source, BlobSpec):
        dataset, _ = gen_gaussian_blobs(source.clusters, source.per_cluster, source.dim,
                                        source.spread, source.box, source.seed)
        return dataset
    raise TypeError(f"unknown source type {type(source).__name__}")


@dataclass(frozen=True)
class ExperimentConfig:
    source: FileSpec | BlobSpec
    k_max: int
    methods: tuple[str, ...]
    l_values: tuple[int, ...] = (25,)
    normalize: str = "minmax"
    restarts: int | None = None
    seeds: tuple[int, ...] = (0,)
    tol: float = 1e-6
    max_iter: int = 300
    workers: int = 1
    sampler: str | None = None  # forces the sampler for gkmpp-* methods
    budget_seconds: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "methods", tuple(self.methods))
        object.__setattr__(self, "l_values", tuple(self.l_values))
        object.__setattr__(self, "seeds", tuple(self.seeds))
        if self.k_max < 2:
            raise ValueError("k_max must be >= 2")
        if not self.methods:
            raise ValueError("at least one method is required")
        unknown = [m for m in self.methods if m not in METHODS]
        if unknown:
            raise ValueError(f"unknown methods {unknown}; pick from {METHODS}")
        if not self.l_values or any(l < 1 for l in self.l_values):
            raise ValueError("every L must be >= 1")
        if not self.seeds:
            raise ValueError("at least one seed is required")
        if self.normalize not in ("minmax", "none"):
            raise ValueError(f"normalize must be 'minmax' or 'none', got {self.normalize!r}")
        if self.sampler is not None and self.sampler not in SAMPLERS:
            raise ValueError(f"sampler must be one of {SAMPLERS}, got {self.sampler!r}")
        if self.restarts is not None and self.restarts < 1:
            raise ValueError("restarts must be >= 1 when given")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")


@dataclass(frozen=True)
class ReportRow:
    method: str
    L: int
    seed: int
    k: int
    error: float
    pe: float | None
    err_diff: float
    mean_iters: float
    wall_ms: float


@dataclass(frozen=True)
class ExperimentReport:
    """One row per (method, L, seed, k), plus per-cell sweep wall times."""

    rows: tuple[ReportRow, ...]
    sweep_ms: tuple[tuple[tuple[str, int, int], float], ...] = ()

    @property
    def sweep_times(self) -> dict[tuple[str, int, int], float]:
        return dict(self.sweep_ms)

    def without_timing(self) -> "ExperimentReport":
        """Copy with wall-clock fields zeroed.

        Timing is the one physically non-reproducible part of a run, so
        byte-level report comparisons use this canonical form.
        """
        rows = tuple(replace(r, wall_ms=0.0) for r in self.rows)
        return ExperimentReport(rows=rows, sweep_ms=tuple((key, 0.0) for key, _ in self.sweep_ms))


def _effective_sampler(method: str, config: ExperimentConfig) -> str:
    return config.sampler or _IMPLIED_SAMPLER[method]


def _baseline_method(config: ExperimentConfig) -> str | None:
    """The method whose error anchors the PE column.

    Full enumeration when present; otherwise a gkmpp method forced onto the
    exhaustive sampler reproduces it exactly and serves instead.
    """
    if "global" in config.methods:
        return "global"
    for m in config.methods:
        if m in _IMPLIED_SAMPLER and _effective_sampler(m, config) == "exhaustive":
            return m
    return None


def _run_incremental(dataset: Dataset, method: str, L: int, seed: int,
                     cfg: LloydConfig, config: ExperimentConfig) -> IncrementalRun:
    budget = config.budget_seconds
    if method == "global":
        return global_kmeans(dataset, config.k_max, cfg,
                             workers=config.workers, budget_s=budget)
    if method == "fgkm":
        return fgkm(dataset, config.k_max, L, cfg,
                    workers=config.workers, budget_s=budget)
    rng = substream(seed, _METHOD_CODE[method], L)
    return global_kmeanspp(dataset, config.k_max, L,
                           sampler=_effective_sampler(method, config), rng=rng,
                           lloyd_cfg=cfg, workers=config.workers, budget_s=budget)


def _run_baseline(dataset: Dataset, method: str, L: int, seed: int,
                  cfg: LloydConfig, config: ExperimentConfig):
    """Cold-start restarts per k; returns per-k (k, error, mean_iters, wall_ms)."""
    seeder = kmeanspp_seed if method == "kmeanspp" else uniform_seed
    restarts = config.restarts if config.restarts is not None else L
    started = time.perf_counter()
    out = []
    for k in range(1, config.k_max + 1):
        t0 = time.perf_counter()
        best = None
        iters = []
        for r in range(restarts):
            try:
                rng = substream(seed, _METHOD_CODE[method], L, k, r)
                sol = run_lloyd(dataset, seeder(dataset, k, rng), cfg)
            except Exception as e:
                raise RuntimeError(f"k={k} restart={r} failed") from e
            iters.append(sol.iterations)
            if best is None or sol.error < best:
                best = sol.error
        out.append((k, best, fmean(iters), (time.perf_counter() - t0) * 1000.0))
        if config.budget_seconds is not None and \
                time.perf_counter() - started > config.budget_seconds:
            break
    return out


def _run_cell(dataset: Dataset, method: str, L: int, seed: int,
              cfg: LloydConfig, config: ExperimentConfig):
    if method in INCREMENTAL_METHODS:
        run = _run_incremental(dataset, method, L, seed, cfg, config)
        out = []
        for i, sol in enumerate(run.solutions):
            iters = run.lloyd_iterations[i]
            out.append((i + 1, sol.error, fmean(iters) if iters else 0.0, run.wall_ms[i]))
        return out
    return _run_baseline(dataset, method, L, seed, cfg, config)


def run_experiment(config: ExperimentConfig) -> ExperimentReport:
    """Run every configured (method, L, seed) cell and assemble the report.

    BLAS pools are pinned to one thread for the duration, so numerical
    results are identical for any worker count; candidate-level parallelism
    inside the incremental methods uses config.workers threads.
    """
    dataset = load_source(config.source)
    if config.normalize == "minmax":
        dataset = minmax_normalize(dataset)
    if config.k_max > dataset.n:
        raise ValueError(f"k_max={config.k_max} exceeds the dataset size N={dataset.n}")
    cfg = LloydConfig(tol=config.tol, max_iter=config.max_iter)
    cells = []
    sweep_ms = []
    with threadpool_limits(limits=1, user_api="blas"):
        for method in config.methods:
            for L in config.l_values:
                for seed in config.seeds:
                    t0 = time.perf_counter()
                    try:
                        per_k = _run_cell(dataset, method, L, seed, cfg, config)
                    except Exception as e:
                        raise RuntimeError(
                            f"experiment cell failed: method={method} L={L} seed={seed}") from e
                    sweep_ms.append(((method, L, seed), (time.perf_counter() - t0) * 1000.0))
                    cells.append((method, L, seed, per_k))
    return ExperimentReport(rows=tuple(_assemble_rows(cells, config)), sweep_ms=tuple(sweep_ms))


def _assemble_rows(cells, config: ExperimentConfig):
    best_at: dict[tuple[int, int, int], float] = {}
    for method, L, seed, per_k in cells:
        for k, err, _, _ in per_k:
            key = (L, seed, k)
            best_at[key] = min(best_at.get(key, err), err)
    base = _baseline_method(config)
    base_err: dict[int, float] = {}
    if base is not None:
        for method, L, seed, per_k in cells:
            if method == base:
                for k, err, _, _ in per_k:
                    base_err[k] = min(base_err.get(k, err), err)
    rows = []
    for method, L, seed, per_k in cells:
        for k, err, mean_iters, wall in per_k:
            pe = None
            if k in base_err and base_err[k] > 0:
                pe = percentage_error(err, base_err[k])
            rows.append(ReportRow(method=method, L=L, seed=seed, k=k, error=err, pe=pe,
                                  err_diff=error_difference(err, best_at[(L, seed, k)]),
                                  mean_iters=mean_iters, wall_ms=wall))
    return rows


def _sig9(x: float) -> str:
    return f"{x:.9g}"


def emit_report(report: ExperimentReport, format: str, path) -> None:
    """Write the report rows to path.

    CSV uses the pinned header and field order, with error-scale fields at
    nine significant digits. JSON is an array of row objects with the same
    field names at full float precision.
    """
    path = Path(path)
    if format == "csv":
        lines = [_CSV_HEADER]
        for r in report.rows:
            pe = "" if r.pe is None else _sig9(r.pe)
            lines.append(f"{r.method},{r.L},{r.seed},{r.k},{_sig9(r.error)},{pe},"
                         f"{_sig9(r.err_diff)},{_sig9(r.mean_iters)},{r.wall_ms:.3f}")
        text = "\n".join(lines) + "\n"
    elif format == "json":
        payload = [
            {"method": r.method, "L": r.L, "seed": r.seed, "k": r.k, "error": r.error,
             "pe": r.pe, "err_diff": r.err_diff, "mean_iters": r.mean_iters,
             "wall_ms": r.wall_ms}
            for r in report.rows
        ]
        text = json.dumps(payload, indent=2) + "\n"
    else:
        raise ValueError(f"unknown format {format!r}; use 'csv' or 'json'")
    try:
        path.write_text(text, encoding="utf-8", newline="\n")
    except OSError as e:
        raise OSError(f"cannot write report to {path}: {e}") from e


def parse_report(path, format: str) -> ExperimentReport:
    """Read rows back from a file written by emit_report (sweep times are
    not serialized, so the parsed report carries none)."""
    path = Path(path)
    if format == "csv":
        lines = path.read_text(encoding="utf-8").splitlines()
        if not lines or lines[0] != _CSV_HEADER:
            raise ValueError(f"{path} does not start with the report header")
        rows = []
        for line in lines[1:]:
            f = line.split(",")
            if len(f) != 9:
                raise ValueError(f"malformed report line: {line!r}")
            rows.append(ReportRow(method=f[0], L=int(f[1]), seed=int(f[2]), k=int(f[3]),
                                  error=float(f[4]), pe=None if f[5] == "" else float(f[5]),
                                  err_diff=float(f[6]), mean_iters=float(f[7]),
                                  wall_ms=float(f[8])))
        return ExperimentReport(rows=tuple(rows))
    if format == "json":
        payload = json.loads(path.read_text(encoding="utf-8"))
        rows = [ReportRow(method=r["method"], L=r["L"], seed=r["seed"], k=r["k"],
                          error=r["error"], pe=r["pe"], err_diff=r["err_diff"],
                          mean_iters=r["mean_iters"], wall_ms=r["wall_ms"])
                for r in payload]
        return ExperimentReport(rows=tuple(rows))
    raise ValueError(f"unknown format {format!r}; use 'csv' or 'json'")
