"""Command-line benchmark harness.

Example:
    gkmpp-bench --blobs clusters=15,per=40,dim=2,spread=0.4,seed=7 \\
        --k-max 30 --methods global,gkmpp-batch --candidates 25 \\
        --seeds 0,1,2 --out report.csv
"""

from __future__ import annotations

import argparse
import sys

from .bench import (METHODS, BlobSpec, ExperimentConfig, FileSpec, emit_report,
                    run_experiment)
from .incremental import SAMPLERS

_BLOB_KEYS = ("clusters", "per", "dim", "spread", "box", "seed")


def parse_blob_spec(text: str) -> BlobSpec:
    """Parse 'clusters=15,per=40,dim=2,spread=0.4,box=0:10,seed=0'.

    Every key is optional; unknown keys are rejected.
    """
    kwargs = {}
    for part in filter(None, (p.strip() for p in text.split(","))):
        if "=" not in part:
            raise ValueError(f"blob spec entries look like key=value, got {part!r}")
        key, value = part.split("=", 1)
        if key not in _BLOB_KEYS:
            raise ValueError(f"unknown blob key {key!r}; known keys: {', '.join(_BLOB_KEYS)}")
        kwargs[key] = value
    spec = {}
    if "clusters" in kwargs:
        spec["clusters"] = int(kwargs["clusters"])
    if "per" in kwargs:
        spec["per_cluster"] = int(kwargs["per"])
    if "dim" in kwargs:
        spec["dim"] = int(kwargs["dim"])
    if "spread" in kwargs:
        spec["spread"] = float(kwargs["spread"])
    if "box" in kwargs:
        lo, _, hi = kwargs["box"].partition(":")
        spec["box"] = (float(lo), float(hi))
    if "seed" in kwargs:
        spec["seed"] = int(kwargs["seed"])
    return BlobSpec(**spec)


def _int_list(text: str) -> tuple[int, ...]:
    return tuple(int(p) for p in text.split(",") if p.strip())


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="gkmpp-bench",
        description="Sweep clustering methods over k and emit an error/timing report.")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", metavar="PATH", help="delimited numeric text file")
    src.add_argument("--blobs", metavar="SPEC", help="synthetic blob spec, e.g. clusters=15,per=40")
    p.add_argument("--delimiter", default=",",
                   help="field delimiter for --input; 'ws' splits on whitespace (default ,)")
    p.add_argument("--has-header", action="store_true", help="skip the first line of --input")
    p.add_argument("--label-column", type=int, default=None,
                   help="0-based column of --input to drop (negative counts from the end)")
    p.add_argument("--normalize", choices=("minmax", "none"), default="minmax")
    p.add_argument("--k-max", type=int, required=True, help="largest cluster count to solve")
    p.add_argument("--methods", type=str, required=True,
                   help="comma list from: " + ",".join(METHODS))
    p.add_argument("--candidates", type=_int_list, default=(25,), metavar="LIST",
                   help="comma list of L values (default 25)")
    p.add_argument("--restarts", type=int, default=None,
                   help="restarts for kmeanspp/random baselines (default: L)")
    p.add_argument("--seeds", type=_int_list, default=(0,), metavar="LIST",
                   help="comma list of seeds (default 0)")
    p.add_argument("--tol", type=float, default=1e-6, help="Lloyd relative-improvement tolerance")
    p.add_argument("--max-iter", type=int, default=300, help="Lloyd iteration cap")
    p.add_argument("--workers", type=int, default=1, help="candidate-level worker threads")
    p.add_argument("--sampler", choices=SAMPLERS, default=None,
                   help="force the sampler for gkmpp-* methods")
    p.add_argument("--budget-seconds", type=float, default=None,
                   help="soft per-method time cap; sweeps truncate gracefully")
    p.add_argument("--out", metavar="PATH", required=True, help="report output path")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    return p


def config_from_args(args) -> ExperimentConfig:
    if args.input is not None:
        delimiter = None if args.delimiter == "ws" else args.delimiter
        source = FileSpec(path=args.input, delimiter=delimiter,
                          has_header=args.has_header, label_column=args.label_column)
    else:
        source = parse_blob_spec(args.blobs)
    return ExperimentConfig(
        source=source,
        k_max=args.k_max,
        methods=tuple(m.strip() for m in args.methods.split(",") if m.strip()),
        l_values=args.candidates,
        normalize=args.normalize,
        restarts=args.restarts,
        seeds=args.seeds,
        tol=args.tol,
        max_iter=args.max_iter,
        workers=args.workers,
        sampler=args.sampler,
        budget_seconds=args.budget_seconds,
    )


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = config_from_args(args)
        report = run_experiment(config)
        emit_report(report, args.format, args.out)
    except Exception as e:
        print(f"gkmpp-bench: error: {e}", file=sys.stderr)
        cause = e.__cause__
        while cause is not None:
            print(f"  caused by: {cause}", file=sys.stderr)
            cause = cause.__cause__
        return 1
    for (method, L, seed), ms in report.sweep_ms:
        print(f"{method:<12} L={L:<4} seed={seed:<6} sweep {ms / 1000.0:9.3f}s", file=sys.stderr)
    print(f"wrote {len(report.rows)} rows to {args.out}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
