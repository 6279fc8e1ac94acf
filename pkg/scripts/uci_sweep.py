#!/usr/bin/env python3
"""Error-versus-k protocol on the two small UCI tables.

Exports the bundled copies if needed, min-max normalizes, and runs the full
enumeration baseline plus the sampled sweeps for one L. The wine table
(178 x 13) takes seconds; breast cancer (569 x 30) a few minutes because of
the full enumeration baseline.

Usage: python scripts/uci_sweep.py [--dataset wine|breast_cancer] [--candidates 25]
"""

import argparse
import subprocess
import sys
from pathlib import Path

from gkmpp import ExperimentConfig, FileSpec, emit_report, run_experiment


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--dataset", choices=("wine", "breast_cancer"), default="wine")
    ap.add_argument("--candidates", type=int, default=25)
    ap.add_argument("--k-max", type=int, default=30)
    ap.add_argument("--seeds", type=str, default="0,1,2")
    ap.add_argument("--out", type=str, default=None)
    args = ap.parse_args()

    csv = Path("data") / f"{args.dataset}.csv"
    if not csv.exists():
        subprocess.run([sys.executable, str(Path(__file__).parent / "export_uci.py"),
                        "data"], check=True)

    config = ExperimentConfig(
        source=FileSpec(path=str(csv)),
        k_max=args.k_max,
        methods=("global", "gkmpp-batch", "gkmpp-seq", "fgkm", "kmeanspp", "random"),
        l_values=(args.candidates,),
        seeds=tuple(int(s) for s in args.seeds.split(",")),
        normalize="minmax",
    )
    report = run_experiment(config)
    out = args.out or f"{args.dataset}_report.csv"
    emit_report(report, "csv", out)
    print(f"wrote {len(report.rows)} rows to {out}")
    for (method, L, seed), ms in report.sweep_ms:
        print(f"  {method:<12} L={L:<4} seed={seed:<3} {ms / 1000:7.2f}s")


if __name__ == "__main__":
    main()
