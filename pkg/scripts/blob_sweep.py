#!/usr/bin/env python3
"""Quality-versus-k comparison on a synthetic 15-blob set.

Runs the full enumeration baseline once, then the sampled sweep and the two
restart baselines for several seeds, and prints the percentage error of
each method against the baseline per k, plus total sweep times. This is the
desk-scale version of the error-vs-k benchmark; expect a couple of minutes.

Usage: python scripts/blob_sweep.py [--candidates 25] [--seeds 0,1,2,3,4]
"""

import argparse
import time

import numpy as np

from gkmpp import (BlobSpec, ExperimentConfig, load_source, percentage_error,
                   run_experiment)

SOURCE = BlobSpec(clusters=15, per_cluster=40, dim=2, spread=0.45,
                  box=(0.0, 10.0), seed=515)
K_MAX = 30


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--candidates", type=int, default=25)
    ap.add_argument("--seeds", type=str, default="0,1,2,3,4")
    args = ap.parse_args()
    seeds = tuple(int(s) for s in args.seeds.split(","))
    L = args.candidates

    ds = load_source(SOURCE)
    print(f"dataset: {ds.n} points in {ds.d}-d, K_max={K_MAX}, L={L}, "
          f"{len(seeds)} seeds")

    t0 = time.perf_counter()
    base = run_experiment(ExperimentConfig(
        source=SOURCE, k_max=K_MAX, methods=("global",), l_values=(L,),
        seeds=(0,), normalize="none"))
    base_err = {r.k: r.error for r in base.rows}
    print(f"full enumeration sweep: {time.perf_counter() - t0:.1f}s")

    methods = ("gkmpp-batch", "gkmpp-seq", "fgkm", "kmeanspp", "random")
    report = run_experiment(ExperimentConfig(
        source=SOURCE, k_max=K_MAX, methods=methods, l_values=(L,),
        seeds=seeds, normalize="none"))

    print(f"\nmean percentage error vs full enumeration (over {len(seeds)} seeds)")
    header = "  k  " + "".join(f"{m:>13}" for m in methods)
    print(header)
    for k in range(2, K_MAX + 1):
        cells = []
        for m in methods:
            pes = [percentage_error(r.error, base_err[k])
                   for r in report.rows if r.method == m and r.k == k]
            cells.append(f"{np.mean(pes):13.3f}")
        print(f"{k:3d}  " + "".join(cells))

    print("\nsweep seconds per (method, seed):")
    for (method, L_, seed), ms in report.sweep_ms:
        print(f"  {method:<12} L={L_:<4} seed={seed:<3} {ms / 1000:7.2f}s")


if __name__ == "__main__":
    main()
