#!/usr/bin/env python3
"""Export the bundled scikit-learn copies of two small UCI tables to CSV.

Writes breast_cancer.csv (569 x 30) and wine.csv (178 x 13) without label
columns, ready for `gkmpp-bench --input`. scikit-learn ships these files,
so no network access is needed.

Usage: python scripts/export_uci.py [outdir]
"""

import sys
from pathlib import Path

import numpy as np
from sklearn.datasets import load_breast_cancer, load_wine


def main():
    outdir = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("data")
    outdir.mkdir(parents=True, exist_ok=True)
    for name, loader in [("breast_cancer", load_breast_cancer), ("wine", load_wine)]:
        data = loader()
        path = outdir / f"{name}.csv"
        np.savetxt(path, data.data, delimiter=",", fmt="%.17g")
        print(f"wrote {path}  ({data.data.shape[0]} x {data.data.shape[1]})")


if __name__ == "__main__":
    main()
