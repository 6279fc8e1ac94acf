"""Dataset loading, normalization, and synthetic blob generation."""

from __future__ import annotations

import numpy as np

from .core import Dataset
from .seeding import make_rng

__all__ = [
    "ParseError",
    "EmptyDataset",
    "load_matrix",
    "minmax_normalize",
    "gen_gaussian_blobs",
]


class ParseError(ValueError):
    """A data row could not be parsed; carries the 1-based line number."""

    def __init__(self, row: int, message: str):
        self.row = row
        super().__init__(f"row {row}: {message}")


class EmptyDataset(ValueError):
    """The input contained no data rows."""


def load_matrix(path, delimiter: str | None = ",", has_header: bool = False,
                label_column: int | None = None) -> Dataset:
    """Parse a delimited numeric text file into a Dataset.

    delimiter=None splits on any whitespace. label_column (0-based, negative
    counts from the end) names a column to drop before numeric parsing, for
    files that ship class labels alongside the attributes. Rows with missing
    or non-numeric fields and rows of inconsistent width are rejected with
    their line number.
    """
    rows: list[list[float]] = []
    width = None
    skip_header = has_header
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            if skip_header:
                skip_header = False
                continue
            fields = line.split(delimiter)
            if label_column is not None:
                if not -len(fields) <= label_column < len(fields):
                    raise ParseError(lineno, f"no column {label_column} to drop in {len(fields)} fields")
                fields = list(fields)
                del fields[label_column]
            if width is None:
                width = len(fields)
            elif len(fields) != width:
                raise ParseError(lineno, f"expected {width} fields, got {len(fields)}")
            try:
                rows.append([float(tok) for tok in fields])
            except ValueError:
                bad = next(tok for tok in fields if not _is_number(tok))
                raise ParseError(lineno, f"non-numeric field {bad!r}") from None
    if not rows:
        raise EmptyDataset(f"no data rows in {path}")
    return Dataset(np.array(rows))


def _is_number(tok: str) -> bool:
    try:
        float(tok)
        return True
    except ValueError:
        return False


def minmax_normalize(dataset: Dataset) -> Dataset:
    """Affinely map every attribute onto [0, 1].

    Constant attributes map to 0 everywhere (their range is undefined).
    Idempotent: normalizing a normalized dataset changes nothing.
    """
    X = dataset.points
    lo = X.min(axis=0)
    span = X.max(axis=0) - lo
    safe = np.where(span > 0, span, 1.0)
    out = np.where(span > 0, (X - lo) / safe, 0.0)
    return Dataset(out)


def gen_gaussian_blobs(n_clusters: int, points_per_cluster: int, d: int = 2,
                       spread: float = 1.0, box: tuple[float, float] = (0.0, 10.0),
                       seed: int = 0):
    """Isotropic Gaussian clusters around centers drawn uniformly in a box.

    Returns (Dataset, true_labels). Deterministic for a given seed.
    """
    if n_clusters < 1 or points_per_cluster < 1 or d < 1:
        raise ValueError("all counts must be >= 1")
    if spread <= 0:
        raise ValueError("spread must be positive")
    lo, hi = box
    if not lo < hi:
        raise ValueError(f"box must satisfy lo < hi, got {box}")
    rng = make_rng(seed)
    centers = rng.uniform(lo, hi, size=(n_clusters, d))
    offsets = rng.normal(0.0, spread, size=(n_clusters, points_per_cluster, d))
    points = (centers[:, None, :] + offsets).reshape(-1, d)
    labels = np.repeat(np.arange(n_clusters), points_per_cluster)
    return Dataset(points), labels
