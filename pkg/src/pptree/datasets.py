"""Dataset container and delimited-file round trip.

A dataset is an (n, p) float matrix plus integer class labels. Labels read
from disk are re-indexed to 1..G in order of first appearance; the original
label strings are kept around for reference.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np

from .errors import CsvFormatError


@dataclass(frozen=True)
class Dataset:
    """Feature matrix with integer class labels.

    X is (n, p) float64, y is (n,) int64 with values >= 1. `label_names`
    optionally maps class id g to the label string it replaced (index g-1).
    """

    X: np.ndarray
    y: np.ndarray
    label_names: tuple[str, ...] | None = field(default=None)

    def __post_init__(self):
        X = np.asarray(self.X, dtype=np.float64)
        y = np.asarray(self.y)
        if X.ndim != 2 or X.shape[0] < 1:
            raise ValueError("X must be a non-empty 2-D array")
        if y.shape != (X.shape[0],):
            raise ValueError(
                f"label vector has length {y.shape}, expected ({X.shape[0]},)"
            )
        if not np.all(np.isfinite(X)):
            raise ValueError("X contains non-finite values")
        if not np.issubdtype(y.dtype, np.integer):
            yi = y.astype(np.int64)
            if not np.array_equal(yi, y):
                raise ValueError("labels must be integers")
            y = yi
        if y.min() < 1:
            raise ValueError("class labels must be >= 1")
        X.setflags(write=False)
        y = y.astype(np.int64)
        y.setflags(write=False)
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "y", y)

    @property
    def n(self) -> int:
        return self.X.shape[0]

    @property
    def p(self) -> int:
        return self.X.shape[1]

    @property
    def classes(self) -> np.ndarray:
        """Sorted distinct class ids present in y."""
        return np.unique(self.y)

    @property
    def n_classes(self) -> int:
        return len(np.unique(self.y))


def save_csv(data: Dataset, path: str) -> None:
    """Write a dataset as CSV with header x1,...,xp,label.

    Floats are written with repr so a re-load reproduces them exactly.
    """
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow([f"x{j + 1}" for j in range(data.p)] + ["label"])
        for i in range(data.n):
            w.writerow([repr(float(v)) for v in data.X[i]] + [int(data.y[i])])


def load_csv(path: str, label_column: str = "label") -> Dataset:
    """Read a delimited dataset.

    All columns except `label_column` are parsed as float features, in header
    order. Labels may be arbitrary strings; they are re-indexed to 1..G in
    order of first appearance. Malformed cells raise CsvFormatError naming the
    row and column.
    """
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows:
        raise CsvFormatError(f"{path}: file is empty")
    header = [h.strip() for h in rows[0]]
    if label_column not in header:
        raise CsvFormatError(f"{path}: no column named {label_column!r} in header")
    label_idx = header.index(label_column)
    feat_idx = [j for j in range(len(header)) if j != label_idx]
    if not feat_idx:
        raise CsvFormatError(f"{path}: no feature columns besides the label")

    X = np.empty((len(rows) - 1, len(feat_idx)))
    raw_labels = []
    for i, row in enumerate(rows[1:], start=2):
        if len(row) != len(header):
            raise CsvFormatError(
                f"{path}: row {i} has {len(row)} cells, header has {len(header)}"
            )
        for k, j in enumerate(feat_idx):
            try:
                v = float(row[j])
            except ValueError:
                raise CsvFormatError(
                    f"{path}: non-numeric value {row[j]!r} at row {i}, "
                    f"column {header[j]!r}"
                ) from None
            if not np.isfinite(v):
                raise CsvFormatError(
                    f"{path}: non-finite value at row {i}, column {header[j]!r}"
                )
            X[i - 2, k] = v
        raw_labels.append(row[label_idx].strip())
    if X.shape[0] == 0:
        raise CsvFormatError(f"{path}: no data rows")

    seen: dict[str, int] = {}
    y = np.empty(len(raw_labels), dtype=np.int64)
    for i, lab in enumerate(raw_labels):
        if lab not in seen:
            seen[lab] = len(seen) + 1
        y[i] = seen[lab]
    return Dataset(X, y, label_names=tuple(seen))
