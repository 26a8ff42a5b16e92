"""Weighted samples and their CSV representation."""

from __future__ import annotations

import csv
import numpy as np

__all__ = ["Sample", "sample_from_csv", "sample_to_csv", "format_float"]

# 17 significant digits round-trips every 64-bit float.
_FLOAT_FMT = "%.17g"


def format_float(v: float) -> str:
    return _FLOAT_FMT % v


class Sample:
    """n points in d dimensions with a probability weight vector.

    Weights are normalized to sum to 1 on construction; the multiplicative
    correction that was applied is recorded in weight_correction.  Arrays are
    marked read-only so a sample can be shared freely.
    """

    __slots__ = ("points", "weights", "weight_correction")

    def __init__(self, points, weights=None):
        points = np.atleast_2d(np.asarray(points, dtype=float))
        if points.shape[0] < 1:
            raise ValueError("a sample needs at least one point")
        if not np.all(np.isfinite(points)):
            raise ValueError("sample points must be finite")
        n = points.shape[0]
        if weights is None:
            weights = np.full(n, 1.0 / n)
        else:
            weights = np.asarray(weights, dtype=float).ravel().copy()
            if weights.shape != (n,):
                raise ValueError(f"{n} points but weight vector of shape {weights.shape}")
            if not np.all(np.isfinite(weights)):
                raise ValueError("weights must be finite")
            if np.any(weights < 0):
                raise ValueError("weights must be nonnegative")
        total = float(weights.sum())
        if total <= 0:
            raise ValueError("weights must have positive total mass")
        self.weight_correction = total - 1.0
        weights = weights / total
        points = points.copy()
        points.setflags(write=False)
        weights.setflags(write=False)
        self.points = points
        self.weights = weights

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    def is_uniform(self, tol: float = 1e-12) -> bool:
        return bool(np.max(np.abs(self.weights - 1.0 / self.n)) <= tol)

    def __repr__(self):
        return f"Sample(n={self.n}, d={self.dim})"


def sample_from_csv(path, weighted: bool = False) -> Sample:
    """Read one point per row; with weighted=True the last column is the weight.

    A single non-numeric first row is treated as a header and skipped.
    """
    rows = []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        for i, rec in enumerate(reader):
            if not rec:
                continue
            try:
                rows.append([float(v) for v in rec])
            except ValueError:
                if i == 0:
                    continue
                raise ValueError(f"non-numeric row {i + 1} in {path}")
    if not rows:
        raise ValueError(f"no data rows in {path}")
    data = np.asarray(rows, dtype=float)
    if weighted:
        if data.shape[1] < 2:
            raise ValueError("weighted CSV needs at least one point column plus the weight")
        return Sample(data[:, :-1], data[:, -1])
    return Sample(data)


def sample_to_csv(sample: Sample, path, weighted: bool = False) -> None:
    """Write points (optionally with a trailing weight column) at full precision."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        for i in range(sample.n):
            row = [format_float(v) for v in sample.points[i]]
            if weighted:
                row.append(format_float(sample.weights[i]))
            writer.writerow(row)
