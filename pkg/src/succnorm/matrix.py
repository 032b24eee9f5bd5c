"""Dense matrix validation, per-line statistics and distances.

A matrix is a two-dimensional ``float64`` :class:`numpy.ndarray`.  Statistics
use the population divisor (number of entries in the line), never ``n - 1``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError, ShapeMismatchError


class Axis(enum.Enum):
    """Which family of lines an operation acts on."""

    ROWS = "rows"
    COLUMNS = "columns"

    @property
    def reduce_axis(self) -> int:
        # row statistics reduce over the column index and vice versa; negative
        # indices let the same code run on stacks of matrices
        return -1 if self is Axis.ROWS else -2

    @property
    def other(self) -> "Axis":
        return Axis.COLUMNS if self is Axis.ROWS else Axis.ROWS


def as_matrix(values) -> np.ndarray:
    """Validate ``values`` and return them as a read-only 2-D float array.

    Raises
    ------
    InvalidInputError
        If the input is not two-dimensional, is empty, or holds NaN/inf.
    """
    try:
        arr = np.array(values, dtype=np.float64)
    except (TypeError, ValueError) as exc:
        raise InvalidInputError(f"not a numeric matrix: {exc}") from exc
    if arr.ndim != 2:
        raise InvalidInputError(f"expected a 2-D array, got {arr.ndim} dimension(s)")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise InvalidInputError(f"matrix must have at least one row and column, got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        bad = tuple(int(i) for i in np.argwhere(~np.isfinite(arr))[0])
        raise InvalidInputError(f"non-finite entry at {bad}")
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class RowColumnStats:
    means: np.ndarray
    std_devs: np.ndarray
    axis: Axis

    def __len__(self):
        return len(self.means)


def _line_stats(m: np.ndarray, axis: Axis) -> tuple[np.ndarray, np.ndarray]:
    ax = axis.reduce_axis
    means = m.mean(axis=ax, keepdims=True)
    dev = m - means
    # two-pass variance keeps cancellation in check for offset data
    var = (dev * dev).mean(axis=ax)
    return np.squeeze(means, axis=ax), np.sqrt(var)


def row_stats(m) -> RowColumnStats:
    """Mean and population standard deviation of every row."""
    m = np.asarray(m, dtype=np.float64)
    means, stds = _line_stats(m, Axis.ROWS)
    return RowColumnStats(means, stds, Axis.ROWS)


def column_stats(m) -> RowColumnStats:
    """Mean and population standard deviation of every column."""
    m = np.asarray(m, dtype=np.float64)
    means, stds = _line_stats(m, Axis.COLUMNS)
    return RowColumnStats(means, stds, Axis.COLUMNS)


def line_stats(m, axis: Axis) -> RowColumnStats:
    return row_stats(m) if axis is Axis.ROWS else column_stats(m)


def squared_frobenius_diff(a, b) -> float:
    """Sum of squared entrywise differences between two same-shaped matrices."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise ShapeMismatchError(a.shape, b.shape)
    d = a - b
    return float(np.dot(d.ravel(), d.ravel()))
