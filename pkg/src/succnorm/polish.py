"""Mean polish, standard-deviation polish and their composition.

Every primitive returns a fresh array and accepts either a single matrix or a
stack of matrices with shape ``(..., n_rows, n_cols)``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateAxisError, DimensionGateError
from .matrix import Axis

#: A line whose std falls below this multiple of its scale is treated as constant.
DEGENERACY_RTOL = 1e-13


class Mode(enum.Enum):
    FULL = "full"
    MEAN_ONLY = "mean-only"

    @property
    def min_dimension(self) -> int:
        return 3 if self is Mode.FULL else 1


class PolishKind(enum.Enum):
    MEAN = "mean"
    STD = "std"
    STANDARDIZE = "standardize"


@dataclass(frozen=True)
class PolishStep:
    axis: Axis
    kind: PolishKind

    def apply(self, m):
        if self.kind is PolishKind.MEAN:
            return mean_polish(m, self.axis)
        if self.kind is PolishKind.STD:
            return std_polish(m, self.axis)
        return standardize(m, self.axis)


def mean_polish(m, axis: Axis) -> np.ndarray:
    """Subtract from every entry the mean of its line along ``axis``."""
    m = np.asarray(m, dtype=np.float64)
    return m - m.mean(axis=axis.reduce_axis, keepdims=True)


def _population_std(m: np.ndarray, axis: Axis) -> np.ndarray:
    ax = axis.reduce_axis
    dev = m - m.mean(axis=ax, keepdims=True)
    return np.sqrt((dev * dev).mean(axis=ax, keepdims=True))


def _degenerate_mask(m: np.ndarray, std: np.ndarray, axis: Axis) -> np.ndarray:
    scale = np.maximum(np.abs(m).max(axis=axis.reduce_axis, keepdims=True), 1.0)
    return std < DEGENERACY_RTOL * scale


def degenerate_lines(m, axis: Axis) -> np.ndarray:
    """Boolean mask of lines along ``axis`` whose std is (numerically) zero.

    The mask keeps the reduced dimension squeezed out, so for a single
    ``n x k`` matrix and ``Axis.ROWS`` it has length ``n``.
    """
    m = np.asarray(m, dtype=np.float64)
    std = _population_std(m, axis)
    return np.squeeze(_degenerate_mask(m, std, axis), axis=axis.reduce_axis)


def _raise_degenerate(mask: np.ndarray, std: np.ndarray, axis: Axis):
    flat = np.squeeze(mask, axis=axis.reduce_axis)
    first = np.argwhere(flat)[0]
    # report the line index within its matrix, not the stack position
    idx = int(first[-1])
    raise DegenerateAxisError(axis, idx, np.squeeze(std, axis=axis.reduce_axis)[tuple(first)])


def std_polish(m, axis: Axis) -> np.ndarray:
    """Divide every entry by the population std of its line along ``axis``.

    Raises
    ------
    DegenerateAxisError
        If some line has zero spread (below the degeneracy floor).
    """
    m = np.asarray(m, dtype=np.float64)
    std = _population_std(m, axis)
    mask = _degenerate_mask(m, std, axis)
    if mask.any():
        _raise_degenerate(mask, std, axis)
    return m / std


def standardize(m, axis: Axis) -> np.ndarray:
    """Mean polish then std polish along the same axis.

    Afterwards every line along ``axis`` has mean 0 and population std 1, so
    each line lies on the sphere of squared radius equal to its length.
    """
    return std_polish(mean_polish(m, axis), axis)


def check_dimensions(m, mode: Mode) -> None:
    """Refuse shapes for which ``mode`` is not well defined.

    Full normalization needs ``min(n_rows, n_cols) >= 3``; mean-only
    polishing works on any non-empty matrix.
    """
    shape = np.shape(m)[-2:]
    if min(shape) < mode.min_dimension:
        raise DimensionGateError(mode.min_dimension, shape, mode)
