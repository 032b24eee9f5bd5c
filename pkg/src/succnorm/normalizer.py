"""Alternating row/column standardization until successive iterates agree."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

from .errors import ConfigError, DegenerateAxisError
from .matrix import Axis, as_matrix, squared_frobenius_diff
from .polish import Mode, check_dimensions, mean_polish, standardize


class Orientation(enum.Enum):
    ROW_FIRST = "row-first"
    COLUMN_FIRST = "column-first"

    @property
    def axes(self) -> tuple[Axis, Axis]:
        if self is Orientation.ROW_FIRST:
            return Axis.ROWS, Axis.COLUMNS
        return Axis.COLUMNS, Axis.ROWS


class Status(enum.Enum):
    CONVERGED = "converged"
    MAX_ITERATIONS_REACHED = "max-iterations-reached"
    DEGENERATE = "degenerate"
    DIMENSION_GATE = "dimension-gate"


@dataclass(frozen=True)
class NormalizeConfig:
    """Settings for :func:`run`.

    ``tolerance`` bounds the *squared* Frobenius distance between consecutive
    full iterations.
    """

    orientation: Orientation = Orientation.COLUMN_FIRST
    mode: Mode = Mode.FULL
    tolerance: float = 1e-8
    max_iterations: int = 1000
    capture_snapshots: bool = False

    def __post_init__(self):
        if not isinstance(self.orientation, Orientation):
            object.__setattr__(self, "orientation", Orientation(self.orientation))
        if not isinstance(self.mode, Mode):
            object.__setattr__(self, "mode", Mode(self.mode))
        if not (self.tolerance > 0 and math.isfinite(self.tolerance)):
            raise ConfigError(f"tolerance must be a positive finite number, got {self.tolerance}")
        if int(self.max_iterations) != self.max_iterations or self.max_iterations < 1:
            raise ConfigError(f"max_iterations must be a positive integer, got {self.max_iterations}")

    def to_dict(self) -> dict:
        return {
            "orientation": self.orientation.value,
            "mode": self.mode.value,
            "tolerance": self.tolerance,
            "max_iterations": int(self.max_iterations),
            "capture_snapshots": self.capture_snapshots,
        }


@dataclass(frozen=True)
class IterationRecord:
    index: int
    step_diff_sq: float
    sign_changes: int
    snapshot: Optional[np.ndarray] = field(default=None, repr=False, compare=False)

    @property
    def log_step_diff(self) -> float:
        """Natural log of ``step_diff_sq``; ``-inf`` when the step was exactly zero."""
        return math.log(self.step_diff_sq) if self.step_diff_sq > 0 else -math.inf


@dataclass(frozen=True)
class NormalizationOutcome:
    final: np.ndarray
    status: Status
    trace: tuple[IterationRecord, ...]
    config: NormalizeConfig
    error: Optional[DegenerateAxisError] = None

    @property
    def iterations(self) -> int:
        return len(self.trace)

    @property
    def config_echo(self) -> NormalizeConfig:
        return self.config

    @property
    def converged(self) -> bool:
        return self.status is Status.CONVERGED

    @property
    def step_diffs(self) -> list[float]:
        return [r.step_diff_sq for r in self.trace]


def step(m, orientation: Orientation = Orientation.COLUMN_FIRST, mode: Mode = Mode.FULL) -> np.ndarray:
    """Apply one full iteration: both polishes on the first axis, then the second."""
    first, second = Orientation(orientation).axes
    op = standardize if Mode(mode) is Mode.FULL else mean_polish
    return op(op(m, first), second)


def _count_sign_changes(prev: np.ndarray, cur: np.ndarray) -> int:
    return int(np.count_nonzero(np.sign(prev) != np.sign(cur)))


def run(m, cfg: Optional[NormalizeConfig] = None) -> NormalizationOutcome:
    """Iterate :func:`step` until the squared step difference drops below tolerance.

    The first recorded difference is measured against the input itself.  A
    line that becomes degenerate mid-run stops the iteration with status
    ``DEGENERATE``; the trace up to that point is kept and ``final`` holds the
    last well-defined iterate.

    Raises
    ------
    InvalidInputError
        Non-finite or non-2-D input.
    DimensionGateError
        Shape too small for ``cfg.mode``.
    """
    cfg = cfg or NormalizeConfig()
    x = as_matrix(m)
    check_dimensions(x, cfg.mode)

    prev = x
    trace: list[IterationRecord] = []
    status = Status.MAX_ITERATIONS_REACHED
    error = None
    for index in range(1, cfg.max_iterations + 1):
        try:
            cur = step(prev, cfg.orientation, cfg.mode)
        except DegenerateAxisError as exc:
            status, error = Status.DEGENERATE, exc
            break
        cur.flags.writeable = False
        diff = squared_frobenius_diff(cur, prev)
        trace.append(
            IterationRecord(
                index=index,
                step_diff_sq=diff,
                sign_changes=_count_sign_changes(prev, cur),
                snapshot=cur if cfg.capture_snapshots else None,
            )
        )
        prev = cur
        if diff < cfg.tolerance:
            status = Status.CONVERGED
            break
    return NormalizationOutcome(final=prev, status=status, trace=tuple(trace), config=cfg, error=error)


def run_mean_only(m, cfg: Optional[NormalizeConfig] = None) -> NormalizationOutcome:
    """Run with only mean polishing; a single iteration already centers both axes."""
    cfg = replace(cfg or NormalizeConfig(), mode=Mode.MEAN_ONLY)
    return run(m, cfg)
