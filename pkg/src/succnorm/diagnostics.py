"""Post-hoc analysis of normalization runs."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import DomainError, MissingSnapshotsError, ShapeMismatchError, TieDetectedError
from .matrix import column_stats, row_stats, squared_frobenius_diff
from .normalizer import NormalizationOutcome, step


def one_step_ratio(x0, x1, xf, *, squared: bool = True) -> float:
    """Distance from the first iterate to the limit over distance from the start.

    By default distances are squared Frobenius norms, the same metric used for
    the convergence test; this is the convention under which a 10x10 uniform
    start averages about 2.7%.  ``squared=False`` gives the ratio of plain
    Frobenius norms (the square root of the default).  Returns 0 when the
    start already equals the limit.
    """
    num = squared_frobenius_diff(x1, xf)
    den = squared_frobenius_diff(x0, xf)
    if den == 0.0:
        return 0.0
    ratio = num / den
    return ratio if squared else math.sqrt(ratio)


def fixed_point_residual(m) -> float:
    """Largest deviation of any row/column mean from 0 or std from 1.

    A converged run stops on the step size, not on this residual; the two
    usually agree in magnitude but the residual can be a few times larger
    on small, nearly square arrays whose half-steps oscillate.
    """
    worst = 0.0
    for stats in (row_stats(m), column_stats(m)):
        worst = max(worst, float(np.abs(stats.means).max()), float(np.abs(stats.std_devs - 1.0).max()))
    return worst


def sign_changes(prev, next) -> int:
    """Count entries whose sign (-, 0, +) differs between two matrices."""
    prev = np.asarray(prev)
    next = np.asarray(next)
    if prev.shape != next.shape:
        raise ShapeMismatchError(prev.shape, next.shape)
    return int(np.count_nonzero(np.sign(prev) != np.sign(next)))


def _orderings(m: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    return np.argsort(m, axis=1, kind="stable"), np.argsort(m, axis=0, kind="stable")


def _has_ties(m: np.ndarray) -> bool:
    rows = np.diff(np.sort(m, axis=1), axis=1)
    cols = np.diff(np.sort(m, axis=0), axis=0)
    return bool((rows == 0).any() or (cols == 0).any())


def sort_stability(snapshots: Sequence[Optional[np.ndarray]]) -> int:
    """First iteration from which every row and column keeps the final strict order.

    ``snapshots[i]`` is the matrix after iteration ``i + 1``.  Accepts a
    :class:`NormalizationOutcome` run with ``capture_snapshots=True`` as well.
    Returns ``len(snapshots) + 1`` if the orders never settle before the end.
    """
    if isinstance(snapshots, NormalizationOutcome):
        snapshots = [r.snapshot for r in snapshots.trace]
    if len(snapshots) == 0 or any(s is None for s in snapshots):
        raise MissingSnapshotsError("sort stability needs a snapshot for every iteration")
    final = np.asarray(snapshots[-1])
    if _has_ties(final):
        raise TieDetectedError("final matrix has equal entries within a row or column")
    ref_rows, ref_cols = _orderings(final)
    stable_from = len(snapshots) + 1
    for i in range(len(snapshots) - 1, -1, -1):
        rows, cols = _orderings(np.asarray(snapshots[i]))
        if not (np.array_equal(rows, ref_rows) and np.array_equal(cols, ref_cols)):
            break
        stable_from = i + 1
    return stable_from


def sphere_band_area(k: int) -> float:
    """Heuristic area of the band of a k-sphere orthogonal to the equiangular line.

    Evaluates ``sqrt(2/e) * 2*pi*e / (k - 3)``: about 14.65 at ``k = 4``,
    below 1 from ``k = 21`` on.
    """
    if k < 4:
        raise DomainError(f"k must be at least 4, got {k}")
    return math.sqrt(2.0 / math.e) * (2.0 * math.pi * math.e / (k - 3))


@dataclass(frozen=True)
class RunDiagnostics:
    one_step_ratio: float
    sign_changes_per_iteration: tuple[int, ...]
    sign_change_relative_freq: tuple[float, ...]
    sort_stable_from: Optional[int]

    @property
    def total_sign_changes(self) -> int:
        return sum(self.sign_changes_per_iteration)


def diagnose(x0, outcome: NormalizationOutcome) -> RunDiagnostics:
    """Summarize a finished run started from ``x0``.

    ``sort_stable_from`` is ``None`` unless the run captured snapshots.
    """
    if outcome.iterations == 0:
        raise ValueError("run recorded no iterations")
    first = outcome.trace[0].snapshot
    if first is None:
        first = step(x0, outcome.config.orientation, outcome.config.mode)
    counts = tuple(r.sign_changes for r in outcome.trace)
    total = sum(counts)
    freq = tuple(c / total for c in counts) if total else ()
    stable = None
    if outcome.config.capture_snapshots:
        stable = sort_stability(outcome)
    return RunDiagnostics(
        one_step_ratio=one_step_ratio(x0, first, outcome.final),
        sign_changes_per_iteration=counts,
        sign_change_relative_freq=freq,
        sort_stable_from=stable,
    )
