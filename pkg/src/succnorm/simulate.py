"""Seeded Monte-Carlo experiments over random starting matrices.

Replicate ``i`` of an experiment with seed ``s`` draws from a PCG64 generator
seeded with ``SeedSequence([s, i])``, so every replicate is reproducible on
its own and results do not depend on execution order or worker count.
"""
from __future__ import annotations

import enum
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from .diagnostics import one_step_ratio
from .errors import ConfigError, DimensionGateError
from .matrix import Axis
from .normalizer import NormalizeConfig, Status, run, step
from .polish import check_dimensions, degenerate_lines, standardize

#: Sign-change table buckets: iterations 1..9, then "10 and above".
SIGN_CHANGE_BUCKETS = 10

_UINT64_MAX = 2**64 - 1


class Distribution(enum.Enum):
    UNIFORM_UNIT = "uniform"
    STANDARD_GAUSSIAN = "gaussian"


def _check_seed(seed) -> int:
    if isinstance(seed, bool) or not isinstance(seed, (int, np.integer)) or not 0 <= seed <= _UINT64_MAX:
        raise ConfigError(f"seed must be an unsigned 64-bit integer, got {seed!r}")
    return int(seed)


@dataclass(frozen=True)
class ExperimentSpec:
    n_rows: int
    n_cols: int
    replicates: int
    seed: int = 0
    distribution: Distribution = Distribution.UNIFORM_UNIT
    normalize_cfg: NormalizeConfig = field(default_factory=NormalizeConfig)

    def __post_init__(self):
        if not isinstance(self.distribution, Distribution):
            try:
                object.__setattr__(self, "distribution", Distribution(self.distribution))
            except ValueError as exc:
                raise ConfigError(str(exc)) from None
        for name in ("n_rows", "n_cols", "replicates"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, np.integer)) or value < 1:
                raise ConfigError(f"{name} must be a positive integer, got {value!r}")
        object.__setattr__(self, "seed", _check_seed(self.seed))
        try:
            check_dimensions(np.broadcast_to(0.0, (self.n_rows, self.n_cols)), self.normalize_cfg.mode)
        except DimensionGateError as exc:
            raise ConfigError(str(exc)) from exc


def _rng(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([seed, index]))


def generate(spec: ExperimentSpec, replicate_index: int) -> np.ndarray:
    """Starting matrix for one replicate; a pure function of ``(seed, index)``."""
    if not 0 <= replicate_index < spec.replicates:
        raise IndexError(f"replicate {replicate_index} out of range for {spec.replicates} replicates")
    rng = _rng(spec.seed, replicate_index)
    shape = (spec.n_rows, spec.n_cols)
    if spec.distribution is Distribution.UNIFORM_UNIT:
        return rng.random(shape)
    return rng.standard_normal(shape)


@dataclass(frozen=True)
class ReplicateResult:
    index: int
    status: Status
    iterations: int
    one_step_ratio: Optional[float]
    sign_changes: tuple[int, ...]


def run_replicate(spec: ExperimentSpec, replicate_index: int) -> ReplicateResult:
    x0 = generate(spec, replicate_index)
    cfg = spec.normalize_cfg
    outcome = run(x0, cfg)
    ratio = None
    if outcome.converged:
        x1 = step(x0, cfg.orientation, cfg.mode)
        ratio = one_step_ratio(x0, x1, outcome.final)
    return ReplicateResult(
        index=replicate_index,
        status=outcome.status,
        iterations=outcome.iterations,
        one_step_ratio=ratio,
        sign_changes=tuple(r.sign_changes for r in outcome.trace),
    )


def _run_chunk(args):
    spec, indices = args
    return [run_replicate(spec, i) for i in indices]


def bucket_sign_changes(counts: Sequence[int], buckets: int = SIGN_CHANGE_BUCKETS) -> np.ndarray:
    """Relative frequency of sign changes per iteration, tail folded into the last bucket."""
    out = np.zeros(buckets)
    for i, c in enumerate(counts):
        out[min(i, buckets - 1)] += c
    total = out.sum()
    return out / total if total else out


@dataclass(frozen=True)
class SimulationSummary:
    n_rows: int
    n_cols: int
    replicates: int
    distribution: Distribution
    iteration_counts: tuple[int, ...]
    mean_iterations: float
    std_iterations: float
    one_step_ratios: tuple[float, ...]
    mean_ratio: float
    std_ratio: float
    sign_change_freq_by_iteration: tuple[float, ...]
    failures: int
    seed_echo: int
    config: NormalizeConfig

    @property
    def max_ratio(self) -> float:
        return max(self.one_step_ratios) if self.one_step_ratios else float("nan")

    def to_dict(self) -> dict:
        return {
            "shape": [self.n_rows, self.n_cols],
            "replicates": self.replicates,
            "distribution": self.distribution.value,
            "seed": self.seed_echo,
            "config": self.config.to_dict(),
            "failures": self.failures,
            "iteration_counts": list(self.iteration_counts),
            "mean_iterations": self.mean_iterations,
            "std_iterations": self.std_iterations,
            "one_step_ratios": list(self.one_step_ratios),
            "mean_ratio": self.mean_ratio,
            "std_ratio": self.std_ratio,
            "max_ratio": self.max_ratio,
            "sign_change_freq_by_iteration": list(self.sign_change_freq_by_iteration),
        }


def _mean_std(values) -> tuple[float, float]:
    if len(values) == 0:
        return float("nan"), float("nan")
    arr = np.asarray(values, dtype=np.float64)
    # sample (n - 1) convention for reported spreads
    std = float(arr.std(ddof=1)) if len(arr) > 1 else 0.0
    return float(arr.mean()), std


def summarize(spec: ExperimentSpec, results: Iterable[ReplicateResult]) -> SimulationSummary:
    results = sorted(results, key=lambda r: r.index)
    ok = [r for r in results if r.status is Status.CONVERGED]
    counts = tuple(r.iterations for r in ok)
    ratios = tuple(r.one_step_ratio for r in ok)
    freqs = [bucket_sign_changes(r.sign_changes) for r in ok if sum(r.sign_changes) > 0]
    freq = tuple(float(v) for v in np.mean(freqs, axis=0)) if freqs else ()
    mean_it, std_it = _mean_std(counts)
    mean_r, std_r = _mean_std(ratios)
    return SimulationSummary(
        n_rows=spec.n_rows,
        n_cols=spec.n_cols,
        replicates=spec.replicates,
        distribution=spec.distribution,
        iteration_counts=counts,
        mean_iterations=mean_it,
        std_iterations=std_it,
        one_step_ratios=ratios,
        mean_ratio=mean_r,
        std_ratio=std_r,
        sign_change_freq_by_iteration=freq,
        failures=len(results) - len(ok),
        seed_echo=spec.seed,
        config=spec.normalize_cfg,
    )


def run_experiment(spec: ExperimentSpec, workers: int = 1) -> SimulationSummary:
    """Normalize every replicate and aggregate iteration counts, ratios and sign changes.

    Non-converged or degenerate replicates are counted in ``failures`` and left
    out of every mean.  ``workers > 1`` fans replicates out to processes; the
    summary is identical for any worker count.
    """
    if not isinstance(spec, ExperimentSpec):
        raise ConfigError("run_experiment expects an ExperimentSpec")
    indices = range(spec.replicates)
    if workers <= 1:
        results = [run_replicate(spec, i) for i in indices]
    else:
        chunks = [(spec, list(indices[w::workers])) for w in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = [r for chunk in pool.map(_run_chunk, chunks) for r in chunk]
    return summarize(spec, results)


@dataclass(frozen=True)
class SweepRow:
    n_rows: int
    n_cols: int
    mean_iterations: float
    std_iterations: float
    mean_ratio_pct: float
    std_ratio_pct: float
    failures: int
    seed: int


@dataclass(frozen=True)
class SweepResult:
    rows: tuple[SweepRow, ...]
    replicates: int
    seed_echo: int

    def to_dict(self) -> dict:
        return {
            "replicates": self.replicates,
            "seed": self.seed_echo,
            "rows": [vars(r) for r in self.rows],
        }

    @property
    def failures(self) -> int:
        return sum(r.failures for r in self.rows)


def shape_seed(seed: int, n_rows: int, n_cols: int) -> int:
    """Sub-seed for one sweep shape, keyed on the shape rather than its position."""
    state = np.random.SeedSequence([seed, n_rows, n_cols]).generate_state(1, dtype=np.uint64)
    return int(state[0])


def run_sweep(
    shapes: Sequence[tuple[int, int]],
    replicates: int,
    seed: int,
    distribution: Distribution = Distribution.UNIFORM_UNIT,
    cfg: Optional[NormalizeConfig] = None,
    workers: int = 1,
) -> SweepResult:
    """One experiment per shape, tabulated in request order."""
    seed = _check_seed(seed)
    cfg = cfg or NormalizeConfig()
    rows = []
    for n_rows, n_cols in shapes:
        sub = shape_seed(seed, n_rows, n_cols)
        spec = ExperimentSpec(n_rows, n_cols, replicates, sub, distribution, cfg)
        s = run_experiment(spec, workers=workers)
        rows.append(
            SweepRow(
                n_rows=n_rows,
                n_cols=n_cols,
                mean_iterations=s.mean_iterations,
                std_iterations=s.std_iterations,
                mean_ratio_pct=100.0 * s.mean_ratio,
                std_ratio_pct=100.0 * s.std_ratio,
                failures=s.failures,
                seed=sub,
            )
        )
    return SweepResult(rows=tuple(rows), replicates=replicates, seed_echo=seed)


def is_degenerate_2x2(m) -> bool:
    """True when one row standardization leaves a column with zero variance."""
    rows = standardize(m, Axis.ROWS)
    return bool(degenerate_lines(rows, Axis.COLUMNS).any())


def degeneracy_frequency_2x2(replicates: int, seed: int) -> float:
    """Share of uniform 2x2 matrices whose row standardization kills a column variance."""
    if isinstance(replicates, bool) or not isinstance(replicates, (int, np.integer)) or replicates < 1:
        raise ConfigError(f"replicates must be a positive integer, got {replicates!r}")
    seed = _check_seed(seed)
    x = _rng(seed, 0).random((replicates, 2, 2))
    rows = standardize(x, Axis.ROWS)
    mask = degenerate_lines(rows, Axis.COLUMNS)
    return float(mask.any(axis=-1).mean())
