"""Successive row/column normalization of rectangular arrays.

Alternately standardize rows and columns (subtract the mean, divide by the
population standard deviation) until consecutive iterates agree.
"""
from .diagnostics import (
    RunDiagnostics,
    diagnose,
    fixed_point_residual,
    one_step_ratio,
    sign_changes,
    sort_stability,
    sphere_band_area,
)
from .errors import (
    ConfigError,
    DegenerateAxisError,
    DimensionGateError,
    DomainError,
    EmptyFileError,
    InvalidInputError,
    MissingSnapshotsError,
    ParseError,
    RaggedRowsError,
    ShapeMismatchError,
    SuccNormError,
    TieDetectedError,
)
from .io import read_matrix, trace_report, write_matrix
from .matrix import Axis, RowColumnStats, as_matrix, column_stats, row_stats, squared_frobenius_diff
from .normalizer import (
    IterationRecord,
    NormalizationOutcome,
    NormalizeConfig,
    Orientation,
    Status,
    run,
    run_mean_only,
    step,
)
from .polish import Mode, PolishKind, PolishStep, check_dimensions, mean_polish, standardize, std_polish
from .simulate import (
    Distribution,
    ExperimentSpec,
    SimulationSummary,
    SweepResult,
    degeneracy_frequency_2x2,
    generate,
    run_experiment,
    run_sweep,
)

__version__ = "0.1.0"
