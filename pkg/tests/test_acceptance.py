"""Exit criteria for the package, one test per criterion."""
import math

import numpy as np
import pytest

from conftest import load, record_criterion
from succnorm import (
    Axis,
    DegenerateAxisError,
    Distribution,
    ExperimentSpec,
    NormalizeConfig,
    Orientation,
    column_stats,
    degeneracy_frequency_2x2,
    mean_polish,
    row_stats,
    run,
    run_experiment,
    run_mean_only,
    run_sweep,
    sphere_band_area,
    standardize,
    std_polish,
)
from succnorm.simulate import is_degenerate_2x2

COL, ROW = Orientation.COLUMN_FIRST, Orientation.ROW_FIRST


def close(a, b, atol):
    a, b = np.asarray(a, dtype=float), np.asarray(b, dtype=float)
    return a.shape == b.shape and bool(np.all(np.abs(a - b) <= atol))


def line_bounds_hold(m, tol=1e-4):
    rs, cs = row_stats(m), column_stats(m)
    return all(
        np.abs(s.means).max() <= tol and np.abs(s.std_devs - 1).max() <= tol for s in (rs, cs)
    )


def test_criterion_01_three_by_three_row_first():
    out = run(load("x0_3x3"), NormalizeConfig(orientation=ROW, tolerance=1e-8))
    record_criterion(1, "3x3 fixture, row-first", [
        (f"converged in 9+-1 (got {out.status.value}, {out.iterations})",
         out.converged and abs(out.iterations - 9) <= 1),
        (f"final within 5e-3 of printed (max dev {np.abs(out.final - load('x_final_3x3')).max():.4f})",
         close(out.final, load("x_final_3x3"), 5e-3)),
        (f"first four differences within 5e-3 (got {np.round(out.step_diffs[:4], 4).tolist()})",
         close(out.step_diffs[:4], [8.7908, 0.5018, 0.0300, 0.0019], 5e-3)),
    ])


def test_criterion_01_supplement_column_first():
    # Not a substitute for criterion 1: shows the printed table is the
    # column-first trajectory.
    out = run(load("x0_3x3"), NormalizeConfig(orientation=COL, tolerance=1e-8))
    record_criterion("1 (supplement)", "3x3 fixture, column-first", [
        ("converged in 9+-1", out.converged and abs(out.iterations - 9) <= 1),
        ("final within 5e-3 of printed", close(out.final, load("x_final_3x3"), 5e-3)),
        ("first four differences within 5e-3", close(out.step_diffs[:4], [8.7908, 0.5018, 0.0300, 0.0019], 5e-3)),
    ])


def test_criterion_02_mean_only():
    y0 = load("y0_3x3")
    out = run_mean_only(y0, NormalizeConfig(orientation=COL, capture_snapshots=True))
    col_polished = mean_polish(y0, Axis.COLUMNS)
    record_criterion(2, "3x3 mean-only fixture", [
        ("column-polished matrix within 5e-4", close(col_polished, load("y_column_polished_3x3"), 5e-4)),
        ("final within 5e-4", close(out.final, load("y_final_3x3"), 5e-4)),
        ("row stds within 5e-4", close(row_stats(out.final).std_devs, [0.1952, 0.2257, 0.2445], 5e-4)),
        ("column stds within 5e-4", close(column_stats(out.final).std_devs, [0.1932, 0.2311, 0.2410], 5e-4)),
        ("converged within 2 iterations", out.converged and out.iterations <= 2),
        ("second iteration is a no-op",
         out.iterations == 2 and out.trace[1].step_diff_sq <= 1e-24
         and close(out.trace[1].snapshot, out.trace[0].snapshot, 1e-14)),
    ])


def test_criterion_03_ten_by_ten():
    out = run(load("x0_10x10"), NormalizeConfig(orientation=COL))
    record_criterion(3, "10x10 fixture, column-first", [
        (f"converged in 15+-1 (got {out.iterations})", out.converged and abs(out.iterations - 15) <= 1),
        ("final within 5e-3 of printed", close(out.final, load("x_final_10x10"), 5e-3)),
        (f"first difference 84.1592+-0.5 (got {out.step_diffs[0]:.4f})", abs(out.step_diffs[0] - 84.1592) <= 0.5),
    ])


def test_criterion_04_five_by_five_orientations():
    x0 = load("x0_5x5")
    col = run(x0, NormalizeConfig(orientation=COL))
    row = run(x0, NormalizeConfig(orientation=ROW))
    record_criterion(4, "5x5 fixture, both orientations", [
        (f"column-first 30+-1 (got {col.iterations})", col.converged and abs(col.iterations - 30) <= 1),
        (f"row-first 26+-1 (got {row.iterations})", row.converged and abs(row.iterations - 26) <= 1),
        ("column-first final within 5e-3", close(col.final, load("x_final_5x5_column_first"), 5e-3)),
        ("row-first final within 5e-3", close(row.final, load("x_final_5x5_row_first"), 5e-3)),
        ("column-first first difference within 2% of e^2.9646",
         abs(col.step_diffs[0] / math.exp(2.9646) - 1) <= 0.02),
        ("row-first first difference within 2% of e^3.0255",
         abs(row.step_diffs[0] / math.exp(3.0255) - 1) <= 0.02),
    ])


@pytest.fixture(scope="module")
def reference_experiment():
    return run_experiment(ExperimentSpec(10, 10, 1000, seed=42, distribution=Distribution.UNIFORM_UNIT))


def test_criterion_05_monte_carlo(reference_experiment):
    s = reference_experiment
    freq = s.sign_change_freq_by_iteration
    record_criterion(5, "10x10 uniform, 1000 replicates", [
        ("no failures", s.failures == 0),
        (f"mean iterations in [13, 16] (got {s.mean_iterations:.4f})", 13 <= s.mean_iterations <= 16),
        (f"std iterations in [1.4, 2.8] (got {s.std_iterations:.4f})", 1.4 <= s.std_iterations <= 2.8),
        (f"mean ratio in [1.5%, 4.5%] (got {100 * s.mean_ratio:.3f}%)", 0.015 <= s.mean_ratio <= 0.045),
        (f"no ratio >= 10% (max {100 * s.max_ratio:.3f}%)", s.max_ratio < 0.10),
        (f"first-iteration sign share in [90%, 99%] (got {100 * freq[0]:.2f}%)", 0.90 <= freq[0] <= 0.99),
        (f"three-iteration share >= 97% (got {100 * sum(freq[:3]):.2f}%)", sum(freq[:3]) >= 0.97),
    ])


def test_criterion_06_shape_sweep():
    sweep = run_sweep([(33, 3), (25, 4), (20, 5), (10, 10)], replicates=1000, seed=7)
    means = [r.mean_iterations for r in sweep.rows]
    ratios = [r.mean_ratio_pct for r in sweep.rows]
    record_criterion(6, "shape sweep, 1000 replicates per shape", [
        ("no failures", sweep.failures == 0),
        (f"mean iterations strictly decreasing ({np.round(means, 3).tolist()})",
         all(b < a for a, b in zip(means, means[1:]))),
        (f"33x3 mean in [29, 39] (got {means[0]:.3f})", 29 <= means[0] <= 39),
        (f"mean ratios in [1.5%, 4.5%] ({np.round(ratios, 3).tolist()})", all(1.5 <= r <= 4.5 for r in ratios)),
    ])


def test_criterion_07_two_by_two():
    freq = degeneracy_frequency_2x2(100_000, seed=1)
    crafted = [[[1.0, 2.0], [3.0, 4.0]], [[0.1, 0.9], [0.2, 0.3]], [[5.0, 1.0], [9.0, 2.0]]]
    record_criterion(7, "2x2 degeneracy", [
        (f"frequency in [0.49, 0.51] (got {freq:.4f})", 0.49 <= freq <= 0.51),
        ("monotone-row inputs degenerate", all(is_degenerate_2x2(m) for m in crafted)),
        ("repeatable", degeneracy_frequency_2x2(100_000, seed=1) == freq),
    ])


def test_criterion_08_properties():
    rng = np.random.default_rng(8)
    starts = [rng.uniform(size=(10, 10)) for _ in range(25)]
    a = math.sqrt(1.5)
    fixed = np.array([[-a, 0.0, a], [0.0, a, -a], [a, -a, 0.0]])
    fp = run(fixed)

    scale_ok = sign_ok = perm_ok = bounds_ok = True
    for x in starts:
        base = run(x)
        bounds_ok &= base.converged and line_bounds_hold(base.final)
        for c in (1e-6, 1e6):
            scaled = run(c * x)
            scale_ok &= scaled.iterations == base.iterations and close(scaled.final, base.final, 1e-10)
        sign_ok &= close(run(-x).final, -base.final, 1e-10)
        p, q = rng.permutation(10), rng.permutation(10)
        perm_ok &= close(run(x[p][:, q]).final, base.final[p][:, q], 1e-10)

    for name, orientation in (("x0_3x3", COL), ("x0_5x5", COL), ("x0_5x5", ROW), ("x0_10x10", COL)):
        out = run(load(name), NormalizeConfig(orientation=orientation))
        bounds_ok &= out.converged and line_bounds_hold(out.final)

    oracle_ok = True
    for _ in range(100):
        m = rng.normal(size=(4, 5))
        for axis in Axis:
            oracle_ok &= close(standardize(m, axis), std_polish(mean_polish(m, axis), axis), 1e-12)

    record_criterion(8, "property suite", [
        ("fixed point converges in one iteration",
         fp.converged and fp.iterations == 1 and fp.trace[0].step_diff_sq <= 1e-20),
        ("scale invariance for c in {1e-6, 1e6} to 1e-10", scale_ok),
        ("sign equivariance to 1e-10", sign_ok),
        ("row/column permutation equivariance to 1e-10", perm_ok),
        ("converged finals: |means| <= 1e-4 and |stds - 1| <= 1e-4", bounds_ok),
        ("standardize == mean_polish then std_polish on 100 random 4x5", oracle_ok),
    ])


def test_criterion_09_sphere_band_area():
    values = [sphere_band_area(k) for k in range(4, 101)]
    record_criterion(9, "sphere band area heuristic", [
        (f"k=4 gives 14.65+-0.1 (got {values[0]:.4f})", abs(values[0] - 14.65) <= 0.1),
        ("k=21 below 1", sphere_band_area(21) < 1),
        ("strictly decreasing on [4, 100]", all(b < a for a, b in zip(values, values[1:]))),
    ])


def test_criterion_10_large_shape():
    x = np.random.default_rng(20426).standard_normal((20426, 63))
    out = run(x, NormalizeConfig())
    record_criterion(10, "20426x63 gaussian smoke run", [
        (f"converged in <= 12 iterations (got {out.iterations})", out.converged and out.iterations <= 12),
        ("line bounds hold on the final matrix", line_bounds_hold(out.final)),
    ])


def test_degenerate_inputs_never_pass_silently():
    with pytest.raises(DegenerateAxisError):
        standardize([[1.0, 1.0, 1.0], [1.0, 2.0, 3.0], [0.0, 1.0, 5.0]], Axis.ROWS)
