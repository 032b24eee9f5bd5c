"""Command-line entry point: ``succnorm normalize`` and ``succnorm simulate``."""
from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from . import io as mio
from .errors import ConfigError, DimensionGateError, InvalidInputError, MatrixFileError
from .normalizer import NormalizationOutcome, NormalizeConfig, Orientation, Status, run
from .polish import Mode
from .simulate import Distribution, ExperimentSpec, degeneracy_frequency_2x2, run_experiment, run_sweep

EXIT_OK = 0
EXIT_IO = 1
EXIT_DEGENERATE = 2
EXIT_DIMENSION_GATE = 3
EXIT_MAX_ITERATIONS = 4
EXIT_FAILURES = 5

STATUS_EXIT_CODES = {
    Status.CONVERGED: EXIT_OK,
    Status.DEGENERATE: EXIT_DEGENERATE,
    Status.DIMENSION_GATE: EXIT_DIMENSION_GATE,
    Status.MAX_ITERATIONS_REACHED: EXIT_MAX_ITERATIONS,
}


def _seed(text: str) -> int:
    try:
        value = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid seed {text!r}") from None
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in an unsigned 64-bit integer")
    return value


def _shapes(text: str) -> list[tuple[int, int]]:
    out = []
    for part in text.split(","):
        try:
            r, c = part.lower().split("x")
            out.append((int(r), int(c)))
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad shape {part!r}, expected ROWSxCOLS") from None
    return out


def format_difference_table(outcome: NormalizationOutcome) -> str:
    lines = [f"{'Iteration no.':>13}  {'Difference':>12}  {'log(difference)':>15}"]
    for r in outcome.trace:
        lines.append(f"{r.index:>13d}  {r.step_diff_sq:>12.4f}  {r.log_step_diff:>15.4f}")
    return "\n".join(lines)


def format_sweep_table(sweep) -> str:
    label = f"{'':<16}"
    lines = [label + "".join(f"{f'{r.n_rows}x{r.n_cols}':>12}" for r in sweep.rows)]
    for name, attr in (
        ("mean(count)", "mean_iterations"),
        ("std(count)", "std_iterations"),
        ("mean(ratio) %", "mean_ratio_pct"),
        ("std(ratio) %", "std_ratio_pct"),
    ):
        lines.append(f"{name:<16}" + "".join(f"{getattr(r, attr):>12.4f}" for r in sweep.rows))
    return "\n".join(lines)


class _Parser(argparse.ArgumentParser):
    # usage errors share exit code 1 with IO errors; 2 means a degenerate run
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_IO, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="succnorm", description="Successive row/column normalization.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("normalize", help="normalize a matrix file")
    p.add_argument("input", help="delimited numeric text file")
    p.add_argument("--orientation", choices=[o.value for o in Orientation], default="column-first")
    p.add_argument("--mode", choices=[m.value for m in Mode], default="full")
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--max-iters", type=int, default=1000)
    p.add_argument("--delimiter", default=None, help="field separator (default: sniff comma or tab)")
    p.add_argument("--header", action="store_true", help="skip the first row")
    p.add_argument("--out", help="write the final matrix here")
    p.add_argument("--precision", type=int, default=None, help="fixed decimals for --out")
    p.add_argument("--trace", help="write a JSON trace report here")
    p.add_argument("--snapshots", action="store_true", help="embed per-iteration matrices in the trace")
    p.set_defaults(func=cmd_normalize)

    s = sub.add_parser("simulate", help="Monte-Carlo experiments on random matrices")
    s.add_argument("--rows", type=int, default=10)
    s.add_argument("--cols", type=int, default=10)
    s.add_argument("--reps", type=int, default=1000)
    s.add_argument("--seed", type=_seed, default=0, help="decimal or 0x-prefixed hex")
    s.add_argument("--dist", choices=[d.value for d in Distribution], default="uniform")
    s.add_argument("--orientation", choices=[o.value for o in Orientation], default="column-first")
    s.add_argument("--tol", type=float, default=1e-8)
    s.add_argument("--max-iters", type=int, default=1000)
    s.add_argument("--shapes", type=_shapes, help="sweep form, e.g. 33x3,25x4,20x5,10x10")
    s.add_argument("--two-by-two-frequency", action="store_true")
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--report", help="write the JSON summary here")
    s.set_defaults(func=cmd_simulate)
    return parser


def cmd_normalize(args) -> int:
    try:
        cfg = NormalizeConfig(
            orientation=Orientation(args.orientation),
            mode=Mode(args.mode),
            tolerance=args.tol,
            max_iterations=args.max_iters,
            capture_snapshots=args.snapshots,
        )
        x = mio.read_matrix(args.input, delimiter=args.delimiter, has_header=args.header)
    except (OSError, MatrixFileError, ConfigError, InvalidInputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO

    try:
        outcome = run(x, cfg)
    except DimensionGateError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return STATUS_EXIT_CODES[Status.DIMENSION_GATE]

    print(format_difference_table(outcome))
    print(f"status: {outcome.status.value} after {outcome.iterations} iteration(s)")
    if outcome.error is not None:
        print(f"error: {outcome.error}", file=sys.stderr)
    try:
        if args.out:
            mio.write_matrix(outcome.final, args.out, precision=args.precision)
        if args.trace:
            mio.write_json(mio.trace_report(outcome, include_snapshots=args.snapshots), args.trace)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    return STATUS_EXIT_CODES[outcome.status]


def cmd_simulate(args) -> int:
    try:
        cfg = NormalizeConfig(
            orientation=Orientation(args.orientation), tolerance=args.tol, max_iterations=args.max_iters
        )
        if args.two_by_two_frequency:
            value = degeneracy_frequency_2x2(args.reps, args.seed)
            print(f"2x2 degeneracy frequency: {value:.4f} over {args.reps} draws")
            doc = {"kind": "two-by-two-frequency", "replicates": args.reps, "seed": args.seed, "frequency": value}
            failures = 0
        elif args.shapes:
            sweep = run_sweep(args.shapes, args.reps, args.seed, Distribution(args.dist), cfg, args.workers)
            print(format_sweep_table(sweep))
            doc = {"kind": "sweep", **sweep.to_dict()}
            failures = sweep.failures
        else:
            spec = ExperimentSpec(args.rows, args.cols, args.reps, args.seed, Distribution(args.dist), cfg)
            summary = run_experiment(spec, workers=args.workers)
            print(
                f"{args.rows}x{args.cols}  reps={args.reps}  "
                f"mean(count)={summary.mean_iterations:.4f}  std(count)={summary.std_iterations:.4f}  "
                f"mean(ratio)={100 * summary.mean_ratio:.4f}%  failures={summary.failures}"
            )
            doc = {"kind": "experiment", **summary.to_dict()}
            failures = summary.failures
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        build_parser().print_usage(sys.stderr)
        return EXIT_IO
    if args.report:
        try:
            mio.write_json(doc, args.report)
        except OSError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_IO
    return EXIT_FAILURES if failures else EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
