"""Reading and writing matrices as delimited text, and JSON run reports."""
from __future__ import annotations

import csv
import io as _io
import json
import math
from pathlib import Path
from typing import Optional

import numpy as np

from .errors import EmptyFileError, ParseError, RaggedRowsError
from .matrix import as_matrix, column_stats, row_stats
from .normalizer import NormalizationOutcome

SCHEMA_VERSION = "1"


def _sniff_delimiter(first_line: str) -> str:
    return "\t" if "\t" in first_line and "," not in first_line else ","


def read_matrix(path, delimiter: Optional[str] = None, has_header: bool = False) -> np.ndarray:
    """Parse a delimited numeric text file into a matrix.

    ``delimiter=None`` picks tab when the first line has tabs and no commas,
    comma otherwise.  Blank lines are skipped; line numbers in errors are
    1-based physical lines.
    """
    path = Path(path)
    text = path.read_text(encoding="utf-8-sig")
    lines = text.splitlines()
    if delimiter is None:
        first = next((ln for ln in lines if ln.strip()), "")
        delimiter = _sniff_delimiter(first)

    rows = []
    width = None
    skipped_header = not has_header
    for lineno, fields in enumerate(csv.reader(lines, delimiter=delimiter), start=1):
        if not fields or all(not f.strip() for f in fields):
            continue
        if not skipped_header:
            skipped_header = True
            continue
        if width is None:
            width = len(fields)
        elif len(fields) != width:
            raise RaggedRowsError(path, lineno, width, len(fields))
        row = []
        for col, field in enumerate(fields, start=1):
            try:
                value = float(field)
            except ValueError:
                raise ParseError(path, lineno, col, field) from None
            if not math.isfinite(value):
                raise ParseError(path, lineno, col, field)
            row.append(value)
        rows.append(row)
    if not rows:
        raise EmptyFileError(path)
    return as_matrix(rows)


def format_matrix(m, precision: Optional[int] = None, delimiter: str = ",") -> str:
    """Render a matrix as delimited text.

    ``precision=None`` writes 17 significant digits (exact round trip);
    an integer gives that many fixed decimals.
    """
    m = np.asarray(m, dtype=np.float64) + 0.0  # drop negative zeros
    if precision is None:
        fmt = "{:.17g}".format
    else:
        fmt = ("{:.%df}" % precision).format
    buf = _io.StringIO()
    for row in m:
        cells = [fmt(v) for v in row]
        if precision is not None:
            # values that round to zero should not print as "-0.0000"
            cells = [c[1:] if c.startswith("-") and float(c) == 0 else c for c in cells]
        buf.write(delimiter.join(cells))
        buf.write("\n")
    return buf.getvalue()


def write_matrix(m, path, precision: Optional[int] = None, delimiter: str = ",") -> None:
    path = Path(path)
    try:
        path.write_text(format_matrix(m, precision, delimiter), encoding="utf-8")
    except OSError as exc:
        raise OSError(f"cannot write matrix to {path}: {exc.strerror or exc}") from exc


def _json_float(x: float):
    # JSON has no infinities; an exactly-zero step has no logarithm
    return x if math.isfinite(x) else None


def trace_report(outcome: NormalizationOutcome, include_snapshots: bool = False) -> dict:
    """JSON-ready record of a run: per-iteration differences plus final line stats."""
    final = outcome.final
    rs, cs = row_stats(final), column_stats(final)
    records = []
    for r in outcome.trace:
        rec = {
            "index": r.index,
            "step_diff_sq": r.step_diff_sq,
            "log_step_diff": _json_float(r.log_step_diff),
            "sign_changes": r.sign_changes,
        }
        if include_snapshots and r.snapshot is not None:
            rec["snapshot"] = r.snapshot.tolist()
        records.append(rec)
    report = {
        "schema_version": SCHEMA_VERSION,
        "shape": list(final.shape),
        "config": outcome.config.to_dict(),
        "status": outcome.status.value,
        "iterations": outcome.iterations,
        "records": records,
        "final_row_means": rs.means.tolist(),
        "final_col_means": cs.means.tolist(),
        "final_row_stds": rs.std_devs.tolist(),
        "final_col_stds": cs.std_devs.tolist(),
    }
    if outcome.error is not None:
        report["error"] = str(outcome.error)
    return report


def write_json(doc: dict, path) -> None:
    doc = {"schema_version": SCHEMA_VERSION, **doc}
    Path(path).write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")
