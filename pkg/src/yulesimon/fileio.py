"""Plain-text serialization: counts files, trace CSVs, summary JSON.

All floating-point values are written with 17 significant digits, which
round-trips IEEE doubles exactly, so re-running a command with the same
seed reproduces output files byte for byte.
"""

import csv
import json

import numpy as np

from . import distribution
from .errors import DataError


def format_float(value):
    """17-significant-digit decimal form of a float (exact round-trip)."""
    return format(float(value), ".17g")


def _format_cell(value):
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    if isinstance(value, (bool, np.bool_)):
        return str(bool(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format_float(value)


def write_csv(path, header, rows):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow([_format_cell(v) for v in row])


def write_json(path, obj):
    with open(path, "w") as fh:
        json.dump(obj, fh, indent=2, sort_keys=True)
        fh.write("\n")


def dump_json(obj):
    return json.dumps(obj, indent=2, sort_keys=True)


def load_counts(path):
    """Read observation counts from a text file.

    Accepts either one positive integer per line, or a CSV whose second
    column holds the counts (the word-frequency output format); a header
    row is skipped automatically.  Returns an int64 array.
    """
    values = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            field = line.split(",")[1] if "," in line else line
            field = field.strip()
            try:
                value = int(field)
            except ValueError:
                if lineno == 1:
                    continue
                raise DataError(
                    f"{path}:{lineno}: expected an integer count, "
                    f"got {field!r}") from None
            values.append(value)
    if not values:
        raise DataError(f"{path}: no counts found")
    try:
        return distribution.as_counts(np.array(values, dtype=np.int64))
    except DataError as exc:
        raise DataError(f"{path}: {exc}") from None


def load_regression_csv(path):
    """Read a regression data file with header ``k,x2[,x3,...]``.

    Returns (counts, regressors) where regressors holds the non-constant
    columns; the intercept is added downstream.
    """
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise DataError(f"{path}: empty file") from None
        header = [h.strip() for h in header]
        if not header or header[0] != "k":
            raise DataError(f"{path}: first header column must be 'k', "
                            f"got {header[:1]!r}")
        n_cols = len(header)
        ks, rows = [], []
        for lineno, row in enumerate(reader, start=2):
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) != n_cols:
                raise DataError(f"{path}:{lineno}: expected {n_cols} "
                                f"columns, got {len(row)}")
            try:
                ks.append(int(row[0]))
                rows.append([float(c) for c in row[1:]])
            except ValueError as exc:
                raise DataError(f"{path}:{lineno}: {exc}") from None
    if not ks:
        raise DataError(f"{path}: no data rows")
    counts = distribution.as_counts(np.array(ks, dtype=np.int64))
    regressors = np.array(rows, dtype=np.float64) if n_cols > 1 else None
    return counts, regressors


def write_trace_csv(path, trace):
    """Write a retained trace as CSV with header ``iter,<param>[,...]``.

    The iter column is the sweep index in the original chain
    (burn_in + t * thinning).
    """
    cfg = trace.config
    burn_in = getattr(cfg, "burn_in", 0)
    thinning = getattr(cfg, "thinning", 1)
    header = ["iter", *trace.parameter_names]
    rows = ((burn_in + t * thinning, *trace.states[t])
            for t in range(len(trace)))
    write_csv(path, header, rows)


def read_trace_csv(path):
    """Read a trace CSV; returns (parameter_names, samples array)."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise DataError(f"{path}: empty file") from None
        header = [h.strip() for h in header]
        if not header or header[0] != "iter":
            raise DataError(f"{path}: expected a trace CSV with an 'iter' "
                            f"first column, got {header[:1]!r}")
        names = tuple(header[1:])
        if not names:
            raise DataError(f"{path}: no parameter columns")
        rows = []
        for lineno, row in enumerate(reader, start=2):
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) != len(header):
                raise DataError(f"{path}:{lineno}: expected {len(header)} "
                                f"columns, got {len(row)}")
            try:
                rows.append([float(c) for c in row[1:]])
            except ValueError as exc:
                raise DataError(f"{path}:{lineno}: {exc}") from None
    if not rows:
        raise DataError(f"{path}: no samples")
    return names, np.array(rows, dtype=np.float64)


def write_frequency_csv(path, freq):
    """Write word counts as ``word,count`` (descending count, then word)."""
    write_csv(path, ["word", "count"], freq.sorted_items())
