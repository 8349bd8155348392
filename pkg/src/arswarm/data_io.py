"""CSV reading and writing for series and run artifacts."""
from __future__ import annotations

import csv
import os

import numpy as np

from .errors import ColumnNotFound, EmptySeries, ParseError, SeriesFileNotFound
from .series import TimeSeries, validate_series

__all__ = ["load_csv", "write_series_csv", "write_columns_csv", "fmt"]


def fmt(value) -> str:
    """Round-trip text form of a float (17 significant digits)."""
    return format(float(value), ".17g")


def _number(text):
    try:
        return float(text.strip())
    except ValueError:
        return None


def load_csv(path, column=0, sample_interval=None) -> TimeSeries:
    """Read one numeric column.

    ``column`` is a 0-based index or a header name. A header row is assumed
    when the first non-blank row is non-numeric in the chosen column. Blank
    lines are skipped; line numbers in errors are 1-based.
    """
    if not os.path.isfile(path):
        raise SeriesFileNotFound(f"no such file: {path}")
    with open(path, newline="") as fh:
        rows = [(i, row) for i, row in enumerate(csv.reader(fh), start=1) if row and any(c.strip() for c in row)]
    if not rows:
        raise EmptySeries(f"{path} holds no data")

    first_line, first = rows[0]
    if isinstance(column, str) and not column.strip().lstrip("-").isdigit():
        names = [c.strip() for c in first]
        if column.strip() not in names:
            raise ColumnNotFound(f"no column named {column!r} in {path}")
        index = names.index(column.strip())
        rows = rows[1:]
    else:
        index = int(column)
        if index < 0:
            raise ColumnNotFound(f"column index must be nonnegative, got {index}")
        if index < len(first) and _number(first[index]) is None:
            rows = rows[1:]

    values = []
    for line, row in rows:
        if index >= len(row):
            raise ColumnNotFound(f"line {line} has no column {index}")
        value = _number(row[index])
        if value is None:
            raise ParseError(line, f"cannot parse {row[index]!r} on line {line}")
        values.append(value)
    if not values:
        raise EmptySeries(f"{path} holds no data rows")
    label = column if isinstance(column, str) and not column.strip().isdigit() else None
    return validate_series(np.array(values), sample_interval=sample_interval, label=label)


def write_series_csv(values, path, header=None) -> None:
    with open(path, "w", newline="") as fh:
        if header:
            fh.write(header + "\n")
        for v in np.asarray(values, dtype=float).reshape(-1):
            fh.write(fmt(v) + "\n")


def write_columns_csv(path, header, columns) -> None:
    """Write equal-length columns; ints are written as-is, floats round-trip."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in zip(*columns):
            writer.writerow([v if isinstance(v, (int, np.integer)) else fmt(v) for v in row])
