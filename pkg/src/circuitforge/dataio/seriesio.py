"""Readers/writers for `DATE,VALUE` observation files.

The layout matches common statistical-agency CSV exports: an ISO date
column, a value column, and missing observations marked with "." or an
empty cell. Missing rows are skipped and reported through a
``SkippedValuesWarning`` carrying the skip count.
"""

from __future__ import annotations

import csv
import datetime
import io
import warnings
from decimal import Decimal, InvalidOperation

from ..policy.series import Series
from .errors import (
    EmptySeries,
    IoFailure,
    MalformedHeader,
    SkippedValuesWarning,
    UnparsableRow,
)

SERIES_HEADER = ("DATE", "VALUE")
MISSING_MARKERS = ("", ".")


def read_series(path, expected_unit: str) -> Series:
    """Parse a `DATE,VALUE` file into a date-sorted, unit-tagged series."""
    try:
        with open(path, "r", encoding="utf-8", newline="") as handle:
            reader = csv.reader(handle)
            try:
                header = next(reader)
            except StopIteration:
                raise MalformedHeader(f"{path}: empty file") from None
            if tuple(h.strip() for h in header) != SERIES_HEADER:
                raise MalformedHeader(
                    f"{path}: expected header DATE,VALUE, got {','.join(header)}")
            points = []
            skipped = 0
            for line_number, row in enumerate(reader, start=2):
                if not row:
                    continue
                if len(row) != 2:
                    raise UnparsableRow(line_number,
                                        f"expected 2 cells, got {len(row)}")
                raw_date, raw_value = row[0].strip(), row[1].strip()
                if raw_value in MISSING_MARKERS:
                    skipped += 1
                    continue
                try:
                    date = datetime.date.fromisoformat(raw_date)
                except ValueError:
                    raise UnparsableRow(line_number,
                                        f"bad date {raw_date!r}") from None
                try:
                    value = Decimal(raw_value)
                except InvalidOperation:
                    raise UnparsableRow(line_number,
                                        f"bad value {raw_value!r}") from None
                points.append((date, value))
    except OSError as failure:
        raise IoFailure(f"cannot read {path}: {failure}") from failure
    if not points:
        raise EmptySeries(f"{path}: no usable observations")
    points.sort(key=lambda p: p[0])
    if skipped:
        warnings.warn(SkippedValuesWarning(skipped, str(path)), stacklevel=2)
    return Series(unit=expected_unit, points=tuple(points))


def series_bytes(series: Series) -> bytes:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(SERIES_HEADER)
    for date, value in series.points:
        writer.writerow([date.isoformat(), str(value)])
    return buffer.getvalue().encode("utf-8")


def write_series(series: Series, path) -> None:
    try:
        with open(path, "wb") as handle:
            handle.write(series_bytes(series))
    except OSError as failure:
        raise IoFailure(f"cannot write {path}: {failure}") from failure
