"""Dated loan records and their summary statistics.

The dataset of interest is a book of short renaissance-era merchant loans.
Each record carries a nominal annual rate (the per-deal rate projected to a
full year). The summary statistics treat the whole book as if it ran inside
one calendar year: every loan's months are folded onto a single Jan–Dec
axis, which is what makes "how many loans were open in March?" a
well-posed question for a multi-year book.
"""

from __future__ import annotations

import csv
import datetime
from dataclasses import dataclass, field
from decimal import Decimal, InvalidOperation
from pathlib import Path

from .errors import AllZero, BadRecord, BadTable, EmptyDataset

MIN_DURATION_DAYS = 30
MAX_DURATION_DAYS = 200

# Duration classes centered on 60, 95, and 120 days; boundaries are the
# midpoints, and a boundary day goes to the lower class.
BUCKET_CENTERS = (60, 95, 120)
BUCKET_BOUNDS = (77, 107)

SEASONS = ("winter", "spring", "summer", "fall")
_MONTH_SEASON = {12: 0, 1: 0, 2: 0, 3: 1, 4: 1, 5: 1,
                 6: 2, 7: 2, 8: 2, 9: 3, 10: 3, 11: 3}

MONTHS = ("Jan", "Feb", "Mar", "Apr", "May", "Jun",
          "Jul", "Aug", "Sep", "Oct", "Nov", "Dec")

CSV_HEADER = ("id", "start_date", "end_date", "nominal_annual_rate_pct")


@dataclass(frozen=True)
class LoanRecord:
    """One dated loan with its full-year-projected nominal rate."""

    id: str
    start_date: datetime.date
    end_date: datetime.date
    nominal_annual_rate: Decimal

    def __post_init__(self) -> None:
        if self.end_date <= self.start_date:
            raise BadRecord(f"{self.id}: end {self.end_date} not after "
                            f"start {self.start_date}")
        days = self.duration_days
        if not (MIN_DURATION_DAYS <= days <= MAX_DURATION_DAYS):
            raise BadRecord(f"{self.id}: duration {days}d outside "
                            f"[{MIN_DURATION_DAYS}, {MAX_DURATION_DAYS}]")
        if self.nominal_annual_rate < 0:
            raise BadRecord(f"{self.id}: negative rate")

    @property
    def duration_days(self) -> int:
        return (self.end_date - self.start_date).days

    def months_touched(self) -> list[int]:
        """Calendar months (1–12) the loan is active in, in order."""
        months = []
        cursor = (self.start_date.year, self.start_date.month)
        stop = (self.end_date.year, self.end_date.month)
        while True:
            months.append(cursor[1])
            if cursor == stop:
                return months
            year, month = cursor
            cursor = (year + 1, 1) if month == 12 else (year, month + 1)


@dataclass(frozen=True)
class LoanDataset:
    records: tuple[LoanRecord, ...]

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    @classmethod
    def of(cls, records) -> "LoanDataset":
        return cls(tuple(records))


@dataclass(frozen=True)
class DatasetSummary:
    """The statistics a dataset is judged by (and reconstructed from)."""

    bucket_counts: tuple[int, int, int]
    season_starts: tuple[int, int, int, int]
    season_ends: tuple[int, int, int, int]
    monthly_coincidence: tuple[int, ...]
    mean_nominal_rate: Decimal
    utilization: Decimal = field(init=False)
    effective_yield: Decimal = field(init=False)

    def __post_init__(self) -> None:
        if len(self.monthly_coincidence) != 12:
            raise BadRecord("monthly coincidence needs 12 entries")
        object.__setattr__(self, "utilization",
                           utilization(self.monthly_coincidence))
        object.__setattr__(self, "effective_yield",
                           effective_yield(self.utilization,
                                           self.mean_nominal_rate))

    @property
    def record_count(self) -> int:
        return sum(self.season_starts)


def _require_records(ds: LoanDataset) -> None:
    if len(ds) == 0:
        raise EmptyDataset("no loan records")


def transaction_yield(rec: LoanRecord) -> Decimal:
    """Fraction actually earned on the deal: rate scaled by duration/360."""
    return (rec.nominal_annual_rate * rec.duration_days) / Decimal(360)


def duration_buckets(ds: LoanDataset) -> tuple[int, int, int]:
    """Counts per duration class (~60, ~95, ~120 days)."""
    _require_records(ds)
    counts = [0, 0, 0]
    for rec in ds:
        days = rec.duration_days
        if days <= BUCKET_BOUNDS[0]:
            counts[0] += 1
        elif days <= BUCKET_BOUNDS[1]:
            counts[1] += 1
        else:
            counts[2] += 1
    return tuple(counts)


def season_of(month: int) -> str:
    return SEASONS[_MONTH_SEASON[month]]


def seasonality(ds: LoanDataset) -> tuple[tuple[int, int, int, int],
                                          tuple[int, int, int, int]]:
    """(starts per season, ends per season), winter→fall order."""
    _require_records(ds)
    starts = [0, 0, 0, 0]
    ends = [0, 0, 0, 0]
    for rec in ds:
        starts[_MONTH_SEASON[rec.start_date.month]] += 1
        ends[_MONTH_SEASON[rec.end_date.month]] += 1
    return tuple(starts), tuple(ends)


def monthly_coincidence(ds: LoanDataset) -> tuple[int, ...]:
    """Loans active during any part of each calendar month, Jan→Dec,
    with all years folded onto one."""
    _require_records(ds)
    counts = [0] * 12
    for rec in ds:
        for month in rec.months_touched():
            counts[month - 1] += 1
    return tuple(counts)


def utilization(counts) -> Decimal:
    """Mean of counts/max(counts): the share of peak capacity in use."""
    counts = tuple(int(c) for c in counts)
    if any(c < 0 for c in counts):
        raise BadRecord("negative coincidence count")
    peak = max(counts, default=0)
    if peak == 0:
        raise AllZero("all coincidence counts are zero")
    return Decimal(sum(counts)) / (Decimal(len(counts)) * Decimal(peak))


def effective_yield(util: Decimal, mean_rate: Decimal) -> Decimal:
    if util < 0 or mean_rate < 0:
        raise BadRecord("utilization and mean rate must be non-negative")
    return Decimal(util) * Decimal(mean_rate)


def mean_nominal_rate(ds: LoanDataset) -> Decimal:
    _require_records(ds)
    total = sum((rec.nominal_annual_rate for rec in ds), Decimal(0))
    return total / Decimal(len(ds))


def summarize(ds: LoanDataset) -> DatasetSummary:
    starts, ends = seasonality(ds)
    return DatasetSummary(
        bucket_counts=duration_buckets(ds),
        season_starts=starts,
        season_ends=ends,
        monthly_coincidence=monthly_coincidence(ds),
        mean_nominal_rate=mean_nominal_rate(ds),
    )


# -- CSV interchange (rate stored as percent in files) ----------------------

def write_loans_csv(ds: LoanDataset, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for rec in ds:
            pct = (rec.nominal_annual_rate * 100).quantize(Decimal("0.01"))
            writer.writerow([rec.id, rec.start_date.isoformat(),
                             rec.end_date.isoformat(), str(pct)])


def read_loans_csv(path: str | Path) -> LoanDataset:
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise BadTable(f"{path}: empty file") from None
        if tuple(h.strip() for h in header) != CSV_HEADER:
            raise BadTable(f"{path}: expected header {','.join(CSV_HEADER)}")
        records = []
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 4:
                raise BadTable(f"{path}:{lineno}: expected 4 columns")
            try:
                records.append(LoanRecord(
                    id=row[0],
                    start_date=datetime.date.fromisoformat(row[1]),
                    end_date=datetime.date.fromisoformat(row[2]),
                    nominal_annual_rate=Decimal(row[3]) / 100,
                ))
            except (ValueError, InvalidOperation) as exc:
                raise BadTable(f"{path}:{lineno}: {exc}") from None
    return LoanDataset.of(records)
