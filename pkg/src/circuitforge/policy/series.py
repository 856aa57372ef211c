"""Dated value series and the flow/allocation/uplift transformations.

A loan *stock* series (outstanding balances) becomes an annualized
principal-repayment *flow* by dividing each observation by the prevailing
weighted-average maturity expressed in years. Maturity observations are
linearly interpolated to each stock date and held flat beyond their first
and last observations. The flow can then be split across government
recipients and compared against tax receipts.
"""

from __future__ import annotations

import datetime
import statistics
from dataclasses import dataclass
from decimal import Decimal, ROUND_HALF_UP, localcontext

from ..ledger.loans import AllocateToGovernment
from .errors import BadSeries, DivisionByZeroDate, NonPositiveMaturity, NoOverlap

UNIT_CURRENCY_BILLIONS = "currency-billions"
UNIT_MONTHS = "months"
UNIT_PERCENT = "percent"

MONTHS_PER_YEAR = Decimal(12)

PERCENT_QUANTUM = Decimal("0.01")

# Recipients of an allocation split, in payout order. The bank's share is
# computed as the exact remainder so the four outputs always sum to the
# input, whatever the fractions' decimal expansion does.
ALLOCATION_RECIPIENTS = ("local", "state", "federal", "bank")

AllocationConfig = AllocateToGovernment


def _coerce_value(value) -> Decimal:
    if isinstance(value, Decimal):
        return value
    if isinstance(value, int):
        return Decimal(value)
    if isinstance(value, str):
        try:
            return Decimal(value)
        except ArithmeticError:
            raise BadSeries(f"unparsable value {value!r}") from None
    raise BadSeries(
        f"series values must be Decimal, int, or string, not {type(value).__name__}"
        " (floats lose exactness)")


def _coerce_date(value) -> datetime.date:
    if isinstance(value, datetime.date) and not isinstance(value, datetime.datetime):
        return value
    if isinstance(value, str):
        try:
            return datetime.date.fromisoformat(value)
        except ValueError:
            raise BadSeries(f"unparsable date {value!r}") from None
    raise BadSeries(f"series dates must be dates or ISO strings, not {value!r}")


@dataclass(frozen=True)
class Series:
    """An ordered run of (date, value) observations sharing one unit tag."""

    unit: str
    points: tuple[tuple[datetime.date, Decimal], ...]

    def __post_init__(self) -> None:
        if not self.unit or not isinstance(self.unit, str):
            raise BadSeries(f"missing unit tag: {self.unit!r}")
        previous = None
        for date, value in self.points:
            if not isinstance(date, datetime.date):
                raise BadSeries(f"not a date: {date!r}")
            if not isinstance(value, Decimal):
                raise BadSeries(f"not a Decimal: {value!r}")
            if previous is not None and date <= previous:
                raise BadSeries(
                    f"dates must be strictly increasing: {date} after {previous}")
            previous = date

    @classmethod
    def of(cls, unit: str, pairs) -> "Series":
        points = tuple((_coerce_date(d), _coerce_value(v)) for d, v in pairs)
        return cls(unit=unit, points=points)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def dates(self) -> tuple[datetime.date, ...]:
        return tuple(d for d, _ in self.points)

    def values(self) -> tuple[Decimal, ...]:
        return tuple(v for _, v in self.points)

    def first_date(self) -> datetime.date:
        if not self.points:
            raise BadSeries("empty series has no date range")
        return self.points[0][0]

    def last_date(self) -> datetime.date:
        if not self.points:
            raise BadSeries("empty series has no date range")
        return self.points[-1][0]

    def median_value(self) -> Decimal:
        if not self.points:
            raise BadSeries("empty series has no median")
        return Decimal(statistics.median(self.values()))


def _interpolate(series: Series, at: datetime.date) -> Decimal:
    """Linear interpolation between observations, flat beyond the ends."""
    points = series.points
    if at <= points[0][0]:
        return points[0][1]
    if at >= points[-1][0]:
        return points[-1][1]
    for (d0, v0), (d1, v1) in zip(points, points[1:]):
        if d0 <= at <= d1:
            span = Decimal((d1 - d0).days)
            progress = Decimal((at - d0).days)
            return v0 + (v1 - v0) * progress / span
    raise BadSeries(f"date {at} not bracketed")  # unreachable


def normalize_principal_flow(stock: Series, maturity: Series) -> Series:
    """Annualized principal-repayment flow from a stock and maturity series.

    flow(t) = stock(t) / (maturity(t) in years), with the maturity series
    (months) linearly interpolated to each stock date. The output keeps the
    stock's unit, now read as an annual flow.
    """
    if maturity.unit != UNIT_MONTHS:
        raise BadSeries(
            f"maturity series must carry unit {UNIT_MONTHS!r}, got {maturity.unit!r}")
    if not stock.points or not maturity.points:
        raise NoOverlap("one of the series is empty")
    for date, value in maturity.points:
        if value <= 0:
            raise NonPositiveMaturity(f"maturity {value} at {date}")
    if (stock.last_date() < maturity.first_date()
            or maturity.last_date() < stock.first_date()):
        raise NoOverlap(
            f"stock covers {stock.first_date()}..{stock.last_date()} but "
            f"maturity covers {maturity.first_date()}..{maturity.last_date()}")
    out = []
    for date, value in stock.points:
        months = _interpolate(maturity, date)
        out.append((date, value * MONTHS_PER_YEAR / months))
    return Series(unit=stock.unit, points=tuple(out))


def allocate_principal(flow: Series, cfg: AllocationConfig) -> dict[str, Series]:
    """Split a flow across local/state/federal treasuries and the bank.

    Pointwise multiplication by each fraction; the bank leg absorbs the
    exact remainder so the four outputs sum to the input at every date.
    """
    fractions = cfg.fractions()
    split: dict[str, list] = {name: [] for name in ALLOCATION_RECIPIENTS}
    with localcontext() as ctx:
        ctx.prec = 50
        for date, value in flow.points:
            government = Decimal(0)
            for name in ALLOCATION_RECIPIENTS[:-1]:
                share = value * fractions[name]
                split[name].append((date, share))
                government += share
            split["bank"].append((date, value - government))
    return {name: Series(unit=flow.unit, points=tuple(points))
            for name, points in split.items()}


def tax_uplift(receipts: Series, tax_revenue: Series) -> Series:
    """Receipts as a percentage of tax revenue, date by date."""
    if receipts.dates() != tax_revenue.dates():
        raise BadSeries("receipts and tax revenue must share the same dates")
    out = []
    for (date, numerator), (_, denominator) in zip(receipts.points,
                                                   tax_revenue.points):
        if denominator == 0:
            raise DivisionByZeroDate(f"tax revenue is zero at {date}")
        percent = (numerator / denominator * 100).quantize(
            PERCENT_QUANTUM, rounding=ROUND_HALF_UP)
        out.append((date, percent))
    return Series(unit=UNIT_PERCENT, points=tuple(out))
