"""Growth-model calibration for a renaissance bank's reported earnings.

Three models of increasing realism ask what yearly lending rate a bank
needed in order to pay out its documented distributions:

- Model 1: treat the period's total earnings as compound growth on the
  founding capital and report the implied annual growth factor.
- Model 2: year-by-year forward model where a fraction of each year's
  profit is retained as extra capital and the rest is distributed.
- Model 3: year-by-year forward model where lending is funded by capital
  plus a deposit multiple, depositors are paid a share of the interest
  earned on the deposit-funded portion, and a fixed fraction of capital
  is retained each year.

Solvers invert the forward models by bisection on the rate. Calibration
runs chain the three canonical periods, carrying each period's ending
capital into the next, and report residuals against the historical
reference rates.

Convention for the founding period (documented decision): the founding
year is a setup year. In Model 3 the 23-calendar-year founding period
contributes 22 distribution years; Model 2 reproduces its reference
column best with all 23 years distributing, so it keeps them.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal

from .errors import NoBracket, NonPositiveCapital

RATE_BRACKET = (0.0, 5.0)
BISECTION_STEPS = 200
RELATIVE_RESIDUAL = 1e-6


@dataclass(frozen=True)
class CalibrationTarget:
    """One documented period: capital basis, reported distributions, span."""

    period_label: str
    start_year: int
    end_year: int
    reported_earnings: float
    starting_capital: float = 8_000.0
    founding: bool = False

    def __post_init__(self) -> None:
        if self.end_year <= self.start_year:
            raise ValueError("end_year must exceed start_year")
        if self.starting_capital <= 0:
            raise NonPositiveCapital(str(self.starting_capital))

    @property
    def years(self) -> int:
        return self.end_year - self.start_year


FOUNDING_CAPITAL = 8_000.0

CANONICAL_TARGETS = (
    CalibrationTarget("1397-1420", 1397, 1420, 152_820.0, founding=True),
    CalibrationTarget("1420-1435", 1420, 1435, 186_382.0),
    CalibrationTarget("1435-1450", 1435, 1450, 290_791.0),
)

# Rows of the earnings table model 1 is checked against:
# (label, capital, reported earnings, elapsed years). The first row is the
# founding year plus six months.
MODEL1_ROWS = (
    ("1398", 8_000.0, 1_200.0, 1.5),
    ("1420", 8_000.0, 152_820.0, 23.0),
    ("1435", 8_000.0, 186_382.0, 15.0),
    ("1450", 8_000.0, 290_791.0, 15.0),
)

# Historical reference rates the calibrations are compared against.
# Model 2: rows = periods, columns = profit-retention fractions.
MODEL2_RETENTIONS = (Decimal("0.025"), Decimal("0.05"), Decimal("0.10"))
MODEL2_REFERENCE_RATES = {
    Decimal("0.025"): (0.7266, 0.9113, 0.9982),
    Decimal("0.05"): (0.6390, 0.6485, 0.6309),
    Decimal("0.10"): (0.5111, 0.4069, 0.3611),
}

# Model 3: keyed by (capital-retention fraction, deposit multiple),
# values = rates per period. Only the lowest-retention group is expected
# to reproduce under the documented interpretation; the deposit-multiple-7
# column is known not to, and is flagged rather than fitted.
MODEL3_RETENTIONS = (Decimal("0.025"), Decimal("0.05"), Decimal("0.10"))
MODEL3_DEPOSIT_MULTIPLES = (1, 3, 7)
MODEL3_REFERENCE_RATES = {
    (Decimal("0.025"), 1): (0.4562, 0.5304, 0.5572),
    (Decimal("0.025"), 3): (0.2719, 0.3161, 0.3321),
    (Decimal("0.025"), 7): (0.1235, 0.1435, 0.1508),
    (Decimal("0.05"), 1): (0.4625, 0.5350, 0.5572),
    (Decimal("0.05"), 3): (0.2737, 0.3166, 0.3298),
    (Decimal("0.05"), 7): (0.1242, 0.1437, 0.1496),
    (Decimal("0.10"), 1): (0.3968, 0.3629, 0.3379),
    (Decimal("0.10"), 3): (0.2314, 0.2117, 0.1971),
    (Decimal("0.10"), 7): (0.1048, 0.0959, 0.0893),
}

REPRODUCIBLE_TOLERANCE_PCT = 5.0


@dataclass(frozen=True)
class Model1Result:
    multiple: float
    growth_factor: float


def model1_growth(capital: float, earnings: float, years: float) -> Model1Result:
    """Growth factor implied by treating period earnings as compounding."""
    if capital <= 0:
        raise NonPositiveCapital(str(capital))
    if years <= 0:
        raise ValueError("years must be positive")
    if earnings < 0:
        raise ValueError("earnings must be non-negative")
    multiple = 1.0 + earnings / capital
    return Model1Result(multiple=multiple, growth_factor=multiple ** (1.0 / years))


def model2_distributions(capital0: float, years: int,
                         retention_of_profit: float, rate: float) -> float:
    """Total distributions when ``retention_of_profit`` of each year's
    profit compounds into capital and the remainder is paid out."""
    _check_forward_args(capital0, years, retention_of_profit, rate)
    capital = capital0
    paid = 0.0
    for _ in range(years):
        profit = rate * capital
        paid += (1.0 - retention_of_profit) * profit
        capital += retention_of_profit * profit
    return paid


def model2_closed_form(capital0: float, years: int,
                       retention_of_profit: float, rate: float) -> float:
    """Geometric-series form of model2_distributions (cross-check oracle)."""
    _check_forward_args(capital0, years, retention_of_profit, rate)
    f = retention_of_profit
    if f == 0 or rate == 0:
        return (1.0 - f) * rate * capital0 * years
    growth = 1.0 + f * rate
    return (1.0 - f) * rate * capital0 * (growth ** years - 1.0) / (f * rate)


def model2_end_capital(capital0: float, years: int,
                       retention_of_profit: float, rate: float) -> float:
    return capital0 * (1.0 + retention_of_profit * rate) ** years


def model3_distributions(capital0: float, years: int,
                         retention_of_capital: float, deposit_multiple: float,
                         depositor_share: float, rate: float) -> float:
    """Total distributions when lending is capital plus a deposit multiple.

    Each year: the bank lends capital×(1+k); depositors receive
    ``depositor_share`` of the interest earned on the deposit-funded
    portion; the bank retains ``retention_of_capital`` of capital (capital
    grows by that fraction) and distributes income minus retention.
    """
    _check_forward_args(capital0, years, retention_of_capital, rate)
    if deposit_multiple < 0:
        raise ValueError("deposit multiple must be non-negative")
    if not (0.0 <= depositor_share <= 1.0):
        raise ValueError("depositor share must lie in [0, 1]")
    capital = capital0
    paid = 0.0
    for _ in range(years):
        income = rate * capital * (1.0 + deposit_multiple * (1.0 - depositor_share))
        retention = retention_of_capital * capital
        paid += income - retention
        capital += retention
    return paid


def model3_end_capital(capital0: float, years: int,
                       retention_of_capital: float) -> float:
    return capital0 * (1.0 + retention_of_capital) ** years


def _check_forward_args(capital0: float, years: int, retention: float,
                        rate: float) -> None:
    if capital0 <= 0:
        raise NonPositiveCapital(str(capital0))
    if years < 0:
        raise ValueError("years must be non-negative")
    if not (0.0 <= retention < 1.0):
        raise ValueError("retention must lie in [0, 1)")
    if rate < 0:
        raise ValueError("rate must be non-negative")


def bisect_rate(distributions, target: float) -> float:
    """Solve distributions(rate) = target for rate in the fixed bracket.

    ``distributions`` must be non-decreasing in rate (all forward models
    are). Converges to a relative residual below 1e-6.
    """
    if target == 0:
        return 0.0
    if target < 0:
        raise ValueError("target must be non-negative")
    lo, hi = RATE_BRACKET
    if distributions(hi) < target:
        raise NoBracket(
            f"target {target:.2f} unreachable below rate {hi}")
    for _ in range(BISECTION_STEPS):
        mid = 0.5 * (lo + hi)
        if distributions(mid) < target:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-15 * max(1.0, hi):
            break
    rate = 0.5 * (lo + hi)
    residual = abs(distributions(rate) - target) / target
    if residual > RELATIVE_RESIDUAL:
        raise NoBracket(f"bisection stalled at relative residual {residual:.2e}")
    return rate


def model2_required_rate(target: CalibrationTarget, retention_of_profit: float,
                         capital_in: float | None = None) -> float:
    capital = target.starting_capital if capital_in is None else capital_in
    return bisect_rate(
        lambda r: model2_distributions(capital, target.years,
                                       retention_of_profit, r),
        target.reported_earnings)


def model3_required_rate(target: CalibrationTarget, retention_of_capital: float,
                         deposit_multiple: float, depositor_share: float = 0.5,
                         capital_in: float | None = None) -> float:
    capital = target.starting_capital if capital_in is None else capital_in
    years = distribution_years(target)
    return bisect_rate(
        lambda r: model3_distributions(capital, years, retention_of_capital,
                                       deposit_multiple, depositor_share, r),
        target.reported_earnings)


def distribution_years(target: CalibrationTarget) -> int:
    """Model 3 treats the founding year as setup: no distribution."""
    return target.years - 1 if target.founding else target.years


@dataclass(frozen=True)
class CalibrationCell:
    period_label: str
    parameter_label: str
    solved_rate: float
    reference_rate: float | None
    residual_pct: float | None
    flagged: bool


def _cell(period: str, param: str, solved: float,
          reference: float | None) -> CalibrationCell:
    residual = None
    flagged = False
    if reference:
        residual = (solved - reference) / reference * 100.0
        flagged = abs(residual) > REPRODUCIBLE_TOLERANCE_PCT
    return CalibrationCell(period, param, solved, reference, residual, flagged)


def calibrate_model1() -> list[CalibrationCell]:
    """Growth factors for the four documented earnings rows."""
    cells = []
    for label, capital, earnings, years in MODEL1_ROWS:
        result = model1_growth(capital, earnings, years)
        cells.append(CalibrationCell(label, f"elapsed={years:g}y",
                                     result.growth_factor, None, None, False))
    return cells


def calibrate_model2(retention_of_profit: Decimal) -> list[CalibrationCell]:
    """Solve the three chained periods for one retention fraction.

    Each period's ending capital (grown at its own solved rate) funds the
    next period.
    """
    f = float(retention_of_profit)
    references = MODEL2_REFERENCE_RATES.get(retention_of_profit)
    cells = []
    capital = FOUNDING_CAPITAL
    for index, target in enumerate(CANONICAL_TARGETS):
        rate = model2_required_rate(target, f, capital_in=capital)
        reference = references[index] if references else None
        cells.append(_cell(target.period_label, f"retention={retention_of_profit}",
                           rate, reference))
        capital = model2_end_capital(capital, target.years, f, rate)
    return cells


def calibrate_model3(retention_of_capital: Decimal, deposit_multiple: int,
                     depositor_share: float = 0.5) -> list[CalibrationCell]:
    """Solve the three chained periods for one (retention, deposits) cell."""
    f = float(retention_of_capital)
    references = MODEL3_REFERENCE_RATES.get(
        (retention_of_capital, deposit_multiple))
    cells = []
    capital = FOUNDING_CAPITAL
    for index, target in enumerate(CANONICAL_TARGETS):
        rate = model3_required_rate(target, f, deposit_multiple,
                                    depositor_share, capital_in=capital)
        reference = references[index] if references else None
        cells.append(_cell(
            target.period_label,
            f"retention={retention_of_capital},deposits={deposit_multiple}x",
            rate, reference))
        capital = model3_end_capital(capital, distribution_years(target), f)
    return cells
