"""Fixed-point money arithmetic.

Balances are exact decimals with two fractional digits. Addition and
subtraction are always exact; the only rounding anywhere in the package
happens when a money amount is scaled by a ratio (interest accrual,
allocation fractions), and that rounding is half-up to the cent.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal, ROUND_HALF_UP, InvalidOperation
from typing import Union

CENT = Decimal("0.01")

RatioLike = Union[int, str, Decimal]


class MoneyError(ValueError):
    """Base class for money arithmetic failures."""


class CurrencyMismatch(MoneyError):
    """Two amounts with different currency tags were combined."""


class BadAmount(MoneyError):
    """An amount string or number could not be parsed as fixed-point money."""


def _as_decimal(value: RatioLike) -> Decimal:
    if isinstance(value, Decimal):
        return value
    if isinstance(value, int):
        return Decimal(value)
    if isinstance(value, str):
        try:
            return Decimal(value)
        except InvalidOperation as exc:
            raise BadAmount(f"not a decimal number: {value!r}") from exc
    raise BadAmount(f"refusing to build exact money from {type(value).__name__}; "
                    "pass str, int, or Decimal")


@dataclass(frozen=True, order=False)
class Money:
    """An exact amount of one currency, quantized to two decimal places."""

    amount: Decimal
    currency: str = "F"

    def __post_init__(self) -> None:
        if not isinstance(self.amount, Decimal):
            raise BadAmount("Money.amount must be a Decimal; use Money.of(...)")
        quantized = self.amount.quantize(CENT)
        if quantized != self.amount:
            raise BadAmount(f"{self.amount} has more than two fractional digits")
        object.__setattr__(self, "amount", quantized)

    @classmethod
    def of(cls, value: RatioLike, currency: str = "F") -> "Money":
        dec = _as_decimal(value)
        try:
            q = dec.quantize(CENT)
        except InvalidOperation as exc:
            raise BadAmount(f"amount out of range: {dec}") from exc
        if q != dec:
            raise BadAmount(f"{dec} is not representable in cents")
        return cls(q, currency)

    @classmethod
    def zero(cls, currency: str = "F") -> "Money":
        return cls(Decimal("0.00"), currency)

    def _check(self, other: "Money") -> None:
        if not isinstance(other, Money):
            raise BadAmount(f"expected Money, got {type(other).__name__}")
        if other.currency != self.currency:
            raise CurrencyMismatch(f"{self.currency} vs {other.currency}")

    def __add__(self, other: "Money") -> "Money":
        self._check(other)
        return Money(self.amount + other.amount, self.currency)

    def __sub__(self, other: "Money") -> "Money":
        self._check(other)
        return Money(self.amount - other.amount, self.currency)

    def __neg__(self) -> "Money":
        return Money(-self.amount, self.currency)

    def scaled(self, ratio: RatioLike) -> "Money":
        """Multiply by an exact ratio, rounding half-up to the cent."""
        product = self.amount * _as_decimal(ratio)
        return Money(product.quantize(CENT, rounding=ROUND_HALF_UP), self.currency)

    def is_zero(self) -> bool:
        return self.amount == 0

    def is_negative(self) -> bool:
        return self.amount < 0

    def is_positive(self) -> bool:
        return self.amount > 0

    def __lt__(self, other: "Money") -> bool:
        self._check(other)
        return self.amount < other.amount

    def __le__(self, other: "Money") -> bool:
        self._check(other)
        return self.amount <= other.amount

    def __gt__(self, other: "Money") -> bool:
        self._check(other)
        return self.amount > other.amount

    def __ge__(self, other: "Money") -> bool:
        self._check(other)
        return self.amount >= other.amount

    def __str__(self) -> str:
        return f"{self.amount} {self.currency}"


def accrue_simple_interest(outstanding: Money, annual_rate: RatioLike,
                           days: int, day_count_base: int = 360) -> Money:
    """Simple interest for a period, half-up to the cent.

    ``outstanding * annual_rate * days / day_count_base`` computed exactly
    in decimal and rounded once at the end.
    """
    if days < 0:
        raise BadAmount(f"negative accrual period: {days} days")
    if day_count_base not in (360, 365):
        raise BadAmount(f"unsupported day-count base: {day_count_base}")
    rate = _as_decimal(annual_rate)
    if rate < 0:
        raise BadAmount(f"negative interest rate: {rate}")
    raw = outstanding.amount * rate * Decimal(days) / Decimal(day_count_base)
    return Money(raw.quantize(CENT, rounding=ROUND_HALF_UP), outstanding.currency)


def split_exact(total: Money, fractions: dict[str, Decimal]) -> dict[str, Money]:
    """Split an amount by fractions that sum to 1, exactly.

    Each share is rounded half-up to the cent, then the residual cents
    (positive or negative) are assigned to the largest-fraction recipient
    so the shares always sum to ``total`` exactly. Deterministic: ties on
    fraction size resolve by key order.
    """
    if not fractions:
        raise BadAmount("no recipients")
    fsum = sum(fractions.values(), Decimal(0))
    if fsum != 1:
        raise BadAmount(f"fractions must sum to 1 exactly, got {fsum}")
    for name, frac in fractions.items():
        if frac < 0 or frac > 1:
            raise BadAmount(f"fraction out of [0,1] for {name}: {frac}")
    shares = {name: total.scaled(frac) for name, frac in fractions.items()}
    assigned = Money.zero(total.currency)
    for share in shares.values():
        assigned = assigned + share
    residual = total - assigned
    if not residual.is_zero():
        anchor = max(fractions, key=lambda n: (fractions[n], n))
        shares[anchor] = shares[anchor] + residual
    return shares
