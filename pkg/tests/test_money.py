"""Fixed-point money arithmetic: exactness, rounding, and guardrails."""

from decimal import Decimal

import pytest
from hypothesis import given, strategies as st

from circuitforge.money import (
    BadAmount,
    CurrencyMismatch,
    Money,
    accrue_simple_interest,
    split_exact,
)

CENTS = st.integers(min_value=-10**9, max_value=10**9)


def money(cents: int, currency: str = "F") -> Money:
    return Money(Decimal(cents) / 100, currency)


class TestConstruction:
    def test_of_parses_strings_exactly(self):
        assert Money.of("10.10").amount == Decimal("10.10")

    def test_of_accepts_ints(self):
        assert Money.of(3).amount == Decimal("3.00")

    def test_sub_cent_amounts_rejected(self):
        with pytest.raises(BadAmount):
            Money.of("1.005")

    def test_float_amounts_rejected(self):
        with pytest.raises(BadAmount):
            Money.of(1.01)  # type: ignore[arg-type]

    def test_unparsable_string_rejected(self):
        with pytest.raises(BadAmount):
            Money.of("ten")

    def test_str_shows_amount_and_currency(self):
        assert str(Money.of("5.25", "F")) == "5.25 F"


class TestArithmetic:
    @given(CENTS, CENTS)
    def test_addition_is_exact(self, a, b):
        assert (money(a) + money(b)).amount == Decimal(a + b) / 100

    @given(CENTS, CENTS)
    def test_subtraction_inverts_addition(self, a, b):
        assert (money(a) + money(b)) - money(b) == money(a)

    def test_currency_mismatch_raises(self):
        with pytest.raises(CurrencyMismatch):
            Money.of("1.00", "F") + Money.of("1.00", "G")

    def test_comparisons_respect_amounts(self):
        assert Money.of("1.00") < Money.of("2.00")
        assert Money.of("2.00") >= Money.of("2.00")

    def test_scaled_rounds_half_up(self):
        # 10.01 * 0.5 = 5.005 -> 5.01 (half-up, not banker's)
        assert Money.of("10.01").scaled(Decimal("0.5")) == Money.of("5.01")

    def test_scaled_rejects_float_ratio(self):
        with pytest.raises(BadAmount):
            Money.of("1.00").scaled(0.5)  # type: ignore[arg-type]


class TestSimpleInterest:
    def test_thirty_days_at_five_percent(self):
        # 90 * 0.05 * 30/360 = 0.375 -> 0.38 half-up
        got = accrue_simple_interest(Money.of("90.00"), Decimal("0.05"), 30)
        assert got == Money.of("0.38")

    def test_full_year_matches_rate(self):
        got = accrue_simple_interest(Money.of("100.00"), Decimal("0.15"), 360)
        assert got == Money.of("15.00")

    def test_zero_days_accrues_nothing(self):
        got = accrue_simple_interest(Money.of("100.00"), Decimal("0.15"), 0)
        assert got.is_zero()

    def test_negative_days_rejected(self):
        with pytest.raises(BadAmount):
            accrue_simple_interest(Money.of("1.00"), Decimal("0.1"), -1)

    def test_negative_rate_rejected(self):
        with pytest.raises(BadAmount):
            accrue_simple_interest(Money.of("1.00"), Decimal("-0.1"), 30)

    def test_unsupported_day_count_rejected(self):
        with pytest.raises(BadAmount):
            accrue_simple_interest(Money.of("1.00"), Decimal("0.1"), 30,
                                   day_count_base=364)

    @given(st.integers(min_value=1, max_value=10**6),
           st.integers(min_value=0, max_value=720))
    def test_accrual_never_negative(self, cents, days):
        got = accrue_simple_interest(money(cents), Decimal("0.1507"), days)
        assert not got.is_negative()


class TestSplitExact:
    def test_shares_always_sum_to_total(self):
        fractions = {"local": Decimal("0.25"), "state": Decimal("0.25"),
                     "federal": Decimal("0.50"), "bank": Decimal("0")}
        total = Money.of("0.01")
        shares = split_exact(total, fractions)
        assert sum((s for s in shares.values()), Money.zero()) == total

    @given(st.integers(min_value=0, max_value=10**7))
    def test_residual_cent_lands_on_largest_fraction(self, cents):
        fractions = {"a": Decimal("0.3"), "b": Decimal("0.3"),
                     "c": Decimal("0.4")}
        total = money(cents)
        shares = split_exact(total, fractions)
        assert sum((s for s in shares.values()), Money.zero()) == total

    def test_fractions_must_sum_to_one(self):
        with pytest.raises(BadAmount):
            split_exact(Money.of("1.00"), {"a": Decimal("0.5")})

    def test_empty_recipients_rejected(self):
        with pytest.raises(BadAmount):
            split_exact(Money.of("1.00"), {})

    def test_deterministic_tie_break(self):
        fractions = {"b": Decimal("0.5"), "a": Decimal("0.5")}
        first = split_exact(Money.of("0.01"), fractions)
        second = split_exact(Money.of("0.01"), fractions)
        assert first == second
