"""Dated-series algebra: flow normalization, allocation, and tax ratios."""

import datetime
from decimal import Decimal

import pytest

from circuitforge.cli.main import bundled_data
from circuitforge.dataio import read_series
from circuitforge.policy import (
    AllocationConfig,
    BadSeries,
    DivisionByZeroDate,
    NonPositiveMaturity,
    NoOverlap,
    Series,
    UNIT_CURRENCY_BILLIONS,
    UNIT_MONTHS,
    allocate_principal,
    normalize_principal_flow,
    tax_uplift,
)


def series(unit, pairs) -> Series:
    return Series.of(unit, pairs)


class TestSeriesBasics:
    def test_points_sorted_and_strictly_increasing_dates(self):
        with pytest.raises(BadSeries):
            series(UNIT_MONTHS, [("2020-01-01", "1"), ("2020-01-01", "2")])

    def test_float_values_rejected(self):
        with pytest.raises(BadSeries):
            series(UNIT_MONTHS, [("2020-01-01", 1.5)])

    def test_median_of_odd_count_is_the_middle_order_statistic(self):
        s = series(UNIT_CURRENCY_BILLIONS,
                   [("2020-01-01", "5"), ("2020-02-01", "1"),
                    ("2020-03-01", "9")])
        assert s.median_value() == Decimal("5")


class TestFlowNormalization:
    def test_flow_is_stock_times_twelve_over_months(self):
        stock = series(UNIT_CURRENCY_BILLIONS, [("2020-01-01", "1357")])
        maturity = series(UNIT_MONTHS, [("2020-01-01", "17.58")])
        flow = normalize_principal_flow(stock, maturity)
        expected = Decimal("1357") * 12 / Decimal("17.58")
        assert flow.values()[0] == expected
        assert abs(expected - Decimal("926.2")) / Decimal("926.2") < Decimal("0.01")

    def test_maturity_twelve_months_is_the_identity(self):
        stock = series(UNIT_CURRENCY_BILLIONS,
                       [("2020-01-01", "100"), ("2020-02-01", "200")])
        maturity = series(UNIT_MONTHS, [("2020-01-01", "12")])
        flow = normalize_principal_flow(stock, maturity)
        assert flow.values() == (Decimal("100"), Decimal("200"))

    def test_doubling_the_stock_doubles_the_flow(self):
        stock = series(UNIT_CURRENCY_BILLIONS,
                       [("2020-01-01", "100"), ("2020-02-01", "150")])
        doubled = series(UNIT_CURRENCY_BILLIONS,
                         [("2020-01-01", "200"), ("2020-02-01", "300")])
        maturity = series(UNIT_MONTHS,
                          [("2020-01-01", "17"), ("2020-02-01", "19")])
        once = normalize_principal_flow(stock, maturity)
        twice = normalize_principal_flow(doubled, maturity)
        assert [v * 2 for v in once.values()] == list(twice.values())

    def test_maturity_interpolates_linearly_between_points(self):
        stock = series(UNIT_CURRENCY_BILLIONS, [("2020-01-16", "120")])
        maturity = series(UNIT_MONTHS,
                          [("2020-01-01", "10"), ("2020-01-31", "20")])
        flow = normalize_principal_flow(stock, maturity)
        assert flow.values()[0] == Decimal("120") * 12 / Decimal("15")

    def test_maturity_extends_flat_beyond_its_ends(self):
        stock = series(UNIT_CURRENCY_BILLIONS,
                       [("2019-01-01", "100"), ("2021-01-01", "100")])
        maturity = series(UNIT_MONTHS, [("2020-01-01", "12")])
        flow = normalize_principal_flow(stock, maturity)
        assert flow.values() == (Decimal("100"), Decimal("100"))

    def test_disjoint_date_ranges_rejected(self):
        stock = series(UNIT_CURRENCY_BILLIONS, [("2020-01-01", "100")])
        maturity = series(UNIT_MONTHS, [("2020-01-01", "12")])
        with pytest.raises(BadSeries):
            normalize_principal_flow(stock, stock)
        with pytest.raises(NoOverlap):
            normalize_principal_flow(
                series(UNIT_CURRENCY_BILLIONS, []), maturity)

    def test_non_positive_maturity_rejected(self):
        stock = series(UNIT_CURRENCY_BILLIONS, [("2020-01-01", "100")])
        maturity = series(UNIT_MONTHS, [("2020-01-01", "0")])
        with pytest.raises(NonPositiveMaturity):
            normalize_principal_flow(stock, maturity)

    def test_bundled_sample_median_flow(self):
        stock = read_series(bundled_data("sample_busloans.csv"),
                            UNIT_CURRENCY_BILLIONS)
        maturity = read_series(bundled_data("sample_edanq.csv"), UNIT_MONTHS)
        flow = normalize_principal_flow(stock, maturity)
        median = flow.median_value()
        assert abs(median - Decimal("926.2")) / Decimal("926.2") < Decimal("0.01")


class TestAllocation:
    def default_config(self) -> AllocationConfig:
        return AllocationConfig(local=Decimal("0.25"), state=Decimal("0.25"),
                                federal=Decimal("0.50"), bank=Decimal("0"))

    def test_recipient_series_sum_back_to_the_flow(self):
        flow = series(UNIT_CURRENCY_BILLIONS,
                      [("2020-01-01", "1100"), ("2020-02-01", "926.2")])
        split = allocate_principal(flow, self.default_config())
        for index, (_, value) in enumerate(flow.points):
            total = sum(part.values()[index] for part in split.values())
            assert total == value

    def test_quarter_quarter_half_split(self):
        flow = series(UNIT_CURRENCY_BILLIONS, [("2020-01-01", "1100")])
        split = allocate_principal(flow, self.default_config())
        assert split["local"].values()[0] == Decimal("275")
        assert split["state"].values()[0] == Decimal("275")
        assert split["federal"].values()[0] == Decimal("550")
        assert split["bank"].values()[0] == Decimal("0")

    def test_bank_only_split_leaves_governments_empty(self):
        config = AllocationConfig(local=Decimal("0"), state=Decimal("0"),
                                  federal=Decimal("0"), bank=Decimal("1"))
        flow = series(UNIT_CURRENCY_BILLIONS, [("2020-01-01", "42")])
        split = allocate_principal(flow, config)
        assert split["bank"].values()[0] == Decimal("42")
        assert split["federal"].values()[0] == Decimal("0")

    def test_fractions_must_sum_to_one(self):
        with pytest.raises(ValueError):
            AllocationConfig(local=Decimal("0.5"), state=Decimal("0.5"),
                             federal=Decimal("0.5"), bank=Decimal("0"))


class TestTaxUplift:
    def test_published_reference_ratios(self):
        receipts = series(UNIT_CURRENCY_BILLIONS,
                          [("2018-01-01", "1100"), ("2019-01-01", "1100")])
        tax = series(UNIT_CURRENCY_BILLIONS,
                     [("2018-01-01", "2643"), ("2019-01-01", "2743")])
        uplift = tax_uplift(receipts, tax)
        assert uplift.values() == (Decimal("41.62"), Decimal("40.10"))

    def test_zero_receipts_give_zero_percent(self):
        receipts = series(UNIT_CURRENCY_BILLIONS, [("2018-01-01", "0")])
        tax = series(UNIT_CURRENCY_BILLIONS, [("2018-01-01", "2643")])
        assert tax_uplift(receipts, tax).values() == (Decimal("0.00"),)

    def test_zero_tax_revenue_names_the_date(self):
        receipts = series(UNIT_CURRENCY_BILLIONS, [("2018-01-01", "1100")])
        tax = series(UNIT_CURRENCY_BILLIONS, [("2018-01-01", "0")])
        with pytest.raises(DivisionByZeroDate, match="2018-01-01"):
            tax_uplift(receipts, tax)

    def test_mismatched_dates_rejected(self):
        receipts = series(UNIT_CURRENCY_BILLIONS, [("2018-01-01", "1100")])
        tax = series(UNIT_CURRENCY_BILLIONS, [("2018-06-01", "2643")])
        with pytest.raises(BadSeries):
            tax_uplift(receipts, tax)

    def test_result_is_quantized_to_basis_points_of_percent(self):
        receipts = series(UNIT_CURRENCY_BILLIONS, [("2018-01-01", "1")])
        tax = series(UNIT_CURRENCY_BILLIONS, [("2018-01-01", "3")])
        value = tax_uplift(receipts, tax).values()[0]
        assert value == Decimal("33.33")
