"""Loan-record statistics: duration classes, seasonality, coincidence,
utilization, and the CSV interchange format.
"""

import datetime
from decimal import Decimal

import pytest

from circuitforge.medici import (
    AllZero,
    BadRecord,
    BadTable,
    DatasetSummary,
    EmptyDataset,
    LoanDataset,
    LoanRecord,
    duration_buckets,
    effective_yield,
    mean_nominal_rate,
    monthly_coincidence,
    read_loans_csv,
    season_of,
    seasonality,
    summarize,
    transaction_yield,
    utilization,
    write_loans_csv,
)


def record(loan_id="L1", start="1398-01-01", end="1398-03-01",
           rate="0.15") -> LoanRecord:
    return LoanRecord(id=loan_id,
                      start_date=datetime.date.fromisoformat(start),
                      end_date=datetime.date.fromisoformat(end),
                      nominal_annual_rate=Decimal(rate))


class TestRecordValidation:
    def test_end_must_follow_start(self):
        with pytest.raises(BadRecord):
            record(start="1398-03-01", end="1398-03-01")

    def test_duration_window_enforced(self):
        with pytest.raises(BadRecord):
            record(start="1398-01-01", end="1398-01-15")
        with pytest.raises(BadRecord):
            record(start="1398-01-01", end="1398-12-01")

    def test_negative_rate_rejected(self):
        with pytest.raises(BadRecord):
            record(rate="-0.01")

    def test_months_touched_wraps_the_year_end(self):
        rec = record(start="1398-11-15", end="1399-01-20")
        assert rec.months_touched() == [11, 12, 1]


class TestDurationBuckets:
    def one(self, days: int) -> LoanDataset:
        start = datetime.date(1398, 1, 1)
        return LoanDataset.of([LoanRecord(
            id="L", start_date=start,
            end_date=start + datetime.timedelta(days=days),
            nominal_annual_rate=Decimal("0.1"))])

    def test_boundary_days_fall_to_the_lower_class(self):
        assert duration_buckets(self.one(77)) == (1, 0, 0)
        assert duration_buckets(self.one(78)) == (0, 1, 0)
        assert duration_buckets(self.one(107)) == (0, 1, 0)
        assert duration_buckets(self.one(108)) == (0, 0, 1)

    def test_empty_dataset_rejected(self):
        with pytest.raises(EmptyDataset):
            duration_buckets(LoanDataset.of([]))


class TestSeasonality:
    def test_month_to_season_mapping(self):
        assert season_of(12) == season_of(1) == season_of(2) == "winter"
        assert season_of(3) == season_of(5) == "spring"
        assert season_of(6) == season_of(8) == "summer"
        assert season_of(9) == season_of(11) == "fall"

    def test_counts_by_season(self):
        data = LoanDataset.of([
            record("a", "1398-01-10", "1398-03-10"),   # winter -> spring
            record("b", "1398-07-01", "1398-09-15"),   # summer -> fall
            record("c", "1398-12-05", "1399-02-20"),   # winter -> winter
        ])
        starts, ends = seasonality(data)
        assert starts == (2, 0, 1, 0)
        assert ends == (1, 1, 0, 1)


class TestCoincidence:
    def test_folds_every_year_onto_one_axis(self):
        data = LoanDataset.of([
            record("a", "1398-01-10", "1398-03-10"),
            record("b", "1402-02-01", "1402-04-01"),
        ])
        counts = monthly_coincidence(data)
        assert counts[0] == 1   # January: only the first loan
        assert counts[1] == 2   # February: both, despite different years
        assert counts[2] == 2
        assert counts[3] == 1
        assert sum(counts) == 6

    def test_utilization_is_mean_over_peak(self):
        assert utilization((4, 4, 4, 4, 4, 4, 4, 4, 4, 4, 4, 4)) == 1
        got = utilization((16, 13, 11, 5, 5, 10, 10, 12, 12, 8, 9, 13))
        assert got == Decimal(124) / Decimal(12 * 16)

    def test_all_zero_counts_rejected(self):
        with pytest.raises(AllZero):
            utilization((0,) * 12)


class TestYields:
    def test_transaction_yield_scales_by_duration(self):
        rec = record(start="1398-01-01", end="1398-04-01", rate="0.12")
        expected = Decimal("0.12") * rec.duration_days / Decimal(360)
        assert transaction_yield(rec) == expected

    def test_effective_yield_is_utilization_times_mean_rate(self):
        got = effective_yield(Decimal("0.645833"), Decimal("0.1507"))
        assert got == Decimal("0.645833") * Decimal("0.1507")

    def test_mean_rate_is_arithmetic_mean(self):
        data = LoanDataset.of([record("a", rate="0.10"),
                               record("b", rate="0.20")])
        assert mean_nominal_rate(data) == Decimal("0.15")


class TestCanonicalStatistics:
    """The documented loan book's headline statistics."""

    def test_utilization_and_yield(self):
        summary = DatasetSummary(
            bucket_counts=(39, 9, 5),
            season_starts=(15, 11, 13, 14),
            season_ends=(18, 9, 12, 14),
            monthly_coincidence=(16, 13, 11, 5, 5, 10, 10, 12, 12, 8, 9, 13),
            mean_nominal_rate=Decimal("0.1507"),
        )
        assert summary.record_count == 53
        assert abs(summary.utilization - Decimal("0.6458")) < Decimal("0.0001")
        assert abs(summary.effective_yield - Decimal("0.0973")) < Decimal("0.0001")


class TestCsvInterchange:
    def test_round_trip_preserves_every_field(self, tmp_path):
        data = LoanDataset.of([
            record("a", "1398-01-10", "1398-03-10", "0.1507"),
            record("b", "1398-07-01", "1398-09-15", "0.0770"),
        ])
        path = tmp_path / "loans.csv"
        write_loans_csv(data, path)
        back = read_loans_csv(path)
        assert [r.id for r in back] == ["a", "b"]
        assert back.records[0].start_date == datetime.date(1398, 1, 10)
        assert back.records[0].nominal_annual_rate == Decimal("0.1507")
        assert back.records[1].nominal_annual_rate == Decimal("0.0770")

    def test_wrong_header_rejected(self, tmp_path):
        path = tmp_path / "loans.csv"
        path.write_text("id,from,to,rate\n")
        with pytest.raises(BadTable):
            read_loans_csv(path)

    def test_ragged_row_rejected(self, tmp_path):
        path = tmp_path / "loans.csv"
        path.write_text("id,start_date,end_date,nominal_annual_rate_pct\n"
                        "a,1398-01-01\n")
        with pytest.raises(BadTable):
            read_loans_csv(path)

    def test_bad_cell_names_the_line(self, tmp_path):
        path = tmp_path / "loans.csv"
        path.write_text("id,start_date,end_date,nominal_annual_rate_pct\n"
                        "a,1398-01-01,1398-03-01,fifteen\n")
        with pytest.raises(BadTable, match=":2:"):
            read_loans_csv(path)

    def test_empty_file_rejected(self, tmp_path):
        path = tmp_path / "loans.csv"
        path.write_text("")
        with pytest.raises(BadTable):
            read_loans_csv(path)
