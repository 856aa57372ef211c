"""Seeded reconstruction of a loan book from its summary statistics.

The published record of the loan book is a handful of summary tables:
duration-class counts, seasonal start/end counts, per-month coincidence
counts, and the mean nominal rate. This module builds a concrete dataset
of dated records that reproduces all of those statistics exactly, so the
summary operations can be exercised end to end.

The search is layered, and every layer is driven by one seeded RNG:

1. Month marginals. Coincidence counts fix the difference between each
   month's starts and the previous month's ends; a small backtracking
   search picks per-month start/end counts that also hit the seasonal
   totals.
2. Start/end pairing. Each loan occupies a contiguous run of months.
   Total month-coverage must equal the coincidence total, which — given
   the marginals — forces the exact number of loans that wrap across the
   December/January boundary. A randomized sweep opens loans month by
   month and closes them against end slots, retrying with fresh
   randomness when it corners itself.
3. Dates. Start/end days are sampled so each loan's day count lands in
   its assigned duration class (a one-month loan must be a 30-day loan
   inside a 31-day month).
4. Rates. Nominal rates are sampled inside the documented band and then
   nudged in 0.01-percentage-point steps until the mean is exact.

All retries draw from one move budget; exhausting it raises
``Unsatisfiable`` naming the tightest constraint.
"""

from __future__ import annotations

import calendar
import datetime
import random
from dataclasses import dataclass
from decimal import Decimal

from .errors import Unsatisfiable
from .records import (
    DatasetSummary,
    LoanDataset,
    LoanRecord,
    _MONTH_SEASON,
    summarize,
)

# The dataset is folded onto one canonical (non-leap) year; loans crossing
# the year boundary end in the following year.
FOLD_YEAR = 1398

MOVE_BUDGET = 1_000_000

RATE_QUANTUM = Decimal("0.0001")
RATE_LOW = Decimal("0.0770")
RATE_HIGH = Decimal("0.2880")

# Duration-day ranges per duration class. The generator assigns classes by
# months-touched: 1-2 months -> ~60d, 3 months -> ~60d or ~95d,
# 4 months -> ~95d or ~120d, 5 months -> ~120d.
BUCKET_RANGES = ((30, 77), (78, 107), (108, 150))
MAX_MONTHS_TOUCHED = 5

CANONICAL_SUMMARY = DatasetSummary(
    bucket_counts=(39, 9, 5),
    season_starts=(15, 11, 13, 14),
    season_ends=(18, 9, 12, 14),
    monthly_coincidence=(16, 13, 11, 5, 5, 10, 10, 12, 12, 8, 9, 13),
    mean_nominal_rate=Decimal("0.1507"),
)


class _Budget:
    def __init__(self, limit: int) -> None:
        self.limit = limit
        self.used = 0

    def spend(self, n: int, tightest: str) -> None:
        self.used += n
        if self.used > self.limit:
            raise Unsatisfiable(
                f"search budget exhausted; tightest constraint: {tightest}")


def _month_len(month_index: int) -> int:
    return calendar.monthrange(FOLD_YEAR, month_index + 1)[1]


def _season_months() -> list[list[int]]:
    groups: list[list[int]] = [[], [], [], []]
    for month in range(1, 13):
        groups[_MONTH_SEASON[month]].append(month - 1)
    return groups


def _solve_marginals(constraints: DatasetSummary, rng: random.Random,
                     budget: _Budget) -> tuple[list[int], list[int]]:
    """Per-month end counts e and start counts s hitting all marginal sums."""
    total = sum(constraints.season_starts)
    if total != sum(constraints.season_ends):
        raise Unsatisfiable(
            "seasonal start and end totals disagree "
            f"({sum(constraints.season_starts)} starts vs "
            f"{sum(constraints.season_ends)} ends)")
    if sum(constraints.bucket_counts) != total:
        raise Unsatisfiable(
            f"duration-class counts sum to {sum(constraints.bucket_counts)} "
            f"but the seasonal tables describe {total} loans")
    c = constraints.monthly_coincidence
    delta = [c[m] - c[m - 1] for m in range(12)]
    season_of = [_MONTH_SEASON[m + 1] for m in range(12)]
    ends = [0] * 12
    starts = [0] * 12

    end_left = list(constraints.season_ends)
    start_left = list(constraints.season_starts)
    months_left_e = [0, 0, 0, 0]
    months_left_s = [0, 0, 0, 0]
    for m in range(12):
        months_left_e[season_of[m]] += 1
        months_left_s[season_of[m]] += 1

    def place_start(m: int, value: int) -> bool:
        if value < 0 or value > start_left[season_of[m]]:
            return False
        starts[m] = value
        start_left[season_of[m]] -= value
        months_left_s[season_of[m]] -= 1
        if months_left_s[season_of[m]] == 0 and start_left[season_of[m]] != 0:
            unplace_start(m)
            return False
        return True

    def unplace_start(m: int) -> None:
        start_left[season_of[m]] += starts[m]
        months_left_s[season_of[m]] += 1
        starts[m] = 0

    def search(m: int) -> bool:
        budget.spend(1, "seasonal totals vs coincidence recurrence")
        if m == 12:
            # s[0] depends on e[11], closing the circle.
            return place_start(0, ends[11] + delta[0])
        season = season_of[m]
        ceiling = end_left[season]
        choices = list(range(ceiling + 1))
        rng.shuffle(choices)
        for value in choices:
            if months_left_e[season] == 1 and value != ceiling:
                continue
            ends[m] = value
            end_left[season] -= value
            months_left_e[season] -= 1
            placed = m == 11 or place_start(m + 1, value + delta[m + 1])
            if placed:
                if search(m + 1):
                    return True
                if m != 11:
                    unplace_start(m + 1)
            end_left[season] += value
            months_left_e[season] += 1
            ends[m] = 0
        return False

    if not search(0):
        raise Unsatisfiable(
            "no per-month start/end counts satisfy the seasonal totals "
            "together with the coincidence recurrence")
    return ends, starts


@dataclass
class _Interval:
    start_month: int
    end_month: int
    wraps: bool

    @property
    def months_touched(self) -> int:
        span = (self.end_month - self.start_month) % 12
        return span + 1


# Wrapping loans start late in the year and end early in the next; with at
# most five months touched, a start in month sm can wrap to an end in any
# month em <= sm - 8 (0-indexed), so only Sep-Dec starts and Jan-Apr ends.
_WRAP_START_MONTHS = range(8, 12)
_WRAP_END_MONTHS = range(0, 4)


def _capped_compositions(total: int, caps: list[int]) -> list[list[int]]:
    """All nonnegative integer vectors below ``caps`` summing to ``total``."""
    out: list[list[int]] = []

    def rec(pos: int, left: int, acc: list[int]) -> None:
        if pos == len(caps):
            if left == 0:
                out.append(list(acc))
            return
        tail_cap = sum(caps[pos + 1:])
        low = max(0, left - tail_cap)
        for v in range(low, min(caps[pos], left) + 1):
            acc.append(v)
            rec(pos + 1, left - v, acc)
            acc.pop()

    rec(0, total, [])
    return out


def _wrap_distributions(ends: list[int], starts: list[int], wraps: int,
                        rng: random.Random) -> tuple[list[int], list[int]] | None:
    """Pick how many wrap loans end/start in each eligible month.

    The within-year remainder must stay matchable: ends in any prefix of
    months cannot exceed starts in that prefix (non-wrap loans run
    forward), and symmetrically for suffixes on the start side.
    """
    end_caps = [ends[m] for m in _WRAP_END_MONTHS]
    start_caps = [starts[m] for m in _WRAP_START_MONTHS]

    def prefix_ok(wrap_ends: list[int]) -> bool:
        run = 0
        for m in range(12):
            taken = wrap_ends[m] if m < len(wrap_ends) else 0
            run += starts[m] - (ends[m] - taken)
            if run < 0:
                return False
        return True

    def suffix_ok(wrap_starts: list[int]) -> bool:
        run = 0
        for m in range(11, -1, -1):
            taken = wrap_starts[m - 8] if m >= 8 else 0
            run += ends[m] - (starts[m] - taken)
            if run < 0:
                return False
        return True

    end_choices = [we for we in _capped_compositions(wraps, end_caps)
                   if prefix_ok(we)]
    start_choices = [ws for ws in _capped_compositions(wraps, start_caps)
                     if suffix_ok(ws)]
    if not end_choices or not start_choices:
        return None
    rng.shuffle(end_choices)
    rng.shuffle(start_choices)
    # Staircase compatibility: Sep starts can only end in Jan, Sep+Oct in
    # Jan+Feb, and so on.
    for ws in start_choices:
        for we in end_choices:
            if all(sum(ws[:k + 1]) <= sum(we[:k + 1]) for k in range(3)):
                return we, ws
    return None


def _match_wraps(wrap_ends: list[int], wrap_starts: list[int]) -> list[_Interval]:
    remaining = list(wrap_ends)
    intervals = []
    for k, sm in enumerate(_WRAP_START_MONTHS):
        for _ in range(wrap_starts[k]):
            em = next(m for m in range(sm - 7) if remaining[m] > 0)
            remaining[em] -= 1
            intervals.append(_Interval(sm, em, wraps=True))
    return intervals


def _sweep_within_year(ends: list[int], starts: list[int],
                       rng: random.Random) -> list[_Interval] | None:
    """Match non-wrapping starts to ends, earliest deadline first."""
    intervals: list[_Interval] = []
    open_months: list[int] = []
    for month in range(12):
        open_months.extend([month] * starts[month])
        # Oldest opens have the earliest deadline (start month + 4); a
        # same-month close is only allowed inside a 31-day month.
        eligible = sorted(
            (i for i, sm in enumerate(open_months)
             if sm < month or _month_len(month) == 31),
            key=lambda i: (open_months[i], rng.random()))
        slots = ends[month]
        if len(eligible) < slots:
            return None
        chosen = eligible[:slots]
        for i in sorted(chosen, reverse=True):
            sm = open_months.pop(i)
            if month - sm >= MAX_MONTHS_TOUCHED:
                return None
            intervals.append(_Interval(sm, month, wraps=False))
        if any(month - sm >= MAX_MONTHS_TOUCHED - 1 for sm in open_months):
            return None
    if open_months:
        return None
    return intervals


def _bucket_penalty(intervals: list[_Interval],
                    bucket_counts: tuple[int, int, int]) -> int:
    counts = [0] * (MAX_MONTHS_TOUCHED + 1)
    for interval in intervals:
        counts[interval.months_touched] += 1
    n1, n2, n3, n4, n5 = counts[1:]
    b60, b95, b120 = bucket_counts
    x3 = b60 - n1 - n2
    penalty = max(0, -x3) + max(0, x3 - n3)
    x4 = b95 - (n3 - min(max(x3, 0), n3))
    penalty += max(0, -x4) + max(0, x4 - n4)
    return penalty


def _swap_valid(a: _Interval, b: _Interval) -> bool:
    """Whether exchanging the end months of two intervals keeps both legal."""
    for sm, em, wraps in ((a.start_month, b.end_month, a.wraps),
                          (b.start_month, a.end_month, b.wraps)):
        if wraps:
            if not (em < sm and em <= sm - 8):
                return False
        else:
            if em < sm or (em - sm) >= MAX_MONTHS_TOUCHED:
                return False
            if em == sm and _month_len(sm) < 31:
                return False
    return True


def _repair_buckets(intervals: list[_Interval],
                    bucket_counts: tuple[int, int, int], rng: random.Random,
                    budget: _Budget) -> bool:
    """Random end-month swaps until the duration classes can be filled."""
    penalty = _bucket_penalty(intervals, bucket_counts)
    stale = 0
    while penalty > 0 and stale < 20_000:
        budget.spend(1, "duration-class counts vs month-span distribution")
        i, j = rng.randrange(len(intervals)), rng.randrange(len(intervals))
        if i == j:
            continue
        a, b = intervals[i], intervals[j]
        if a.wraps != b.wraps or not _swap_valid(a, b):
            stale += 1
            continue
        a.end_month, b.end_month = b.end_month, a.end_month
        new_penalty = _bucket_penalty(intervals, bucket_counts)
        if new_penalty <= penalty:
            stale = 0 if new_penalty < penalty else stale + 1
            penalty = new_penalty
        else:
            a.end_month, b.end_month = b.end_month, a.end_month
            stale += 1
    return penalty == 0


def _pair_intervals(ends: list[int], starts: list[int],
                    coincidence: tuple[int, ...],
                    bucket_counts: tuple[int, int, int], rng: random.Random,
                    budget: _Budget) -> list[_Interval] | None:
    """Pair start slots with end slots into contiguous month intervals."""
    wraps_needed = coincidence[0] - starts[0]
    if wraps_needed < 0:
        return None
    for attempt in range(40):
        budget.spend(53, "month-interval pairing")
        picked = _wrap_distributions(ends, starts, wraps_needed, rng)
        if picked is None:
            return None
        wrap_ends, wrap_starts = picked
        inner_ends = [ends[m] - (wrap_ends[m] if m < 4 else 0)
                      for m in range(12)]
        inner_starts = [starts[m] - (wrap_starts[m - 8] if m >= 8 else 0)
                        for m in range(12)]
        sweep = _sweep_within_year(inner_ends, inner_starts, rng)
        if sweep is None:
            continue
        intervals = _match_wraps(wrap_ends, wrap_starts) + sweep
        if _repair_buckets(intervals, bucket_counts, rng, budget):
            return intervals
    return None


def _assign_buckets(intervals: list[_Interval], bucket_counts: tuple[int, int, int],
                    rng: random.Random) -> list[int] | None:
    """Duration-class index per interval, or None when counts cannot fit."""
    by_span: dict[int, list[int]] = {1: [], 2: [], 3: [], 4: [], 5: []}
    for idx, interval in enumerate(intervals):
        span = interval.months_touched
        if span > MAX_MONTHS_TOUCHED:
            return None
        by_span[span].append(idx)
    n1, n2, n3 = len(by_span[1]), len(by_span[2]), len(by_span[3])
    n4, n5 = len(by_span[4]), len(by_span[5])
    b60, b95, b120 = bucket_counts
    three_month_short = b60 - n1 - n2       # 3-month loans in the ~60d class
    if not (0 <= three_month_short <= n3):
        return None
    four_month_mid = b95 - (n3 - three_month_short)  # 4-month loans in ~95d
    if not (0 <= four_month_mid <= n4):
        return None
    if (n4 - four_month_mid) + n5 != b120:
        return None
    buckets = [0] * len(intervals)
    shuffled3 = list(by_span[3])
    rng.shuffle(shuffled3)
    for idx in shuffled3[three_month_short:]:
        buckets[idx] = 1
    shuffled4 = list(by_span[4])
    rng.shuffle(shuffled4)
    for pos, idx in enumerate(shuffled4):
        buckets[idx] = 1 if pos < four_month_mid else 2
    for idx in by_span[5]:
        buckets[idx] = 2
    return buckets


def _assign_dates(interval: _Interval, bucket: int,
                  rng: random.Random) -> tuple[datetime.date, datetime.date]:
    lo, hi = BUCKET_RANGES[bucket]
    sm, em = interval.start_month, interval.end_month
    span = interval.months_touched
    if span == 1:
        # Only a 30-day loan fits inside one (31-day) month.
        return (datetime.date(FOLD_YEAR, sm + 1, 1),
                datetime.date(FOLD_YEAR, em + 1, 31))
    offset = sum(_month_len((sm + i) % 12) for i in range(span - 1))
    start_days = list(range(1, _month_len(sm) + 1))
    rng.shuffle(start_days)
    for sd in start_days:
        ed_lo = max(1, lo - offset + sd)
        ed_hi = min(_month_len(em), hi - offset + sd)
        if ed_lo > ed_hi:
            continue
        ed = rng.randint(ed_lo, ed_hi)
        end_year = FOLD_YEAR + 1 if interval.wraps else FOLD_YEAR
        return (datetime.date(FOLD_YEAR, sm + 1, sd),
                datetime.date(end_year, em + 1, ed))
    raise Unsatisfiable(
        f"no day assignment for a {span}-month loan in duration class {bucket}")


def _assign_rates(count: int, mean: Decimal, rng: random.Random) -> list[Decimal]:
    """Rates in the documented band whose mean is exactly ``mean``."""
    target_sum = (mean * count).quantize(RATE_QUANTUM)
    if not (RATE_LOW * count <= target_sum <= RATE_HIGH * count):
        raise Unsatisfiable(
            f"mean nominal rate {mean} lies outside the documented band "
            f"[{RATE_LOW}, {RATE_HIGH}]")
    # Anchor the documented extremes when the remaining entries can still
    # average out to the requested mean.
    leftover = target_sum - RATE_LOW - RATE_HIGH
    anchor = (count >= 2
              and RATE_LOW * (count - 2) <= leftover <= RATE_HIGH * (count - 2))
    rates = [RATE_LOW, RATE_HIGH] if anchor else []
    free_from = len(rates)
    if count > free_from:
        center = float(target_sum - sum(rates)) / (count - free_from)
        lo = max(float(RATE_LOW), center - 0.05)
        hi = min(float(RATE_HIGH), center + 0.05)
        while len(rates) < count:
            rates.append(Decimal(str(rng.uniform(lo, hi))).quantize(RATE_QUANTUM))
    gap = target_sum - sum(rates)
    step = RATE_QUANTUM if gap > 0 else -RATE_QUANTUM
    while gap != 0:
        if count == free_from:
            raise Unsatisfiable("mean nominal rate unreachable with anchored extremes")
        idx = rng.randrange(free_from, count)
        candidate = rates[idx] + step
        if RATE_LOW <= candidate <= RATE_HIGH:
            rates[idx] = candidate
            gap -= step
    rng.shuffle(rates)
    return rates


def reconstruct_dataset(constraints: DatasetSummary | None = None,
                        seed: int = 1) -> LoanDataset:
    """Build a dataset whose summary statistics match ``constraints``.

    Deterministic for a fixed (constraints, seed) pair. Different seeds
    may produce different records but always identical summaries.
    """
    if constraints is None:
        constraints = CANONICAL_SUMMARY
    rng = random.Random(seed)
    budget = _Budget(MOVE_BUDGET)
    last_failure = "duration-class assignment"
    for attempt in range(2_000):
        marginal_rng = random.Random(rng.getrandbits(64))
        ends, starts = _solve_marginals(constraints, marginal_rng, budget)
        intervals = _pair_intervals(ends, starts,
                                    constraints.monthly_coincidence,
                                    constraints.bucket_counts,
                                    marginal_rng, budget)
        budget.spend(53, last_failure)
        if intervals is None:
            last_failure = "month-interval pairing"
            continue
        buckets = _assign_buckets(intervals, constraints.bucket_counts,
                                  marginal_rng)
        if buckets is None:
            last_failure = "duration-class assignment"
            continue
        rates = _assign_rates(len(intervals), constraints.mean_nominal_rate,
                              marginal_rng)
        dated = []
        for interval, bucket in zip(intervals, buckets):
            start, end = _assign_dates(interval, bucket, marginal_rng)
            dated.append((start, end))
        order = sorted(range(len(intervals)),
                       key=lambda i: (dated[i][0], dated[i][1]))
        records = [
            LoanRecord(id=f"L{pos + 1:03d}", start_date=dated[i][0],
                       end_date=dated[i][1], nominal_annual_rate=rates[pos])
            for pos, i in enumerate(order)
        ]
        dataset = LoanDataset.of(records)
        achieved = summarize(dataset)
        if (achieved.bucket_counts == constraints.bucket_counts
                and achieved.season_starts == constraints.season_starts
                and achieved.season_ends == constraints.season_ends
                and achieved.monthly_coincidence == constraints.monthly_coincidence
                and achieved.mean_nominal_rate == constraints.mean_nominal_rate):
            return dataset
        last_failure = "self-verification of summary statistics"
    raise Unsatisfiable(
        f"no dataset found; tightest constraint: {last_failure}")
