"""Randomized soak tests: the accounting identity survives anything the
generator throws at the ledger, and a replayed log lands on identical
balances.
"""

import random
from decimal import Decimal

import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from circuitforge.ledger import (
    Account,
    AccountKind,
    AllocateToGovernment,
    Cancel,
    Funding,
    Ledger,
    LedgerConfig,
    LedgerError,
    Loan,
    LoanKind,
    Posting,
    RetainToBank,
    Sector,
    Side,
)
from circuitforge.money import Money

TRANSACTION_TARGET = 10_000


def build_sandbox(seed: int) -> tuple[Ledger, random.Random]:
    """A ledger with a spread of accounts across sectors, plus seed money."""
    rng = random.Random(seed)
    ledger = Ledger(policy=Cancel(), config=LedgerConfig(), chart=None)
    specs = [
        ("bank_vault", AccountKind.ASSET, Sector.BANK, False),
        ("bank_owing", AccountKind.LIABILITY, Sector.BANK, False),
        ("bank_worth", AccountKind.EQUITY, Sector.BANK, False),
        ("bank_earn", AccountKind.INCOME, Sector.BANK, False),
        ("firm_cash", AccountKind.ASSET, Sector.BORROWER, True),
        ("firm_owing", AccountKind.LIABILITY, Sector.BORROWER, False),
        ("firm_worth", AccountKind.EQUITY, Sector.BORROWER, False),
        ("firm_earn", AccountKind.INCOME, Sector.BORROWER, False),
        ("saver_cash", AccountKind.ASSET, Sector.DEPOSITOR, True),
        ("saver_worth", AccountKind.EQUITY, Sector.DEPOSITOR, False),
        ("town_cash", AccountKind.ASSET, Sector.GOVERNMENT_LOCAL, True),
        ("town_worth", AccountKind.EQUITY, Sector.GOVERNMENT_LOCAL, False),
        ("abroad_cash", AccountKind.ASSET, Sector.EXTERNAL_WORLD, True),
        ("abroad_worth", AccountKind.EQUITY, Sector.EXTERNAL_WORLD, False),
    ]
    for account_id, kind, sector, money in specs:
        ledger.register_account(
            Account(account_id, kind, sector, money=money))
    return ledger, rng

# Asset/liability/equity/income ids per sector for the generator.
SECTOR_ACCOUNTS = {
    Sector.BANK: ("bank_vault", "bank_owing", "bank_worth", "bank_earn"),
    Sector.BORROWER: ("firm_cash", "firm_owing", "firm_worth", "firm_earn"),
    Sector.DEPOSITOR: ("saver_cash", None, "saver_worth", None),
    Sector.GOVERNMENT_LOCAL: ("town_cash", None, "town_worth", None),
    Sector.EXTERNAL_WORLD: ("abroad_cash", None, "abroad_worth", None),
}


def random_balanced_postings(rng: random.Random) -> list[Posting]:
    """Postings balanced within each of 1-3 randomly chosen sectors."""
    postings: list[Posting] = []
    sectors = rng.sample(list(SECTOR_ACCOUNTS), k=rng.randint(1, 3))
    for sector in sectors:
        accounts = [a for a in SECTOR_ACCOUNTS[sector] if a]
        amount = Money(Decimal(rng.randint(1, 500_000)) / 100)
        if len(accounts) >= 2 and rng.random() < 0.5:
            first, second = rng.sample(accounts, k=2)
            # Two postings of the same amount on opposite sides always net
            # to zero within the sector regardless of account kinds.
            postings.append(Posting(first, Side.DEBIT, amount))
            postings.append(Posting(second, Side.CREDIT, amount))
        else:
            target = rng.choice(accounts)
            postings.append(Posting(target, Side.DEBIT, amount))
            postings.append(Posting(target, Side.CREDIT, amount))
    return postings


def assert_identity(ledger: Ledger) -> None:
    for sector, gap in ledger.identity_gaps().items():
        assert gap.is_zero(), f"identity broken for {sector}: {gap}"


def test_ten_thousand_random_transactions_hold_the_identity():
    ledger, rng = build_sandbox(seed=20260813)
    committed = 0
    while committed < TRANSACTION_TARGET:
        postings = random_balanced_postings(rng)
        ledger.post(postings, memo=f"random {committed}")
        committed += 1
        assert_identity(ledger)
    assert committed == TRANSACTION_TARGET
    assert len(ledger.log) == TRANSACTION_TARGET


def test_replay_of_random_log_is_exact():
    ledger, rng = build_sandbox(seed=4242)
    for index in range(2_000):
        ledger.post(random_balanced_postings(rng), memo=f"random {index}")
    replayed = Ledger.replay(ledger)
    assert replayed.canonical_balances() == ledger.canonical_balances()
    assert replayed.money_supply() == ledger.money_supply()


def test_same_seed_same_canonical_balances():
    first, rng_a = build_sandbox(seed=7)
    second, rng_b = build_sandbox(seed=7)
    for index in range(500):
        first.post(random_balanced_postings(rng_a), memo=str(index))
        second.post(random_balanced_postings(rng_b), memo=str(index))
    assert first.canonical_balances() == second.canonical_balances()


@settings(max_examples=60, suppress_health_check=[HealthCheck.too_slow])
@given(st.integers(min_value=0, max_value=2**32 - 1), st.integers(2, 40))
def test_identity_for_arbitrary_seeds(seed, steps):
    ledger, rng = build_sandbox(seed=seed)
    for index in range(steps):
        ledger.post(random_balanced_postings(rng), memo=str(index))
        assert_identity(ledger)
    replayed = Ledger.replay(ledger)
    assert replayed.canonical_balances() == ledger.canonical_balances()


@settings(max_examples=40)
@given(st.integers(min_value=1, max_value=10**6),
       st.decimals(min_value="0", max_value="0.5", places=4),
       st.integers(min_value=0, max_value=720))
def test_loan_lifecycle_holds_identity(cents, rate, days):
    ledger = Ledger(policy=RetainToBank())
    principal = Money(Decimal(cents) / 100)
    ledger.originate_loan(Loan(id="L", borrower="firm", principal=principal,
                               annual_rate=Decimal(rate)))
    assert_identity(ledger)
    accrued = ledger.accrue_interest("L", days, post=True)
    assert_identity(ledger)
    if accrued.is_positive() and accrued <= principal:
        ledger.pay_interest("L", accrued)
        assert_identity(ledger)
        remaining = ledger.balance(ledger.chart.deposit_claim("firm"))
        if remaining.is_positive():
            ledger.pay_principal("L", remaining)
            assert_identity(ledger)
    ledger.close_income()
    assert_identity(ledger)


@settings(max_examples=40)
@given(st.integers(min_value=100, max_value=10**6))
def test_allocation_conserves_money_supply(cents):
    policy = AllocateToGovernment()
    ledger = Ledger(policy=policy)
    principal = Money(Decimal(cents) / 100)
    ledger.originate_loan(Loan(id="L", borrower="firm", principal=principal,
                               annual_rate=Decimal("0")))
    before = ledger.money_supply()
    ledger.pay_principal("L", principal)
    assert ledger.money_supply() == before
    assert_identity(ledger)
