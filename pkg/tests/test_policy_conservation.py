"""Conservation laws for the principal-cancellation policies.

What distinguishes the policies is the fate of repaid principal: it can
be destroyed, redirected into circulation elsewhere, or — for venture
resolutions — never collected at all. These tests pin each policy's
money-supply signature against a common borrowing pattern.
"""

from decimal import Decimal

from circuitforge.ledger import (
    AllocateToGovernment,
    Cancel,
    Ledger,
    Loan,
    LoanKind,
    RetainToBank,
    VentureRetain,
)
from circuitforge.money import Money


def borrow_and_repay(policy, count=5, principal="100.00") -> Ledger:
    """Originate ``count`` deposit-funded loans and repay them in full."""
    ledger = Ledger(policy=policy)
    for index in range(count):
        ledger.originate_loan(Loan(
            id=f"L{index}", borrower=f"firm{index}",
            principal=Money.of(principal), annual_rate=Decimal("0")))
    for index in range(count):
        ledger.pay_principal(f"L{index}", Money.of(principal))
    return ledger


def test_cancel_restores_the_money_supply():
    ledger = borrow_and_repay(Cancel())
    assert ledger.money_supply().is_zero()


def test_retain_also_removes_money_but_banks_it_as_income():
    ledger = borrow_and_repay(RetainToBank())
    assert ledger.money_supply().is_zero()
    assert ledger.balance(ledger.chart.bank_income()) == Money.of("500.00")
    assert ledger.balance(ledger.chart.bank_capital()) == Money.of("500.00")


def test_allocation_keeps_repaid_principal_in_circulation():
    baseline = borrow_and_repay(Cancel())
    allocated = borrow_and_repay(AllocateToGovernment())
    repaid_total = Money.of("500.00")
    assert allocated.money_supply() - baseline.money_supply() == repaid_total


def test_allocation_difference_scales_with_amount_repaid():
    for count in (1, 3, 7):
        baseline = borrow_and_repay(Cancel(), count=count)
        allocated = borrow_and_repay(AllocateToGovernment(), count=count)
        expected = Money.of("100.00").scaled(count)
        assert allocated.money_supply() - baseline.money_supply() == expected


def test_allocation_splits_follow_the_fractions():
    ledger = borrow_and_repay(AllocateToGovernment(
        local=Decimal("0.25"), state=Decimal("0.25"),
        federal=Decimal("0.50"), bank=Decimal("0")), count=1)
    chart = ledger.chart
    assert ledger.balance(chart.deposit_claim("gov_local")) == Money.of("25.00")
    assert ledger.balance(chart.deposit_claim("gov_state")) == Money.of("25.00")
    assert ledger.balance(chart.deposit_claim("gov_federal")) == Money.of("50.00")


def test_full_loss_leaves_the_invested_money_in_circulation():
    ledger = Ledger(policy=VentureRetain())
    invested = Money.of("100.00")
    ledger.originate_loan(Loan(id="V", borrower="startup", principal=invested,
                               annual_rate=Decimal("0"),
                               kind=LoanKind.AT_RISK_VENTURE))
    before = ledger.money_supply()
    ledger.haircut("V", invested)
    assert ledger.money_supply() == before == invested
    assert ledger.loans["V"].closed


def test_conversion_at_book_also_preserves_circulation():
    ledger = Ledger(policy=VentureRetain())
    invested = Money.of("250.00")
    ledger.originate_loan(Loan(id="V", borrower="startup", principal=invested,
                               annual_rate=Decimal("0"),
                               kind=LoanKind.AT_RISK_VENTURE))
    ledger.convert_to_equity("V", invested)
    assert ledger.money_supply() == invested


def test_identities_hold_under_every_policy():
    for policy in (Cancel(), RetainToBank(), AllocateToGovernment()):
        ledger = borrow_and_repay(policy)
        for sector, gap in ledger.identity_gaps().items():
            assert gap.is_zero(), f"{policy.kind}/{sector}: {gap}"
