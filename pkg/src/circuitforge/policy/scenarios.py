"""Ledger-backed simulations: government allocation and venture portfolios.

``run_policy_scenario`` drives a cohort economy period by period: loans
are originated, repaid at term under the configured cancellation policy,
and — when principal is redirected to treasuries — the government
respends a configurable share back into the private sector.

``run_venture_portfolio`` resolves a batch of at-risk venture loans via
equity conversion and/or haircuts, quantifying the money that stays in
circulation permanently.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from decimal import Decimal, InvalidOperation

from ..ledger.engine import GOVERNMENT_SECTORS, Chart, Ledger, LedgerConfig
from ..ledger.errors import BadScenario
from ..ledger.loans import (
    AllocateToGovernment,
    CancellationPolicy,
    Funding,
    Loan,
    LoanKind,
    VentureRetain,
    parse_policy,
)
from ..ledger.model import Account, AccountKind, Posting, Sector, Side
from ..money import Money

BUSINESS_BORROWER = "business"
PORTFOLIO_BORROWER = "portfolio"


def _decimal(value, label: str) -> Decimal:
    if isinstance(value, float):
        raise BadScenario(f"{label}: write amounts as strings, not floats")
    try:
        return Decimal(value)
    except (InvalidOperation, TypeError, ValueError):
        raise BadScenario(f"{label}: unparsable number {value!r}") from None


@dataclass(frozen=True)
class PolicyScenario:
    """Cohort economy: ``loans_per_period`` equal loans each period, each
    repaid in full ``term_periods`` later under ``policy``."""

    periods: int
    loan_principal: Money
    name: str = "policy-scenario"
    loans_per_period: int = 1
    annual_rate: Decimal = Decimal("0")
    term_periods: int = 1
    respend_share: Decimal = Decimal("1")
    policy: CancellationPolicy = field(default_factory=AllocateToGovernment)

    def __post_init__(self) -> None:
        if self.periods < 1:
            raise BadScenario(f"periods must be >= 1, got {self.periods}")
        if self.loans_per_period < 0:
            raise BadScenario("loans_per_period must be >= 0")
        if not self.loan_principal.is_positive():
            raise BadScenario(f"loan principal must be positive, got "
                              f"{self.loan_principal}")
        if self.term_periods < 1:
            raise BadScenario("term_periods must be >= 1")
        if not (0 <= self.respend_share <= 1):
            raise BadScenario(
                f"respend share must lie in [0, 1], got {self.respend_share}")
        if isinstance(self.policy, VentureRetain):
            raise BadScenario("cohort scenarios need a repayment policy; "
                              "venture loans belong in run_venture_portfolio")

    @classmethod
    def from_mapping(cls, doc) -> "PolicyScenario":
        if not isinstance(doc, dict):
            raise BadScenario("scenario document must be a JSON object")
        known = {"name", "periods", "loans_per_period", "loan_principal",
                 "annual_rate", "term_periods", "respend_share", "policy",
                 "currency"}
        unknown = set(doc) - known
        if unknown:
            raise BadScenario(f"unknown scenario fields: {sorted(unknown)}")
        try:
            periods = int(doc["periods"])
            principal_raw = doc["loan_principal"]
        except KeyError as missing:
            raise BadScenario(f"scenario is missing {missing}") from None
        currency = doc.get("currency", "F")
        principal = Money(_decimal(principal_raw, "loan_principal"), currency)
        try:
            policy = parse_policy(doc.get("policy", "allocate_to_government"))
        except (ValueError, ArithmeticError) as bad:
            raise BadScenario(f"bad policy: {bad}") from None
        return cls(
            name=str(doc.get("name", "policy-scenario")),
            periods=periods,
            loans_per_period=int(doc.get("loans_per_period", 1)),
            loan_principal=principal,
            annual_rate=_decimal(doc.get("annual_rate", "0"), "annual_rate"),
            term_periods=int(doc.get("term_periods", 1)),
            respend_share=_decimal(doc.get("respend_share", "1"),
                                   "respend_share"),
            policy=policy,
        )


@dataclass(frozen=True)
class PolicyPeriodRow:
    period: int
    money_supply: Money
    government_receipts: Money
    respent: Money
    sector_equity: dict[str, Money]


@dataclass(frozen=True)
class PolicyReport:
    name: str
    rows: tuple[PolicyPeriodRow, ...]
    total_receipts: Money
    total_respent: Money
    ledger: Ledger

    REPORT_SECTORS = ("bank", "borrower", "government_local",
                      "government_state", "government_federal")

    def table(self) -> tuple[list[str], list[list[str]]]:
        header = ["period", "money_supply", "government_receipts", "respent",
                  *(f"equity_{s}" for s in self.REPORT_SECTORS)]
        body = [[str(r.period), str(r.money_supply.amount),
                 str(r.government_receipts.amount), str(r.respent.amount),
                 *(str(r.sector_equity[s].amount) for s in self.REPORT_SECTORS)]
                for r in self.rows]
        return header, body


def _respend(ledger: Ledger, holder: str, gov_sector: Sector,
             amount: Money) -> None:
    """Move government deposits back to the private sector as spending."""
    chart = ledger.chart
    currency = ledger.config.currency
    expense_id = f"respend_expense_{holder}"
    income_id = "respend_income_business"
    if expense_id not in ledger.accounts:
        ledger.register_account(Account(
            id=expense_id, kind=AccountKind.INCOME, sector=gov_sector,
            currency=currency, closes_to=chart.equity(holder)))
    if income_id not in ledger.accounts:
        ledger.register_account(Account(
            id=income_id, kind=AccountKind.INCOME, sector=Sector.BORROWER,
            currency=currency, closes_to=chart.equity(BUSINESS_BORROWER)))
    ledger.post([
        Posting(chart.deposits(holder), Side.DEBIT, amount),
        Posting(chart.deposits(BUSINESS_BORROWER), Side.CREDIT, amount),
        Posting(chart.deposit_claim(holder), Side.CREDIT, amount),
        Posting(expense_id, Side.DEBIT, amount),
        Posting(chart.deposit_claim(BUSINESS_BORROWER), Side.DEBIT, amount),
        Posting(income_id, Side.CREDIT, amount),
    ], memo=f"{holder} respends {amount}", tags=("respend", holder))


def run_policy_scenario(scenario: "PolicyScenario | dict") -> PolicyReport:
    """Simulate the cohort economy and report per-period aggregates."""
    if isinstance(scenario, dict):
        scenario = PolicyScenario.from_mapping(scenario)
    currency = scenario.loan_principal.currency
    ledger = Ledger(policy=scenario.policy,
                    config=LedgerConfig(currency=currency), chart=Chart())
    ledger.register_participant(BUSINESS_BORROWER, Sector.BORROWER)
    chart = ledger.chart
    zero = Money.zero(currency)

    def gov_claims() -> dict[str, Money]:
        out = {}
        for name in GOVERNMENT_SECTORS:
            account = chart.deposit_claim(f"gov_{name}")
            out[name] = (ledger.balance(account)
                         if account in ledger.accounts else zero)
        return out

    rows = []
    total_receipts = zero
    total_respent = zero
    due: dict[int, list[str]] = {}
    for period in range(1, scenario.periods + 1):
        before = gov_claims()
        for loan_id in due.pop(period, []):
            loan = ledger.loans[loan_id]
            if loan.outstanding.is_positive():
                ledger.pay_principal(loan_id, loan.outstanding)
        after = gov_claims()
        receipts_by_level = {name: after[name] - before[name]
                             for name in GOVERNMENT_SECTORS}
        receipts = sum(receipts_by_level.values(), zero)

        for i in range(scenario.loans_per_period):
            loan_id = f"P{period:04d}L{i + 1}"
            ledger.originate_loan(Loan(
                id=loan_id, borrower=BUSINESS_BORROWER,
                principal=scenario.loan_principal,
                annual_rate=scenario.annual_rate,
                kind=LoanKind.COMMERCIAL, funding=Funding.DEPOSIT))
            due.setdefault(period + scenario.term_periods, []).append(loan_id)

        respent = zero
        if scenario.respend_share > 0:
            for name, gov_sector in GOVERNMENT_SECTORS.items():
                share = receipts_by_level[name].scaled(scenario.respend_share)
                if share.is_positive():
                    _respend(ledger, f"gov_{name}", gov_sector, share)
                    respent = respent + share

        total_receipts = total_receipts + receipts
        total_respent = total_respent + respent
        equity = {s: ledger.sector_equity(s)
                  for s in PolicyReport.REPORT_SECTORS}
        rows.append(PolicyPeriodRow(
            period=period, money_supply=ledger.money_supply(),
            government_receipts=receipts, respent=respent,
            sector_equity=equity))
    return PolicyReport(name=scenario.name, rows=tuple(rows),
                        total_receipts=total_receipts,
                        total_respent=total_respent, ledger=ledger)


@dataclass(frozen=True)
class ConvertedAtBook:
    """The venture succeeded; the loan becomes an equity stake at book value."""

    label = "converted_at_book"


@dataclass(frozen=True)
class Haircut:
    """Partial loss: ``writedown`` is conceded, the rest converts to equity."""

    writedown: Money
    label = "haircut"


@dataclass(frozen=True)
class FullLoss:
    """The venture failed entirely; the whole balance is written down."""

    label = "full_loss"


Resolution = ConvertedAtBook | Haircut | FullLoss


@dataclass(frozen=True)
class VentureOutcome:
    loan_id: str
    invested: Money
    resolution: Resolution
    realized_equity_value: Money | None = None

    def __post_init__(self) -> None:
        if not self.invested.is_positive():
            raise BadScenario(
                f"{self.loan_id}: invested amount must be positive")
        if isinstance(self.resolution, Haircut):
            w = self.resolution.writedown
            if w.is_negative():
                raise BadScenario(f"{self.loan_id}: negative writedown {w}")
            if w > self.invested:
                raise BadScenario(
                    f"{self.loan_id}: writedown {w} exceeds invested "
                    f"{self.invested}")


def parse_venture_outcome(doc, currency: str) -> VentureOutcome:
    if not isinstance(doc, dict):
        raise BadScenario("each outcome must be a JSON object")
    try:
        loan_id = str(doc["loan_id"])
        invested = Money(_decimal(doc["invested"], f"{doc.get('loan_id')}: invested"),
                         currency)
        raw = doc["resolution"]
    except KeyError as missing:
        raise BadScenario(f"outcome is missing {missing}") from None
    if raw == "converted_at_book":
        resolution: Resolution = ConvertedAtBook()
    elif raw == "full_loss":
        resolution = FullLoss()
    elif isinstance(raw, dict) and set(raw) == {"haircut"}:
        resolution = Haircut(Money(_decimal(raw["haircut"],
                                            f"{loan_id}: haircut"), currency))
    else:
        raise BadScenario(
            f"{loan_id}: resolution must be 'converted_at_book', 'full_loss', "
            "or {'haircut': amount}")
    realized = doc.get("realized_equity_value")
    realized_money = (Money(_decimal(realized, f"{loan_id}: realized"), currency)
                      if realized is not None else None)
    return VentureOutcome(loan_id=loan_id, invested=invested,
                          resolution=resolution,
                          realized_equity_value=realized_money)


def parse_venture_portfolio(doc) -> tuple[str, str, list[VentureOutcome]]:
    """Returns (name, currency, outcomes) from a portfolio JSON document."""
    if not isinstance(doc, dict):
        raise BadScenario("portfolio document must be a JSON object")
    currency = str(doc.get("currency", "F"))
    outcomes = doc.get("outcomes")
    if not isinstance(outcomes, list):
        raise BadScenario("portfolio needs an 'outcomes' array")
    parsed = [parse_venture_outcome(o, currency) for o in outcomes]
    return str(doc.get("name", "venture-portfolio")), currency, parsed


@dataclass(frozen=True)
class VentureOutcomeRow:
    loan_id: str
    invested: Money
    resolution: str
    equity_booked: Money
    writedown: Money


@dataclass(frozen=True)
class VentureReport:
    name: str
    rows: tuple[VentureOutcomeRow, ...]
    permanent_money: Money
    equity_booked: Money
    writedowns: Money
    ledger: Ledger

    def table(self) -> tuple[list[str], list[list[str]]]:
        header = ["loan_id", "invested", "resolution", "equity_booked",
                  "writedown"]
        body = [[r.loan_id, str(r.invested.amount), r.resolution,
                 str(r.equity_booked.amount), str(r.writedown.amount)]
                for r in self.rows]
        return header, body


def run_venture_portfolio(outcomes, currency: str = "F",
                          name: str = "venture-portfolio") -> VentureReport:
    """Originate and resolve each venture loan; tally what stays behind.

    Every invested amount enters circulation at origination and is never
    repaid in money, so permanent money created equals the sum invested
    regardless of how the resolutions split equity against writedowns.
    """
    ledger = Ledger(policy=VentureRetain(),
                    config=LedgerConfig(currency=currency), chart=Chart())
    ledger.register_participant(PORTFOLIO_BORROWER, Sector.BORROWER)
    zero = Money.zero(currency)
    rows = []
    permanent = zero
    equity_total = zero
    writedown_total = zero
    for outcome in outcomes:
        ledger.originate_loan(Loan(
            id=outcome.loan_id, borrower=PORTFOLIO_BORROWER,
            principal=outcome.invested, annual_rate=Decimal("0"),
            kind=LoanKind.AT_RISK_VENTURE, funding=Funding.DEPOSIT))
        resolution = outcome.resolution
        if isinstance(resolution, ConvertedAtBook):
            ledger.convert_to_equity(outcome.loan_id, outcome.invested)
            equity, writedown = outcome.invested, zero
        elif isinstance(resolution, Haircut):
            writedown = resolution.writedown
            equity = outcome.invested - writedown
            if writedown.is_positive():
                ledger.haircut(outcome.loan_id, writedown)
            if equity.is_positive():
                ledger.convert_to_equity(outcome.loan_id, equity)
        else:
            ledger.haircut(outcome.loan_id, outcome.invested)
            equity, writedown = zero, outcome.invested
        permanent = permanent + outcome.invested
        equity_total = equity_total + equity
        writedown_total = writedown_total + writedown
        rows.append(VentureOutcomeRow(
            loan_id=outcome.loan_id, invested=outcome.invested,
            resolution=resolution.label, equity_booked=equity,
            writedown=writedown))
    return VentureReport(name=name, rows=tuple(rows), permanent_money=permanent,
                         equity_booked=equity_total, writedowns=writedown_total,
                         ledger=ledger)
