"""Declarative ledger scenarios.

A scenario is a JSON document that names a cancellation policy, declares
accounts and participants, and lists operation steps. Replaying one yields
a row of tracked balances after every step, so a scenario file doubles as
a reproducible worked example and a regression fixture.
"""

from __future__ import annotations

import datetime
import json
from dataclasses import dataclass, field
from decimal import Decimal, InvalidOperation
from pathlib import Path
from typing import Any

from ..money import Money
from .engine import Chart, Ledger, LedgerConfig
from .errors import BadScenario, LedgerError
from .loans import Funding, Loan, LoanKind, parse_policy
from .model import Account, AccountKind, Posting, Sector, Side

_LOAN_FIELDS = {"id", "borrower", "principal", "annual_rate", "kind",
                "funding", "coin_fraction", "chain_parent", "origination",
                "term_days"}


def _parse_date(value: Any) -> datetime.date | None:
    if value is None:
        return None
    try:
        return datetime.date.fromisoformat(str(value))
    except ValueError:
        raise BadScenario(f"unreadable ISO date {value!r}") from None


@dataclass
class StepRow:
    """Tracked balances after one step."""
    label: str
    balances: dict[str, Money]


@dataclass
class ScenarioResult:
    name: str
    ledger: Ledger
    rows: list[StepRow] = field(default_factory=list)
    tracked: list[str] = field(default_factory=list)

    def final(self, account_id: str) -> Money:
        return self.ledger.balance(account_id)

    def table(self) -> tuple[list[str], list[list[str]]]:
        """Header and string rows for delimited output."""
        header = ["step", *self.tracked]
        body = [[row.label, *(str(row.balances[a].amount) for a in self.tracked)]
                for row in self.rows]
        return header, body


def _require(mapping: dict[str, Any], key: str, context: str) -> Any:
    if key not in mapping:
        raise BadScenario(f"{context}: missing required key {key!r}")
    return mapping[key]


def _decimal(value: Any, context: str) -> Decimal:
    if isinstance(value, float):
        raise BadScenario(f"{context}: write amounts as strings, not floats")
    try:
        return Decimal(str(value))
    except InvalidOperation:
        raise BadScenario(f"{context}: unreadable number {value!r}") from None


def _money(value: Any, currency: str, context: str) -> Money:
    return Money.of(_decimal(value, context), currency)


def _build_loan(payload: dict[str, Any], currency: str) -> Loan:
    unknown = set(payload) - _LOAN_FIELDS
    if unknown:
        raise BadScenario(f"loan: unknown keys {sorted(unknown)}")
    loan_id = _require(payload, "id", "loan")
    return Loan(
        id=loan_id,
        borrower=_require(payload, "borrower", f"loan {loan_id}"),
        principal=_money(_require(payload, "principal", f"loan {loan_id}"),
                         currency, f"loan {loan_id} principal"),
        annual_rate=_decimal(_require(payload, "annual_rate", f"loan {loan_id}"),
                             f"loan {loan_id} rate"),
        kind=LoanKind(payload.get("kind", "commercial")),
        funding=Funding(payload.get("funding", "deposit")),
        coin_fraction=_decimal(payload.get("coin_fraction", "0"),
                               f"loan {loan_id} coin_fraction"),
        chain_parent=payload.get("chain_parent"),
        origination=_parse_date(payload.get("origination")),
        term_days=payload.get("term_days"),
    )


class ScenarioRunner:
    """Builds a ledger from a scenario document and replays its steps."""

    def __init__(self, document: dict[str, Any]) -> None:
        if not isinstance(document, dict):
            raise BadScenario("scenario root must be an object")
        self.document = document
        self.name = document.get("name", "scenario")
        config_payload = document.get("config", {})
        if not isinstance(config_payload, dict):
            raise BadScenario("config must be an object")
        try:
            config = LedgerConfig(**config_payload)
        except (TypeError, ValueError) as exc:
            raise BadScenario(f"config: {exc}") from None
        chart = Chart(dict(document.get("chart", {})))
        try:
            policy = parse_policy(document.get("policy", "cancel"))
        except (ValueError, TypeError) as exc:
            raise BadScenario(f"policy: {exc}") from None
        self.ledger = Ledger(policy=policy, config=config, chart=chart)
        self._declare_accounts(document.get("accounts", []))
        for name, sector in dict(document.get("participants", {})).items():
            self.ledger.register_participant(name, sector)

    def _declare_accounts(self, entries: Any) -> None:
        if not isinstance(entries, list):
            raise BadScenario("accounts must be a list")
        for entry in entries:
            if not isinstance(entry, dict):
                raise BadScenario("each account must be an object")
            try:
                account = Account(
                    id=_require(entry, "id", "account"),
                    kind=AccountKind.parse(_require(entry, "kind", "account")),
                    sector=Sector.parse(_require(entry, "sector", "account")),
                    currency=entry.get("currency", self.ledger.config.currency),
                    money=bool(entry.get("money", False)),
                    closes_to=entry.get("closes_to"),
                )
            except ValueError as exc:
                raise BadScenario(str(exc)) from None
            self.ledger.register_account(account)

    # -- steps ---------------------------------------------------------

    def _step_post(self, step: dict[str, Any]) -> None:
        raw = _require(step, "postings", "post step")
        postings = []
        for item in raw:
            side_text = _require(item, "side", "posting").lower()
            if side_text not in ("debit", "credit"):
                raise BadScenario(f"posting side must be debit or credit, "
                                  f"got {side_text!r}")
            postings.append(Posting(
                account=_require(item, "account", "posting"),
                side=Side.DEBIT if side_text == "debit" else Side.CREDIT,
                amount=_money(_require(item, "amount", "posting"),
                              self.ledger.config.currency, "posting amount"),
            ))
        # Creation and destruction are reserved for the loan operations
        # that actually create or extinguish circulating money.
        if step.get("money_event", "transfer") != "transfer":
            raise BadScenario("posted steps must use money_event 'transfer'")
        self.ledger.post(postings, memo=step.get("memo", "posted"),
                         date=_parse_date(step.get("date")))

    def _amount(self, step: dict[str, Any], loan_id: str) -> Money:
        raw = _require(step, "amount", f"step for loan {loan_id}")
        loan = self.ledger.loans.get(loan_id)
        if raw == "outstanding":
            if loan is None:
                raise BadScenario(f"unknown loan {loan_id}")
            return loan.outstanding
        if raw == "accrued":
            if loan is None:
                raise BadScenario(f"unknown loan {loan_id}")
            return loan.accrued_receivable
        return _money(raw, self.ledger.config.currency, f"amount for {loan_id}")

    def run_step(self, step: dict[str, Any]) -> str:
        if not isinstance(step, dict):
            raise BadScenario("each step must be an object")
        op = _require(step, "op", "step")
        if op == "post":
            self._step_post(step)
        elif op == "originate":
            loan = _build_loan(_require(step, "loan", "originate step"),
                               self.ledger.config.currency)
            self.ledger.originate_loan(loan)
        elif op == "accrue":
            loan_id = _require(step, "loan", "accrue step")
            self.ledger.accrue_interest(loan_id,
                                        int(_require(step, "days", "accrue step")),
                                        post=bool(step.get("post", True)))
        elif op == "pay_interest":
            loan_id = _require(step, "loan", "pay_interest step")
            self.ledger.pay_interest(loan_id, self._amount(step, loan_id),
                                     hard_settlement=bool(
                                         step.get("hard_settlement", False)))
        elif op == "pay_principal":
            loan_id = _require(step, "loan", "pay_principal step")
            self.ledger.pay_principal(loan_id, self._amount(step, loan_id))
        elif op == "convert_to_equity":
            loan_id = _require(step, "loan", "convert step")
            value = _money(_require(step, "equity_value", "convert step"),
                           self.ledger.config.currency, "equity value")
            self.ledger.convert_to_equity(loan_id, value)
        elif op == "haircut":
            loan_id = _require(step, "loan", "haircut step")
            self.ledger.haircut(loan_id,
                                _money(_require(step, "writedown", "haircut step"),
                                       self.ledger.config.currency, "writedown"))
        elif op == "close_income":
            self.ledger.close_income()
        else:
            raise BadScenario(f"unknown op {op!r}")
        return step.get("label", op)

    def run(self) -> ScenarioResult:
        steps = self.document.get("steps", [])
        if not isinstance(steps, list):
            raise BadScenario("steps must be a list")
        result = ScenarioResult(name=self.name, ledger=self.ledger)
        for index, step in enumerate(steps, start=1):
            try:
                label = self.run_step(step)
            except LedgerError as failure:
                hint = (step.get("label") or step.get("op", "?")) \
                    if isinstance(step, dict) else "?"
                raise type(failure)(
                    f"step {index} ({hint}): {failure}") from failure
            result.rows.append(StepRow(label, {
                a: bal for a, bal in self.ledger.balances.items()}))
        result.tracked = self._tracked()
        missing = [a for a in result.tracked if a not in self.ledger.accounts]
        if missing:
            raise BadScenario(f"tracked accounts never appeared: {missing}")
        # Earlier rows may predate accounts created by later steps; show
        # them as zero so every row covers the same columns.
        zero = Money.zero(self.ledger.config.currency)
        for row in result.rows:
            row.balances = {a: row.balances.get(a, zero) for a in result.tracked}
        return result

    def _tracked(self) -> list[str]:
        tracked = self.document.get("track")
        if tracked is None:
            return sorted(self.ledger.accounts)
        if not isinstance(tracked, list):
            raise BadScenario("track must be a list of account ids")
        return list(tracked)


def load_scenario(path: str | Path) -> dict[str, Any]:
    text = Path(path).read_text(encoding="utf-8")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise BadScenario(f"{path}: not valid JSON ({exc})") from None


def replay_scenario(source: str | Path | dict[str, Any]) -> ScenarioResult:
    document = source if isinstance(source, dict) else load_scenario(source)
    return ScenarioRunner(document).run()
