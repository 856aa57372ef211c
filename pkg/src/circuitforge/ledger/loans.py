"""Loan records and principal-cancellation policies.

The policy decides what happens to repaid principal: destroyed, retained
by the bank as profit, split between government treasuries and the bank,
or (for at-risk venture lending) retained only through an explicit
conversion of the loan into an equity stake.
"""

from __future__ import annotations

import datetime
import enum
from dataclasses import dataclass, field
from decimal import Decimal

from ..money import Money


class LoanKind(enum.Enum):
    COMMERCIAL = "commercial"
    CONSUMER = "consumer"
    AT_RISK_VENTURE = "at_risk_venture"

    @classmethod
    def parse(cls, value: "LoanKind | str") -> "LoanKind":
        if isinstance(value, LoanKind):
            return value
        return cls(value)


class Funding(enum.Enum):
    """How loan proceeds reach the borrower.

    COIN_AND_PAPER: part hard coin disbursed from the bank's reserves,
    the remainder freshly issued circulating notes.
    DEPOSIT: the full principal credited to the borrower's deposit account.
    """

    COIN_AND_PAPER = "coin_and_paper"
    DEPOSIT = "deposit"

    @classmethod
    def parse(cls, value: "Funding | str") -> "Funding":
        if isinstance(value, Funding):
            return value
        return cls(value)


@dataclass
class Loan:
    id: str
    borrower: str
    principal: Money
    annual_rate: Decimal
    kind: LoanKind = LoanKind.COMMERCIAL
    funding: Funding = Funding.DEPOSIT
    coin_fraction: Decimal = Decimal("0")
    chain_parent: str | None = None
    origination: datetime.date | None = None
    term_days: int | None = None
    outstanding: Money = field(init=False)
    accrued_receivable: Money = field(init=False)
    remaining_paper: Money = field(init=False)
    closed: bool = field(init=False, default=False)

    def __post_init__(self) -> None:
        self.outstanding = self.principal
        self.accrued_receivable = Money.zero(self.principal.currency)
        if self.funding is Funding.COIN_AND_PAPER:
            coin_part = self.principal.scaled(self.coin_fraction)
            self.remaining_paper = self.principal - coin_part
        else:
            self.remaining_paper = Money.zero(self.principal.currency)


class CancellationPolicy:
    """Base class; the concrete subclasses are the policy variants."""

    kind = "abstract"


@dataclass(frozen=True)
class Cancel(CancellationPolicy):
    """Repaid principal is extinguished (the textbook rule)."""

    kind = "cancel"


@dataclass(frozen=True)
class RetainToBank(CancellationPolicy):
    """Repaid principal joins the bank's working capital and is booked
    as income rather than destroyed."""

    kind = "retain_to_bank"


@dataclass(frozen=True)
class AllocateToGovernment(CancellationPolicy):
    """Repaid principal stays in circulation, redirected to government
    treasuries, with an optional fraction kept by the bank. Fractions are
    exact decimals and must sum to 1."""

    kind = "allocate_to_government"
    local: Decimal = Decimal("0.25")
    state: Decimal = Decimal("0.25")
    federal: Decimal = Decimal("0.50")
    bank: Decimal = Decimal("0")
    include_consumer: bool = False

    def __post_init__(self) -> None:
        total = self.local + self.state + self.federal + self.bank
        if total != 1:
            raise ValueError(f"allocation fractions must sum to 1, got {total}")
        for name in ("local", "state", "federal", "bank"):
            frac = getattr(self, name)
            if frac < 0 or frac > 1:
                raise ValueError(f"allocation fraction {name} out of [0,1]: {frac}")

    def fractions(self) -> dict[str, Decimal]:
        return {"local": self.local, "state": self.state,
                "federal": self.federal, "bank": self.bank}


@dataclass(frozen=True)
class VentureRetain(CancellationPolicy):
    """At-risk venture rule: principal is never repaid in money; the loan
    resolves through convert_to_equity or a haircut."""

    kind = "venture_retain"


def parse_policy(spec: "CancellationPolicy | dict | str") -> CancellationPolicy:
    """Build a policy from JSON-style data ({'kind': ..., ...} or bare kind)."""
    if isinstance(spec, CancellationPolicy):
        return spec
    if isinstance(spec, str):
        spec = {"kind": spec}
    kind = spec.get("kind")
    if kind == "cancel":
        return Cancel()
    if kind == "retain_to_bank":
        return RetainToBank()
    if kind == "allocate_to_government":
        kwargs = {}
        for name in ("local", "state", "federal", "bank"):
            for key in (name, f"{name}_frac"):
                if key in spec:
                    kwargs[name] = Decimal(str(spec[key]))
        if "include_consumer" in spec:
            kwargs["include_consumer"] = bool(spec["include_consumer"])
        return AllocateToGovernment(**kwargs)
    if kind == "venture_retain":
        return VentureRetain()
    raise ValueError(f"unknown cancellation policy: {kind!r}")
