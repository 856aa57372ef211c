"""Account, posting, and transaction types for the double-entry engine."""

from __future__ import annotations

import datetime
import enum
from dataclasses import dataclass, field

from ..money import Money
from .errors import UnknownSector


class Sector(enum.Enum):
    BANK = "bank"
    BORROWER = "borrower"
    DEPOSITOR = "depositor"
    GOVERNMENT_LOCAL = "government_local"
    GOVERNMENT_STATE = "government_state"
    GOVERNMENT_FEDERAL = "government_federal"
    EXTERNAL_WORLD = "external_world"

    @classmethod
    def parse(cls, value: "Sector | str") -> "Sector":
        if isinstance(value, Sector):
            return value
        try:
            return cls(value)
        except ValueError:
            raise UnknownSector(f"unknown sector: {value!r}") from None


class AccountKind(enum.Enum):
    """Balance sign convention: assets carry debit-positive balances;
    liability, equity, and income accounts carry credit-positive balances.
    Expense-like accounts are income accounts with debit (negative) balances.
    """

    ASSET = "asset"
    LIABILITY = "liability"
    EQUITY = "equity"
    INCOME = "income"

    @classmethod
    def parse(cls, value: "AccountKind | str") -> "AccountKind":
        if isinstance(value, AccountKind):
            return value
        return cls(value)

    @property
    def debit_positive(self) -> bool:
        return self is AccountKind.ASSET


class Side(enum.Enum):
    DEBIT = "debit"
    CREDIT = "credit"

    @classmethod
    def parse(cls, value: "Side | str") -> "Side":
        if isinstance(value, Side):
            return value
        return cls(value)


class MoneyEvent(enum.Enum):
    """What a transaction does to circulating money.

    CREATION: new money enters circulation (loan origination).
    DESTRUCTION: circulating money is extinguished (principal cancellation).
    TRANSFER: money changes hands without being created or destroyed.
    """

    CREATION = "creation"
    DESTRUCTION = "destruction"
    TRANSFER = "transfer"


@dataclass(frozen=True)
class Account:
    """A named account. ``money`` marks holdings that count toward the
    circulating money supply (coin, notes, deposit claims held outside the
    bank sector). ``closes_to`` names the equity account an income account
    closes into at period end.
    """

    id: str
    kind: AccountKind
    sector: Sector
    currency: str = "F"
    money: bool = False
    closes_to: str | None = None


@dataclass(frozen=True)
class Posting:
    account: str
    side: Side
    amount: Money

    def signed_delta(self, kind: AccountKind) -> Money:
        """Balance change in the account's natural sign convention."""
        if (self.side is Side.DEBIT) == kind.debit_positive:
            return self.amount
        return -self.amount


@dataclass(frozen=True)
class Transaction:
    seq: int
    memo: str
    postings: tuple[Posting, ...]
    money_event: MoneyEvent = MoneyEvent.TRANSFER
    tags: tuple[str, ...] = field(default_factory=tuple)
    date: datetime.date | None = None
