"""The double-entry ledger engine.

Every operation commits one balanced transaction: debits equal credits
globally and within each sector, so the identity

    assets == liabilities + equity + income-not-yet-closed

holds for every sector after every commit. Operations mutate the ledger
in place and return it for chaining; use :meth:`Ledger.fork` to branch
independent simulations (ledgers share nothing after a fork).
"""

from __future__ import annotations

import copy
import datetime
import warnings
from dataclasses import dataclass, field
from decimal import Decimal

from ..money import Money, split_exact
from ..money import accrue_simple_interest as _simple_interest
from .errors import (
    BadScenario,
    CurrencyMismatch,
    DuplicateAccount,
    DuplicateLoan,
    InsufficientBorrowerFunds,
    LoanClosed,
    NonPositivePrincipal,
    Overpayment,
    Overwrite,
    PolicyViolation,
    UnbalancedTransaction,
    UnknownAccount,
    UnknownLoan,
    WrongLoanKind,
)
from .loans import (
    AllocateToGovernment,
    Cancel,
    CancellationPolicy,
    Funding,
    Loan,
    LoanKind,
    RetainToBank,
    VentureRetain,
)
from .model import Account, AccountKind, MoneyEvent, Posting, Sector, Side, Transaction

GOVERNMENT_SECTORS = {
    "local": Sector.GOVERNMENT_LOCAL,
    "state": Sector.GOVERNMENT_STATE,
    "federal": Sector.GOVERNMENT_FEDERAL,
}


@dataclass
class Chart:
    """Maps account roles to account ids.

    Default ids follow a ``holder_purpose`` convention; scenario files may
    override any role (for example mapping ``bank_capital`` to ``capital``
    so replay output matches a published table layout).
    """

    overrides: dict[str, str] = field(default_factory=dict)

    def resolve(self, role: str) -> str:
        return self.overrides.get(role, role.replace(":", "_"))

    def bank_capital(self) -> str:
        return self.resolve("bank_capital")

    def bank_suspense(self) -> str:
        return self.resolve("bank_suspense")

    def bank_income(self) -> str:
        return self.resolve("bank_income")

    def bank_equity(self) -> str:
        return self.resolve("bank_equity")

    def bank_issued_paper(self) -> str:
        return self.resolve("bank_issued_paper")

    def bank_deposit_reserve(self) -> str:
        return self.resolve("bank_deposit_reserve")

    def bank_writedown(self) -> str:
        return self.resolve("bank_writedown")

    def bank_allocation_charge(self) -> str:
        return self.resolve("bank_allocation_charge")

    def equity_stake(self, loan_id: str) -> str:
        return self.resolve(f"bank_equity_stake:{loan_id}")

    def deposits(self, holder: str) -> str:
        return self.resolve(f"deposits:{holder}")

    def coin(self, holder: str) -> str:
        return self.resolve(f"coin:{holder}")

    def paper(self, holder: str) -> str:
        return self.resolve(f"paper:{holder}")

    def deposit_claim(self, holder: str) -> str:
        return self.resolve(f"deposit_claim:{holder}")

    def debt(self, holder: str) -> str:
        return self.resolve(f"debt:{holder}")

    def interest_expense(self, holder: str) -> str:
        return self.resolve(f"interest_expense:{holder}")

    def equity(self, holder: str) -> str:
        return self.resolve(f"equity:{holder}")

    def allocation_income(self, holder: str) -> str:
        return self.resolve(f"allocation_income:{holder}")


@dataclass
class LedgerConfig:
    currency: str = "F"
    day_count_base: int = 360
    # "fail" raises InsufficientBorrowerFunds; "warn" warns and lets the
    # borrower's funds account go negative.
    on_insufficient: str = "fail"

    def __post_init__(self) -> None:
        if self.on_insufficient not in ("fail", "warn"):
            raise ValueError("on_insufficient must be 'fail' or 'warn'")
        if self.day_count_base not in (360, 365):
            raise ValueError("day_count_base must be 360 or 365")


class Ledger:
    """Accounts, balances, loans, and a committed transaction log."""

    def __init__(self, policy: CancellationPolicy | None = None,
                 config: LedgerConfig | None = None,
                 chart: Chart | None = None) -> None:
        self.policy: CancellationPolicy = policy if policy is not None else Cancel()
        self.config = config if config is not None else LedgerConfig()
        self.chart = chart if chart is not None else Chart()
        self.accounts: dict[str, Account] = {}
        self.balances: dict[str, Money] = {}
        self.loans: dict[str, Loan] = {}
        self.log: list[Transaction] = []
        self.participants: dict[str, Sector] = {}

    # -- plumbing ---------------------------------------------------------

    def fork(self) -> "Ledger":
        """An independent copy; safe to hand to another thread."""
        return copy.deepcopy(self)

    def register_account(self, account: Account) -> "Ledger":
        if account.id in self.accounts:
            raise DuplicateAccount(account.id)
        if account.currency != self.config.currency:
            raise CurrencyMismatch(
                f"account {account.id} is {account.currency}, "
                f"ledger is {self.config.currency}")
        if account.money and account.kind is not AccountKind.ASSET:
            raise BadScenario(f"money flag on non-asset account {account.id}")
        if account.money and account.sector is Sector.BANK:
            raise BadScenario(
                f"bank-held account {account.id} cannot count as circulating money")
        self.accounts[account.id] = account
        self.balances[account.id] = Money.zero(account.currency)
        return self

    def register_participant(self, name: str, sector: Sector | str) -> "Ledger":
        sector = Sector.parse(sector)
        known = self.participants.get(name)
        if known is not None and known is not sector:
            raise BadScenario(f"participant {name} already registered as {known.value}")
        self.participants[name] = sector
        return self

    def _ensure(self, account_id: str, kind: AccountKind, sector: Sector,
                money: bool = False, closes_to: str | None = None) -> str:
        existing = self.accounts.get(account_id)
        if existing is None:
            self.register_account(Account(account_id, kind, sector,
                                          self.config.currency, money, closes_to))
        elif existing.kind is not kind or existing.sector is not sector:
            raise BadScenario(
                f"account {account_id} already exists as "
                f"{existing.kind.value}/{existing.sector.value}, "
                f"needed {kind.value}/{sector.value}")
        return account_id

    def balance(self, account_id: str) -> Money:
        try:
            return self.balances[account_id]
        except KeyError:
            raise UnknownAccount(account_id) from None

    def _borrower_sector(self, name: str) -> Sector:
        sector = self.participants.get(name)
        if sector is None:
            sector = Sector.BORROWER
            self.participants[name] = sector
        return sector

    # -- posting ----------------------------------------------------------

    def post(self, postings: list[Posting] | tuple[Posting, ...], memo: str = "",
             money_event: MoneyEvent = MoneyEvent.TRANSFER,
             tags: tuple[str, ...] = (),
             date: datetime.date | None = None) -> Transaction:
        """Validate and commit one balanced transaction."""
        if len(postings) < 2:
            raise UnbalancedTransaction("a transaction needs at least two postings")
        per_sector: dict[Sector, Money] = {}
        total = Money.zero(self.config.currency)
        for p in postings:
            account = self.accounts.get(p.account)
            if account is None:
                raise UnknownAccount(p.account)
            if p.amount.currency != account.currency:
                raise CurrencyMismatch(
                    f"posting {p.amount} to {account.currency} account {p.account}")
            if not p.amount.is_positive():
                raise UnbalancedTransaction(
                    f"non-positive posting amount {p.amount} on {p.account}")
            delta = p.amount if p.side is Side.DEBIT else -p.amount
            total = total + delta
            per_sector[account.sector] = per_sector.get(
                account.sector, Money.zero(self.config.currency)) + delta
        if not total.is_zero():
            raise UnbalancedTransaction(f"debits minus credits = {total}")
        for sector, delta in per_sector.items():
            if not delta.is_zero():
                raise UnbalancedTransaction(
                    f"sector {sector.value} unbalanced by {delta}")
        tx = Transaction(seq=len(self.log), memo=memo,
                         postings=tuple(postings), money_event=money_event,
                         tags=tags, date=date)
        for p in tx.postings:
            kind = self.accounts[p.account].kind
            self.balances[p.account] = self.balances[p.account] + p.signed_delta(kind)
        self.log.append(tx)
        return tx

    # -- measurements ------------------------------------------------------

    def money_supply(self) -> Money:
        """Sum of money-flagged holdings outside the bank sector."""
        total = Money.zero(self.config.currency)
        for account in self.accounts.values():
            if account.money:
                total = total + self.balances[account.id]
        return total

    def sector_equity(self, sector: Sector | str) -> Money:
        """Net position of a sector: assets minus liabilities."""
        sector = Sector.parse(sector)
        total = Money.zero(self.config.currency)
        for account in self.accounts.values():
            if account.sector is not sector:
                continue
            if account.kind is AccountKind.ASSET:
                total = total + self.balances[account.id]
            elif account.kind is AccountKind.LIABILITY:
                total = total - self.balances[account.id]
        return total

    def identity_gaps(self) -> dict[Sector, Money]:
        """Per-sector value of assets - (liabilities + equity + income).

        All zeros on a healthy ledger; exposed so property tests can check
        the accounting identity after every commit.
        """
        gaps: dict[Sector, Money] = {}
        for account in self.accounts.values():
            bal = self.balances[account.id]
            signed = bal if account.kind is AccountKind.ASSET else -bal
            gaps[account.sector] = gaps.get(
                account.sector, Money.zero(self.config.currency)) + signed
        return gaps

    def canonical_balances(self) -> str:
        """A canonical one-line rendering of all balances, for replay checks."""
        parts = [f"{aid}={self.balances[aid].amount}"
                 for aid in sorted(self.accounts)]
        return ";".join(parts)

    @classmethod
    def replay(cls, source: "Ledger") -> "Ledger":
        """Rebuild a ledger from another's account set and committed log."""
        fresh = cls(policy=source.policy, config=source.config,
                    chart=Chart(dict(source.chart.overrides)))
        for account in source.accounts.values():
            fresh.register_account(account)
        for name, sector in source.participants.items():
            fresh.participants[name] = sector
        for tx in source.log:
            fresh.post(list(tx.postings), memo=tx.memo,
                       money_event=tx.money_event, tags=tx.tags, date=tx.date)
        return fresh

    # -- loan helpers -------------------------------------------------------

    def _loan(self, loan_id: str) -> Loan:
        loan = self.loans.get(loan_id)
        if loan is None:
            raise UnknownLoan(loan_id)
        return loan

    def _open_loan(self, loan_id: str) -> Loan:
        loan = self._loan(loan_id)
        if loan.closed:
            raise LoanClosed(loan_id)
        return loan

    def _funds_account(self, loan: Loan) -> str:
        if loan.funding is Funding.DEPOSIT:
            return self.chart.deposit_claim(loan.borrower)
        return self.chart.coin(loan.borrower)

    def _check_funds(self, account_id: str, needed: Money, who: str) -> None:
        available = self.balance(account_id)
        if available >= needed:
            return
        message = (f"{who} holds {available} in {account_id}, "
                   f"needs {needed}")
        if self.config.on_insufficient == "fail":
            raise InsufficientBorrowerFunds(message)
        warnings.warn(message, stacklevel=3)

    def _bank_core(self) -> tuple[str, str, str, str]:
        c = self.chart
        capital = self._ensure(c.bank_capital(), AccountKind.ASSET, Sector.BANK)
        suspense = self._ensure(c.bank_suspense(), AccountKind.ASSET, Sector.BANK)
        income = self._ensure(c.bank_income(), AccountKind.INCOME, Sector.BANK,
                              closes_to=c.bank_equity())
        equity = self._ensure(c.bank_equity(), AccountKind.EQUITY, Sector.BANK)
        return capital, suspense, income, equity

    # -- operations ---------------------------------------------------------

    def originate_loan(self, loan: Loan) -> Transaction:
        """Create money by lending: a suspense (loan) asset against either
        freshly issued notes plus disbursed coin, or a new deposit."""
        if loan.id in self.loans:
            raise DuplicateLoan(loan.id)
        if not loan.principal.is_positive():
            raise NonPositivePrincipal(str(loan.principal))
        if loan.annual_rate < 0:
            raise NonPositivePrincipal(f"negative rate {loan.annual_rate}")
        if not (0 <= loan.coin_fraction <= 1):
            raise BadScenario(f"coin_fraction out of [0,1]: {loan.coin_fraction}")
        if loan.chain_parent is not None and loan.chain_parent not in self.loans:
            raise UnknownLoan(f"chain parent {loan.chain_parent}")
        sector = self._borrower_sector(loan.borrower)
        if sector is Sector.BANK:
            raise BadScenario("the bank cannot borrow from itself")
        c = self.chart
        capital, suspense, _, _ = self._bank_core()
        debt = self._ensure(c.debt(loan.borrower), AccountKind.LIABILITY, sector)
        postings: list[Posting] = [
            Posting(suspense, Side.DEBIT, loan.principal),
            Posting(debt, Side.CREDIT, loan.principal),
        ]
        if loan.funding is Funding.COIN_AND_PAPER:
            coin_part = loan.principal - loan.remaining_paper
            paper_part = loan.remaining_paper
            coin = self._ensure(c.coin(loan.borrower), AccountKind.ASSET,
                                sector, money=True)
            if coin_part.is_positive():
                self._check_funds(capital, coin_part, "bank reserves")
                postings.append(Posting(capital, Side.CREDIT, coin_part))
                postings.append(Posting(coin, Side.DEBIT, coin_part))
            if paper_part.is_positive():
                issued = self._ensure(c.bank_issued_paper(),
                                      AccountKind.LIABILITY, Sector.BANK)
                paper = self._ensure(c.paper(loan.borrower), AccountKind.ASSET,
                                     sector, money=True)
                postings.append(Posting(issued, Side.CREDIT, paper_part))
                postings.append(Posting(paper, Side.DEBIT, paper_part))
            event = MoneyEvent.CREATION if paper_part.is_positive() else MoneyEvent.TRANSFER
        else:
            deposits = self._ensure(c.deposits(loan.borrower),
                                    AccountKind.LIABILITY, Sector.BANK)
            claim = self._ensure(c.deposit_claim(loan.borrower), AccountKind.ASSET,
                                 sector, money=True)
            postings.append(Posting(deposits, Side.CREDIT, loan.principal))
            postings.append(Posting(claim, Side.DEBIT, loan.principal))
            event = MoneyEvent.CREATION
        tx = self.post(postings, memo=f"originate {loan.id}", money_event=event,
                       tags=("originate", loan.id))
        self.loans[loan.id] = loan
        return tx

    def accrue_interest(self, loan_id: str, days: int,
                        post: bool = False) -> Money:
        """Simple interest on the outstanding balance for ``days`` days.

        Pure computation by default. With ``post=True`` the accrual is also
        committed: the bank books an interest receivable in suspense against
        income, which a later payment collects.
        """
        loan = self._open_loan(loan_id)
        amount = _simple_interest(loan.outstanding, loan.annual_rate, days,
                                  self.config.day_count_base)
        if post and amount.is_positive():
            _, suspense, income, _ = self._bank_core()
            self.post([Posting(suspense, Side.DEBIT, amount),
                       Posting(income, Side.CREDIT, amount)],
                      memo=f"accrue {loan_id} {days}d",
                      tags=("accrue", loan_id))
            loan.accrued_receivable = loan.accrued_receivable + amount
        return amount

    def pay_interest(self, loan_id: str, amount: Money,
                     hard_settlement: bool = False) -> Transaction:
        """Borrower pays interest out of existing money.

        Collects any posted accrual from suspense first; the remainder is
        booked to income directly. ``hard_settlement`` models repayment in
        coin drawn against the borrower's pre-existing deposit (the vault
        pays out reserve coin and the bank receives it back as capital).
        """
        loan = self._open_loan(loan_id)
        if not amount.is_positive():
            raise NonPositivePrincipal(f"interest payment {amount}")
        sector = self._borrower_sector(loan.borrower)
        c = self.chart
        capital, suspense, income, _ = self._bank_core()
        expense = self._ensure(c.interest_expense(loan.borrower),
                               AccountKind.INCOME, sector,
                               closes_to=c.equity(loan.borrower))
        from_suspense = amount if amount <= loan.accrued_receivable \
            else loan.accrued_receivable
        rest = amount - from_suspense
        bank_credits: list[Posting] = []
        if from_suspense.is_positive():
            bank_credits.append(Posting(suspense, Side.CREDIT, from_suspense))
        if rest.is_positive():
            bank_credits.append(Posting(income, Side.CREDIT, rest))
        if loan.funding is Funding.COIN_AND_PAPER:
            funds = self._ensure(c.coin(loan.borrower), AccountKind.ASSET,
                                 sector, money=True)
            self._check_funds(funds, amount, loan.borrower)
            postings = [Posting(capital, Side.DEBIT, amount), *bank_credits,
                        Posting(expense, Side.DEBIT, amount),
                        Posting(funds, Side.CREDIT, amount)]
        elif hard_settlement:
            deposits = self._ensure(c.deposits(loan.borrower),
                                    AccountKind.LIABILITY, Sector.BANK)
            reserve = self._ensure(c.bank_deposit_reserve(), AccountKind.ASSET,
                                   Sector.BANK)
            claim = self._ensure(c.deposit_claim(loan.borrower),
                                 AccountKind.ASSET, sector, money=True)
            self._check_funds(claim, amount, loan.borrower)
            self._check_funds(reserve, amount, "deposit reserve")
            postings = [Posting(capital, Side.DEBIT, amount), *bank_credits,
                        Posting(deposits, Side.DEBIT, amount),
                        Posting(reserve, Side.CREDIT, amount),
                        Posting(expense, Side.DEBIT, amount),
                        Posting(claim, Side.CREDIT, amount)]
        else:
            deposits = self._ensure(c.deposits(loan.borrower),
                                    AccountKind.LIABILITY, Sector.BANK)
            claim = self._ensure(c.deposit_claim(loan.borrower),
                                 AccountKind.ASSET, sector, money=True)
            self._check_funds(claim, amount, loan.borrower)
            postings = [Posting(deposits, Side.DEBIT, amount), *bank_credits,
                        Posting(expense, Side.DEBIT, amount),
                        Posting(claim, Side.CREDIT, amount)]
        tx = self.post(postings, memo=f"interest {loan_id}",
                       tags=("pay_interest", loan_id))
        loan.accrued_receivable = loan.accrued_receivable - from_suspense
        return tx

    def _has_chain_descendant(self, loan_id: str) -> bool:
        return any(other.chain_parent == loan_id for other in self.loans.values())

    def pay_principal(self, loan_id: str, amount: Money) -> Transaction:
        """Repay principal; the active policy decides the money's fate."""
        loan = self._open_loan(loan_id)
        if not amount.is_positive():
            raise NonPositivePrincipal(f"principal payment {amount}")
        if amount > loan.outstanding:
            raise Overpayment(
                f"{amount} exceeds outstanding {loan.outstanding} on {loan_id}")
        policy = self.policy
        if isinstance(policy, VentureRetain):
            raise PolicyViolation(
                "venture loans resolve via convert_to_equity, not cash repayment")
        if isinstance(policy, AllocateToGovernment):
            tx = self._pay_principal_allocate(loan, amount, policy)
        elif isinstance(policy, RetainToBank):
            tx = self._pay_principal_retain(loan, amount)
        else:
            tx = self._pay_principal_cancel(loan, amount)
        loan.outstanding = loan.outstanding - amount
        if loan.outstanding.is_zero():
            loan.closed = True
        return tx

    def _paper_portion(self, loan: Loan, amount: Money) -> Money:
        """Paper share of a partial payment, never exceeding what remains."""
        if loan.funding is not Funding.COIN_AND_PAPER:
            return Money.zero(amount.currency)
        if amount == loan.outstanding:
            return loan.remaining_paper
        share = amount.scaled(Decimal(1) - loan.coin_fraction)
        return share if share <= loan.remaining_paper else loan.remaining_paper

    def _pay_principal_cancel(self, loan: Loan, amount: Money) -> Transaction:
        sector = self._borrower_sector(loan.borrower)
        c = self.chart
        capital, suspense, _, _ = self._bank_core()
        debt = self._ensure(c.debt(loan.borrower), AccountKind.LIABILITY, sector)
        postings = [Posting(debt, Side.DEBIT, amount),
                    Posting(suspense, Side.CREDIT, amount)]
        if loan.funding is Funding.COIN_AND_PAPER:
            paper_part = self._paper_portion(loan, amount)
            coin_part = amount - paper_part
            if paper_part.is_positive():
                issued = self._ensure(c.bank_issued_paper(),
                                      AccountKind.LIABILITY, Sector.BANK)
                paper = self._ensure(c.paper(loan.borrower), AccountKind.ASSET,
                                     sector, money=True)
                self._check_funds(paper, paper_part, loan.borrower)
                postings.append(Posting(issued, Side.DEBIT, paper_part))
                postings.append(Posting(paper, Side.CREDIT, paper_part))
            if coin_part.is_positive():
                coin = self._ensure(c.coin(loan.borrower), AccountKind.ASSET,
                                    sector, money=True)
                self._check_funds(coin, coin_part, loan.borrower)
                postings.append(Posting(capital, Side.DEBIT, coin_part))
                postings.append(Posting(coin, Side.CREDIT, coin_part))
            loan.remaining_paper = loan.remaining_paper - paper_part
        else:
            deposits = self._ensure(c.deposits(loan.borrower),
                                    AccountKind.LIABILITY, Sector.BANK)
            claim = self._ensure(c.deposit_claim(loan.borrower),
                                 AccountKind.ASSET, sector, money=True)
            self._check_funds(claim, amount, loan.borrower)
            postings.append(Posting(deposits, Side.DEBIT, amount))
            postings.append(Posting(claim, Side.CREDIT, amount))
        return self.post(postings, memo=f"cancel principal {loan.id}",
                         money_event=MoneyEvent.DESTRUCTION,
                         tags=("pay_principal", loan.id))

    def _pay_principal_retain(self, loan: Loan, amount: Money) -> Transaction:
        """Repaid principal joins the bank's capital and is booked as income.

        For coin-and-paper loans the circulating notes are de-recognized and
        the coin originally disbursed is charged against bank equity, which
        nets the bank's true gain to principal minus its hard-money outlay.
        """
        sector = self._borrower_sector(loan.borrower)
        c = self.chart
        capital, suspense, income, equity = self._bank_core()
        debt = self._ensure(c.debt(loan.borrower), AccountKind.LIABILITY, sector)
        postings = [Posting(debt, Side.DEBIT, amount),
                    Posting(suspense, Side.CREDIT, amount),
                    Posting(capital, Side.DEBIT, amount),
                    Posting(income, Side.CREDIT, amount)]
        if loan.funding is Funding.COIN_AND_PAPER:
            paper_part = self._paper_portion(loan, amount)
            coin_part = amount - paper_part
            if paper_part.is_positive():
                issued = self._ensure(c.bank_issued_paper(),
                                      AccountKind.LIABILITY, Sector.BANK)
                paper = self._ensure(c.paper(loan.borrower), AccountKind.ASSET,
                                     sector, money=True)
                self._check_funds(paper, paper_part, loan.borrower)
                postings.append(Posting(paper, Side.CREDIT, paper_part))
                postings.append(Posting(issued, Side.DEBIT, paper_part))
            if coin_part.is_positive():
                coin = self._ensure(c.coin(loan.borrower), AccountKind.ASSET,
                                    sector, money=True)
                self._check_funds(coin, coin_part, loan.borrower)
                postings.append(Posting(coin, Side.CREDIT, coin_part))
                postings.append(Posting(equity, Side.DEBIT, coin_part))
            loan.remaining_paper = loan.remaining_paper - paper_part
        else:
            deposits = self._ensure(c.deposits(loan.borrower),
                                    AccountKind.LIABILITY, Sector.BANK)
            claim = self._ensure(c.deposit_claim(loan.borrower),
                                 AccountKind.ASSET, sector, money=True)
            self._check_funds(claim, amount, loan.borrower)
            postings.append(Posting(deposits, Side.DEBIT, amount))
            postings.append(Posting(claim, Side.CREDIT, amount))
        return self.post(postings, memo=f"retain principal {loan.id}",
                         tags=("pay_principal", loan.id))

    def _pay_principal_allocate(self, loan: Loan, amount: Money,
                                policy: AllocateToGovernment) -> Transaction:
        if loan.kind is LoanKind.AT_RISK_VENTURE:
            raise PolicyViolation("venture loans are outside the allocation policy")
        if loan.kind is LoanKind.CONSUMER and not policy.include_consumer:
            raise PolicyViolation(
                f"consumer loan {loan.id} is not allocation-eligible")
        if self._has_chain_descendant(loan.id):
            raise PolicyViolation(
                f"loan {loan.id} funded a chained loan; only the final link "
                "reaching an end borrower is allocation-eligible")
        if loan.funding is not Funding.DEPOSIT:
            raise PolicyViolation("the allocation policy applies to deposit-funded loans")
        sector = self._borrower_sector(loan.borrower)
        c = self.chart
        capital, suspense, income, _ = self._bank_core()
        debt = self._ensure(c.debt(loan.borrower), AccountKind.LIABILITY, sector)
        deposits = self._ensure(c.deposits(loan.borrower),
                                AccountKind.LIABILITY, Sector.BANK)
        claim = self._ensure(c.deposit_claim(loan.borrower),
                             AccountKind.ASSET, sector, money=True)
        self._check_funds(claim, amount, loan.borrower)
        shares = split_exact(amount, policy.fractions())
        postings = [Posting(debt, Side.DEBIT, amount),
                    Posting(claim, Side.CREDIT, amount),
                    Posting(deposits, Side.DEBIT, amount),
                    Posting(suspense, Side.CREDIT, amount)]
        redirected = amount - shares["bank"]
        if redirected.is_positive():
            charge = self._ensure(c.bank_allocation_charge(), AccountKind.INCOME,
                                  Sector.BANK, closes_to=c.bank_equity())
            postings.append(Posting(charge, Side.DEBIT, redirected))
        for name, gov_sector in GOVERNMENT_SECTORS.items():
            share = shares[name]
            if not share.is_positive():
                continue
            holder = f"gov_{name}"
            self.register_participant(holder, gov_sector)
            gov_deposits = self._ensure(c.deposits(holder),
                                        AccountKind.LIABILITY, Sector.BANK)
            gov_claim = self._ensure(c.deposit_claim(holder), AccountKind.ASSET,
                                     gov_sector, money=True)
            gov_income = self._ensure(c.allocation_income(holder),
                                      AccountKind.INCOME, gov_sector,
                                      closes_to=c.equity(holder))
            postings.append(Posting(gov_deposits, Side.CREDIT, share))
            postings.append(Posting(gov_claim, Side.DEBIT, share))
            postings.append(Posting(gov_income, Side.CREDIT, share))
        if shares["bank"].is_positive():
            postings.append(Posting(capital, Side.DEBIT, shares["bank"]))
            postings.append(Posting(income, Side.CREDIT, shares["bank"]))
        return self.post(postings, memo=f"allocate principal {loan.id}",
                         tags=("pay_principal", loan.id))

    def convert_to_equity(self, loan_id: str, equity_value: Money) -> Transaction:
        """Swap an at-risk venture loan for an equity stake at appraised value.

        Appraisal above the outstanding balance books the excess as income;
        appraisal below it is an immediate writedown. Circulating money is
        untouched either way.
        """
        loan = self._open_loan(loan_id)
        if loan.kind is not LoanKind.AT_RISK_VENTURE:
            raise WrongLoanKind(f"{loan_id} is {loan.kind.value}")
        if equity_value.is_negative():
            raise NonPositivePrincipal(f"equity value {equity_value}")
        sector = self._borrower_sector(loan.borrower)
        c = self.chart
        _, suspense, income, _ = self._bank_core()
        outstanding = loan.outstanding
        stake = self._ensure(c.equity_stake(loan_id), AccountKind.ASSET, Sector.BANK)
        debt = self._ensure(c.debt(loan.borrower), AccountKind.LIABILITY, sector)
        issued = self._ensure(c.equity(loan.borrower), AccountKind.EQUITY, sector)
        postings = [Posting(debt, Side.DEBIT, outstanding),
                    Posting(issued, Side.CREDIT, outstanding),
                    Posting(suspense, Side.CREDIT, outstanding)]
        if equity_value.is_positive():
            postings.append(Posting(stake, Side.DEBIT, equity_value))
        gain = equity_value - outstanding
        if gain.is_positive():
            postings.append(Posting(income, Side.CREDIT, gain))
        elif gain.is_negative():
            writedown = self._ensure(c.bank_writedown(), AccountKind.INCOME,
                                     Sector.BANK, closes_to=c.bank_equity())
            postings.append(Posting(writedown, Side.DEBIT, -gain))
        tx = self.post(postings, memo=f"convert {loan_id} to equity",
                       tags=("convert_to_equity", loan_id))
        loan.outstanding = Money.zero(outstanding.currency)
        loan.closed = True
        return tx

    def haircut(self, loan_id: str, writedown: Money) -> Transaction:
        """Write down venture principal the bank concedes it will never see.

        The bank's reserves and working capital are untouched: the loss lands
        on the bank's own income statement and the borrower's debt shrinks.
        """
        loan = self._open_loan(loan_id)
        if loan.kind is not LoanKind.AT_RISK_VENTURE:
            raise WrongLoanKind(f"{loan_id} is {loan.kind.value}")
        if not writedown.is_positive():
            raise NonPositivePrincipal(f"haircut {writedown}")
        if writedown > loan.outstanding:
            raise Overwrite(
                f"haircut {writedown} exceeds outstanding {loan.outstanding}")
        sector = self._borrower_sector(loan.borrower)
        c = self.chart
        _, suspense, _, _ = self._bank_core()
        loss = self._ensure(c.bank_writedown(), AccountKind.INCOME, Sector.BANK,
                            closes_to=c.bank_equity())
        debt = self._ensure(c.debt(loan.borrower), AccountKind.LIABILITY, sector)
        relief = self._ensure(c.equity(loan.borrower), AccountKind.EQUITY, sector)
        tx = self.post([Posting(loss, Side.DEBIT, writedown),
                        Posting(suspense, Side.CREDIT, writedown),
                        Posting(debt, Side.DEBIT, writedown),
                        Posting(relief, Side.CREDIT, writedown)],
                       memo=f"haircut {loan_id}",
                       tags=("haircut", loan_id))
        loan.outstanding = loan.outstanding - writedown
        if loan.outstanding.is_zero():
            loan.closed = True
        return tx

    def close_income(self) -> list[Transaction]:
        """Close every income account into its equity account (period end)."""
        committed: list[Transaction] = []
        for account in list(self.accounts.values()):
            if account.kind is not AccountKind.INCOME:
                continue
            bal = self.balances[account.id]
            if bal.is_zero():
                continue
            target = account.closes_to or self.chart.equity("unassigned")
            self._ensure(target, AccountKind.EQUITY, account.sector)
            if bal.is_positive():
                postings = [Posting(account.id, Side.DEBIT, bal),
                            Posting(target, Side.CREDIT, bal)]
            else:
                postings = [Posting(account.id, Side.CREDIT, -bal),
                            Posting(target, Side.DEBIT, -bal)]
            committed.append(self.post(postings, memo=f"close {account.id}",
                                       tags=("close_income",)))
        return committed
