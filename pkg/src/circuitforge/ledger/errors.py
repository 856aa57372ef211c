"""Error types raised by the ledger engine."""


class LedgerError(Exception):
    """Base class for all ledger failures."""


class UnknownAccount(LedgerError):
    pass


class DuplicateAccount(LedgerError):
    pass


class UnknownSector(LedgerError):
    pass


class UnbalancedTransaction(LedgerError):
    """Debits and credits do not match, globally or within one sector."""


class CurrencyMismatch(LedgerError):
    pass


class UnknownLoan(LedgerError):
    pass


class DuplicateLoan(LedgerError):
    pass


class NonPositivePrincipal(LedgerError):
    pass


class LoanClosed(LedgerError):
    pass


class Overpayment(LedgerError):
    """A principal payment exceeds the outstanding balance."""


class Overwrite(LedgerError):
    """A haircut writes down more than the outstanding balance."""


class WrongLoanKind(LedgerError):
    """Operation restricted to at-risk venture loans was called on another kind."""


class PolicyViolation(LedgerError):
    """The active cancellation policy forbids this operation."""


class InsufficientBorrowerFunds(LedgerError):
    pass


class BadScenario(LedgerError):
    """A scenario file is malformed or references unknown entities."""
