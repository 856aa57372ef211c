"""Double-entry ledger engine with pluggable principal-cancellation policy."""

from .engine import Chart, Ledger, LedgerConfig
from .errors import (
    BadScenario,
    CurrencyMismatch,
    DuplicateAccount,
    DuplicateLoan,
    InsufficientBorrowerFunds,
    LedgerError,
    LoanClosed,
    NonPositivePrincipal,
    Overpayment,
    Overwrite,
    PolicyViolation,
    UnbalancedTransaction,
    UnknownAccount,
    UnknownLoan,
    UnknownSector,
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
    parse_policy,
)
from .model import (
    Account,
    AccountKind,
    MoneyEvent,
    Posting,
    Sector,
    Side,
    Transaction,
)
from .scenario import (
    ScenarioResult,
    ScenarioRunner,
    StepRow,
    load_scenario,
    replay_scenario,
)

__all__ = [
    "Account",
    "AccountKind",
    "AllocateToGovernment",
    "BadScenario",
    "Cancel",
    "CancellationPolicy",
    "Chart",
    "CurrencyMismatch",
    "DuplicateAccount",
    "DuplicateLoan",
    "Funding",
    "InsufficientBorrowerFunds",
    "Ledger",
    "LedgerConfig",
    "LedgerError",
    "Loan",
    "LoanClosed",
    "LoanKind",
    "MoneyEvent",
    "NonPositivePrincipal",
    "Overpayment",
    "Overwrite",
    "PolicyViolation",
    "Posting",
    "RetainToBank",
    "ScenarioResult",
    "ScenarioRunner",
    "Sector",
    "Side",
    "StepRow",
    "Transaction",
    "UnbalancedTransaction",
    "UnknownAccount",
    "UnknownLoan",
    "UnknownSector",
    "VentureRetain",
    "WrongLoanKind",
    "load_scenario",
    "parse_policy",
    "replay_scenario",
]
