"""Modern-policy simulations: flow normalization, allocation, chains, scenarios."""

from .chains import (
    BorrowerTag,
    ChainNode,
    Eligibility,
    LoanGraph,
    classify_chain,
)
from .errors import (
    BadGraph,
    BadSeries,
    CycleDetected,
    DivisionByZeroDate,
    NonPositiveMaturity,
    NoOverlap,
    PolicyError,
)
from .scenarios import (
    ConvertedAtBook,
    FullLoss,
    Haircut,
    PolicyPeriodRow,
    PolicyReport,
    PolicyScenario,
    Resolution,
    VentureOutcome,
    VentureOutcomeRow,
    VentureReport,
    parse_venture_outcome,
    parse_venture_portfolio,
    run_policy_scenario,
    run_venture_portfolio,
)
from .series import (
    ALLOCATION_RECIPIENTS,
    AllocationConfig,
    Series,
    UNIT_CURRENCY_BILLIONS,
    UNIT_MONTHS,
    UNIT_PERCENT,
    allocate_principal,
    normalize_principal_flow,
    tax_uplift,
)

__all__ = [
    "ALLOCATION_RECIPIENTS",
    "AllocationConfig",
    "BadGraph",
    "BadSeries",
    "BorrowerTag",
    "ChainNode",
    "ConvertedAtBook",
    "CycleDetected",
    "DivisionByZeroDate",
    "Eligibility",
    "FullLoss",
    "Haircut",
    "LoanGraph",
    "NonPositiveMaturity",
    "NoOverlap",
    "PolicyError",
    "PolicyPeriodRow",
    "PolicyReport",
    "PolicyScenario",
    "Resolution",
    "Series",
    "UNIT_CURRENCY_BILLIONS",
    "UNIT_MONTHS",
    "UNIT_PERCENT",
    "VentureOutcome",
    "VentureOutcomeRow",
    "VentureReport",
    "allocate_principal",
    "classify_chain",
    "normalize_principal_flow",
    "parse_venture_outcome",
    "parse_venture_portfolio",
    "run_policy_scenario",
    "run_venture_portfolio",
    "tax_uplift",
]
