"""circuitforge: a monetary-circuit simulation toolkit.

Subpackages:

- ``ledger``  — double-entry engine with pluggable principal-cancellation
  policies and declarative JSON scenarios.
- ``medici``  — renaissance-bank loan-book statistics, ledger-reconstruction
  search, and growth-model calibration.
- ``policy``  — modern-policy simulators: principal flow normalization,
  government allocation, tax uplift, and venture portfolios.
- ``dataio``  — delimited tables, date/value series, deterministic charts.
- ``cli``     — the ``circuitforge`` command-line interface.
"""

from .money import (
    BadAmount,
    CurrencyMismatch,
    Money,
    MoneyError,
    accrue_simple_interest,
    split_exact,
)

__version__ = "0.1.0"

__all__ = [
    "BadAmount",
    "CurrencyMismatch",
    "Money",
    "MoneyError",
    "__version__",
    "accrue_simple_interest",
    "split_exact",
]
