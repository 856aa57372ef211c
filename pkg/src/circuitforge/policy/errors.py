"""Errors raised by the modern-policy toolkit."""


class PolicyError(Exception):
    """Base class for policy-module failures."""


class BadSeries(PolicyError):
    """A series violates its structural rules (dates, units, shape)."""


class NoOverlap(PolicyError):
    """Two series share no common date range."""


class NonPositiveMaturity(PolicyError):
    """A maturity observation is zero or negative."""


class DivisionByZeroDate(PolicyError):
    """A pointwise ratio hit a zero denominator at a specific date."""


class BadGraph(PolicyError):
    """A loan graph references unknown nodes or is otherwise malformed."""


class CycleDetected(PolicyError):
    """Chain-funding links form a cycle."""
