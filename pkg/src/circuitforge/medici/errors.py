"""Errors raised by the historical-dataset and calibration operations."""


class MediciError(Exception):
    """Base class for this subpackage."""


class BadRecord(MediciError):
    """A loan record violates its invariants (dates, duration, rate)."""


class EmptyDataset(MediciError):
    """An operation that needs records received none."""


class AllZero(MediciError):
    """Utilization of an all-zero coincidence vector is undefined."""


class NonPositiveCapital(MediciError):
    """Growth models need strictly positive starting capital."""


class NoBracket(MediciError):
    """The solved rate does not lie inside the bisection bracket."""


class Unsatisfiable(MediciError):
    """Reconstruction could not meet the constraints within its budget."""


class BadTable(MediciError):
    """A loans CSV file is malformed."""
