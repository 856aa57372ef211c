"""Errors and warnings for table/series/chart I/O."""


class DataIoError(Exception):
    """Base class for I/O-layer failures."""


class MalformedHeader(DataIoError):
    """A delimited file does not start with the expected header."""


class UnparsableRow(DataIoError):
    """A data row could not be parsed; carries the 1-based line number."""

    def __init__(self, line: int, message: str) -> None:
        super().__init__(f"line {line}: {message}")
        self.line = line


class EmptySeries(DataIoError):
    """No usable observations (or an empty chart dataset)."""


class IoFailure(DataIoError):
    """The underlying filesystem operation failed."""


class SkippedValuesWarning(UserWarning):
    """Rows with missing values were skipped; ``count`` says how many."""

    def __init__(self, count: int, path: str) -> None:
        super().__init__(f"skipped {count} missing-value row(s) in {path}")
        self.count = count
        self.path = path
