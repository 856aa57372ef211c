"""Rectangular CSV documents with byte-stable rendering.

Cells may be strings, Decimals, integers, or dates; they are rendered
with ``str`` (Decimals keep their explicit precision, dates are ISO) so a
written file is reproducible byte for byte. Reading returns all-string
cells; rendered forms round-trip exactly.
"""

from __future__ import annotations

import csv
import datetime
import io
from dataclasses import dataclass
from decimal import Decimal

from .errors import IoFailure, MalformedHeader, UnparsableRow

Cell = "str | Decimal | int | datetime.date"


def render_cell(cell) -> str:
    if isinstance(cell, str):
        return cell
    if isinstance(cell, (Decimal, int)):
        return str(cell)
    if isinstance(cell, datetime.date):
        return cell.isoformat()
    raise UnparsableRow(0, f"unsupported cell type {type(cell).__name__}")


@dataclass(frozen=True)
class TableDocument:
    name: str
    headers: tuple[str, ...]
    rows: tuple[tuple, ...]

    def __post_init__(self) -> None:
        if not self.headers:
            raise MalformedHeader(f"table {self.name!r} has no headers")
        width = len(self.headers)
        for index, row in enumerate(self.rows):
            if len(row) != width:
                raise UnparsableRow(
                    index + 2,
                    f"row has {len(row)} cells, header has {width}")

    @classmethod
    def of(cls, name: str, headers, rows) -> "TableDocument":
        return cls(name=name, headers=tuple(str(h) for h in headers),
                   rows=tuple(tuple(row) for row in rows))

    def rendered_rows(self) -> tuple[tuple[str, ...], ...]:
        return tuple(tuple(render_cell(c) for c in row) for row in self.rows)


def table_bytes(doc: TableDocument) -> bytes:
    """The document's canonical CSV byte encoding (RFC-4180, LF, UTF-8)."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n", quoting=csv.QUOTE_MINIMAL)
    writer.writerow(doc.headers)
    for row in doc.rendered_rows():
        writer.writerow(row)
    return buffer.getvalue().encode("utf-8")


def write_table(doc: TableDocument, path) -> None:
    try:
        with open(path, "wb") as handle:
            handle.write(table_bytes(doc))
    except OSError as failure:
        raise IoFailure(f"cannot write {path}: {failure}") from failure


def read_table(path, name: str | None = None) -> TableDocument:
    """Read a CSV written by ``write_table``; cells come back as strings."""
    try:
        with open(path, "r", encoding="utf-8", newline="") as handle:
            reader = csv.reader(handle)
            try:
                headers = next(reader)
            except StopIteration:
                raise MalformedHeader(f"{path}: empty file") from None
            rows = []
            for line_number, row in enumerate(reader, start=2):
                if len(row) != len(headers):
                    raise UnparsableRow(
                        line_number,
                        f"{len(row)} cells against {len(headers)} headers")
                rows.append(tuple(row))
    except OSError as failure:
        raise IoFailure(f"cannot read {path}: {failure}") from failure
    table_name = name if name is not None else str(path)
    return TableDocument(name=table_name, headers=tuple(headers),
                         rows=tuple(rows))
