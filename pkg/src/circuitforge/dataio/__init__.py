"""Bit-exact table/series I/O and deterministic SVG charts."""

from .charts import (
    CHART_KINDS,
    ChartDataset,
    ChartSpec,
    SVG_HASH_SALT,
    histogram_chart,
    line_chart_from_series,
    render_chart,
)
from .errors import (
    DataIoError,
    EmptySeries,
    IoFailure,
    MalformedHeader,
    SkippedValuesWarning,
    UnparsableRow,
)
from .seriesio import (
    MISSING_MARKERS,
    SERIES_HEADER,
    read_series,
    series_bytes,
    write_series,
)
from .tables import (
    TableDocument,
    read_table,
    render_cell,
    table_bytes,
    write_table,
)

__all__ = [
    "CHART_KINDS",
    "ChartDataset",
    "ChartSpec",
    "DataIoError",
    "EmptySeries",
    "IoFailure",
    "MISSING_MARKERS",
    "MalformedHeader",
    "SERIES_HEADER",
    "SVG_HASH_SALT",
    "SkippedValuesWarning",
    "TableDocument",
    "UnparsableRow",
    "histogram_chart",
    "line_chart_from_series",
    "read_series",
    "read_table",
    "render_cell",
    "render_chart",
    "series_bytes",
    "table_bytes",
    "write_series",
    "write_table",
]
