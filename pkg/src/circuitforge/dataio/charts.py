"""Deterministic SVG chart rendering.

Charts are rendered straight to SVG with a pinned id-hash salt and no
embedded timestamp, so rendering the same spec twice yields byte-identical
files — they can be golden-tested and diffed like any other artifact.
"""

from __future__ import annotations

import datetime
from dataclasses import dataclass
from decimal import Decimal

import matplotlib
from matplotlib.figure import Figure

from ..policy.series import Series
from .errors import EmptySeries, IoFailure

CHART_KINDS = ("line", "histogram", "scatter")

SVG_HASH_SALT = "circuitforge"

_FIGURE_SIZE = (8.0, 4.5)
_DPI = 100


@dataclass(frozen=True)
class ChartDataset:
    """One plotted series: paired xs/ys, or bare values for histograms."""

    label: str
    xs: tuple
    ys: tuple | None = None

    def __post_init__(self) -> None:
        if self.ys is not None and len(self.xs) != len(self.ys):
            raise EmptySeries(
                f"dataset {self.label!r}: {len(self.xs)} xs vs {len(self.ys)} ys")


@dataclass(frozen=True)
class ChartSpec:
    kind: str
    datasets: tuple[ChartDataset, ...]
    title: str = ""
    x_label: str = ""
    y_label: str = ""
    bins: int = 10
    output: str | None = None

    def __post_init__(self) -> None:
        if self.kind not in CHART_KINDS:
            raise EmptySeries(
                f"unknown chart kind {self.kind!r}; choose from {CHART_KINDS}")
        if not self.datasets:
            raise EmptySeries("a chart needs at least one dataset")
        if self.bins < 1:
            raise EmptySeries(f"bins must be >= 1, got {self.bins}")


def line_chart_from_series(title: str, named: dict[str, Series],
                           x_label: str = "date") -> ChartSpec:
    datasets = tuple(
        ChartDataset(label=name, xs=series.dates(), ys=series.values())
        for name, series in named.items())
    units = {series.unit for series in named.values()}
    y_label = units.pop() if len(units) == 1 else ""
    return ChartSpec(kind="line", datasets=datasets, title=title,
                     x_label=x_label, y_label=y_label)


def histogram_chart(title: str, values, bins: int = 10,
                    x_label: str = "", y_label: str = "count") -> ChartSpec:
    return ChartSpec(kind="histogram",
                     datasets=(ChartDataset(label="", xs=tuple(values)),),
                     title=title, x_label=x_label, y_label=y_label, bins=bins)


def _to_float(value):
    if isinstance(value, Decimal):
        return float(value)
    if isinstance(value, (datetime.date, datetime.datetime)):
        return value
    return float(value)


def render_chart(spec: ChartSpec, path=None) -> None:
    """Write the chart as a standalone SVG file."""
    target = path if path is not None else spec.output
    if target is None:
        raise IoFailure("no output path given for chart")
    for dataset in spec.datasets:
        if not dataset.xs:
            raise EmptySeries(f"dataset {dataset.label!r} has no points")
        if spec.kind in ("line", "scatter") and dataset.ys is None:
            raise EmptySeries(
                f"dataset {dataset.label!r} needs ys for a {spec.kind} chart")

    fig = Figure(figsize=_FIGURE_SIZE, dpi=_DPI)
    ax = fig.add_subplot()
    show_legend = False
    for dataset in spec.datasets:
        xs = [_to_float(x) for x in dataset.xs]
        label = dataset.label or None
        show_legend = show_legend or bool(dataset.label)
        if spec.kind == "histogram":
            ax.hist(xs, bins=spec.bins, label=label, edgecolor="black",
                    alpha=0.8)
        else:
            ys = [_to_float(y) for y in dataset.ys]
            if spec.kind == "line":
                marker = "o" if len(xs) == 1 else None
                ax.plot(xs, ys, label=label, marker=marker)
            else:
                ax.scatter(xs, ys, label=label)
    if spec.title:
        ax.set_title(spec.title)
    if spec.x_label:
        ax.set_xlabel(spec.x_label)
    if spec.y_label:
        ax.set_ylabel(spec.y_label)
    ax.grid(True, alpha=0.3)
    if show_legend:
        ax.legend()
    fig.autofmt_xdate(rotation=30)
    try:
        with matplotlib.rc_context({"svg.hashsalt": SVG_HASH_SALT}):
            fig.savefig(target, format="svg", metadata={"Date": None})
    except OSError as failure:
        raise IoFailure(f"cannot write {target}: {failure}") from failure
