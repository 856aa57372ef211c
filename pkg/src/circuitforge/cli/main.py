"""The ``circuitforge`` command line.

Grammar: ``circuitforge {ledger|medici|policy|venture} <subcommand>``
with the common flags ``--out DIR``, ``--seed N``, ``--jobs N`` and
``--format {csv,svg}``. Every run prints its seed; runs that write files
also write a reproducibility manifest next to them. Exit codes: 0
success, 1 environment/IO failure, 2 validation or usage error.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import json
import os
import sys
import warnings
from decimal import Decimal, InvalidOperation
from pathlib import Path

from ..dataio import (
    ChartSpec,
    ChartDataset,
    DataIoError,
    IoFailure,
    SkippedValuesWarning,
    TableDocument,
    histogram_chart,
    line_chart_from_series,
    read_series,
    render_chart,
    write_series,
    write_table,
)
from ..ledger import BadScenario, LedgerError, load_scenario, parse_policy, replay_scenario
from ..medici import (
    MODEL2_RETENTIONS,
    MODEL3_REFERENCE_RATES,
    MediciError,
    calibrate_model1,
    calibrate_model2,
    calibrate_model3,
    read_loans_csv,
    reconstruct_dataset,
    summarize,
    write_loans_csv,
)
from ..medici.records import CSV_HEADER, SEASONS
from ..policy import (
    PolicyError,
    PolicyScenario,
    Series,
    UNIT_CURRENCY_BILLIONS,
    UNIT_MONTHS,
    allocate_principal,
    normalize_principal_flow,
    parse_venture_portfolio,
    run_policy_scenario,
    run_venture_portfolio,
    tax_uplift,
)
from .manifest import RunManifest

EXIT_OK = 0
EXIT_IO = 1
EXIT_USAGE = 2

_MONTH_NAMES = ("jan", "feb", "mar", "apr", "may", "jun",
                "jul", "aug", "sep", "oct", "nov", "dec")

_SCALAR_DATE = "1970-01-01"


def bundled_data(name: str) -> Path:
    return Path(__file__).resolve().parent.parent / "data" / name


def _load_json(path) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as failure:
        raise IoFailure(f"cannot read {path}: {failure}") from failure
    try:
        return json.loads(text)
    except json.JSONDecodeError as bad:
        raise BadScenario(f"{path}: not valid JSON ({bad})") from None


class _Run:
    """Collects outputs and flushes them (plus the manifest) at the end."""

    def __init__(self, args, subcommand: str, config: dict) -> None:
        self.args = args
        self.subcommand = subcommand
        self.config = config
        self.inputs: list[Path] = []
        self.tables: list[tuple[str, TableDocument]] = []
        self.series: list[tuple[str, Series]] = []
        self.charts: list[tuple[str, ChartSpec]] = []
        self.datasets: list[tuple[str, object]] = []

    def used_input(self, path) -> None:
        self.inputs.append(Path(path))

    def add_table(self, filename: str, doc: TableDocument) -> None:
        self.tables.append((filename, doc))

    def add_series(self, filename: str, series: Series) -> None:
        self.series.append((filename, series))

    def add_chart(self, filename: str, spec: ChartSpec) -> None:
        self.charts.append((filename, spec))

    def add_loan_dataset(self, filename: str, dataset) -> None:
        self.datasets.append((filename, dataset))

    def flush(self) -> None:
        out = self.args.out
        if out is None:
            if self.args.format == "svg":
                raise BadScenario("--format svg needs --out DIR to write into")
            return
        directory = Path(out)
        directory.mkdir(parents=True, exist_ok=True)
        for filename, doc in self.tables:
            write_table(doc, directory / filename)
        for filename, series in self.series:
            write_series(series, directory / filename)
        for filename, dataset in self.datasets:
            write_loans_csv(dataset, directory / filename)
        if self.args.format == "svg":
            for filename, spec in self.charts:
                render_chart(spec, directory / filename)
        manifest = RunManifest.build(
            self.subcommand, self.config, self.inputs, self.args.seed)
        manifest.write(directory)


def _read_series_reporting(run: _Run, path, unit: str) -> Series:
    run.used_input(path)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", SkippedValuesWarning)
        series = read_series(path, unit)
    for warning in caught:
        if isinstance(warning.message, SkippedValuesWarning):
            print(f"note: {warning.message}")
    return series


# -- ledger ----------------------------------------------------------------

def cmd_ledger_replay(args) -> int:
    run = _Run(args, "ledger replay",
               {"scenario": Path(args.scenario).name, "format": args.format})
    run.used_input(args.scenario)
    result = replay_scenario(load_scenario(args.scenario))
    header, rows = result.table()
    doc = TableDocument.of("balances", header, rows)
    run.add_table("balances.csv", doc)
    steps = list(range(1, len(rows) + 1))
    datasets = []
    for column, account in enumerate(header[1:], start=1):
        ys = tuple(Decimal(row[column]) for row in rows)
        datasets.append(ChartDataset(label=account, xs=tuple(steps), ys=ys))
    if datasets:
        run.add_chart("balances.svg", ChartSpec(
            kind="line", datasets=tuple(datasets), title=result.name,
            x_label="step", y_label="balance"))
    run.flush()
    print(f"scenario: {result.name}")
    print(f"steps: {len(rows)}")
    if rows:
        tail = ", ".join(f"{account}={value}"
                         for account, value in zip(header[1:], rows[-1][1:]))
        print(f"final: {tail}")
    print(f"money supply: {result.ledger.money_supply()}")
    return EXIT_OK


# -- medici ----------------------------------------------------------------

def _summary_table(summary) -> TableDocument:
    rows = [
        ("loans", str(sum(summary.bucket_counts))),
        ("bucket_count_60d", str(summary.bucket_counts[0])),
        ("bucket_count_95d", str(summary.bucket_counts[1])),
        ("bucket_count_120d", str(summary.bucket_counts[2])),
    ]
    for season, count in zip(SEASONS, summary.season_starts):
        rows.append((f"starts_{season}", str(count)))
    for season, count in zip(SEASONS, summary.season_ends):
        rows.append((f"ends_{season}", str(count)))
    for month, count in zip(_MONTH_NAMES, summary.monthly_coincidence):
        rows.append((f"coincidence_{month}", str(count)))
    rows.append(("mean_nominal_rate", str(summary.mean_nominal_rate)))
    rows.append(("utilization", f"{summary.utilization:.4f}"))
    rows.append(("effective_yield", f"{summary.effective_yield:.4f}"))
    return TableDocument.of("summary", ("statistic", "value"), rows)


def _dataset_charts(run: _Run, dataset) -> None:
    summary = summarize(dataset)
    rates = [record.nominal_annual_rate * 100 for record in dataset.records]
    run.add_chart("rates_hist.svg", histogram_chart(
        "Nominal annual rates", rates, bins=10, x_label="rate (%)"))
    run.add_chart("coincidence.svg", ChartSpec(
        kind="line",
        datasets=(ChartDataset(label="loans in force",
                               xs=tuple(range(1, 13)),
                               ys=tuple(summary.monthly_coincidence)),),
        title="Concurrent loans by month", x_label="month", y_label="count"))


def _obtain_dataset(run: _Run, args):
    if getattr(args, "data", None):
        run.used_input(args.data)
        return read_loans_csv(args.data)
    return reconstruct_dataset(seed=args.seed)


def cmd_medici_stats(args) -> int:
    run = _Run(args, "medici stats",
               {"data": Path(args.data).name if args.data else None,
                "format": args.format})
    dataset = _obtain_dataset(run, args)
    summary = summarize(dataset)
    run.add_table("stats.csv", _summary_table(summary))
    _dataset_charts(run, dataset)
    run.flush()
    print(f"loans: {sum(summary.bucket_counts)}")
    print(f"utilization: {summary.utilization:.4f}")
    print(f"effective yield: {summary.effective_yield:.4f}")
    print(f"mean nominal rate: {summary.mean_nominal_rate}")
    return EXIT_OK


def cmd_medici_reconstruct(args) -> int:
    run = _Run(args, "medici reconstruct", {"format": args.format})
    dataset = reconstruct_dataset(seed=args.seed)
    summary = summarize(dataset)
    run.add_loan_dataset("dataset.csv", dataset)
    run.add_table("stats.csv", _summary_table(summary))
    _dataset_charts(run, dataset)
    run.flush()
    print(f"reconstructed {len(dataset.records)} loans")
    print(f"bucket counts: {summary.bucket_counts}")
    print(f"utilization: {summary.utilization:.4f}")
    print(f"mean nominal rate: {summary.mean_nominal_rate}")
    return EXIT_OK


def _calibration_columns(args) -> list[tuple[str, callable]]:
    if args.model == 1:
        return [("earnings-growth", calibrate_model1)]
    if args.model == 2:
        retentions = ([Decimal(args.retention)] if args.retention
                      else list(MODEL2_RETENTIONS))
        return [(f"retention={r}", lambda r=r: calibrate_model2(r))
                for r in retentions]
    combos = sorted(MODEL3_REFERENCE_RATES)
    if args.retention:
        combos = [c for c in combos if c[0] == Decimal(args.retention)]
    if args.deposits is not None:
        combos = [c for c in combos if c[1] == args.deposits]
    if not combos and args.retention:
        combos = [(Decimal(args.retention), args.deposits or 1)]
    return [(f"retention={r} deposits={k}",
             lambda r=r, k=k: calibrate_model3(r, k, args.share))
            for r, k in combos]


def cmd_medici_calibrate(args) -> int:
    config = {"model": args.model, "retention": args.retention,
              "deposits": args.deposits, "share": args.share,
              "format": args.format}
    run = _Run(args, "medici calibrate", config)
    columns = _calibration_columns(args)
    with concurrent.futures.ThreadPoolExecutor(max_workers=args.jobs) as pool:
        results = list(pool.map(lambda item: (item[0], item[1]()), columns))
    # Model 1 solves growth factors (multiples); models 2 and 3 solve
    # annual rates, shown as percentages alongside their references.
    if args.model == 1:
        def fmt(value: float) -> str:
            return f"{value:.6f}"
        solved_header, y_label = "solved_factor", "growth factor"
    else:
        def fmt(value: float) -> str:
            return f"{value * 100:.2f}"
        solved_header, y_label = "solved_rate_pct", "annual rate (%)"
    rows = []
    chart_sets = []
    for label, cells in results:
        xs, ys = [], []
        for cell in cells:
            reference = ("" if cell.reference_rate is None
                         else fmt(cell.reference_rate))
            residual = ("" if cell.residual_pct is None
                        else f"{cell.residual_pct:+.2f}")
            rows.append((cell.period_label, cell.parameter_label,
                         fmt(cell.solved_rate), reference, residual,
                         "yes" if cell.flagged else "no"))
            tail = cell.period_label.split("-")[-1]
            xs.append(int(tail) if tail.isdigit() else len(xs) + 1)
            ys.append(Decimal(fmt(cell.solved_rate)))
        chart_sets.append(ChartDataset(label=label, xs=tuple(xs), ys=tuple(ys)))
    doc = TableDocument.of(
        "calibration",
        ("period", "parameters", solved_header, "reference",
         "residual_pct", "flagged"),
        rows)
    run.add_table("calibration.csv", doc)
    run.add_chart("calibration.svg", ChartSpec(
        kind="line", datasets=tuple(chart_sets),
        title=f"Calibration (model {args.model})",
        x_label="period end", y_label=y_label))
    run.flush()
    unit = "" if args.model == 1 else "%"
    for row in rows:
        flag = " [flagged]" if row[5] == "yes" else ""
        residual = f" residual {row[4]}%" if row[4] else ""
        print(f"{row[0]} {row[1]}: {row[2]}{unit}{residual}{flag}")
    return EXIT_OK


# -- policy ----------------------------------------------------------------

def cmd_policy_normalize(args) -> int:
    stock_path = args.stock or bundled_data("sample_busloans.csv")
    maturity_path = args.maturity or bundled_data("sample_edanq.csv")
    run = _Run(args, "policy normalize",
               {"stock": Path(stock_path).name,
                "maturity": Path(maturity_path).name, "format": args.format})
    stock = _read_series_reporting(run, stock_path, UNIT_CURRENCY_BILLIONS)
    maturity = _read_series_reporting(run, maturity_path, UNIT_MONTHS)
    flow = normalize_principal_flow(stock, maturity)
    quantum = Decimal("0.0001")
    rounded = Series(unit=flow.unit, points=tuple(
        (date, value.quantize(quantum)) for date, value in flow.points))
    run.add_series("flow.csv", rounded)
    run.add_chart("flow.svg", line_chart_from_series(
        "Annualized principal-repayment flow", {"flow": rounded}))
    run.flush()
    print(f"points: {len(flow)}")
    print(f"median flow: {flow.median_value():.4f}")
    return EXIT_OK


def cmd_policy_allocate(args) -> int:
    config_path = args.config or bundled_data("alloc_default.json")
    run = _Run(args, "policy allocate",
               {"config": Path(config_path).name,
                "flow": Path(args.flow).name if args.flow else None,
                "format": args.format})
    run.used_input(config_path)
    try:
        cfg = parse_policy(_load_json(config_path))
    except (ValueError, ArithmeticError) as bad:
        raise BadScenario(f"{config_path}: {bad}") from None
    if not hasattr(cfg, "fractions"):
        raise BadScenario(
            f"{config_path}: allocation needs kind allocate_to_government")
    if args.flow:
        flow = _read_series_reporting(run, args.flow, UNIT_CURRENCY_BILLIONS)
    else:
        stock_path = bundled_data("sample_busloans.csv")
        maturity_path = bundled_data("sample_edanq.csv")
        stock = _read_series_reporting(run, stock_path, UNIT_CURRENCY_BILLIONS)
        maturity = _read_series_reporting(run, maturity_path, UNIT_MONTHS)
        quantum = Decimal("0.0001")
        flow = normalize_principal_flow(stock, maturity)
        flow = Series(unit=flow.unit, points=tuple(
            (date, value.quantize(quantum)) for date, value in flow.points))
    split = allocate_principal(flow, cfg)
    recipients = tuple(split)
    rows = []
    for index, (date, value) in enumerate(flow.points):
        rows.append((date.isoformat(), str(value),
                     *(str(split[name].points[index][1]) for name in recipients)))
    doc = TableDocument.of("allocation",
                           ("date", "flow", *recipients), rows)
    run.add_table("allocation.csv", doc)
    run.add_chart("allocation.svg", line_chart_from_series(
        "Allocated principal flow", dict(split)))
    run.flush()
    totals = {name: sum(series.values()) for name, series in split.items()}
    print(f"points: {len(flow)}")
    for name, total in totals.items():
        print(f"total {name}: {total}")
    return EXIT_OK


def _series_or_scalar(run: _Run, raw: str, unit: str) -> "Series | Decimal":
    try:
        return Decimal(raw)
    except InvalidOperation:
        return _read_series_reporting(run, raw, unit)


def cmd_policy_uplift(args) -> int:
    run = _Run(args, "policy uplift",
               {"receipts": args.receipts, "tax": args.tax,
                "format": args.format})
    receipts = _series_or_scalar(run, args.receipts, UNIT_CURRENCY_BILLIONS)
    tax = _series_or_scalar(run, args.tax, UNIT_CURRENCY_BILLIONS)
    if isinstance(receipts, Decimal) and isinstance(tax, Decimal):
        receipts = Series.of(UNIT_CURRENCY_BILLIONS,
                             [(_SCALAR_DATE, receipts)])
        tax = Series.of(UNIT_CURRENCY_BILLIONS, [(_SCALAR_DATE, tax)])
    elif isinstance(receipts, Decimal):
        receipts = Series(unit=UNIT_CURRENCY_BILLIONS, points=tuple(
            (date, receipts) for date, _ in tax.points))
    elif isinstance(tax, Decimal):
        tax = Series(unit=UNIT_CURRENCY_BILLIONS, points=tuple(
            (date, tax) for date, _ in receipts.points))
    uplift = tax_uplift(receipts, tax)
    run.add_series("uplift.csv", uplift)
    run.add_chart("uplift.svg", line_chart_from_series(
        "Receipts as share of tax revenue", {"uplift": uplift}))
    run.flush()
    for date, value in uplift.points:
        if date.isoformat() == _SCALAR_DATE:
            print(f"uplift: {value}%")
        else:
            print(f"uplift[{date.isoformat()}]: {value}%")
    return EXIT_OK


def cmd_policy_run(args) -> int:
    scenario_path = args.scenario or bundled_data("policy_scenario.json")
    run = _Run(args, "policy run",
               {"scenario": Path(scenario_path).name, "format": args.format})
    run.used_input(scenario_path)
    scenario = PolicyScenario.from_mapping(_load_json(scenario_path))
    report = run_policy_scenario(scenario)
    header, rows = report.table()
    run.add_table("report.csv", TableDocument.of("report", header, rows))
    periods = tuple(int(row[0]) for row in rows)
    run.add_chart("report.svg", ChartSpec(
        kind="line",
        datasets=(
            ChartDataset(label="money supply", xs=periods,
                         ys=tuple(Decimal(row[1]) for row in rows)),
            ChartDataset(label="government receipts", xs=periods,
                         ys=tuple(Decimal(row[2]) for row in rows)),
        ),
        title=report.name, x_label="period", y_label="amount"))
    run.flush()
    print(f"scenario: {report.name}")
    print(f"periods: {len(report.rows)}")
    print(f"total receipts: {report.total_receipts}")
    print(f"total respent: {report.total_respent}")
    print(f"final money supply: {report.rows[-1].money_supply}")
    return EXIT_OK


# -- venture ----------------------------------------------------------------

def cmd_venture_run(args) -> int:
    portfolio_path = args.portfolio or bundled_data("venture_portfolio.json")
    run = _Run(args, "venture run",
               {"portfolio": Path(portfolio_path).name, "format": args.format})
    run.used_input(portfolio_path)
    name, currency, outcomes = parse_venture_portfolio(
        _load_json(portfolio_path))
    report = run_venture_portfolio(outcomes, currency=currency, name=name)
    header, rows = report.table()
    run.add_table("venture_report.csv",
                  TableDocument.of("venture", header, rows))
    cumulative = []
    total = Decimal(0)
    for row in report.rows:
        total += row.invested.amount
        cumulative.append(total)
    if cumulative:
        run.add_chart("venture.svg", ChartSpec(
            kind="line",
            datasets=(ChartDataset(label="permanent money",
                                   xs=tuple(range(1, len(cumulative) + 1)),
                                   ys=tuple(cumulative)),),
            title=report.name, x_label="outcome", y_label="amount"))
    run.flush()
    print(f"portfolio: {report.name}")
    print(f"outcomes: {len(report.rows)}")
    print(f"permanent money created: {report.permanent_money}")
    print(f"equity booked: {report.equity_booked}")
    print(f"writedowns: {report.writedowns}")
    return EXIT_OK


# -- wiring ------------------------------------------------------------------

def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--out", metavar="DIR", default=None,
                        help="directory for output files (and the manifest)")
    parser.add_argument("--seed", type=int, default=1,
                        help="seed for randomized steps (default 1)")
    parser.add_argument("--jobs", type=int,
                        default=os.cpu_count() or 1,
                        help="parallel workers for independent cells")
    parser.add_argument("--format", choices=("csv", "svg"), default="csv",
                        help="csv only, or csv plus SVG charts")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="circuitforge",
        description="Monetary-circuit ledger, loan-book analytics, and "
                    "policy simulations.")
    groups = parser.add_subparsers(dest="group", required=True)

    ledger = groups.add_parser("ledger", help="double-entry scenario replay")
    ledger_sub = ledger.add_subparsers(dest="command", required=True)
    replay = ledger_sub.add_parser("replay", help="run a scenario JSON file")
    replay.add_argument("--scenario", required=True, help="scenario JSON path")
    _add_common(replay)
    replay.set_defaults(handler=cmd_ledger_replay)

    medici = groups.add_parser("medici", help="loan-book statistics, "
                                              "reconstruction, calibration")
    medici_sub = medici.add_subparsers(dest="command", required=True)
    stats = medici_sub.add_parser("stats", help="summary statistics")
    stats.add_argument("--data", default=None,
                       help="loan dataset CSV (default: reconstruct)")
    _add_common(stats)
    stats.set_defaults(handler=cmd_medici_stats)
    reconstruct = medici_sub.add_parser("reconstruct",
                                        help="rebuild a loan dataset")
    _add_common(reconstruct)
    reconstruct.set_defaults(handler=cmd_medici_reconstruct)
    calibrate = medici_sub.add_parser("calibrate",
                                      help="solve required profit rates")
    calibrate.add_argument("--model", type=int, choices=(1, 2, 3),
                           required=True)
    calibrate.add_argument("--retention", default=None,
                           help="retention fraction, e.g. 0.10")
    calibrate.add_argument("--deposits", type=int, default=None,
                           help="deposit multiple (model 3)")
    calibrate.add_argument("--share", type=float, default=0.5,
                           help="depositor share of income (model 3)")
    _add_common(calibrate)
    calibrate.set_defaults(handler=cmd_medici_calibrate)

    policy = groups.add_parser("policy", help="flow normalization, "
                                              "allocation, scenarios")
    policy_sub = policy.add_subparsers(dest="command", required=True)
    normalize = policy_sub.add_parser("normalize",
                                      help="stock + maturity -> annual flow")
    normalize.add_argument("--stock", default=None,
                           help="stock series CSV (default: bundled sample)")
    normalize.add_argument("--maturity", default=None,
                           help="maturity series CSV (default: bundled sample)")
    _add_common(normalize)
    normalize.set_defaults(handler=cmd_policy_normalize)
    allocate = policy_sub.add_parser("allocate",
                                     help="split a flow across recipients")
    allocate.add_argument("--config", default=None,
                          help="allocation config JSON (default: bundled)")
    allocate.add_argument("--flow", default=None,
                          help="flow series CSV (default: normalized sample)")
    _add_common(allocate)
    allocate.set_defaults(handler=cmd_policy_allocate)
    uplift = policy_sub.add_parser("uplift",
                                   help="receipts as % of tax revenue")
    uplift.add_argument("--receipts", required=True,
                        help="amount or series CSV path")
    uplift.add_argument("--tax", required=True,
                        help="amount or series CSV path")
    _add_common(uplift)
    uplift.set_defaults(handler=cmd_policy_uplift)
    run_cmd = policy_sub.add_parser("run", help="cohort scenario on the ledger")
    run_cmd.add_argument("--scenario", default=None,
                         help="policy scenario JSON (default: bundled)")
    _add_common(run_cmd)
    run_cmd.set_defaults(handler=cmd_policy_run)

    venture = groups.add_parser("venture", help="at-risk venture portfolios")
    venture_sub = venture.add_subparsers(dest="command", required=True)
    vrun = venture_sub.add_parser("run", help="resolve a venture portfolio")
    vrun.add_argument("--portfolio", default=None,
                      help="portfolio JSON (default: bundled)")
    _add_common(vrun)
    vrun.set_defaults(handler=cmd_venture_run)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    print(f"seed: {args.seed}")
    try:
        return args.handler(args)
    except (IoFailure, OSError) as failure:
        print(f"error: {failure}", file=sys.stderr)
        return EXIT_IO
    except (LedgerError, MediciError, PolicyError, DataIoError,
            ValueError, InvalidOperation) as failure:
        print(f"error: {failure}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
