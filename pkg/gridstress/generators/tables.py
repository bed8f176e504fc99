"""Deterministic CSV/JSON tables with fixed column orders."""

from __future__ import annotations

import csv
import io
import json
import math
from collections.abc import Iterable, Sequence
from datetime import date, datetime
from pathlib import Path
from typing import Any

from gridstress.core.constants import Defaults, OutputFormat
from gridstress.models.density import PeriodComparison
from gridstress.models.indicators import PeakTroughTable, TrendFit
from gridstress.models.ingest import CoverageReport
from gridstress.models.series import AlignedRow, DailySeries, HourlySeries
from gridstress.models.weather import ChangePoint, DegreeDayModel, FitDiagnostics, SetpointScore

Cell = str | int | float | date | datetime | None
Row = Sequence[Cell]


def _round(value: float) -> float | None:
    if math.isnan(value):
        return None
    rounded = float(f"{value:.{Defaults.CSV_SIGNIFICANT_DIGITS}g}")
    return 0.0 if rounded == 0.0 else rounded


def format_cell(value: Cell) -> str:
    """Text of one CSV cell; floats keep 6 significant digits, MISSING is empty."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        rounded = _round(value)
        return "" if rounded is None else f"{rounded:.{Defaults.CSV_SIGNIFICANT_DIGITS}g}"
    if isinstance(value, datetime):
        return value.strftime(Defaults.TIMESTAMP_FORMAT)
    if isinstance(value, date):
        return value.isoformat()
    return str(value)


def json_cell(value: Cell) -> Any:
    """JSON value of one cell with the same rounding as the CSV text."""
    if isinstance(value, float):
        return _round(value)
    if isinstance(value, (datetime, date)):
        return format_cell(value)
    return value


def render_table(columns: Sequence[str], rows: Iterable[Row], fmt: OutputFormat) -> str:
    """Render rows under ``columns`` as CSV text or a JSON array of objects."""
    rows = list(rows)
    for row in rows:
        if len(row) != len(columns):
            raise ValueError(f"row has {len(row)} cells for {len(columns)} columns")

    if OutputFormat(fmt) == OutputFormat.JSON:
        records = [{c: json_cell(v) for c, v in zip(columns, row)} for row in rows]
        return json.dumps(records, indent=2, allow_nan=False) + "\n"

    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([format_cell(v) for v in row])
    return buffer.getvalue()


def write_table(
    path: Path,
    columns: Sequence[str],
    rows: Iterable[Row],
    fmt: OutputFormat = OutputFormat.CSV,
) -> Path:
    """Write a table next to ``path`` with the extension of ``fmt``; returns the written path."""
    target = path.with_suffix(f".{OutputFormat(fmt).value}")
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(render_table(columns, rows, fmt), encoding="utf-8")
    return target


# ---------------------------------------------------------------------------
# Row builders
# ---------------------------------------------------------------------------


def coverage_rows(reports: Iterable[CoverageReport]) -> list[Row]:
    return [
        (
            r.variable.value,
            r.present,
            r.missing,
            r.longest_gap,
            " ".join(d.isoformat() for d in r.missing_days),
        )
        for r in reports
    ]


def peak_trough_rows(table: PeakTroughTable) -> list[Row]:
    return [(r.date, r.peak, r.trough) for r in table.rows]


def hourly_rows(series: HourlySeries) -> list[Row]:
    return [
        (ts.to_pydatetime(), value)
        for ts, value in zip(series.timestamps, series.to_list())
    ]


def daily_rows(series: DailySeries) -> list[Row]:
    return [
        (day, value, int(coverage))
        for (day, value), coverage in zip(series.value_map().items(), series.coverage)
    ]


def aligned_rows(rows: Iterable[AlignedRow]) -> list[Row]:
    return [(r.day_offset, r.hour, r.value_a, r.value_b) for r in rows]


def trend_rows(fits: Iterable[tuple[str, TrendFit]]) -> list[Row]:
    return [
        (name, f.anchor, f.slope, f.intercept, f.r_squared, f.p_value_slope, f.n)
        for name, f in fits
    ]


def density_rows(comparison: PeriodComparison) -> list[Row]:
    return [
        (float(x), float(a), float(b))
        for x, a, b in zip(comparison.grid, comparison.density_a.density, comparison.density_b.density)
    ]


def density_summary_rows(comparison: PeriodComparison) -> list[Row]:
    a, b, d = comparison.summary_a, comparison.summary_b, comparison.deltas
    return [
        ("n_samples", a.n_samples, b.n_samples, b.n_samples - a.n_samples),
        ("bandwidth", comparison.density_a.bandwidth, comparison.density_b.bandwidth,
         comparison.density_b.bandwidth - comparison.density_a.bandwidth),
        ("mean", a.mean, b.mean, d.mean),
        ("std", a.std, b.std, d.std),
        ("p01", a.p01, b.p01, d.p01),
        ("p99", a.p99, b.p99, d.p99),
    ]


def diagnostics_rows(entries: Iterable[tuple[str, FitDiagnostics]]) -> list[Row]:
    return [
        (name, d.mean_rel_error, d.std_rel_error, d.r_squared, d.n_rows)
        for name, d in entries
    ]


def setpoint_rows(table: Iterable[SetpointScore]) -> list[Row]:
    return [(s.heating_setpoint, s.cooling_setpoint, s.score, s.status) for s in table]


def change_rows(points: Iterable[ChangePoint]) -> list[Row]:
    return [
        (p.date, p.observed, p.counterfactual, p.change_pct, *p.ci95, *p.ci99)
        for p in points
    ]


def degree_day_rows(model: DegreeDayModel) -> list[Row]:
    p = model.degree_params
    return [
        (
            p.heating_setpoint,
            p.cooling_setpoint,
            model.alpha_h,
            model.alpha_c,
            model.baseload,
            model.r_squared,
            model.n_days,
        )
    ]
