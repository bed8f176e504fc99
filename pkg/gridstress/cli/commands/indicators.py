"""Indicators command: grid-stress indicator tables per region."""

from collections.abc import Callable
from datetime import date
from pathlib import Path
from typing import Optional

import typer
from rich.console import Console

from gridstress.cli.common import RunSummary, abort, load_config, resolve_output
from gridstress.core.config import AnalysisConfig, RegionConfig
from gridstress.core.constants import Columns, Display, OutputFormat, Paths, Variable
from gridstress.core.exceptions import GridStressError, InsufficientDataError, RangeError
from gridstress.core.logging import get_logger
from gridstress.generators import tables
from gridstress.models.indicators import TrendFit
from gridstress.models.series import DailySeries, DateWindow, HourlySeries
from gridstress.services.indicators import (
    daily_peak_trough,
    daily_totals,
    default_trend_anchor,
    forecast_error,
    forecast_error_daily_mean,
    interchange_daily_mean,
    ramp_rate,
    trend_fit,
)
from gridstress.services.region_data import RegionDataLoader
from gridstress.services.timeseries import align_series

console = Console()
logger = get_logger("indicators")


def indicators_command(
    config_path: Path = typer.Option(..., "--config", "-c", help="Analysis config (YAML)."),
    regions: Optional[list[str]] = typer.Option(None, "--region", "-r", help="Region id (repeatable)."),
    window: Optional[str] = typer.Option(None, "--window", "-w", help="Named window to restrict the series to."),
    fmt: Optional[OutputFormat] = typer.Option(None, "--format", "-f", help="Table format."),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="Output directory."),
) -> None:
    """
    Compute daily peak/trough, ramp rate, forecast error, interchange and daily totals.

    Indicators whose input variable is absent are skipped with a warning. Also
    writes per-year trend fits of daily totals and, when the config has a
    comparison block, the aligned two-year demand table.
    """
    config = load_config(console, config_path)
    out_dir, table_format = resolve_output(config, out, fmt)
    summary = RunSummary(console, "indicators")

    try:
        selected = config.select_regions(regions)
        restrict = config.window(window) if window else None
    except GridStressError as e:
        abort(console, e)

    for region in selected:
        try:
            written = _region_indicators(config, region, restrict, out_dir, table_format)
            summary.ok(region.region_id, f"{written} table(s) written")
        except Exception as e:
            summary.fail(region.region_id, e)

    summary.finish()


def _restrict(series: HourlySeries, window: DateWindow | None) -> HourlySeries | None:
    """Series inside ``window``; None when the window holds none of its samples."""
    if window is None:
        return series
    restricted = series.window(window)
    return restricted if restricted.n_present else None


def _region_indicators(
    config: AnalysisConfig,
    region: RegionConfig,
    window: DateWindow | None,
    out_dir: Path,
    fmt: OutputFormat,
) -> int:
    target = out_dir / Paths.INDICATORS_DIR / region.region_id / (window.label if window else "all")
    loader = RegionDataLoader(region, output_dir=out_dir)
    full = loader.grid_series()
    series = {v: r for v, s in full.items() if (r := _restrict(s, window)) is not None}
    if not series:
        raise RangeError(
            f"Window '{window.label if window else 'all'}' holds no data", {"region": region.region_id}
        )
    demand = series.get(Variable.DEMAND)
    forecast = series.get(Variable.FORECAST)
    interchange = series.get(Variable.INTERCHANGE)

    written = 0

    def emit(name: str, columns: tuple[str, ...], build: Callable[[], list[tables.Row]]) -> None:
        nonlocal written
        try:
            rows = build()
        except InsufficientDataError as e:
            logger.warning(f"{region.region_id}: {name} skipped: {e.message}")
            return
        tables.write_table(target / name, columns, rows, fmt)
        written += 1

    def skip(name: str, variable: Variable) -> None:
        console.print(f"{Display.WARNING} {region.region_id}: {name} skipped, no {variable.value} column")
        logger.warning(f"{region.region_id}: {name} skipped, no {variable.value} series")

    if demand is not None:
        totals = daily_totals(demand)
        emit("peak_trough", Columns.PEAK_TROUGH,
             lambda: tables.peak_trough_rows(daily_peak_trough(demand, config.model.min_coverage)))
        emit("ramp_rate", Columns.HOURLY, lambda: tables.hourly_rows(ramp_rate(demand)))
        emit("daily_totals", Columns.DAILY, lambda: tables.daily_rows(totals))
        emit("trend", Columns.TREND, lambda: tables.trend_rows(_yearly_trends(totals)))
    else:
        for name in ("peak_trough", "ramp_rate", "daily_totals", "trend"):
            skip(name, Variable.DEMAND)

    error = None
    if demand is not None and forecast is not None:
        try:
            error = forecast_error(demand, forecast)
        except InsufficientDataError as e:
            logger.warning(f"{region.region_id}: forecast_error skipped: {e.message}")
    if error is not None:
        emit("forecast_error", Columns.HOURLY, lambda: tables.hourly_rows(error))
        emit("forecast_error_daily_mean", Columns.DAILY,
             lambda: tables.daily_rows(forecast_error_daily_mean(error)))
    elif forecast is None or demand is None:
        skip("forecast_error", Variable.FORECAST if demand is not None else Variable.DEMAND)

    if interchange is not None:
        emit("interchange_daily_mean", Columns.DAILY,
             lambda: tables.daily_rows(interchange_daily_mean(interchange)))
    else:
        skip("interchange_daily_mean", Variable.INTERCHANGE)

    if config.comparison is not None and Variable.DEMAND in full:
        c = config.comparison
        emit(
            f"aligned_{c.year_a}_{c.year_b}_{c.month:02d}",
            Columns.ALIGNED,
            lambda: tables.aligned_rows(
                align_series(full[Variable.DEMAND], full[Variable.DEMAND], c.month, c.year_a, c.year_b)
            ),
        )

    if written == 0:
        raise InsufficientDataError("No indicator could be computed", {"region": region.region_id})
    return written


def _yearly_trends(totals: DailySeries) -> list[tuple[str, TrendFit]]:
    """One trend fit per calendar year with at least three present days."""
    fits: list[tuple[str, TrendFit]] = []
    for year in sorted({d.year for d in totals.dates}):
        year_series = totals.window(DateWindow(start=date(year, 1, 1), end=date(year, 12, 31)))
        if int(year_series.present_mask.sum()) < 3:
            continue
        fits.append((str(year), trend_fit(year_series, default_trend_anchor(year_series))))
    if not fits:
        raise InsufficientDataError("No year has three covered days", {"region": totals.region_id})
    return fits
