"""Density command: compare an indicator's distribution across two windows."""

from pathlib import Path
from typing import Optional

import typer
from rich import box
from rich.console import Console
from rich.table import Table

from gridstress.cli.common import RunSummary, abort, load_config, resolve_output
from gridstress.core.config import RegionConfig
from gridstress.core.constants import Columns, DensityIndicator, Display, OutputFormat, Paths, Reducer, Variable
from gridstress.core.exceptions import GridStressError, InputError, ValidationError
from gridstress.generators.tables import density_rows, density_summary_rows, write_table
from gridstress.models.density import PeriodComparison
from gridstress.models.series import DailySeries, HourlySeries
from gridstress.services.density import compare_periods
from gridstress.services.indicators import forecast_error, ramp_rate
from gridstress.services.region_data import RegionDataLoader
from gridstress.services.timeseries import daily_aggregate

console = Console()


def density_command(
    config_path: Path = typer.Option(..., "--config", "-c", help="Analysis config (YAML)."),
    indicator: DensityIndicator = typer.Option(
        DensityIndicator.RAMP_RATE, "--indicator", "-i", help="Indicator whose density is estimated."
    ),
    windows: list[str] = typer.Option(..., "--window", "-w", help="Two named windows: A then B."),
    regions: Optional[list[str]] = typer.Option(None, "--region", "-r", help="Region id (repeatable)."),
    bandwidth: Optional[float] = typer.Option(None, "--bandwidth", help="Kernel bandwidth override."),
    fmt: Optional[OutputFormat] = typer.Option(None, "--format", "-f", help="Table format."),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="Output directory."),
) -> None:
    """
    Estimate Gaussian-kernel densities of an indicator over two windows.

    Writes both curves on a shared grid plus a summary block with the B - A
    deltas of mean, std and the 1st/99th percentiles.
    """
    config = load_config(console, config_path)
    out_dir, table_format = resolve_output(config, out, fmt)
    summary = RunSummary(console, "density")

    try:
        if len(windows) != 2:
            raise ValidationError(f"density needs exactly two --window names, got {len(windows)}")
        window_a, window_b = (config.window(w) for w in windows)
        selected = config.select_regions(regions)
    except GridStressError as e:
        abort(console, e)

    h = bandwidth if bandwidth is not None else config.model.bandwidth
    stem = f"{indicator.value}_{window_a.label}_vs_{window_b.label}"

    for region in selected:
        try:
            loader = RegionDataLoader(region, output_dir=out_dir)
            samples = indicator_series(loader, region, indicator, config.model.min_coverage)
            comparison = compare_periods(samples, window_a, window_b, h, config.model.grid_points)

            target = out_dir / Paths.DENSITY_DIR / region.region_id
            write_table(target / stem, Columns.DENSITY, density_rows(comparison), table_format)
            write_table(
                target / f"{stem}_summary", Columns.DENSITY_SUMMARY, density_summary_rows(comparison), table_format
            )
            _print_summary(region.region_id, comparison)
            summary.ok(region.region_id, f"{indicator.value} densities written")
        except Exception as e:
            summary.fail(region.region_id, e)

    summary.finish()


def indicator_series(
    loader: RegionDataLoader,
    region: RegionConfig,
    indicator: DensityIndicator,
    min_coverage: int,
) -> HourlySeries | DailySeries:
    """Series whose samples feed the density of ``indicator``."""

    def need(variable: Variable) -> HourlySeries:
        series = loader.series(variable)
        if series is None:
            raise InputError(
                f"Region '{region.region_id}' has no {variable.value} column for {indicator.value}"
            )
        return series

    if indicator == DensityIndicator.DEMAND:
        return need(Variable.DEMAND)
    if indicator == DensityIndicator.PEAK:
        return daily_aggregate(need(Variable.DEMAND), Reducer.MAX, min_coverage)
    if indicator == DensityIndicator.TROUGH:
        return daily_aggregate(need(Variable.DEMAND), Reducer.MIN, min_coverage)
    if indicator == DensityIndicator.RAMP_RATE:
        return ramp_rate(need(Variable.DEMAND))
    if indicator == DensityIndicator.FORECAST_ERROR:
        return forecast_error(need(Variable.DEMAND), need(Variable.FORECAST))
    return need(Variable.INTERCHANGE)


def _print_summary(region_id: str, comparison: PeriodComparison) -> None:
    a, b, d = comparison.summary_a, comparison.summary_b, comparison.deltas
    table = Table(title=f"{region_id}: {a.label} vs {b.label}", box=box.ROUNDED)
    table.add_column("Statistic", style=Display.HEADER_STYLE)
    table.add_column(a.label, justify="right")
    table.add_column(b.label, justify="right")
    table.add_column("Delta", justify="right")
    for name, va, vb, vd in (
        ("mean", a.mean, b.mean, d.mean),
        ("std", a.std, b.std, d.std),
        ("p01", a.p01, b.p01, d.p01),
        ("p99", a.p99, b.p99, d.p99),
    ):
        table.add_row(name, f"{va:.6g}", f"{vb:.6g}", f"{vd:+.6g}")
    console.print(table)
