"""Ingest command: normalize raw inputs and report coverage."""

from pathlib import Path
from typing import Optional

import typer
from rich import box
from rich.console import Console
from rich.table import Table

from gridstress.cli.common import RunSummary, abort, load_config, resolve_output
from gridstress.core.constants import Columns, Defaults, Display, OutputFormat, Paths
from gridstress.core.exceptions import GridStressError
from gridstress.core.logging import get_logger
from gridstress.generators.tables import coverage_rows, write_table
from gridstress.models.ingest import CoverageReport
from gridstress.services.ingest import coverage_report, write_normalized_csv
from gridstress.services.region_data import (
    RegionDataLoader,
    normalized_path,
    write_temperature_bounds,
)

console = Console()
logger = get_logger("ingest")


def ingest_command(
    config_path: Path = typer.Option(..., "--config", "-c", help="Analysis config (YAML)."),
    regions: Optional[list[str]] = typer.Option(None, "--region", "-r", help="Region id (repeatable)."),
    window: Optional[str] = typer.Option(None, "--window", "-w", help="Named window for the coverage report."),
    fmt: Optional[OutputFormat] = typer.Option(None, "--format", "-f", help="Table format."),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="Output directory."),
    temp_min: float = typer.Option(Defaults.TEMP_MIN_DEGF, "--temp-min", help="Lowest plausible temperature (degF)."),
    temp_max: float = typer.Option(Defaults.TEMP_MAX_DEGF, "--temp-max", help="Highest plausible temperature (degF)."),
) -> None:
    """
    Parse grid and weather files into normalized hourly series.

    Writes one normalized CSV per (region, variable) and a coverage report
    listing present/missing hours, the longest gap and the days with gaps.
    """
    config = load_config(console, config_path)
    out_dir, table_format = resolve_output(config, out, fmt)
    summary = RunSummary(console, "ingest")

    try:
        selected = config.select_regions(regions)
        report_window = config.window(window) if window else None
    except GridStressError as e:
        abort(console, e)

    console.print(f"\n{Display.INFO} Ingesting {len(selected)} region(s) into [cyan]{out_dir}[/cyan]\n")

    for region in selected:
        try:
            # Raw inputs only; never read back earlier normalized output
            loader = RegionDataLoader(region, output_dir=None, temp_bounds=(temp_min, temp_max))
            series = dict(loader.grid_series())
            if region.weather_csv is not None:
                temperature = loader.temperature()
                series[temperature.variable] = temperature
                write_temperature_bounds(out_dir, region.region_id, loader.temp_bounds)

            reports: list[CoverageReport] = []
            for variable, s in series.items():
                path = normalized_path(out_dir, region.region_id, variable)
                path.parent.mkdir(parents=True, exist_ok=True)
                with path.open("w", encoding="utf-8", newline="") as stream:
                    write_normalized_csv(s, stream)
                reports.append(coverage_report(s, report_window))

            write_table(
                out_dir / Paths.NORMALIZED_DIR / region.region_id / Paths.COVERAGE_FILE,
                Columns.COVERAGE,
                coverage_rows(reports),
                table_format,
            )
            _print_coverage(region.region_id, reports)
            summary.ok(region.region_id, f"{len(series)} series normalized")
        except Exception as e:
            summary.fail(region.region_id, e)

    summary.finish()


def _print_coverage(region_id: str, reports: list[CoverageReport]) -> None:
    table = Table(title=f"Coverage: {region_id}", box=box.ROUNDED)
    table.add_column("Variable", style=Display.HEADER_STYLE)
    table.add_column("Present", justify="right")
    table.add_column("Missing", justify="right")
    table.add_column("Longest gap", justify="right")
    table.add_column("Days with gaps", justify="right")
    for r in reports:
        table.add_row(r.variable.value, str(r.present), str(r.missing), str(r.longest_gap), str(len(r.missing_days)))
    console.print(table)
