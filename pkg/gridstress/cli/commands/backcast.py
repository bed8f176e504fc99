"""Backcast command: weather-corrected counterfactual demand over an event window."""

from pathlib import Path
from typing import Optional

import typer
from rich import box
from rich.console import Console
from rich.table import Table

from gridstress.cli.common import RunSummary, abort, load_config, resolve_output
from gridstress.core.config import AnalysisConfig, get_settings
from gridstress.core.constants import (
    Columns,
    Defaults,
    Display,
    OutputFormat,
    Paths,
    ReportFormat,
    Variable,
)
from gridstress.core.exceptions import GridStressError, InputError
from gridstress.core.logging import get_logger
from gridstress.generators import tables
from gridstress.generators.backcast_report import generate_report
from gridstress.models.backcast import BackcastResult, BackcastWindows
from gridstress.services.backcast import BackcastService
from gridstress.services.region_data import RegionDataLoader

console = Console()
logger = get_logger("backcast")

DEFAULT_VALIDATE_WINDOW = "validate"


def backcast_command(
    config_path: Path = typer.Option(..., "--config", "-c", help="Analysis config (YAML)."),
    regions: Optional[list[str]] = typer.Option(None, "--region", "-r", help="Region id (repeatable)."),
    train: str = typer.Option("train", "--train", help="Window the model is fitted on."),
    event: str = typer.Option("event", "--event", help="Window the counterfactual is predicted for."),
    base: str = typer.Option("base", "--base", help="Window whose mean daily energy normalizes changes."),
    validate: Optional[str] = typer.Option(
        None, "--validate", help="Held-out window for the daily error spread (default: 'validate' if configured)."
    ),
    fmt: Optional[OutputFormat] = typer.Option(None, "--format", "-f", help="Table format."),
    report_format: ReportFormat = typer.Option(
        ReportFormat.MARKDOWN, "--report-format", help="Format of the per-region report."
    ),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="Output directory."),
    temp_min: float = typer.Option(Defaults.TEMP_MIN_DEGF, "--temp-min", help="Lowest plausible temperature (degF)."),
    temp_max: float = typer.Option(Defaults.TEMP_MAX_DEGF, "--temp-max", help="Highest plausible temperature (degF)."),
    max_workers: Optional[int] = typer.Option(
        None, "--max-workers", min=1, help="Worker threads for the setpoint search."
    ),
) -> None:
    """
    Fit the hour-of-week degree-day model and report weather-corrected change.

    Searches setpoints on the train window (unless fixed in the config), fits
    the model, predicts demand over the event window and writes the daily
    change table with 95% and 99% intervals.
    """
    config = load_config(console, config_path)
    out_dir, table_format = resolve_output(config, out, fmt)
    summary = RunSummary(console, "backcast")

    try:
        windows = _resolve_windows(config, train, event, base, validate)
        selected = config.select_regions(regions)
    except GridStressError as e:
        abort(console, e)

    service = BackcastService(config.model, max_workers=max_workers or get_settings().max_workers)

    for region in selected:
        try:
            if region.weather_csv is None:
                raise InputError(f"Region '{region.region_id}' has no weather_csv; backcast needs temperature")
            loader = RegionDataLoader(region, output_dir=out_dir, temp_bounds=(temp_min, temp_max))
            demand = loader.series(Variable.DEMAND)
            if demand is None:
                raise InputError(f"Region '{region.region_id}' has no demand column")

            result = service.run(loader.temperature(), demand, windows)
            _write_outputs(result, out_dir / Paths.BACKCAST_DIR / region.region_id, table_format, report_format)
            _print_result(result)
            summary.ok(region.region_id, f"{len(result.changes)} event day(s) backcast")
        except Exception as e:
            summary.fail(region.region_id, e)

    summary.finish()


def _resolve_windows(
    config: AnalysisConfig,
    train: str,
    event: str,
    base: str,
    validate: str | None,
) -> BackcastWindows:
    if validate is None and DEFAULT_VALIDATE_WINDOW in config.windows:
        validate = DEFAULT_VALIDATE_WINDOW
    return BackcastWindows(
        train=config.window(train),
        event=config.window(event),
        base=config.window(base),
        validate_window=config.window(validate) if validate else None,
    )


def _write_outputs(
    result: BackcastResult,
    target: Path,
    fmt: OutputFormat,
    report_format: ReportFormat = ReportFormat.MARKDOWN,
) -> None:
    result.model.save(target / Paths.MODEL_FILE)

    entries = [("train", result.diagnostics)]
    if result.validation is not None:
        entries.append(("validation", result.validation))
    tables.write_table(target / "diagnostics", Columns.DIAGNOSTICS, tables.diagnostics_rows(entries), fmt)

    if result.search is not None:
        tables.write_table(
            target / "setpoint_scores", Columns.SETPOINT_SCORES, tables.setpoint_rows(result.search.table), fmt
        )
    if result.degree_day_model is not None:
        tables.write_table(
            target / "degree_day", Columns.DEGREE_DAY, tables.degree_day_rows(result.degree_day_model), fmt
        )

    tables.write_table(
        target / "counterfactual_hourly", Columns.HOURLY, tables.hourly_rows(result.counterfactual_hourly), fmt
    )
    tables.write_table(target / "change", Columns.CHANGE_POINTS, tables.change_rows(result.changes), fmt)
    report_path = target / f"{Paths.REPORT_STEM}{report_format.suffix}"
    report_path.write_text(generate_report(result, report_format), encoding="utf-8")
    logger.debug(f"{result.region_id}: backcast outputs written to {target}")


def _print_result(result: BackcastResult) -> None:
    params = result.model.degree_params
    table = Table(title=f"Backcast: {result.region_id}", box=box.ROUNDED, show_header=False)
    table.add_column("Field", style=Display.HEADER_STYLE)
    table.add_column("Value", justify="right")
    table.add_row("Setpoints (degF)", f"{params.heating_setpoint:g} / {params.cooling_setpoint:g}")
    table.add_row("Train std rel. error", f"{result.diagnostics.std_rel_error:.2%}")
    if result.validation is not None:
        table.add_row("Validation std rel. error", f"{result.validation.std_rel_error:.2%}")
    table.add_row("Daily sigma", f"{result.sigma_daily:.2%} ({result.sigma_source})")
    mean = result.mean_change_pct
    table.add_row("Mean change", f"{mean:+.2f}%" if mean is not None else "n/a")
    console.print(table)
