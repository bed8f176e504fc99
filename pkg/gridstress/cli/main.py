"""Main CLI application entry point."""

import typer
from rich.console import Console

from gridstress import __version__
from gridstress.core.constants import Display
from gridstress.core.logging import setup_logging

# Create main app
app = typer.Typer(
    name="gridstress",
    help=Display.APP_DESCRIPTION,
    add_completion=True,
    rich_markup_mode="rich",
    no_args_is_help=True,
)

# Console for rich output
console = Console()


def version_callback(value: bool) -> None:
    """Print version and exit."""
    if value:
        console.print(f"[bold]{Display.APP_NAME}[/bold] version {__version__}")
        raise typer.Exit()


@app.callback()
def main(
    version: bool = typer.Option(
        False,
        "--version",
        "-v",
        callback=version_callback,
        is_eager=True,
        help="Show version and exit.",
    ),
    verbose: bool = typer.Option(
        False,
        "--verbose",
        "-V",
        help="Enable verbose output.",
    ),
) -> None:
    """
    gridstress - grid-stress indicators and weather-corrected demand.

    Batch commands driven by one YAML config:
    - ingest: normalize grid and weather files, report coverage
    - indicators: peak/trough, ramp rate, forecast error, interchange, totals
    - density: kernel densities of an indicator over two windows
    - backcast: counterfactual demand and daily change with intervals
    """
    setup_logging(verbose=verbose)


# Import and register commands
from gridstress.cli.commands import backcast, density, indicators, ingest  # noqa: E402

app.command("ingest")(ingest.ingest_command)
app.command("indicators")(indicators.indicators_command)
app.command("density")(density.density_command)
app.command("backcast")(backcast.backcast_command)


if __name__ == "__main__":
    app()
