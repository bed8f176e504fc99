"""Helpers shared by the CLI commands."""

from __future__ import annotations

from pathlib import Path
from typing import NoReturn

import typer
from rich.console import Console
from rich.markup import escape

from gridstress.core.config import AnalysisConfig, get_settings
from gridstress.core.constants import Display, ExitCode, OutputFormat
from gridstress.core.exceptions import GridStressError
from gridstress.core.logging import get_logger

logger = get_logger("cli")


def abort(console: Console, error: GridStressError) -> NoReturn:
    """Print a failure line and exit with the error's code."""
    console.print(f"{Display.FAILURE} {escape(str(error))}")
    raise typer.Exit(int(error.exit_code))


def load_config(console: Console, path: Path) -> AnalysisConfig:
    """Load the analysis config or exit with the input-error code."""
    try:
        return AnalysisConfig.load(path)
    except GridStressError as e:
        abort(console, e)


def resolve_output(config: AnalysisConfig, out: Path | None, fmt: OutputFormat | None) -> tuple[Path, OutputFormat]:
    """Output directory and table format: CLI option, then environment, then config."""
    directory = out or get_settings().output_dir or config.output_dir
    return directory, fmt or config.format


class RunSummary:
    """Collects per-region failures; the command exits with the highest code seen."""

    def __init__(self, console: Console, command: str) -> None:
        self.console = console
        self.command = command
        self.succeeded: list[str] = []
        self.failed: dict[str, int] = {}

    def ok(self, region_id: str, message: str) -> None:
        self.succeeded.append(region_id)
        self.console.print(f"{Display.SUCCESS} {escape(region_id)}: {escape(message)}")

    def fail(self, region_id: str, error: Exception) -> None:
        if isinstance(error, GridStressError):
            code = int(error.exit_code)
            logger.debug(f"{self.command} failed for {region_id}", exc_info=error)
        else:
            code = int(ExitCode.NUMERICAL_FAILURE)
            logger.exception(f"Unexpected error in {self.command} for {region_id}", exc_info=error)
        self.failed[region_id] = max(code, self.failed.get(region_id, 0))
        self.console.print(f"{Display.FAILURE} {escape(region_id)}: {escape(str(error))}")

    @property
    def exit_code(self) -> int:
        return max(self.failed.values(), default=int(ExitCode.SUCCESS))

    def finish(self) -> None:
        """Print the tally and exit non-zero if any region failed."""
        total = len(self.succeeded) + len(self.failed)
        symbol = Display.SUCCESS if not self.failed else Display.WARNING
        self.console.print(f"\n{symbol} {self.command}: {len(self.succeeded)}/{total} region(s) completed")
        if self.failed:
            raise typer.Exit(self.exit_code)
