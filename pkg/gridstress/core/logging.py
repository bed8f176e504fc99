"""Logging for gridstress: rich console output, optional log file, region-tagged records."""

from __future__ import annotations

import logging
import warnings
from collections.abc import MutableMapping
from pathlib import Path
from typing import Any

from rich.console import Console
from rich.logging import RichHandler

from gridstress.core.config import get_settings

APP_LOGGER = "gridstress"
FILE_FORMAT = "%(asctime)s | %(levelname)-8s | %(name)s | %(message)s"

# Numeric libraries report conditioning and empty-slice problems as Python warnings
NUMERIC_WARNING_MODULES = ("numpy", "scipy")


class RegionLogger(logging.LoggerAdapter):
    """Prefixes every message with the balancing-authority id it concerns."""

    def __init__(self, logger: logging.Logger, region_id: str) -> None:
        super().__init__(logger, {"region": region_id})
        self.region_id = region_id

    def process(self, msg: Any, kwargs: MutableMapping[str, Any]) -> tuple[Any, MutableMapping[str, Any]]:
        return f"{self.region_id}: {msg}", kwargs


def _console_handler(level: int, verbose: bool, no_color: bool) -> RichHandler:
    # Region ids and file paths may contain brackets, so markup stays off
    handler = RichHandler(
        console=Console(stderr=True, no_color=no_color),
        show_time=verbose,
        show_path=verbose,
        rich_tracebacks=True,
        tracebacks_show_locals=verbose,
        markup=False,
    )
    handler.setLevel(level)
    handler.setFormatter(logging.Formatter("%(message)s"))
    return handler


def _file_handler(path: Path, level: int) -> logging.FileHandler:
    path.parent.mkdir(parents=True, exist_ok=True)
    handler = logging.FileHandler(path, encoding="utf-8")
    handler.setLevel(level)
    handler.setFormatter(logging.Formatter(FILE_FORMAT, datefmt="%Y-%m-%d %H:%M:%S"))
    return handler


def _route_numeric_warnings(level: int) -> None:
    """Send numpy/scipy warnings through logging so they reach the same handlers."""
    logging.captureWarnings(True)
    captured = logging.getLogger("py.warnings")
    captured.handlers.clear()
    captured.propagate = False
    captured.setLevel(logging.DEBUG if level <= logging.DEBUG else logging.WARNING)
    for handler in logging.getLogger(APP_LOGGER).handlers:
        captured.addHandler(handler)
    for module in NUMERIC_WARNING_MODULES:
        warnings.filterwarnings("default", module=module)


def setup_logging(
    level: str | None = None,
    log_file: Path | None = None,
    verbose: bool = False,
) -> logging.Logger:
    """
    Configure the ``gridstress`` logger.

    Args:
        level: Log level (DEBUG, INFO, WARNING, ERROR). Defaults to settings.
        log_file: Optional file path for logging output.
        verbose: Enable DEBUG output with times and source paths.

    Returns:
        The application logger.
    """
    settings = get_settings()
    verbose = verbose or settings.verbose

    if verbose:
        log_level = logging.DEBUG
    elif level:
        log_level = getattr(logging, level.upper())
    else:
        log_level = getattr(logging, settings.log_level)

    logger = logging.getLogger(APP_LOGGER)
    logger.setLevel(log_level)
    logger.handlers.clear()
    logger.addHandler(_console_handler(log_level, verbose, settings.no_color))

    file_path = log_file or settings.log_file
    if file_path:
        logger.addHandler(_file_handler(Path(file_path), log_level))

    _route_numeric_warnings(log_level)
    return logger


def get_logger(name: str | None = None) -> logging.Logger:
    """Logger under the application namespace (``gridstress.<name>``)."""
    if name:
        return logging.getLogger(f"{APP_LOGGER}.{name}")
    return logging.getLogger(APP_LOGGER)


def region_logger(name: str, region_id: str) -> RegionLogger:
    """Logger whose messages are tagged with ``region_id``."""
    return RegionLogger(get_logger(name), region_id)
