"""CLI command modules."""

from gridstress.cli.commands import backcast, density, indicators, ingest

__all__ = ["backcast", "density", "indicators", "ingest"]
