"""Table and report generators for the gridstress CLI."""

from gridstress.generators.backcast_report import generate_report
from gridstress.generators.tables import render_table, write_table

__all__ = [
    "generate_report",
    "render_table",
    "write_table",
]
