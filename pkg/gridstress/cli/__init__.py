"""CLI module for gridstress."""

from gridstress.cli.main import app

__all__ = ["app"]
