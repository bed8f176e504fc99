"""Custom exceptions for gridstress."""

from collections.abc import Iterable
from typing import Any

from gridstress.core.constants import ExitCode


class GridStressError(Exception):
    """Base exception for all gridstress errors."""

    exit_code: ExitCode = ExitCode.INPUT_ERROR

    def __init__(self, message: str, details: dict[str, Any] | None = None) -> None:
        super().__init__(message)
        self.message = message
        self.details = details or {}

    def __str__(self) -> str:
        if self.details:
            return f"{self.message} | Details: {self.details}"
        return self.message


# ---------------------------------------------------------------------------
# Input and configuration errors (exit code 2)
# ---------------------------------------------------------------------------


class InputError(GridStressError):
    """Input file or argument could not be used."""

    exit_code = ExitCode.INPUT_ERROR

    def __init__(
        self,
        message: str = "Invalid input",
        details: dict[str, Any] | None = None,
    ) -> None:
        super().__init__(message, details)


class SchemaError(InputError):
    """A delimited file does not carry the columns its schema declares."""

    def __init__(
        self,
        missing_columns: Iterable[str],
        source: str | None = None,
        details: dict[str, Any] | None = None,
    ) -> None:
        self.missing_columns = list(missing_columns)
        self.source = source
        message = f"Missing declared column(s): {', '.join(self.missing_columns)}"
        if source:
            message = f"{source}:1: {message}"
        super().__init__(message, details)


class OrderError(InputError):
    """Timestamps go backwards."""

    def __init__(
        self,
        row: int,
        source: str | None = None,
        details: dict[str, Any] | None = None,
    ) -> None:
        self.row = row
        self.source = source
        prefix = f"{source}:{row}" if source else f"row {row}"
        super().__init__(f"{prefix}: timestamp earlier than the previous row", details)


class EmptyInputError(InputError):
    """No parseable rows were found."""

    def __init__(
        self,
        message: str = "No parseable rows",
        details: dict[str, Any] | None = None,
    ) -> None:
        super().__init__(message, details)


class AlignmentError(InputError):
    """A timestamp is not on an hour boundary."""

    def __init__(
        self,
        timestamp: Any,
        details: dict[str, Any] | None = None,
    ) -> None:
        self.timestamp = timestamp
        super().__init__(f"Timestamp {timestamp} is not on an hour boundary", details)


class WeatherValidationError(InputError):
    """Temperature observations outside the plausibility bounds."""

    def __init__(
        self,
        rows: Iterable[int],
        bounds: tuple[float, float],
        details: dict[str, Any] | None = None,
    ) -> None:
        self.rows = list(rows)
        self.bounds = bounds
        shown = ", ".join(str(r) for r in self.rows[:20])
        more = f" (+{len(self.rows) - 20} more)" if len(self.rows) > 20 else ""
        super().__init__(
            f"Temperature outside [{bounds[0]}, {bounds[1]}] degF at row(s) {shown}{more}",
            details,
        )


class SeriesTypeError(InputError):
    """A series of the wrong variable kind was passed."""

    def __init__(
        self,
        expected: str,
        actual: str,
        details: dict[str, Any] | None = None,
    ) -> None:
        self.expected = expected
        self.actual = actual
        super().__init__(f"Expected a '{expected}' series, got '{actual}'", details)


class ValidationError(InputError):
    """An argument failed validation."""

    def __init__(
        self,
        message: str = "Validation failed",
        details: dict[str, Any] | None = None,
    ) -> None:
        super().__init__(message, details)


class ConfigurationError(InputError):
    """Configuration file or settings error."""

    def __init__(
        self,
        message: str = "Configuration error",
        details: dict[str, Any] | None = None,
    ) -> None:
        super().__init__(message, details)


class GridError(ConfigurationError):
    """Setpoint grids contain no admissible (heating < cooling) pair."""

    def __init__(
        self,
        message: str = "No admissible setpoint pair (heating < cooling) in the grids",
        details: dict[str, Any] | None = None,
    ) -> None:
        super().__init__(message, details)


# ---------------------------------------------------------------------------
# Insufficient data (exit code 3)
# ---------------------------------------------------------------------------


class InsufficientDataError(GridStressError):
    """Not enough present samples for the requested computation."""

    exit_code = ExitCode.INSUFFICIENT_DATA

    def __init__(
        self,
        message: str = "Insufficient data",
        details: dict[str, Any] | None = None,
    ) -> None:
        super().__init__(message, details)


class NoOverlapError(InsufficientDataError):
    """Two series share no usable hours."""

    def __init__(
        self,
        message: str = "Series do not overlap",
        details: dict[str, Any] | None = None,
    ) -> None:
        super().__init__(message, details)


class RangeError(InsufficientDataError):
    """A requested month or window lies outside a series."""

    def __init__(
        self,
        message: str = "Requested range is not covered by the series",
        details: dict[str, Any] | None = None,
    ) -> None:
        super().__init__(message, details)


class UnderdeterminedError(InsufficientDataError):
    """Fewer design rows than model parameters."""

    def __init__(
        self,
        n_rows: int,
        n_params: int,
        details: dict[str, Any] | None = None,
    ) -> None:
        self.n_rows = n_rows
        self.n_params = n_params
        super().__init__(
            f"Model is underdetermined: {n_rows} rows for {n_params} parameters",
            details,
        )


# ---------------------------------------------------------------------------
# Numerical failures (exit code 4)
# ---------------------------------------------------------------------------


class NumericalError(GridStressError):
    """A numerical procedure failed."""

    exit_code = ExitCode.NUMERICAL_FAILURE

    def __init__(
        self,
        message: str = "Numerical failure",
        details: dict[str, Any] | None = None,
    ) -> None:
        super().__init__(message, details)


class DegenerateError(NumericalError):
    """Input has no spread where spread is required."""

    def __init__(
        self,
        message: str = "Degenerate input (zero variance)",
        details: dict[str, Any] | None = None,
    ) -> None:
        super().__init__(message, details)


class RankError(NumericalError):
    """Design matrix lacks full column rank."""

    def __init__(
        self,
        missing_hours: Iterable[int] | None = None,
        message: str | None = None,
        details: dict[str, Any] | None = None,
    ) -> None:
        self.missing_hours = list(missing_hours or [])
        if message is None:
            hours = ", ".join(str(h) for h in self.missing_hours)
            message = f"Design matrix is rank deficient; hour-of-week never observed: {hours}"
        super().__init__(message, details)
