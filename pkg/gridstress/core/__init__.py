"""Core utilities, constants and errors for gridstress.

Configuration lives in ``gridstress.core.config`` and is imported from there
directly, since it depends on the model layer.
"""

from gridstress.core.exceptions import (
    GridStressError,
    InputError,
    SchemaError,
    OrderError,
    EmptyInputError,
    AlignmentError,
    WeatherValidationError,
    SeriesTypeError,
    ValidationError,
    ConfigurationError,
    GridError,
    InsufficientDataError,
    NoOverlapError,
    RangeError,
    UnderdeterminedError,
    NumericalError,
    DegenerateError,
    RankError,
)

__all__ = [
    "GridStressError",
    "InputError",
    "SchemaError",
    "OrderError",
    "EmptyInputError",
    "AlignmentError",
    "WeatherValidationError",
    "SeriesTypeError",
    "ValidationError",
    "ConfigurationError",
    "GridError",
    "InsufficientDataError",
    "NoOverlapError",
    "RangeError",
    "UnderdeterminedError",
    "NumericalError",
    "DegenerateError",
    "RankError",
]
