"""Models describing input files and their coverage."""

from __future__ import annotations

from datetime import date, datetime

from pydantic import BaseModel, Field, field_validator, model_validator

from gridstress.core.constants import Defaults, Variable


class GridCsvSchema(BaseModel):
    """Shape of an hourly grid export (EIA Hourly Electric Grid Monitor style)."""

    timestamp_column: str = Field(description="Column holding hour-ending local timestamps")
    timestamp_format: str = Field(
        default=Defaults.TIMESTAMP_FORMAT,
        description="strftime pattern of the timestamp column",
    )
    value_columns: dict[Variable, str] = Field(
        description="Variable -> column name",
    )
    delimiter: str = Field(default=",", description="Single-character field delimiter")
    decimal_grouping: bool = Field(
        default=False,
        description="Values may carry thousands separators (e.g. 1,234)",
    )

    @field_validator("delimiter")
    @classmethod
    def _check_delimiter(cls, value: str) -> str:
        if len(value) != 1:
            raise ValueError("delimiter must be a single character")
        if value.isdigit():
            raise ValueError("delimiter must not be a digit")
        return value

    @model_validator(mode="after")
    def _check_columns(self) -> GridCsvSchema:
        if not self.timestamp_column:
            raise ValueError("timestamp_column must be named")
        if not self.value_columns:
            raise ValueError("at least one value column must be declared")
        return self

    def required_columns(self) -> list[str]:
        return [self.timestamp_column, *self.value_columns.values()]


class WeatherObservation(BaseModel):
    """A single (possibly sub-hourly) temperature reading."""

    timestamp: datetime = Field(description="Local clock time of the reading")
    temperature: float = Field(description="Ambient temperature (degF)")

    def in_bounds(self, lo: float = Defaults.TEMP_MIN_DEGF, hi: float = Defaults.TEMP_MAX_DEGF) -> bool:
        """Whether the reading lies within the plausibility bounds."""
        return lo <= self.temperature <= hi


class CoverageReport(BaseModel):
    """Presence summary of an hourly series over a window."""

    region_id: str = Field(description="Region identifier")
    variable: Variable = Field(description="Variable of the series")
    first_hour: datetime = Field(description="First hour-ending timestamp examined")
    last_hour: datetime = Field(description="Last hour-ending timestamp examined")
    present: int = Field(default=0, ge=0)
    missing: int = Field(default=0, ge=0)
    longest_gap: int = Field(default=0, ge=0, description="Longest run of MISSING hours")
    missing_days: list[date] = Field(
        default_factory=list,
        description="Days with at least one MISSING hour",
    )

    @property
    def is_complete(self) -> bool:
        return self.missing == 0


class TemperatureBounds(BaseModel):
    """Plausibility bounds a normalized temperature file was built with."""

    temp_min: float = Field(default=Defaults.TEMP_MIN_DEGF, description="Lowest accepted reading (degF)")
    temp_max: float = Field(default=Defaults.TEMP_MAX_DEGF, description="Highest accepted reading (degF)")

    @model_validator(mode="after")
    def _check_order(self) -> TemperatureBounds:
        if not self.temp_min < self.temp_max:
            raise ValueError(f"temp_min {self.temp_min} must be below temp_max {self.temp_max}")
        return self

    def as_tuple(self) -> tuple[float, float]:
        return (self.temp_min, self.temp_max)
