"""Hourly and daily series containers.

Samples are stored in read-only float64 arrays. A MISSING sample is stored as NaN
but is never consumed implicitly: every operation selects samples through
``present_mask`` and decides explicitly what a gap means for its output.
"""

from __future__ import annotations

from collections.abc import Sequence
from datetime import date, datetime, time, timedelta
from typing import Any

import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from gridstress.core.constants import Unit, Variable, unit_for
from gridstress.core.exceptions import AlignmentError, ValidationError

HOUR = timedelta(hours=1)
DAY = timedelta(days=1)


def _as_readonly_array(values: Any) -> np.ndarray:
    """Convert a value sequence (None = MISSING) into a read-only float64 array."""
    if isinstance(values, np.ndarray):
        arr = np.array(values, dtype=np.float64, copy=True)
    else:
        arr = np.array(
            [np.nan if v is None else v for v in values],
            dtype=np.float64,
        )
    if arr.ndim != 1:
        raise ValidationError("Series values must be one-dimensional", {"ndim": arr.ndim})
    if np.isinf(arr).any():
        raise ValidationError(
            "Series values must be finite or MISSING",
            {"positions": np.flatnonzero(np.isinf(arr))[:10].tolist()},
        )
    arr.setflags(write=False)
    return arr


def hour_ending_day(timestamp: datetime) -> date:
    """Calendar day an hour-ending timestamp belongs to (00:00 closes the previous day)."""
    return (timestamp - HOUR).date()


class DateWindow(BaseModel):
    """An inclusive range of calendar days, optionally named."""

    model_config = ConfigDict(frozen=True)

    start: date = Field(description="First day (inclusive)")
    end: date = Field(description="Last day (inclusive)")
    name: str | None = Field(default=None, description="Window name from the config")

    @model_validator(mode="after")
    def _check_order(self) -> DateWindow:
        if self.end < self.start:
            raise ValueError(f"window end {self.end} precedes start {self.start}")
        return self

    @property
    def label(self) -> str:
        """Name if set, otherwise the date span."""
        return self.name or f"{self.start.isoformat()}..{self.end.isoformat()}"

    @property
    def n_days(self) -> int:
        return (self.end - self.start).days + 1

    @property
    def first_hour(self) -> datetime:
        """Hour-ending timestamp of the first hour of the window."""
        return datetime.combine(self.start, time(1))

    @property
    def last_hour(self) -> datetime:
        """Hour-ending timestamp of the last hour of the window (midnight after end)."""
        return datetime.combine(self.end + DAY, time(0))

    def contains(self, day: date) -> bool:
        return self.start <= day <= self.end

    def overlaps(self, other: DateWindow) -> bool:
        return self.start <= other.end and other.start <= self.end


class HourlySeries(BaseModel):
    """One region's hourly values of a single variable.

    Sample ``i`` is the hour ending at ``start + i hours`` (local clock time).
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    region_id: str = Field(description="Balancing authority / region identifier")
    variable: Variable = Field(description="Quantity held by the series")
    unit: Unit = Field(description="MWh for grid variables, degF for temperature")
    start: datetime = Field(description="Hour-ending timestamp of sample 0")
    values: np.ndarray = Field(description="float64 samples, NaN = MISSING")

    @model_validator(mode="before")
    @classmethod
    def _default_unit(cls, data: Any) -> Any:
        if isinstance(data, dict) and data.get("unit") is None and "variable" in data:
            data = dict(data)
            data["unit"] = unit_for(Variable(data["variable"]))
        return data

    @field_validator("start")
    @classmethod
    def _check_start(cls, value: datetime) -> datetime:
        if value.tzinfo is not None:
            raise ValidationError("Series timestamps are naive local clock time", {"start": str(value)})
        if value.minute or value.second or value.microsecond:
            raise AlignmentError(value)
        return value

    @field_validator("values", mode="before")
    @classmethod
    def _coerce_values(cls, value: Any) -> np.ndarray:
        return _as_readonly_array(value)

    @model_validator(mode="after")
    def _check_unit(self) -> HourlySeries:
        expected = unit_for(self.variable)
        if self.unit != expected:
            raise ValidationError(
                f"Unit {self.unit.value} does not match variable {self.variable.value}",
                {"expected": expected.value},
            )
        return self

    # ------------------------------------------------------------------
    # Construction helpers
    # ------------------------------------------------------------------

    @classmethod
    def from_values(
        cls,
        region_id: str,
        variable: Variable,
        start: datetime,
        values: Sequence[float | None] | np.ndarray,
    ) -> HourlySeries:
        """Build a series; ``None`` entries become MISSING."""
        return cls(region_id=region_id, variable=variable, start=start, values=values)

    def with_values(
        self,
        values: Sequence[float | None] | np.ndarray,
        variable: Variable | None = None,
        start: datetime | None = None,
    ) -> HourlySeries:
        """Copy of this series with new samples (and optionally a new variable/start)."""
        return HourlySeries(
            region_id=self.region_id,
            variable=variable or self.variable,
            start=start or self.start,
            values=values,
        )

    # ------------------------------------------------------------------
    # Indexing
    # ------------------------------------------------------------------

    def __len__(self) -> int:
        return int(self.values.shape[0])

    @property
    def end(self) -> datetime | None:
        """Hour-ending timestamp of the last sample, None for an empty series."""
        if len(self) == 0:
            return None
        return self.start + (len(self) - 1) * HOUR

    @property
    def timestamps(self) -> pd.DatetimeIndex:
        return pd.date_range(self.start, periods=len(self), freq="h")

    @property
    def day_labels(self) -> np.ndarray:
        """Hour-ending calendar day of every sample (datetime64[D])."""
        return (self.timestamps - pd.Timedelta(hours=1)).values.astype("datetime64[D]")

    @property
    def present_mask(self) -> np.ndarray:
        return ~np.isnan(self.values)

    @property
    def n_present(self) -> int:
        return int(self.present_mask.sum())

    def values_present(self) -> np.ndarray:
        """Non-missing samples in time order."""
        return self.values[self.present_mask]

    def index_of(self, timestamp: datetime) -> int:
        """Sample offset of ``timestamp`` relative to ``start`` (may be out of range)."""
        if timestamp.minute or timestamp.second or timestamp.microsecond:
            raise AlignmentError(timestamp)
        delta = timestamp - self.start
        return int(delta // HOUR)

    def value_at(self, timestamp: datetime) -> float | None:
        """Sample at ``timestamp``; None when MISSING or outside the series."""
        i = self.index_of(timestamp)
        if i < 0 or i >= len(self):
            return None
        v = self.values[i]
        return None if np.isnan(v) else float(v)

    def slice(self, first: datetime, last: datetime) -> HourlySeries:
        """Samples with hour-ending timestamps in [first, last], clipped to the series."""
        lo = max(self.index_of(first), 0)
        hi = min(self.index_of(last), len(self) - 1)
        if hi < lo:
            return self.with_values(np.empty(0), start=self.start + lo * HOUR)
        return self.with_values(self.values[lo : hi + 1], start=self.start + lo * HOUR)

    def window(self, window: DateWindow) -> HourlySeries:
        """Samples whose hour-ending day lies in ``window``."""
        return self.slice(window.first_hour, window.last_hour)

    def overlaps(self, window: DateWindow) -> bool:
        """True if at least one sample falls in ``window``."""
        if len(self) == 0:
            return False
        return self.start <= window.last_hour and self.end >= window.first_hour

    # ------------------------------------------------------------------
    # Conversion / comparison
    # ------------------------------------------------------------------

    def to_pandas(self) -> pd.Series:
        return pd.Series(self.values, index=self.timestamps, name=self.variable.value)

    def to_list(self) -> list[float | None]:
        return [None if np.isnan(v) else float(v) for v in self.values]

    def equals(self, other: HourlySeries) -> bool:
        """Value-for-value, MISSING-for-MISSING equality."""
        return (
            self.region_id == other.region_id
            and self.variable == other.variable
            and self.unit == other.unit
            and self.start == other.start
            and len(self) == len(other)
            and bool(np.array_equal(self.values, other.values, equal_nan=True))
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HourlySeries):
            return NotImplemented
        return self.equals(other)

    __hash__ = None  # type: ignore[assignment]


class DailySeries(BaseModel):
    """Daily values reduced from an hourly series."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    region_id: str = Field(description="Region identifier")
    variable: Variable = Field(description="Quantity the days were reduced from")
    unit: Unit = Field(description="Unit of the values")
    dates: list[date] = Field(default_factory=list, description="Strictly increasing days")
    values: np.ndarray = Field(description="float64 daily values, NaN = MISSING")
    coverage: np.ndarray = Field(description="Present source hours per day (0-24)")

    @model_validator(mode="before")
    @classmethod
    def _default_unit(cls, data: Any) -> Any:
        if isinstance(data, dict) and data.get("unit") is None and "variable" in data:
            data = dict(data)
            data["unit"] = unit_for(Variable(data["variable"]))
        return data

    @field_validator("values", mode="before")
    @classmethod
    def _coerce_values(cls, value: Any) -> np.ndarray:
        return _as_readonly_array(value)

    @field_validator("coverage", mode="before")
    @classmethod
    def _coerce_coverage(cls, value: Any) -> np.ndarray:
        arr = np.array(value, dtype=np.int64, copy=True).reshape(-1)
        if ((arr < 0) | (arr > 24)).any():
            raise ValidationError("Daily coverage must lie in 0..24")
        arr.setflags(write=False)
        return arr

    @model_validator(mode="after")
    def _check_shape(self) -> DailySeries:
        n = len(self.dates)
        if self.values.shape[0] != n or self.coverage.shape[0] != n:
            raise ValidationError(
                "dates, values and coverage must have equal length",
                {"dates": n, "values": int(self.values.shape[0]), "coverage": int(self.coverage.shape[0])},
            )
        for prev, cur in zip(self.dates, self.dates[1:]):
            if cur <= prev:
                raise ValidationError("Daily dates must be strictly increasing", {"at": cur.isoformat()})
        return self

    def __len__(self) -> int:
        return len(self.dates)

    @property
    def present_mask(self) -> np.ndarray:
        return ~np.isnan(self.values)

    def values_present(self) -> np.ndarray:
        return self.values[self.present_mask]

    def window(self, window: DateWindow) -> DailySeries:
        """Days inside ``window``."""
        keep = np.array([window.contains(d) for d in self.dates], dtype=bool)
        return DailySeries(
            region_id=self.region_id,
            variable=self.variable,
            unit=self.unit,
            dates=[d for d, k in zip(self.dates, keep) if k],
            values=self.values[keep] if len(self) else np.empty(0),
            coverage=self.coverage[keep] if len(self) else np.empty(0, dtype=np.int64),
        )

    def overlaps(self, window: DateWindow) -> bool:
        return any(window.contains(d) for d in self.dates)

    def value_map(self) -> dict[date, float | None]:
        """Day -> value, None for MISSING."""
        return {
            d: (None if np.isnan(v) else float(v)) for d, v in zip(self.dates, self.values)
        }

    def equals(self, other: DailySeries) -> bool:
        return (
            self.region_id == other.region_id
            and self.variable == other.variable
            and self.dates == other.dates
            and bool(np.array_equal(self.values, other.values, equal_nan=True))
            and bool(np.array_equal(self.coverage, other.coverage))
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DailySeries):
            return NotImplemented
        return self.equals(other)

    __hash__ = None  # type: ignore[assignment]


class AlignedRow(BaseModel):
    """One hour of a two-year comparison aligned on the month's first Monday."""

    day_offset: int = Field(description="Days since each year's first Monday of the month")
    hour: int = Field(ge=1, le=24, description="Hour ending (1-24)")
    value_a: float | None = Field(default=None, description="Series A value, None = MISSING")
    value_b: float | None = Field(default=None, description="Series B value, None = MISSING")
