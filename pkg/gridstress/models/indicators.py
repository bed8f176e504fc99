"""Models for grid-stress indicators."""

from __future__ import annotations

import datetime as dt

from pydantic import BaseModel, Field, model_validator


class PeakTrough(BaseModel):
    """Daily maximum and minimum of hourly demand."""

    date: dt.date = Field(description="Hour-ending calendar day")
    peak: float = Field(description="Maximum hourly demand (MWh)")
    trough: float = Field(description="Minimum hourly demand (MWh)")
    coverage: int = Field(default=24, ge=1, le=24, description="Present hours used")

    @model_validator(mode="after")
    def _check_order(self) -> PeakTrough:
        if self.peak < self.trough:
            raise ValueError("peak must not be below trough")
        return self

    @property
    def spread(self) -> float:
        return self.peak - self.trough


class PeakTroughTable(BaseModel):
    """Peak/trough rows plus the days dropped for insufficient coverage."""

    rows: list[PeakTrough] = Field(default_factory=list)
    omitted_days: list[dt.date] = Field(
        default_factory=list,
        description="Days below the coverage threshold",
    )

    def __len__(self) -> int:
        return len(self.rows)


class TrendFit(BaseModel):
    """Simple linear regression of a daily series on days since an anchor."""

    slope: float = Field(description="MWh per day")
    intercept: float = Field(description="MWh at the anchor day")
    r_squared: float = Field(ge=0.0, le=1.0)
    p_value_slope: float = Field(ge=0.0, le=1.0, description="Two-sided t-test on the slope")
    slope_stderr: float = Field(ge=0.0, description="Standard error of the slope")
    n: int = Field(ge=3, description="Days used")
    anchor: dt.date = Field(description="Day that maps to x = 0")

    def is_significant(self, alpha: float = 0.05) -> bool:
        return self.p_value_slope < alpha
