"""Result of an end-to-end weather-corrected backcast."""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, ConfigDict, Field

from gridstress.models.series import DailySeries, DateWindow, HourlySeries
from gridstress.models.weather import (
    ChangePoint,
    DegreeDayModel,
    DemandModel,
    FitDiagnostics,
    SetpointSearchResult,
)


class BackcastWindows(BaseModel):
    """Windows a backcast was run with."""

    train: DateWindow
    event: DateWindow
    base: DateWindow
    validate_window: DateWindow | None = Field(default=None, alias="validate")

    model_config = ConfigDict(populate_by_name=True)


class BackcastResult(BaseModel):
    """Everything a backcast produces for one region."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    region_id: str
    windows: BackcastWindows
    model: DemandModel
    diagnostics: FitDiagnostics = Field(description="In-sample fit on the training window")
    validation: FitDiagnostics | None = Field(
        default=None, description="Out-of-sample fit on the validation window"
    )
    search: SetpointSearchResult | None = Field(
        default=None, description="Setpoint search, None when setpoints were fixed"
    )
    degree_day_model: DegreeDayModel | None = Field(
        default=None, description="Daily CDD/HDD baseline on the training window"
    )
    counterfactual_hourly: HourlySeries
    observed_daily: DailySeries
    counterfactual_daily: DailySeries
    changes: list[ChangePoint] = Field(default_factory=list)
    base_mean: float = Field(gt=0.0, description="Mean daily energy of the base window (MWh)")
    sigma_daily: float = Field(ge=0.0, description="Daily prediction error std / base mean")
    sigma_source: Literal["validation", "in-sample"]

    @property
    def mean_change_pct(self) -> float | None:
        if not self.changes:
            return None
        return sum(c.change_pct for c in self.changes) / len(self.changes)
