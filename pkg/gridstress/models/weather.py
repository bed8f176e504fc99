"""Models for the hour-of-week degree regression and weather correction."""

from __future__ import annotations

import datetime as dt
import json
from pathlib import Path

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from gridstress.core.constants import Criterion, Defaults
from gridstress.models.series import DateWindow


class DegreeParams(BaseModel):
    """Heating/cooling setpoint pair defining the degree transforms (degF)."""

    model_config = ConfigDict(frozen=True)

    heating_setpoint: float = Field(
        ge=Defaults.SETPOINT_MIN_DEGF,
        le=Defaults.SETPOINT_MAX_DEGF,
        description="Below this, consumers start space heating",
    )
    cooling_setpoint: float = Field(
        ge=Defaults.SETPOINT_MIN_DEGF,
        le=Defaults.SETPOINT_MAX_DEGF,
        description="Above this, consumers start space cooling",
    )

    @model_validator(mode="after")
    def _check_deadband(self) -> DegreeParams:
        if not self.heating_setpoint < self.cooling_setpoint:
            raise ValueError("heating_setpoint must be below cooling_setpoint")
        return self

    @property
    def span(self) -> float:
        return self.cooling_setpoint - self.heating_setpoint


class DegreePair(BaseModel):
    """Cooling and heating degree of one temperature (degF)."""

    model_config = ConfigDict(frozen=True)

    cooling_degree: float = Field(ge=0.0)
    heating_degree: float = Field(ge=0.0)

    @model_validator(mode="after")
    def _check_exclusive(self) -> DegreePair:
        if self.cooling_degree > 0 and self.heating_degree > 0:
            raise ValueError("cooling and heating degree cannot both be positive")
        return self


class DegreeHours(BaseModel):
    """Per-hour degrees of a temperature series plus their totals."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    cooling: np.ndarray = Field(description="Cooling degree per hour, NaN = MISSING")
    heating: np.ndarray = Field(description="Heating degree per hour, NaN = MISSING")
    cdh: float = Field(ge=0.0, description="Cooling degree hours (degF-hour)")
    hdh: float = Field(ge=0.0, description="Heating degree hours (degF-hour)")
    n_hours: int = Field(ge=0, description="Present hours summed")
    n_missing: int = Field(ge=0, description="MISSING hours excluded")

    @property
    def cdd(self) -> float:
        """Cooling degree days (degF-day)."""
        return self.cdh / Defaults.HOURS_PER_DAY

    @property
    def hdd(self) -> float:
        """Heating degree days (degF-day)."""
        return self.hdh / Defaults.HOURS_PER_DAY

    def pairs(self) -> list[DegreePair | None]:
        """Per-hour DegreePair, None for MISSING hours."""
        out: list[DegreePair | None] = []
        for c, h in zip(self.cooling, self.heating):
            if np.isnan(c):
                out.append(None)
            else:
                out.append(DegreePair(cooling_degree=float(c), heating_degree=float(h)))
        return out


class DesignMatrix(BaseModel):
    """Regression rows for hours where both demand and temperature are present.

    Column 0 is the squared heating degree, column 1 the squared cooling degree,
    and column ``1 + w`` the one-hot indicator of hour-of-week ``w`` (1..168).
    """

    model_config = ConfigDict(arbitrary_types_allowed=True)

    phi: np.ndarray = Field(description="n x 170 design")
    response: np.ndarray = Field(description="Observed demand per row (MWh)")
    timestamps: list[dt.datetime] = Field(description="Hour-ending timestamp of each row")
    hour_of_week: np.ndarray = Field(description="Hour-of-week (1..168) of each row")
    degree_params: DegreeParams
    region_id: str

    @model_validator(mode="after")
    def _check_shape(self) -> DesignMatrix:
        n = self.phi.shape[0]
        if self.phi.ndim != 2 or self.phi.shape[1] != Defaults.N_PARAMETERS:
            raise ValueError(f"design must have {Defaults.N_PARAMETERS} columns")
        if self.response.shape[0] != n or len(self.timestamps) != n or self.hour_of_week.shape[0] != n:
            raise ValueError("design rows, response, timestamps and hour_of_week must align")
        return self

    @property
    def n_rows(self) -> int:
        return int(self.phi.shape[0])

    @property
    def heating_sq(self) -> np.ndarray:
        return self.phi[:, 0]

    @property
    def cooling_sq(self) -> np.ndarray:
        return self.phi[:, 1]

    @property
    def window(self) -> DateWindow | None:
        """Hour-ending days spanned by the rows."""
        if not self.timestamps:
            return None
        first = (self.timestamps[0] - dt.timedelta(hours=1)).date()
        last = (self.timestamps[-1] - dt.timedelta(hours=1)).date()
        return DateWindow(start=first, end=last)


class DemandModel(BaseModel):
    """Fitted parameter vector [alpha_h, alpha_c, b_1..b_168] with training metadata."""

    alpha_h: float = Field(description="Heating coefficient (MWh/degF^2)")
    alpha_c: float = Field(description="Cooling coefficient (MWh/degF^2)")
    baseload: list[float] = Field(description="b_1..b_168, MWh per hour-of-week")
    degree_params: DegreeParams
    region_id: str = Field(default="")
    training_window: DateWindow | None = Field(default=None)
    n_train: int = Field(ge=0)
    condition_estimate: float = Field(description="2-norm condition number of the design")

    @field_validator("baseload")
    @classmethod
    def _check_baseload(cls, value: list[float]) -> list[float]:
        if len(value) != Defaults.HOURS_PER_WEEK:
            raise ValueError(f"baseload must have {Defaults.HOURS_PER_WEEK} entries")
        return value

    @model_validator(mode="after")
    def _check_finite(self) -> DemandModel:
        if not np.isfinite(self.theta).all():
            raise ValueError("model parameters must be finite")
        return self

    @property
    def theta(self) -> np.ndarray:
        """Parameter vector in design-column order."""
        return np.array([self.alpha_h, self.alpha_c, *self.baseload], dtype=np.float64)

    @classmethod
    def from_theta(
        cls,
        theta: np.ndarray,
        degree_params: DegreeParams,
        n_train: int,
        condition_estimate: float,
        region_id: str = "",
        training_window: DateWindow | None = None,
    ) -> DemandModel:
        return cls(
            alpha_h=float(theta[0]),
            alpha_c=float(theta[1]),
            baseload=[float(b) for b in theta[2:]],
            degree_params=degree_params,
            region_id=region_id,
            training_window=training_window,
            n_train=n_train,
            condition_estimate=condition_estimate,
        )

    def to_json(self) -> str:
        """JSON text; floats use the shortest repr that round-trips bit-exactly."""
        return json.dumps(self.model_dump(mode="json"), indent=2)

    @classmethod
    def from_json(cls, text: str) -> DemandModel:
        return cls.model_validate(json.loads(text))

    def save(self, path: Path) -> None:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.to_json() + "\n", encoding="utf-8")

    @classmethod
    def load(cls, path: Path) -> DemandModel:
        return cls.from_json(path.read_text(encoding="utf-8"))


class FitDiagnostics(BaseModel):
    """Fitting error statistics of a model on a dataset."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    mean_rel_error: float = Field(description="Mean of (d - d_hat) / d")
    std_rel_error: float = Field(ge=0.0, description="Std of (d - d_hat) / d")
    r_squared: float = Field(le=1.0, description="1 - SSR/SST (may be negative out of sample)")
    residuals: np.ndarray = Field(description="d - d_hat per design row (MWh)")
    fitted: np.ndarray = Field(description="d_hat per design row (MWh)")
    n_rows: int = Field(ge=0)
    ssr: float = Field(ge=0.0, description="Sum of squared residuals")
    standard_errors: list[float] = Field(
        default_factory=list,
        description="Parameter standard errors (in-sample fits only)",
    )
    negative_parameters: list[str] = Field(
        default_factory=list,
        description="Names of parameters estimated below zero",
    )
    pinned_parameters: list[str] = Field(
        default_factory=list,
        description="Degree coefficients fixed at zero for lack of excitation",
    )
    residual_skew: float | None = Field(default=None)
    residual_excess_kurtosis: float | None = Field(default=None)

    def summary(self) -> dict[str, float | int]:
        return {
            "mean_rel_error": self.mean_rel_error,
            "std_rel_error": self.std_rel_error,
            "r_squared": self.r_squared,
            "n_rows": self.n_rows,
        }


class ChangePoint(BaseModel):
    """Weather-corrected daily change with confidence intervals."""

    date: dt.date
    observed: float = Field(description="Observed daily energy (MWh/day)")
    counterfactual: float = Field(description="Model-predicted daily energy (MWh/day)")
    change_pct: float = Field(description="(observed - counterfactual) as percent of base mean")
    ci95: tuple[float, float]
    ci99: tuple[float, float]

    @model_validator(mode="after")
    def _check_nesting(self) -> ChangePoint:
        lo95, hi95 = self.ci95
        lo99, hi99 = self.ci99
        if not (lo99 <= lo95 <= self.change_pct <= hi95 <= hi99):
            raise ValueError("ci99 must contain ci95 which must contain change_pct")
        return self


class SetpointScore(BaseModel):
    """Score of one (heating, cooling) pair in the exhaustive search."""

    heating_setpoint: float
    cooling_setpoint: float
    score: float | None = Field(default=None, description="Criterion value, None if the fit failed")
    status: str = Field(default="ok", description="'ok' or the failure message")


class SetpointSearchResult(BaseModel):
    """Best setpoint pair and the full score table in grid order."""

    best: DegreeParams
    best_score: float
    criterion: Criterion
    table: list[SetpointScore] = Field(default_factory=list)


class DegreeDayModel(BaseModel):
    """Daily model d = alpha_c * CDD + alpha_h * HDD + b."""

    alpha_h: float = Field(description="MWh per heating degree day")
    alpha_c: float = Field(description="MWh per cooling degree day")
    baseload: float = Field(description="Weather-independent daily energy (MWh)")
    degree_params: DegreeParams
    r_squared: float = Field(le=1.0)
    n_days: int = Field(ge=0)

    def predict(self, cdd: np.ndarray, hdd: np.ndarray) -> np.ndarray:
        return self.alpha_c * cdd + self.alpha_h * hdd + self.baseload
