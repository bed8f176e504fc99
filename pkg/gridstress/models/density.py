"""Models for kernel density estimates."""

from __future__ import annotations

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from scipy.integrate import trapezoid


class DensityEstimate(BaseModel):
    """Gaussian-KDE curve evaluated on a grid."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    grid: np.ndarray = Field(description="Evaluation points (sample unit)")
    density: np.ndarray = Field(description="Density at each grid point (1/unit)")
    bandwidth: float = Field(gt=0.0, description="Kernel bandwidth (sample unit)")
    n_samples: int = Field(ge=1)
    sample_mean: float
    sample_std: float = Field(ge=0.0)

    @field_validator("grid", "density", mode="before")
    @classmethod
    def _as_array(cls, value: object) -> np.ndarray:
        arr = np.array(value, dtype=np.float64, copy=True).reshape(-1)
        arr.setflags(write=False)
        return arr

    @model_validator(mode="after")
    def _check(self) -> DensityEstimate:
        if self.grid.shape != self.density.shape:
            raise ValueError("grid and density must have equal length")
        if (self.density < 0).any():
            raise ValueError("density must be non-negative")
        return self

    def integral(self) -> float:
        """Trapezoidal integral of the density over the grid."""
        if self.grid.shape[0] < 2:
            return 0.0
        return float(trapezoid(self.density, self.grid))

    @property
    def peak(self) -> float:
        return float(self.density.max()) if self.density.size else 0.0

    __hash__ = None  # type: ignore[assignment]


class PeriodSummary(BaseModel):
    """Sample statistics of one comparison window."""

    label: str
    n_samples: int
    mean: float
    std: float
    p01: float = Field(description="1st percentile (lower extreme)")
    p99: float = Field(description="99th percentile (upper extreme)")


class PeriodDeltas(BaseModel):
    """Window B minus window A."""

    mean: float
    std: float
    p01: float
    p99: float


class PeriodComparison(BaseModel):
    """Two densities on a shared grid plus summary deltas."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    density_a: DensityEstimate
    density_b: DensityEstimate
    summary_a: PeriodSummary
    summary_b: PeriodSummary
    deltas: PeriodDeltas

    @property
    def grid(self) -> np.ndarray:
        return self.density_a.grid
