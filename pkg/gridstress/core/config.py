"""Configuration management for gridstress."""

from __future__ import annotations

from functools import lru_cache
from pathlib import Path
from typing import Any, Literal

import numpy as np
import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError as PydanticValidationError, model_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from gridstress.core.constants import Criterion, Defaults, OutputFormat
from gridstress.core.exceptions import ConfigurationError
from gridstress.models.ingest import GridCsvSchema
from gridstress.models.series import DateWindow
from gridstress.models.weather import DegreeParams


class RegionConfig(BaseModel):
    """Input files of one balancing authority."""

    region_id: str = Field(description="Region identifier used in output paths")
    grid_csv: Path = Field(description="Hourly grid export")
    csv_schema: GridCsvSchema = Field(alias="schema", description="Shape of the grid export")
    weather_csv: Path | None = Field(default=None, description="Weather station observations")
    weather_timestamp_format: str = Field(
        default=Defaults.TIMESTAMP_FORMAT,
        description="strftime pattern of the weather timestamp column",
    )

    model_config = ConfigDict(populate_by_name=True)


class SetpointGrid(BaseModel):
    """Inclusive arithmetic grid of candidate setpoints (degF)."""

    start: float
    stop: float
    step: float = Field(default=1.0, gt=0.0)

    @model_validator(mode="after")
    def _check(self) -> SetpointGrid:
        if self.stop < self.start:
            raise ValueError("grid stop must not precede start")
        for bound in (self.start, self.stop):
            if not Defaults.SETPOINT_MIN_DEGF <= bound <= Defaults.SETPOINT_MAX_DEGF:
                raise ValueError(
                    f"setpoint grid must lie in [{Defaults.SETPOINT_MIN_DEGF}, {Defaults.SETPOINT_MAX_DEGF}] degF"
                )
        return self

    def values(self) -> list[float]:
        n = int(np.floor((self.stop - self.start) / self.step + 1e-9)) + 1
        return [round(self.start + i * self.step, 10) for i in range(n)]


class ModelOptions(BaseModel):
    """Options for the weather-correction and density analyses."""

    heating_grid: SetpointGrid = Field(
        default_factory=lambda: SetpointGrid(
            start=Defaults.HEATING_GRID[0], stop=Defaults.HEATING_GRID[1], step=Defaults.HEATING_GRID[2]
        )
    )
    cooling_grid: SetpointGrid = Field(
        default_factory=lambda: SetpointGrid(
            start=Defaults.COOLING_GRID[0], stop=Defaults.COOLING_GRID[1], step=Defaults.COOLING_GRID[2]
        )
    )
    fixed_setpoints: DegreeParams | None = Field(
        default=None, description="Skip the search and use these setpoints"
    )
    criterion: Criterion = Field(default=Criterion.STD_REL_ERROR)
    min_coverage: int = Field(default=Defaults.MIN_COVERAGE, ge=1, le=24)
    bandwidth: float | None = Field(default=None, gt=0.0, description="KDE bandwidth override")
    grid_points: int = Field(default=Defaults.KDE_GRID_POINTS, ge=2)


class ComparisonOptions(BaseModel):
    """Two-year aligned comparison (first Monday of ``month`` aligned)."""

    month: int = Field(ge=1, le=12)
    year_a: int
    year_b: int


class AnalysisConfig(BaseModel):
    """Declarative analysis configuration loaded from YAML."""

    regions: list[RegionConfig] = Field(default_factory=list)
    windows: dict[str, DateWindow] = Field(default_factory=dict)
    model: ModelOptions = Field(default_factory=ModelOptions)
    comparison: ComparisonOptions | None = Field(default=None)
    output_dir: Path = Field(default=Path("gridstress-out"))
    format: OutputFormat = Field(default=OutputFormat.CSV)

    @model_validator(mode="before")
    @classmethod
    def _name_windows(cls, data: Any) -> Any:
        if isinstance(data, dict) and isinstance(data.get("windows"), dict):
            named = {}
            for name, window in data["windows"].items():
                if isinstance(window, dict):
                    window = {**window, "name": name}
                named[name] = window
            data = {**data, "windows": named}
        return data

    @model_validator(mode="after")
    def _check_paths(self) -> AnalysisConfig:
        seen: set[Path] = set()
        ids: set[str] = set()
        for region in self.regions:
            if region.region_id in ids:
                raise ValueError(f"duplicate region_id '{region.region_id}'")
            ids.add(region.region_id)
            for path in (region.grid_csv, region.weather_csv):
                if path is None:
                    continue
                if path in seen:
                    raise ValueError(f"path used twice: {path}")
                seen.add(path)
        return self

    def region(self, region_id: str) -> RegionConfig:
        for region in self.regions:
            if region.region_id == region_id:
                return region
        raise ConfigurationError(f"Unknown region '{region_id}'", {"known": [r.region_id for r in self.regions]})

    def window(self, name: str) -> DateWindow:
        if name not in self.windows:
            raise ConfigurationError(f"Unknown window '{name}'", {"known": sorted(self.windows)})
        return self.windows[name]

    def select_regions(self, region_ids: list[str] | None) -> list[RegionConfig]:
        if not region_ids:
            return list(self.regions)
        return [self.region(r) for r in region_ids]

    @classmethod
    def load(cls, path: Path) -> AnalysisConfig:
        """Load and validate a YAML config; relative paths resolve against its directory."""
        try:
            raw = yaml.safe_load(path.read_text(encoding="utf-8")) or {}
        except OSError as e:
            raise ConfigurationError(f"Cannot read config file: {e}", {"path": str(path)})
        except yaml.YAMLError as e:
            raise ConfigurationError(f"Invalid YAML: {e}", {"path": str(path)})

        try:
            config = cls.model_validate(raw)
        except PydanticValidationError as e:
            raise ConfigurationError(f"{path}: {e.error_count()} invalid setting(s)", {"errors": _short_errors(e)})

        return config.resolve_paths(path.parent)

    def resolve_paths(self, base: Path) -> AnalysisConfig:
        def resolve(p: Path | None) -> Path | None:
            if p is None or p.is_absolute():
                return p
            return base / p

        regions = [
            r.model_copy(update={"grid_csv": resolve(r.grid_csv), "weather_csv": resolve(r.weather_csv)})
            for r in self.regions
        ]
        return self.model_copy(update={"regions": regions, "output_dir": resolve(self.output_dir)})


def _short_errors(error: PydanticValidationError) -> list[str]:
    return [f"{'.'.join(str(p) for p in e['loc'])}: {e['msg']}" for e in error.errors()]


class AppSettings(BaseSettings):
    """Application settings loaded from environment variables."""

    model_config = SettingsConfigDict(
        env_prefix="GRIDSTRESS_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    # Logging
    log_level: Literal["DEBUG", "INFO", "WARNING", "ERROR"] = Field(
        default="INFO", description="Logging level"
    )
    log_file: Path | None = Field(
        default=None, description="Optional log file path"
    )

    # Display
    no_color: bool = Field(default=False, description="Disable colored output")
    verbose: bool = Field(default=False, description="Enable verbose output")

    # Execution
    output_dir: Path | None = Field(
        default=None, description="Override of the config file's output directory"
    )
    max_workers: int = Field(
        default=1, ge=1, description="Worker threads for the setpoint search"
    )


@lru_cache
def get_settings() -> AppSettings:
    """Get cached application settings."""
    return AppSettings()
