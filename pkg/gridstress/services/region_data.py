"""Loading of one region's series from its configured files."""

from __future__ import annotations

from pathlib import Path
from typing import TextIO

from gridstress.core.config import RegionConfig
from gridstress.core.constants import Defaults, Paths, Variable
from gridstress.core.exceptions import ConfigurationError, InputError
from gridstress.core.logging import region_logger
from gridstress.models.ingest import TemperatureBounds
from gridstress.models.series import HourlySeries
from gridstress.services.ingest import (
    hourly_mean_temperature,
    parse_grid_csv,
    parse_weather_csv,
    read_normalized_csv,
)


def normalized_path(output_dir: Path, region_id: str, variable: Variable) -> Path:
    """Location of a normalized series file below ``output_dir``."""
    return output_dir / Paths.NORMALIZED_DIR / region_id / f"{variable.value}.csv"


def bounds_path(output_dir: Path, region_id: str) -> Path:
    """Sidecar recording the bounds the normalized temperature file was built with."""
    return output_dir / Paths.NORMALIZED_DIR / region_id / Paths.TEMPERATURE_BOUNDS_FILE


def write_temperature_bounds(output_dir: Path, region_id: str, bounds: tuple[float, float]) -> Path:
    path = bounds_path(output_dir, region_id)
    path.parent.mkdir(parents=True, exist_ok=True)
    record = TemperatureBounds(temp_min=bounds[0], temp_max=bounds[1])
    path.write_text(record.model_dump_json(indent=2) + "\n", encoding="utf-8")
    return path


class RegionDataLoader:
    """Reads and caches a region's hourly series.

    Normalized files written by ``gridstress ingest`` are preferred when they
    exist below ``output_dir``; otherwise the raw inputs are parsed. A normalized
    temperature file is reused only if it was built with the same bounds.
    """

    def __init__(
        self,
        region: RegionConfig,
        output_dir: Path | None = None,
        temp_bounds: tuple[float, float] = (Defaults.TEMP_MIN_DEGF, Defaults.TEMP_MAX_DEGF),
    ) -> None:
        """
        Initialize the loader.

        Args:
            region: Region entry of the analysis config
            output_dir: Directory holding normalized files, if any
            temp_bounds: Plausibility bounds for weather readings (degF)
        """
        self.region = region
        self.output_dir = output_dir
        self.temp_bounds = temp_bounds
        self._grid: dict[Variable, HourlySeries] | None = None
        self._temperature: HourlySeries | None = None
        self.log = region_logger("services.region_data", region.region_id)

    @property
    def region_id(self) -> str:
        return self.region.region_id

    def _open(self, path: Path) -> TextIO:
        try:
            return path.open(encoding="utf-8", newline="")
        except OSError as e:
            raise InputError(f"Cannot read {path}: {e.strerror}", {"region": self.region_id})

    def _normalized(self, variable: Variable) -> HourlySeries | None:
        if self.output_dir is None:
            return None
        path = normalized_path(self.output_dir, self.region_id, variable)
        if not path.is_file():
            return None
        self.log.debug(f"reading normalized {variable.value} from {path}")
        with self._open(path) as stream:
            return read_normalized_csv(stream, self.region_id, variable, source=str(path))

    def grid_series(self) -> dict[Variable, HourlySeries]:
        """All series declared by the region's grid schema."""
        if self._grid is not None:
            return self._grid

        declared = list(self.region.csv_schema.value_columns)
        cached = {v: self._normalized(v) for v in declared}
        if all(s is not None for s in cached.values()):
            self._grid = {v: s for v, s in cached.items() if s is not None}
            return self._grid

        path = self.region.grid_csv
        self.log.debug(f"parsing {path}")
        with self._open(path) as stream:
            self._grid = parse_grid_csv(stream, self.region.csv_schema, self.region_id, source=str(path))
        return self._grid

    def series(self, variable: Variable) -> HourlySeries | None:
        """One grid series, None when the schema does not declare it."""
        return self.grid_series().get(variable)

    def _bounds_match(self, output_dir: Path) -> bool:
        path = bounds_path(output_dir, self.region_id)
        if not path.is_file():
            return False
        try:
            recorded = TemperatureBounds.model_validate_json(path.read_text(encoding="utf-8"))
        except ValueError:
            self.log.warning(f"ignoring unreadable {path}")
            return False
        return recorded.as_tuple() == tuple(self.temp_bounds)

    def temperature(self) -> HourlySeries:
        """Hourly mean temperature from the region's weather file."""
        if self._temperature is not None:
            return self._temperature

        cached = self._normalized(Variable.TEMPERATURE)
        if cached is not None and self.output_dir is not None:
            if self._bounds_match(self.output_dir):
                self._temperature = cached
                return cached
            self.log.info("normalized temperature was built with other bounds; re-reading the weather file")

        path = self.region.weather_csv
        if path is None:
            raise ConfigurationError(
                f"Region '{self.region_id}' has no weather_csv", {"region": self.region_id}
            )
        with self._open(path) as stream:
            observations = parse_weather_csv(
                stream,
                timestamp_format=self.region.weather_timestamp_format,
                bounds=self.temp_bounds,
                source=str(path),
            )
        self._temperature = hourly_mean_temperature(observations, self.region_id, self.temp_bounds)
        return self._temperature
