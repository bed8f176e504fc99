"""Parsing of grid exports and weather observations into hourly series."""

from __future__ import annotations

import csv
import math
from collections.abc import Sequence
from datetime import datetime
from typing import TextIO

import numpy as np
import pandas as pd

from gridstress.core.constants import Defaults, Variable
from gridstress.core.exceptions import (
    AlignmentError,
    EmptyInputError,
    OrderError,
    SchemaError,
    WeatherValidationError,
)
from gridstress.core.logging import get_logger
from gridstress.models.ingest import CoverageReport, GridCsvSchema, WeatherObservation
from gridstress.models.series import DateWindow, HourlySeries
from gridstress.services.timeseries import longest_run

logger = get_logger("services.ingest")

WEATHER_TIMESTAMP_COLUMN = "timestamp"
WEATHER_TEMPERATURE_COLUMN = "temperature_degF"

# First data row of a delimited file is line 2 (line 1 is the header)
_FIRST_DATA_LINE = 2


def _source_name(stream: TextIO, source: str | None) -> str | None:
    return source or getattr(stream, "name", None)


def _read_table(
    stream: TextIO,
    required: Sequence[str],
    delimiter: str,
    source: str | None,
) -> pd.DataFrame:
    """Read every cell as text and check the header carries ``required``."""
    try:
        frame = pd.read_csv(
            stream,
            sep=delimiter,
            dtype=str,
            keep_default_na=False,
            skipinitialspace=True,
            encoding="utf-8",
        )
    except pd.errors.EmptyDataError:
        raise EmptyInputError("File has no header row", {"source": source})

    frame.columns = [str(c).strip() for c in frame.columns]
    missing = [c for c in required if c not in frame.columns]
    if missing:
        raise SchemaError(missing, source=source, details={"found": list(frame.columns)})
    return frame


def _parse_value(cell: str, grouping: bool) -> float:
    """Cell text to float; empty or unparseable text is MISSING (NaN)."""
    text = cell.strip()
    if grouping:
        text = text.replace(",", "")
    if not text:
        return math.nan
    try:
        value = float(text)
    except ValueError:
        return math.nan
    return value if math.isfinite(value) else math.nan


def _parse_timestamps(
    column: pd.Series,
    timestamp_format: str,
    source: str | None,
) -> pd.Series:
    """Parse timestamps; unparseable cells become NaT and are reported once."""
    parsed = pd.to_datetime(column.str.strip(), format=timestamp_format, errors="coerce")
    bad = [int(i) + _FIRST_DATA_LINE for i in np.flatnonzero(parsed.isna().to_numpy())]
    if bad:
        logger.warning(
            f"{source or 'input'}: skipped {len(bad)} row(s) with unparseable timestamps "
            f"(first at line {bad[0]})"
        )
    return parsed


def _check_order(stamps: pd.Series, lines: np.ndarray, source: str | None) -> np.ndarray:
    """Raise on decreasing timestamps; return the mask of rows to keep (first of duplicates)."""
    values = stamps.to_numpy(dtype="datetime64[ns]")
    if values.size == 0:
        return np.zeros(0, dtype=bool)
    step = np.diff(values)
    backwards = np.flatnonzero(step < np.timedelta64(0, "ns"))
    if backwards.size:
        raise OrderError(int(lines[backwards[0] + 1]), source=source)

    keep = np.ones(values.size, dtype=bool)
    duplicate = np.flatnonzero(step == np.timedelta64(0, "ns")) + 1
    if duplicate.size:
        keep[duplicate] = False
        logger.warning(
            f"{source or 'input'}: dropped {duplicate.size} duplicate timestamp row(s), "
            f"first at line {int(lines[duplicate[0]])} (kept first occurrence)"
        )
    return keep


def parse_grid_csv(
    stream: TextIO,
    schema: GridCsvSchema,
    region_id: str,
    source: str | None = None,
) -> dict[Variable, HourlySeries]:
    """
    Parse an hourly grid export into one hour-contiguous series per declared variable.

    Args:
        stream: Text stream with a header row
        schema: Column layout of the export
        region_id: Region the rows belong to
        source: Name used in diagnostics (defaults to the stream name)

    Returns:
        Mapping variable -> HourlySeries; hours absent from the file are MISSING
    """
    source = _source_name(stream, source)
    frame = _read_table(stream, schema.required_columns(), schema.delimiter, source)
    if frame.empty:
        raise EmptyInputError("No data rows", {"source": source})

    stamps = _parse_timestamps(frame[schema.timestamp_column], schema.timestamp_format, source)
    parsed = stamps.notna().to_numpy()
    if not parsed.any():
        raise EmptyInputError("No parseable rows", {"source": source})

    lines = np.arange(len(frame)) + _FIRST_DATA_LINE
    frame = frame.loc[parsed]
    stamps = stamps.loc[parsed]
    lines = lines[parsed]

    off_hour = np.flatnonzero((stamps.dt.minute != 0).to_numpy() | (stamps.dt.second != 0).to_numpy())
    if off_hour.size:
        i = off_hour[0]
        raise AlignmentError(stamps.iloc[i].to_pydatetime(), {"source": source, "line": int(lines[i])})

    keep = _check_order(stamps, lines, source)
    frame = frame.loc[keep]
    stamps = stamps.loc[keep]

    hours = pd.date_range(stamps.iloc[0], stamps.iloc[-1], freq="h")
    start = hours[0].to_pydatetime()

    result: dict[Variable, HourlySeries] = {}
    for variable, column in schema.value_columns.items():
        values = [_parse_value(cell, schema.decimal_grouping) for cell in frame[column]]
        hourly = pd.Series(values, index=pd.DatetimeIndex(stamps), dtype=np.float64).reindex(hours)
        series = HourlySeries.from_values(region_id, variable, start, hourly.to_numpy())
        logger.debug(
            f"{region_id}/{variable.value}: {len(series)} hours, {series.n_present} present"
        )
        result[variable] = series
    return result


def parse_weather_csv(
    stream: TextIO,
    timestamp_format: str = Defaults.TIMESTAMP_FORMAT,
    bounds: tuple[float, float] = (Defaults.TEMP_MIN_DEGF, Defaults.TEMP_MAX_DEGF),
    source: str | None = None,
) -> list[WeatherObservation]:
    """
    Parse weather-station readings (columns ``timestamp``, ``temperature_degF``).

    Rows with an empty temperature are skipped. Readings outside ``bounds`` raise
    a WeatherValidationError naming their file lines.
    """
    source = _source_name(stream, source)
    frame = _read_table(
        stream, (WEATHER_TIMESTAMP_COLUMN, WEATHER_TEMPERATURE_COLUMN), ",", source
    )
    stamps = _parse_timestamps(frame[WEATHER_TIMESTAMP_COLUMN], timestamp_format, source)

    observations: list[WeatherObservation] = []
    out_of_bounds: list[int] = []
    for i, (stamp, cell) in enumerate(zip(stamps, frame[WEATHER_TEMPERATURE_COLUMN])):
        if pd.isna(stamp):
            continue
        temperature = _parse_value(cell, grouping=False)
        if math.isnan(temperature):
            continue
        obs = WeatherObservation(timestamp=stamp.to_pydatetime(), temperature=temperature)
        if not obs.in_bounds(*bounds):
            out_of_bounds.append(i + _FIRST_DATA_LINE)
        observations.append(obs)

    if out_of_bounds:
        raise WeatherValidationError(out_of_bounds, bounds, {"source": source})
    if not observations:
        raise EmptyInputError("No parseable weather observations", {"source": source})
    return observations


def hourly_mean_temperature(
    observations: Sequence[WeatherObservation],
    region_id: str = "",
    bounds: tuple[float, float] = (Defaults.TEMP_MIN_DEGF, Defaults.TEMP_MAX_DEGF),
) -> HourlySeries:
    """
    Average readings into hour-ending buckets (t - 1h, t].

    Args:
        observations: Readings in any order, possibly sub-hourly and irregular
        region_id: Region of the resulting series
        bounds: Plausibility bounds (degF); violations list observation positions (1-based)

    Returns:
        Hour-contiguous temperature series; hours without readings are MISSING
    """
    if not observations:
        raise EmptyInputError("No weather observations")

    bad = [i + 1 for i, obs in enumerate(observations) if not obs.in_bounds(*bounds)]
    if bad:
        raise WeatherValidationError(bad, bounds)

    frame = pd.DataFrame(
        {
            "timestamp": [obs.timestamp for obs in observations],
            "temperature": [obs.temperature for obs in observations],
        }
    )
    # Fixed order inside each bucket keeps the float sum independent of input order
    frame = frame.sort_values(["timestamp", "temperature"], kind="mergesort")
    hourly = (
        frame.set_index("timestamp")["temperature"]
        .resample("h", closed="right", label="right")
        .mean()
    )
    return HourlySeries.from_values(
        region_id,
        Variable.TEMPERATURE,
        hourly.index[0].to_pydatetime(),
        hourly.to_numpy(dtype=np.float64),
    )


def coverage_report(series: HourlySeries, window: DateWindow | None = None) -> CoverageReport:
    """
    Count present and MISSING hours of ``series`` over ``window``.

    Hours of the window outside the series range count as MISSING. Without a
    window the full series range is examined.
    """
    if window is None:
        if len(series) == 0:
            raise EmptyInputError(f"Series '{series.region_id}/{series.variable.value}' is empty")
        first: datetime = series.start
        last: datetime = series.end  # type: ignore[assignment]
    else:
        first, last = window.first_hour, window.last_hour

    hours = pd.date_range(first, last, freq="h")
    values = series.to_pandas().reindex(hours).to_numpy(dtype=np.float64)
    missing_mask = np.isnan(values)

    missing_days = sorted(
        {pd.Timestamp(d).date() for d in (hours - pd.Timedelta(hours=1))[missing_mask].normalize()}
    )
    return CoverageReport(
        region_id=series.region_id,
        variable=series.variable,
        first_hour=first,
        last_hour=last,
        present=int((~missing_mask).sum()),
        missing=int(missing_mask.sum()),
        longest_gap=longest_run(missing_mask),
        missing_days=missing_days,
    )


def write_normalized_csv(series: HourlySeries, stream: TextIO) -> None:
    """Write ``timestamp,value`` rows; floats use the shortest exact text, MISSING is empty."""
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(("timestamp", "value"))
    for stamp, value in zip(series.timestamps, series.values):
        writer.writerow(
            (
                stamp.strftime(Defaults.TIMESTAMP_FORMAT),
                "" if np.isnan(value) else repr(float(value)),
            )
        )


def read_normalized_csv(
    stream: TextIO,
    region_id: str,
    variable: Variable,
    source: str | None = None,
) -> HourlySeries:
    """Read a file written by :func:`write_normalized_csv`."""
    schema = GridCsvSchema(timestamp_column="timestamp", value_columns={variable: "value"})
    return parse_grid_csv(stream, schema, region_id, source=source)[variable]
