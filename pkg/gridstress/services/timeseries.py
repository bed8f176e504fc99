"""Calendar operations on hourly series: hour-of-week, alignment, daily aggregation."""

from __future__ import annotations

from datetime import date, datetime, timedelta

import numpy as np
import pandas as pd

from gridstress.core.constants import Defaults, Reducer
from gridstress.core.exceptions import AlignmentError, RangeError, ValidationError
from gridstress.core.logging import get_logger
from gridstress.models.series import AlignedRow, DailySeries, HourlySeries, hour_ending_day

logger = get_logger("services.timeseries")


def hour_of_week(timestamp: datetime) -> int:
    """
    Hour-of-week index of an hour-ending timestamp.

    Monday 01:00 maps to 1 and Monday 00:00 (Sunday's 24th hour) to 168.

    Args:
        timestamp: Local clock time on an hour boundary

    Returns:
        Integer in 1..168
    """
    if timestamp.minute or timestamp.second or timestamp.microsecond:
        raise AlignmentError(timestamp)
    k = timestamp.weekday() * Defaults.HOURS_PER_DAY + timestamp.hour
    return (k - 1) % Defaults.HOURS_PER_WEEK + 1


def hours_of_week(series: HourlySeries) -> np.ndarray:
    """Hour-of-week index of every sample of ``series``."""
    first = hour_of_week(series.start)
    return (first - 1 + np.arange(len(series))) % Defaults.HOURS_PER_WEEK + 1


def first_monday_offset(year: int, month: int) -> date:
    """Date of the first Monday of ``month`` in ``year``."""
    if not 1 <= month <= 12:
        raise ValidationError(f"Invalid month {month}")
    first = date(year, month, 1)
    return first + timedelta(days=(7 - first.weekday()) % 7)


def _month_end(year: int, month: int) -> date:
    if month == 12:
        return date(year, 12, 31)
    return date(year, month + 1, 1) - timedelta(days=1)


def _year_with_month(series: HourlySeries, month: int) -> int:
    """First year in which ``series`` has an hour-ending day in ``month``."""
    if len(series) == 0:
        raise RangeError(f"Series '{series.region_id}/{series.variable.value}' is empty")
    first_day = hour_ending_day(series.start)
    last_day = hour_ending_day(series.end)
    for year in range(first_day.year, last_day.year + 1):
        lo = max(date(year, month, 1), first_day)
        hi = min(_month_end(year, month), last_day)
        if lo <= hi:
            return year
    raise RangeError(
        f"Month {month} is absent from series '{series.region_id}/{series.variable.value}'",
        {"first_day": first_day.isoformat(), "last_day": last_day.isoformat()},
    )


def align_series(
    a: HourlySeries,
    b: HourlySeries,
    month: int,
    year_a: int | None = None,
    year_b: int | None = None,
) -> list[AlignedRow]:
    """
    Pair two series hour by hour with each year's first Monday of ``month`` at day 0.

    Args:
        a: First series
        b: Second series
        month: Month to align (1-12)
        year_a: Year of ``a`` to use; defaults to the first year covering the month
        year_b: Year of ``b`` to use; defaults to the first year covering the month

    Returns:
        Rows (day_offset, hour, value_a, value_b); values outside a series are None
    """
    if not 1 <= month <= 12:
        raise ValidationError(f"Invalid month {month}")
    year_a = year_a if year_a is not None else _year_with_month(a, month)
    year_b = year_b if year_b is not None else _year_with_month(b, month)
    for series, year in ((a, year_a), (b, year_b)):
        if len(series) == 0 or not (
            hour_ending_day(series.start) <= _month_end(year, month)
            and hour_ending_day(series.end) >= date(year, month, 1)
        ):
            raise RangeError(
                f"Month {year}-{month:02d} is absent from series '{series.region_id}/{series.variable.value}'"
            )

    monday_a = first_monday_offset(year_a, month)
    monday_b = first_monday_offset(year_b, month)
    n_days = max(
        (_month_end(year_a, month) - monday_a).days + 1,
        (_month_end(year_b, month) - monday_b).days + 1,
    )

    base_a = datetime.combine(monday_a, datetime.min.time())
    base_b = datetime.combine(monday_b, datetime.min.time())
    rows = []
    for day_offset in range(n_days):
        for hour in range(1, Defaults.HOURS_PER_DAY + 1):
            shift = timedelta(days=day_offset, hours=hour)
            rows.append(
                AlignedRow(
                    day_offset=day_offset,
                    hour=hour,
                    value_a=a.value_at(base_a + shift),
                    value_b=b.value_at(base_b + shift),
                )
            )
    return rows


def daily_aggregate(
    series: HourlySeries,
    reducer: Reducer,
    min_coverage: int,
) -> DailySeries:
    """
    Reduce an hourly series to hour-ending calendar days.

    Args:
        series: Hourly input
        reducer: sum, mean, max or min over the day's present hours
        min_coverage: Days with fewer present hours are MISSING (0-24)

    Returns:
        DailySeries with per-day coverage
    """
    if not 0 <= min_coverage <= Defaults.HOURS_PER_DAY:
        raise ValidationError(f"min_coverage must lie in 0..24, got {min_coverage}")
    reducer = Reducer(reducer)

    if len(series) == 0:
        return DailySeries(
            region_id=series.region_id,
            variable=series.variable,
            unit=series.unit,
            dates=[],
            values=np.empty(0),
            coverage=np.empty(0, dtype=np.int64),
        )

    frame = pd.DataFrame(
        {"value": series.values, "present": series.present_mask},
        index=pd.Index(series.day_labels, name="day"),
    )
    grouped = frame.groupby(level="day", sort=True)
    coverage = grouped["present"].sum().astype(np.int64)
    reduced = grouped["value"].agg(reducer.value)

    values = reduced.to_numpy(dtype=np.float64)
    # All-missing or under-covered days are MISSING whatever the reducer returned
    values[(coverage.to_numpy() == 0) | (coverage.to_numpy() < min_coverage)] = np.nan

    days = [pd.Timestamp(d).date() for d in coverage.index]
    return DailySeries(
        region_id=series.region_id,
        variable=series.variable,
        unit=series.unit,
        dates=days,
        values=values,
        coverage=coverage.to_numpy(),
    )


def overlap(a: HourlySeries, b: HourlySeries) -> tuple[HourlySeries, HourlySeries] | None:
    """Restrict two series to their common hour range; None if disjoint."""
    if len(a) == 0 or len(b) == 0:
        return None
    first = max(a.start, b.start)
    last = min(a.end, b.end)
    if last < first:
        return None
    return a.slice(first, last), b.slice(first, last)


def longest_run(mask: np.ndarray) -> int:
    """Length of the longest run of True values."""
    if mask.size == 0 or not mask.any():
        return 0
    padded = np.concatenate(([False], mask, [False])).astype(np.int8)
    edges = np.flatnonzero(np.diff(padded))
    return int((edges[1::2] - edges[::2]).max())
