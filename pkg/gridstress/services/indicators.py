"""Grid-stress indicators: peak/trough, ramp rate, forecast error, interchange, trends."""

from __future__ import annotations

from datetime import date

import numpy as np
from scipy import stats

from gridstress.core.constants import Defaults, Reducer, Variable
from gridstress.core.exceptions import (
    DegenerateError,
    InsufficientDataError,
    NoOverlapError,
    SeriesTypeError,
    ValidationError,
)
from gridstress.core.logging import get_logger
from gridstress.models.indicators import PeakTrough, PeakTroughTable, TrendFit
from gridstress.models.series import DailySeries, HourlySeries
from gridstress.services.timeseries import daily_aggregate, first_monday_offset, overlap

logger = get_logger("services.indicators")


def _require(series: HourlySeries | DailySeries, variable: Variable) -> None:
    if series.variable != variable:
        raise SeriesTypeError(variable.value, series.variable.value)


def daily_peak_trough(
    demand: HourlySeries,
    min_coverage: int = Defaults.MIN_COVERAGE,
) -> PeakTroughTable:
    """
    Daily maximum and minimum of hourly demand.

    Days with fewer than ``min_coverage`` present hours are left out of the
    rows and listed in ``omitted_days``.
    """
    _require(demand, Variable.DEMAND)
    if not 1 <= min_coverage <= Defaults.HOURS_PER_DAY:
        raise ValidationError(f"min_coverage must lie in 1..24, got {min_coverage}")

    peaks = daily_aggregate(demand, Reducer.MAX, min_coverage)
    troughs = daily_aggregate(demand, Reducer.MIN, min_coverage)

    table = PeakTroughTable()
    for day, peak, trough, coverage in zip(peaks.dates, peaks.values, troughs.values, peaks.coverage):
        if np.isnan(peak):
            table.omitted_days.append(day)
            continue
        table.rows.append(PeakTrough(date=day, peak=float(peak), trough=float(trough), coverage=int(coverage)))

    if table.omitted_days:
        logger.info(
            f"{demand.region_id}: {len(table.omitted_days)} day(s) below {min_coverage} present hours omitted"
        )
    return table


def ramp_rate(demand: HourlySeries) -> HourlySeries:
    """Hour-to-hour change d_k - d_(k-1); the first hour and any hour next to a gap are MISSING."""
    _require(demand, Variable.DEMAND)
    if len(demand) < 2:
        raise InsufficientDataError(
            "Ramp rate needs at least two hours", {"region": demand.region_id, "hours": len(demand)}
        )
    # NaN - x is NaN, so MISSING operands give MISSING differences
    diff = np.concatenate(([np.nan], np.diff(demand.values)))
    return demand.with_values(diff, variable=Variable.RAMP_RATE)


def forecast_error(demand: HourlySeries, forecast: HourlySeries) -> HourlySeries:
    """
    Day-ahead forecast error d_k - forecast_k over the common hours.

    Positive values mean demand was under-forecast.
    """
    _require(demand, Variable.DEMAND)
    _require(forecast, Variable.FORECAST)
    if demand.region_id != forecast.region_id:
        raise ValidationError(
            "Demand and forecast belong to different regions",
            {"demand": demand.region_id, "forecast": forecast.region_id},
        )
    common = overlap(demand, forecast)
    if common is None:
        raise NoOverlapError(
            "Demand and forecast share no hours", {"region": demand.region_id}
        )
    d, f = common
    return d.with_values(d.values - f.values, variable=Variable.FORECAST_ERROR)


def default_trend_anchor(daily: DailySeries) -> date:
    """First Monday of January of the series' first year."""
    if not daily.dates:
        raise InsufficientDataError("Daily series is empty", {"region": daily.region_id})
    return first_monday_offset(daily.dates[0].year, 1)


def trend_fit(daily: DailySeries, anchor: date | None = None) -> TrendFit:
    """
    Least-squares line through the present days against days since ``anchor``.

    Args:
        daily: Daily series; MISSING days are skipped
        anchor: Day mapped to x = 0 (defaults to the first Monday of January)

    Returns:
        TrendFit with a two-sided t-test p-value on the slope (n - 2 dof)
    """
    mask = daily.present_mask
    n = int(mask.sum())
    if n < 3:
        raise InsufficientDataError(
            "Trend fit needs at least three present days", {"region": daily.region_id, "present": n}
        )
    anchor = anchor or default_trend_anchor(daily)

    x = np.array([(d - anchor).days for d in daily.dates], dtype=np.float64)[mask]
    y = daily.values[mask]

    x_mean = x.mean()
    y_mean = y.mean()
    dx = x - x_mean
    sxx = float(dx @ dx)
    if sxx == 0.0:
        raise DegenerateError("Trend fit needs at least two distinct days")

    slope = float(dx @ (y - y_mean)) / sxx
    intercept = float(y_mean - slope * x_mean)
    residuals = y - (intercept + slope * x)
    sse = float(residuals @ residuals)
    dy = y - y_mean
    sst = float(dy @ dy)

    r_squared = 1.0 - sse / sst if sst > 0.0 else 0.0
    r_squared = min(max(r_squared, 0.0), 1.0)

    dof = n - 2
    stderr = float(np.sqrt(sse / dof / sxx))
    if stderr == 0.0:
        p_value = 0.0 if slope != 0.0 else 1.0
    else:
        t_stat = slope / stderr
        p_value = float(2.0 * stats.t.sf(abs(t_stat), dof))
    p_value = min(max(p_value, 0.0), 1.0)

    return TrendFit(
        slope=slope,
        intercept=intercept,
        r_squared=r_squared,
        p_value_slope=p_value,
        slope_stderr=stderr,
        n=n,
        anchor=anchor,
    )


def interchange_daily_mean(interchange: HourlySeries, min_coverage: int = 1) -> DailySeries:
    """Daily mean of hourly net interchange (positive = net export)."""
    _require(interchange, Variable.INTERCHANGE)
    return daily_aggregate(interchange, Reducer.MEAN, min_coverage)


def daily_totals(demand: HourlySeries, min_coverage: int = Defaults.HOURS_PER_DAY) -> DailySeries:
    """Daily energy (MWh/day); by default only fully covered days are kept."""
    _require(demand, Variable.DEMAND)
    return daily_aggregate(demand, Reducer.SUM, min_coverage)


def forecast_error_daily_mean(error: HourlySeries, min_coverage: int = 1) -> DailySeries:
    """Daily mean of the hourly forecast error."""
    _require(error, Variable.FORECAST_ERROR)
    return daily_aggregate(error, Reducer.MEAN, min_coverage)
