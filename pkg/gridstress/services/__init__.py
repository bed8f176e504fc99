"""Analysis services: ingest, indicators, densities and weather correction."""

from gridstress.services.backcast import BackcastService
from gridstress.services.density import compare_periods, kde, silverman_bandwidth
from gridstress.services.indicators import (
    daily_peak_trough,
    daily_totals,
    forecast_error,
    interchange_daily_mean,
    ramp_rate,
    trend_fit,
)
from gridstress.services.ingest import (
    coverage_report,
    hourly_mean_temperature,
    parse_grid_csv,
    parse_weather_csv,
)
from gridstress.services.region_data import RegionDataLoader
from gridstress.services.setpoint_search import search_setpoints
from gridstress.services.timeseries import (
    align_series,
    daily_aggregate,
    first_monday_offset,
    hour_of_week,
)
from gridstress.services.weather_correct import (
    build_design,
    change_series,
    degree_hours,
    degrees,
    fit_ols,
    predict_counterfactual,
)

__all__ = [
    "BackcastService",
    "RegionDataLoader",
    # timeseries
    "align_series",
    "daily_aggregate",
    "first_monday_offset",
    "hour_of_week",
    # ingest
    "coverage_report",
    "hourly_mean_temperature",
    "parse_grid_csv",
    "parse_weather_csv",
    # indicators
    "daily_peak_trough",
    "daily_totals",
    "forecast_error",
    "interchange_daily_mean",
    "ramp_rate",
    "trend_fit",
    # density
    "compare_periods",
    "kde",
    "silverman_bandwidth",
    # weather correction
    "build_design",
    "change_series",
    "degree_hours",
    "degrees",
    "fit_ols",
    "predict_counterfactual",
    "search_setpoints",
]
