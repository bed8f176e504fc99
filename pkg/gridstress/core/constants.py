"""Constants, enums and defaults for gridstress."""

from enum import Enum, IntEnum


class Variable(str, Enum):
    """Kind of quantity held by a series."""

    DEMAND = "demand"
    FORECAST = "forecast"
    INTERCHANGE = "interchange"
    TEMPERATURE = "temperature"
    # Derived indicator series
    RAMP_RATE = "ramp_rate"
    FORECAST_ERROR = "forecast_error"


class Unit(str, Enum):
    """Physical unit of a series."""

    MWH = "MWh"
    DEGF = "degF"


def unit_for(variable: Variable) -> Unit:
    """Unit a series of the given variable must carry."""
    return Unit.DEGF if variable == Variable.TEMPERATURE else Unit.MWH


class Reducer(str, Enum):
    """Daily aggregation reducers."""

    SUM = "sum"
    MEAN = "mean"
    MAX = "max"
    MIN = "min"


class Criterion(str, Enum):
    """Setpoint search criteria."""

    STD_REL_ERROR = "std_rel_error"  # in-sample std of relative fitting error
    SSR = "ssr"  # sum of squared residuals


class DensityIndicator(str, Enum):
    """Indicators whose distribution the density command can estimate."""

    DEMAND = "demand"
    PEAK = "peak"
    TROUGH = "trough"
    RAMP_RATE = "ramp_rate"
    FORECAST_ERROR = "forecast_error"
    INTERCHANGE = "interchange"


class OutputFormat(str, Enum):
    """Table output formats."""

    CSV = "csv"
    JSON = "json"


class ReportFormat(str, Enum):
    """Backcast report formats."""

    MARKDOWN = "markdown"
    JSON = "json"

    @property
    def suffix(self) -> str:
        return ".md" if self is ReportFormat.MARKDOWN else ".json"


class ExitCode(IntEnum):
    """Process exit codes."""

    SUCCESS = 0
    INPUT_ERROR = 2
    INSUFFICIENT_DATA = 3
    NUMERICAL_FAILURE = 4


class Defaults:
    """Default numeric settings."""

    HOURS_PER_DAY = 24
    HOURS_PER_WEEK = 168
    N_DEGREE_TERMS = 2
    N_PARAMETERS = 170  # alpha_h, alpha_c, b_1..b_168

    MIN_COVERAGE = 20  # peak/trough day needs this many present hours
    BACKCAST_MIN_COVERAGE = 24  # daily energy totals compared only on full days
    MIN_BASE_DAYS = 7
    MAX_TRAINING_WEEKS = 6

    KDE_GRID_POINTS = 512
    KDE_GRID_PAD = 3.0  # grid spans [min - 3h, max + 3h]
    SILVERMAN_FACTOR = 0.9
    IQR_TO_SIGMA = 1.34
    EXTREME_LOW_PERCENTILE = 1.0
    EXTREME_HIGH_PERCENTILE = 99.0

    TEMP_MIN_DEGF = -60.0
    TEMP_MAX_DEGF = 140.0
    SETPOINT_MIN_DEGF = 30.0
    SETPOINT_MAX_DEGF = 100.0

    HEATING_GRID = (50.0, 70.0, 1.0)  # start, stop (inclusive), step
    COOLING_GRID = (65.0, 85.0, 1.0)

    CI95_SIGMAS = 2.0
    CI99_SIGMAS = 3.0

    TIMESTAMP_FORMAT = "%Y-%m-%d %H:%M"
    CSV_SIGNIFICANT_DIGITS = 6


class Display:
    """Constants for CLI display formatting."""

    APP_NAME = "gridstress"
    APP_DESCRIPTION = "Grid-stress indicators and weather-corrected demand from hourly BA data"

    # Status symbols
    SUCCESS = "[green]✓[/green]"
    FAILURE = "[red]✗[/red]"
    WARNING = "[yellow]![/yellow]"
    INFO = "[blue]ℹ[/blue]"

    # Table styles
    HEADER_STYLE = "bold cyan"


class Paths:
    """Output layout below the output directory."""

    NORMALIZED_DIR = "normalized"
    INDICATORS_DIR = "indicators"
    DENSITY_DIR = "density"
    BACKCAST_DIR = "backcast"
    COVERAGE_FILE = "coverage"
    TEMPERATURE_BOUNDS_FILE = "temperature_bounds.json"
    MODEL_FILE = "model.json"
    REPORT_STEM = "report"


class Columns:
    """Fixed column orders of every output table."""

    NORMALIZED = ("timestamp", "value")
    COVERAGE = ("variable", "present", "missing", "longest_gap", "missing_days")
    PEAK_TROUGH = ("date", "peak_mwh", "trough_mwh")
    HOURLY = ("timestamp", "value_mwh")
    DAILY = ("date", "value_mwh", "coverage")
    ALIGNED = ("day_offset", "hour", "value_a", "value_b")
    TREND = ("series", "anchor", "slope_mwh_per_day", "intercept_mwh", "r_squared", "p_value_slope", "n")
    DENSITY = ("x", "density_a", "density_b")
    DENSITY_SUMMARY = ("statistic", "window_a", "window_b", "delta")
    DIAGNOSTICS = ("dataset", "mean_rel_error", "std_rel_error", "r_squared", "n_rows")
    SETPOINT_SCORES = ("heating_setpoint", "cooling_setpoint", "score", "status")
    DEGREE_DAY = (
        "heating_setpoint",
        "cooling_setpoint",
        "alpha_h_mwh_per_hdd",
        "alpha_c_mwh_per_cdd",
        "baseload_mwh",
        "r_squared",
        "n_days",
    )
    CHANGE_POINTS = (
        "date",
        "observed_mwh",
        "counterfactual_mwh",
        "change_pct",
        "ci95_lo",
        "ci95_hi",
        "ci99_lo",
        "ci99_hi",
    )
