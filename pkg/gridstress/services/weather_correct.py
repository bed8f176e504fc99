"""Hour-of-week degree regression: degrees, design, OLS fit, counterfactual and change series.

The model for hour k is

    d_k = alpha_h * (T^H_k)^2 + alpha_c * (T^C_k)^2 + b_w(k)

with T^H / T^C the heating / cooling degree of the hour's mean temperature and
b_w the baseload of hour-of-week w in 1..168.
"""

from __future__ import annotations

from datetime import date

import numpy as np
import pandas as pd
from scipy import linalg, stats

from gridstress.core.constants import Defaults, Variable
from gridstress.core.exceptions import (
    DegenerateError,
    InsufficientDataError,
    NoOverlapError,
    RankError,
    SeriesTypeError,
    UnderdeterminedError,
    ValidationError,
)
from gridstress.core.logging import get_logger
from gridstress.models.series import DailySeries, DateWindow, HourlySeries
from gridstress.models.weather import (
    ChangePoint,
    DegreeDayModel,
    DegreeHours,
    DegreePair,
    DegreeParams,
    DemandModel,
    DesignMatrix,
    FitDiagnostics,
)
from gridstress.services.timeseries import hours_of_week, overlap

logger = get_logger("services.weather_correct")

DEGREE_NAMES = ("alpha_h", "alpha_c")


def parameter_names() -> list[str]:
    """Names of the 170 parameters in design-column order."""
    return [*DEGREE_NAMES, *(f"b_{w}" for w in range(1, Defaults.HOURS_PER_WEEK + 1))]


def _require(series: HourlySeries, variable: Variable) -> None:
    if series.variable != variable:
        raise SeriesTypeError(variable.value, series.variable.value)


# ---------------------------------------------------------------------------
# Degree transforms
# ---------------------------------------------------------------------------


def degrees(temp: float, params: DegreeParams) -> DegreePair:
    """Cooling and heating degree of one temperature."""
    if not np.isfinite(temp):
        raise ValidationError(f"Temperature must be finite, got {temp}")
    return DegreePair(
        cooling_degree=max(temp - params.cooling_setpoint, 0.0),
        heating_degree=max(params.heating_setpoint - temp, 0.0),
    )


def degree_arrays(temps: np.ndarray, params: DegreeParams) -> tuple[np.ndarray, np.ndarray]:
    """Vectorised (heating, cooling) degrees; NaN temperatures stay NaN."""
    t = np.asarray(temps, dtype=np.float64)
    heating = np.maximum(params.heating_setpoint - t, 0.0)
    cooling = np.maximum(t - params.cooling_setpoint, 0.0)
    return heating, cooling


def degree_hours(series: HourlySeries, params: DegreeParams) -> DegreeHours:
    """Per-hour degrees of a temperature series with CDH/HDH totals over present hours."""
    _require(series, Variable.TEMPERATURE)
    heating, cooling = degree_arrays(series.values, params)
    mask = series.present_mask
    return DegreeHours(
        cooling=cooling,
        heating=heating,
        cdh=float(cooling[mask].sum()),
        hdh=float(heating[mask].sum()),
        n_hours=int(mask.sum()),
        n_missing=int((~mask).sum()),
    )


# ---------------------------------------------------------------------------
# Design and fit
# ---------------------------------------------------------------------------


def build_design(
    temps: HourlySeries,
    demand: HourlySeries,
    params: DegreeParams,
    log_warnings: bool = True,
) -> DesignMatrix:
    """
    Regression rows for every hour where both demand and temperature are present.

    Args:
        temps: Hourly mean temperature (degF)
        demand: Hourly demand (MWh)
        params: Setpoints of the degree transforms
        log_warnings: Emit coverage warnings (disabled inside the setpoint search)

    Returns:
        DesignMatrix with n x 170 rows
    """
    _require(temps, Variable.TEMPERATURE)
    _require(demand, Variable.DEMAND)

    common = overlap(temps, demand)
    if common is None:
        raise NoOverlapError(
            "Temperature and demand share no hours",
            {"region": demand.region_id},
        )
    t, d = common
    mask = t.present_mask & d.present_mask
    n = int(mask.sum())
    if n == 0:
        raise NoOverlapError(
            "Temperature and demand have no hour where both are present",
            {"region": demand.region_id},
        )

    heating, cooling = degree_arrays(t.values[mask], params)
    how = hours_of_week(t)[mask]

    phi = np.zeros((n, Defaults.N_PARAMETERS), dtype=np.float64)
    phi[:, 0] = heating**2
    phi[:, 1] = cooling**2
    phi[np.arange(n), 1 + how] = 1.0

    timestamps = [ts.to_pydatetime() for ts in t.timestamps[mask]]
    design = DesignMatrix(
        phi=phi,
        response=d.values[mask].copy(),
        timestamps=timestamps,
        hour_of_week=how,
        degree_params=params,
        region_id=demand.region_id,
    )

    if log_warnings:
        if n < Defaults.HOURS_PER_WEEK:
            logger.warning(f"{demand.region_id}: only {n} usable hours, less than one week")
        window = design.window
        if window is not None and window.n_days > 7 * Defaults.MAX_TRAINING_WEEKS:
            logger.warning(
                f"{demand.region_id}: training span of {window.n_days} days exceeds "
                f"{Defaults.MAX_TRAINING_WEEKS} weeks; constant weekly baseload is unlikely to hold"
            )
    return design


def _predict_values(
    model: DemandModel,
    heating_sq: np.ndarray,
    cooling_sq: np.ndarray,
    how: np.ndarray,
) -> np.ndarray:
    """alpha_h * H^2 + alpha_c * C^2 + b_w; the single evaluation path for fitted and predicted values."""
    baseload = np.asarray(model.baseload, dtype=np.float64)
    return model.alpha_h * heating_sq + model.alpha_c * cooling_sq + baseload[how - 1]


def _diagnostics(response: np.ndarray, fitted: np.ndarray) -> FitDiagnostics:
    residuals = response - fitted
    nonzero = response != 0.0
    rel = residuals[nonzero] / response[nonzero]
    if rel.size == 0:
        raise DegenerateError("Relative error undefined: every observed demand is zero")

    ssr = float(residuals @ residuals)
    centered = response - response.mean()
    sst = float(centered @ centered)
    if sst > 0.0:
        r_squared = 1.0 - ssr / sst
    else:
        r_squared = 1.0 if ssr == 0.0 else 0.0

    skew: float | None = None
    kurt: float | None = None
    scale = float(np.abs(response).max())
    if residuals.size > 3 and float(np.std(residuals)) > 1e-9 * max(scale, 1.0):
        skew = float(stats.skew(residuals))
        kurt = float(stats.kurtosis(residuals, fisher=True))

    return FitDiagnostics(
        mean_rel_error=float(rel.mean()),
        std_rel_error=float(np.std(rel, ddof=1)) if rel.size > 1 else 0.0,
        r_squared=min(r_squared, 1.0),
        residuals=residuals,
        fitted=fitted,
        n_rows=int(response.size),
        ssr=ssr,
        residual_skew=skew,
        residual_excess_kurtosis=kurt,
    )


def fit_ols(
    design: DesignMatrix,
    response: np.ndarray | None = None,
    log_warnings: bool = True,
) -> tuple[DemandModel, FitDiagnostics]:
    """
    Least-squares fit of the 170-parameter model through an economic QR of the design.

    Degree columns that are zero on every row are pinned to 0 and left out of the
    solve. An hour-of-week with no row is a RankError.

    Args:
        design: Output of :func:`build_design`
        response: Demand per row; defaults to ``design.response``
        log_warnings: Emit parameter warnings (disabled inside the setpoint search)

    Returns:
        (DemandModel, in-sample FitDiagnostics with standard errors)
    """
    y = design.response if response is None else np.asarray(response, dtype=np.float64)
    n = design.n_rows
    if y.shape != (n,):
        raise ValidationError("Response length must match the design rows", {"rows": n, "response": y.shape})
    if n < Defaults.N_PARAMETERS:
        raise UnderdeterminedError(n, Defaults.N_PARAMETERS, {"region": design.region_id})

    counts = np.bincount(design.hour_of_week, minlength=Defaults.HOURS_PER_WEEK + 1)[1:]
    unseen = (np.flatnonzero(counts == 0) + 1).tolist()
    if unseen:
        raise RankError(unseen, details={"region": design.region_id})

    names = parameter_names()
    active = [j for j in range(Defaults.N_DEGREE_TERMS) if design.phi[:, j].any()]
    pinned = [names[j] for j in range(Defaults.N_DEGREE_TERMS) if j not in active]
    columns = [*active, *range(Defaults.N_DEGREE_TERMS, Defaults.N_PARAMETERS)]
    if pinned and log_warnings:
        logger.warning(
            f"{design.region_id}: no temperature beyond the setpoint for {', '.join(pinned)}; "
            "coefficient fixed at 0"
        )

    x = design.phi[:, columns]
    q, r = linalg.qr(x, mode="economic")
    diag = np.abs(np.diag(r))
    if diag.min() <= np.finfo(np.float64).eps * diag.max() * max(x.shape):
        raise RankError(message="Design matrix is numerically rank deficient", details={"region": design.region_id})

    coef = linalg.solve_triangular(r, q.T @ y)
    theta = np.zeros(Defaults.N_PARAMETERS, dtype=np.float64)
    theta[columns] = coef

    dof = n - len(columns)
    residual_ss = float(np.sum((y - x @ coef) ** 2))
    r_inv = linalg.solve_triangular(r, np.eye(len(columns)))
    sigma2 = residual_ss / dof if dof > 0 else np.nan
    stderr = np.zeros(Defaults.N_PARAMETERS, dtype=np.float64)
    stderr[columns] = np.sqrt(sigma2 * np.einsum("ij,ij->i", r_inv, r_inv))

    model = DemandModel.from_theta(
        theta,
        degree_params=design.degree_params,
        n_train=n,
        condition_estimate=float(np.linalg.cond(r)),
        region_id=design.region_id,
        training_window=design.window,
    )

    negative = [names[j] for j in np.flatnonzero(theta < 0.0)]
    if negative and log_warnings:
        logger.warning(f"{design.region_id}: negative estimate(s) for {', '.join(negative[:10])}")

    fitted = _predict_values(model, design.heating_sq, design.cooling_sq, design.hour_of_week)
    diagnostics = _diagnostics(y, fitted).model_copy(
        update={
            "standard_errors": stderr.tolist(),
            "negative_parameters": negative,
            "pinned_parameters": pinned,
        }
    )
    logger.debug(
        f"{design.region_id}: fit {design.degree_params.heating_setpoint:g}/"
        f"{design.degree_params.cooling_setpoint:g} on {n} rows, R2={diagnostics.r_squared:.4f}"
    )
    return model, diagnostics


def predict_counterfactual(model: DemandModel, temps: HourlySeries) -> HourlySeries:
    """Demand the model predicts under ``temps``; MISSING temperatures give MISSING demand."""
    _require(temps, Variable.TEMPERATURE)
    if len(temps) == 0:
        return temps.with_values(np.empty(0), variable=Variable.DEMAND)
    heating, cooling = degree_arrays(temps.values, model.degree_params)
    predicted = _predict_values(model, heating**2, cooling**2, hours_of_week(temps))
    return HourlySeries.from_values(
        model.region_id or temps.region_id,
        Variable.DEMAND,
        temps.start,
        predicted,
    )


def evaluate_model(model: DemandModel, temps: HourlySeries, demand: HourlySeries) -> FitDiagnostics:
    """Error statistics of a fitted model on another dataset (e.g. a held-out window)."""
    design = build_design(temps, demand, model.degree_params, log_warnings=False)
    fitted = _predict_values(model, design.heating_sq, design.cooling_sq, design.hour_of_week)
    return _diagnostics(design.response, fitted)


# ---------------------------------------------------------------------------
# Daily change and intervals
# ---------------------------------------------------------------------------


def base_mean(daily: DailySeries, base_window: DateWindow) -> float:
    """Mean daily value over ``base_window``; needs at least a week of present days."""
    values = daily.window(base_window).values_present()
    if values.size < Defaults.MIN_BASE_DAYS:
        raise InsufficientDataError(
            f"Base window '{base_window.label}' has {values.size} covered day(s); "
            f"at least {Defaults.MIN_BASE_DAYS} are needed",
            {"region": daily.region_id},
        )
    mean = float(values.mean())
    if mean <= 0.0:
        raise DegenerateError(f"Base window '{base_window.label}' mean is not positive", {"mean": mean})
    return mean


def _paired(a: DailySeries, b: DailySeries) -> list[tuple[date, float, float]]:
    """Days where both series are present, in date order."""
    other = b.value_map()
    out = []
    for day, value in zip(a.dates, a.values):
        counterpart = other.get(day)
        if np.isnan(value) or counterpart is None:
            continue
        out.append((day, float(value), counterpart))
    return out


def daily_residual_sigma(
    observed_daily: DailySeries,
    predicted_daily: DailySeries,
    base_mean_value: float,
) -> float:
    """Std (ddof=1) of daily observed - predicted, as a fraction of the base mean."""
    if not base_mean_value > 0.0:
        raise ValidationError(f"Base mean must be positive, got {base_mean_value}")
    pairs = _paired(observed_daily, predicted_daily)
    if len(pairs) < 2:
        raise InsufficientDataError(
            "Daily residual spread needs at least two days with both values",
            {"region": observed_daily.region_id, "days": len(pairs)},
        )
    errors = np.array([o - p for _, o, p in pairs])
    return float(np.std(errors, ddof=1)) / base_mean_value


def change_series(
    observed_daily: DailySeries,
    counterfactual_daily: DailySeries,
    base_window: DateWindow,
    sigma_daily: float,
    base_series: DailySeries,
) -> list[ChangePoint]:
    """
    Weather-corrected daily change as percent of the base-window mean.

    The denominator comes from ``base_series`` alone, so swapping observed and
    counterfactual negates every change.

    Args:
        observed_daily: Observed daily energy
        counterfactual_daily: Predicted daily energy under observed weather
        base_window: Days whose mean normalises the change
        sigma_daily: Std of daily prediction error, as a fraction of the base mean
        base_series: Observed daily energy covering ``base_window``

    Returns:
        ChangePoints with ci95 = change +/- 2 sigma and ci99 = change +/- 3 sigma (percent)
    """
    if not (np.isfinite(sigma_daily) and sigma_daily >= 0.0):
        raise ValidationError(f"sigma_daily must be finite and non-negative, got {sigma_daily}")
    mean = base_mean(base_series, base_window)
    sigma_pct = 100.0 * sigma_daily

    points = []
    for day, observed, counterfactual in _paired(observed_daily, counterfactual_daily):
        change = 100.0 * (observed - counterfactual) / mean
        points.append(
            ChangePoint(
                date=day,
                observed=observed,
                counterfactual=counterfactual,
                change_pct=change,
                ci95=(change - Defaults.CI95_SIGMAS * sigma_pct, change + Defaults.CI95_SIGMAS * sigma_pct),
                ci99=(change - Defaults.CI99_SIGMAS * sigma_pct, change + Defaults.CI99_SIGMAS * sigma_pct),
            )
        )
    return points


# ---------------------------------------------------------------------------
# Daily degree-day baseline
# ---------------------------------------------------------------------------


def daily_degree_days(temps: HourlySeries, params: DegreeParams) -> tuple[list[date], np.ndarray, np.ndarray]:
    """CDD and HDD of every fully covered hour-ending day."""
    _require(temps, Variable.TEMPERATURE)
    hours = degree_hours(temps, params)
    frame = pd.DataFrame(
        {"cooling": hours.cooling, "heating": hours.heating, "present": temps.present_mask},
        index=pd.Index(temps.day_labels, name="day"),
    )
    grouped = frame.groupby(level="day", sort=True)
    totals = grouped[["cooling", "heating"]].sum()
    full = (grouped["present"].sum() >= Defaults.HOURS_PER_DAY).to_numpy()

    days = [pd.Timestamp(d).date() for d in totals.index[full]]
    cdd = totals["cooling"].to_numpy()[full] / Defaults.HOURS_PER_DAY
    hdd = totals["heating"].to_numpy()[full] / Defaults.HOURS_PER_DAY
    return days, cdd, hdd


def fit_degree_day_model(
    daily_demand: DailySeries,
    temps: HourlySeries,
    params: DegreeParams,
) -> DegreeDayModel:
    """Least-squares fit of daily energy = alpha_c * CDD + alpha_h * HDD + b."""
    days, cdd, hdd = daily_degree_days(temps, params)
    demand = daily_demand.value_map()
    rows = [(c, h, demand[d]) for d, c, h in zip(days, cdd, hdd) if demand.get(d) is not None]
    if len(rows) < 3:
        raise InsufficientDataError(
            "Degree-day model needs at least three fully covered days",
            {"region": daily_demand.region_id, "days": len(rows)},
        )
    data = np.array(rows, dtype=np.float64)
    y = data[:, 2]

    # Columns: alpha_h, alpha_c, b; degree columns without excitation are pinned to 0
    x_full = np.column_stack([data[:, 1], data[:, 0], np.ones(len(rows))])
    active = [j for j in (0, 1) if x_full[:, j].any()] + [2]
    coef, _, rank, _ = linalg.lstsq(x_full[:, active], y)
    if rank < len(active):
        raise RankError(message="Degree-day design is rank deficient", details={"region": daily_demand.region_id})
    theta = np.zeros(3)
    theta[active] = coef

    residuals = y - x_full @ theta
    centered = y - y.mean()
    sst = float(centered @ centered)
    ssr = float(residuals @ residuals)
    r_squared = 1.0 - ssr / sst if sst > 0.0 else (1.0 if ssr == 0.0 else 0.0)

    return DegreeDayModel(
        alpha_h=float(theta[0]),
        alpha_c=float(theta[1]),
        baseload=float(theta[2]),
        degree_params=params,
        r_squared=min(r_squared, 1.0),
        n_days=len(rows),
    )
