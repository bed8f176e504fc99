"""End-to-end weather-corrected backcast of one region."""

from __future__ import annotations

from gridstress.core.config import ModelOptions
from gridstress.core.constants import Defaults
from gridstress.core.exceptions import ConfigurationError, GridStressError, RangeError
from gridstress.core.logging import region_logger
from gridstress.models.backcast import BackcastResult, BackcastWindows
from gridstress.models.series import DateWindow, HourlySeries
from gridstress.models.weather import DegreeDayModel, DegreeParams
from gridstress.services.indicators import daily_totals
from gridstress.services.setpoint_search import search_setpoints
from gridstress.services.weather_correct import (
    base_mean,
    build_design,
    change_series,
    daily_residual_sigma,
    evaluate_model,
    fit_degree_day_model,
    fit_ols,
    predict_counterfactual,
)


def _in_window(series: HourlySeries, window: DateWindow, role: str) -> HourlySeries:
    if not series.overlaps(window):
        raise RangeError(
            f"{role} window '{window.label}' is outside the {series.variable.value} series",
            {"region": series.region_id},
        )
    return series.window(window)


class BackcastService:
    """Trains the hour-of-week model before an event and predicts demand during it."""

    def __init__(self, options: ModelOptions, max_workers: int = 1) -> None:
        """
        Initialize the service.

        Args:
            options: Model options from the analysis config
            max_workers: Worker threads for the setpoint search
        """
        self.options = options
        self.max_workers = max_workers

    def run(
        self,
        temps: HourlySeries,
        demand: HourlySeries,
        windows: BackcastWindows,
    ) -> BackcastResult:
        """
        Fit on ``windows.train``, predict ``windows.event`` and report daily change vs ``windows.base``.

        Args:
            temps: Hourly mean temperature covering every window
            demand: Hourly demand covering every window
            windows: Train, event, base and optional validation windows

        Returns:
            BackcastResult
        """
        region = demand.region_id
        log = region_logger("services.backcast", region)
        if windows.train.overlaps(windows.event):
            raise ConfigurationError(
                f"Train window '{windows.train.label}' overlaps event window '{windows.event.label}'"
            )

        train_t = _in_window(temps, windows.train, "Train")
        train_d = _in_window(demand, windows.train, "Train")

        search = None
        if self.options.fixed_setpoints is not None:
            params = self.options.fixed_setpoints
            log.info(f"fixed setpoints {params.heating_setpoint:g}/{params.cooling_setpoint:g}")
        else:
            search = search_setpoints(
                train_t,
                train_d,
                self.options.heating_grid.values(),
                self.options.cooling_grid.values(),
                self.options.criterion,
                max_workers=self.max_workers,
            )
            params = search.best

        model, diagnostics = fit_ols(build_design(train_t, train_d, params))
        log.info(
            f"in-sample mean rel. error {diagnostics.mean_rel_error:.2%}, "
            f"std {diagnostics.std_rel_error:.2%}, R2 {diagnostics.r_squared:.3f}"
        )

        observed_all = daily_totals(demand, Defaults.BACKCAST_MIN_COVERAGE)
        mean = base_mean(observed_all, windows.base)

        validation = None
        if windows.validate_window is not None:
            sigma_t = _in_window(temps, windows.validate_window, "Validation")
            sigma_d = _in_window(demand, windows.validate_window, "Validation")
            validation = evaluate_model(model, sigma_t, sigma_d)
            sigma_source = "validation"
        else:
            log.warning("no validation window; daily error spread taken in-sample (intervals too narrow)")
            sigma_t, sigma_d = train_t, train_d
            sigma_source = "in-sample"

        sigma = daily_residual_sigma(
            daily_totals(sigma_d, Defaults.BACKCAST_MIN_COVERAGE),
            daily_totals(predict_counterfactual(model, sigma_t), Defaults.BACKCAST_MIN_COVERAGE),
            mean,
        )

        event_t = _in_window(temps, windows.event, "Event")
        counterfactual = predict_counterfactual(model, event_t)
        counterfactual_daily = daily_totals(counterfactual, Defaults.BACKCAST_MIN_COVERAGE)
        observed_daily = daily_totals(_in_window(demand, windows.event, "Event"), Defaults.BACKCAST_MIN_COVERAGE)
        changes = change_series(observed_daily, counterfactual_daily, windows.base, sigma, observed_all)
        if not changes:
            log.warning("event window has no fully covered day with both values")

        return BackcastResult(
            region_id=region,
            windows=windows,
            model=model,
            diagnostics=diagnostics,
            validation=validation,
            search=search,
            degree_day_model=self._degree_day_baseline(train_t, train_d, params),
            counterfactual_hourly=counterfactual,
            observed_daily=observed_daily,
            counterfactual_daily=counterfactual_daily,
            changes=changes,
            base_mean=mean,
            sigma_daily=sigma,
            sigma_source=sigma_source,
        )

    @staticmethod
    def _degree_day_baseline(
        temps: HourlySeries,
        demand: HourlySeries,
        params: DegreeParams,
    ) -> DegreeDayModel | None:
        try:
            return fit_degree_day_model(daily_totals(demand), temps, params)
        except GridStressError as e:
            log = region_logger("services.backcast", demand.region_id)
            log.warning(f"degree-day baseline skipped: {e.message}")
            return None
