"""Tests for the hour-of-week degree regression and weather correction."""

from datetime import date, datetime, timedelta

import numpy as np
import pytest

from gridstress.core.constants import Unit, Variable
from gridstress.core.exceptions import (
    InsufficientDataError,
    RankError,
    UnderdeterminedError,
    ValidationError,
)
from gridstress.models.series import DailySeries
from gridstress.models.weather import DegreeParams, DemandModel
from gridstress.services.timeseries import hours_of_week
from gridstress.services.weather_correct import (
    base_mean,
    build_design,
    change_series,
    daily_degree_days,
    daily_residual_sigma,
    degree_hours,
    degrees,
    evaluate_model,
    fit_degree_day_model,
    fit_ols,
    parameter_names,
    predict_counterfactual,
)

PARAMS = DegreeParams(heating_setpoint=60.0, cooling_setpoint=70.0)


def _daily(values, start=date(2020, 3, 2)):
    n = len(values)
    return DailySeries(
        region_id="TST",
        variable=Variable.DEMAND,
        unit=Unit.MWH,
        dates=[start + timedelta(days=i) for i in range(n)],
        values=values,
        coverage=[24] * n,
    )


class TestDegrees:
    """Tests for the degree transforms."""

    def test_hot_hour(self):
        pair = degrees(80.0, PARAMS)
        assert (pair.cooling_degree, pair.heating_degree) == (10.0, 0.0)

    def test_cold_hour(self):
        pair = degrees(50.0, PARAMS)
        assert (pair.cooling_degree, pair.heating_degree) == (0.0, 10.0)

    def test_deadband_hour(self):
        pair = degrees(65.0, PARAMS)
        assert (pair.cooling_degree, pair.heating_degree) == (0.0, 0.0)

    def test_non_finite_temperature(self):
        with pytest.raises(ValidationError):
            degrees(float("nan"), PARAMS)

    def test_constant_warm_day(self, hourly):
        temps = hourly(np.full(24, 72.0), variable=Variable.TEMPERATURE)
        hours = degree_hours(temps, PARAMS)
        assert hours.cdh == 48.0
        assert hours.hdh == 0.0
        days, cdd, hdd = daily_degree_days(temps, PARAMS)
        assert days == [date(2020, 1, 1)]
        assert cdd.tolist() == [2.0]
        assert hdd.tolist() == [0.0]

    def test_partly_warm_day(self, hourly):
        values = np.full(24, 70.0)
        values[10:16] = 72.0
        temps = hourly(values, variable=Variable.TEMPERATURE)
        assert degree_hours(temps, PARAMS).cdh == 12.0
        _, cdd, _ = daily_degree_days(temps, PARAMS)
        assert cdd.tolist() == [0.5]

    def test_missing_hours_excluded(self, hourly):
        values = np.full(24, 50.0)
        values[:4] = np.nan
        temps = hourly(values, variable=Variable.TEMPERATURE)
        hours = degree_hours(temps, PARAMS)
        assert hours.hdh == 200.0
        assert (hours.n_hours, hours.n_missing) == (20, 4)
        days, _, _ = daily_degree_days(temps, PARAMS)
        assert days == []

    def test_per_hour_pairs(self, hourly):
        temps = hourly([80.0, np.nan, 55.0, 65.0], variable=Variable.TEMPERATURE)
        pairs = degree_hours(temps, PARAMS).pairs()
        assert pairs[1] is None
        assert [(p.cooling_degree, p.heating_degree) for p in (pairs[0], pairs[2], pairs[3])] == [
            (10.0, 0.0),
            (0.0, 5.0),
            (0.0, 0.0),
        ]
    """Tests for the regression design."""

    def test_shape_and_one_hot_counts(self, planted):
        data = planted(days=14)
        design = build_design(data.temps, data.demand, data.params)
        assert design.phi.shape == (168 * 2, 170)
        assert design.phi[:, 2:].sum(axis=0).tolist() == [2.0] * 168
        assert np.all(design.phi[:, 2:].sum(axis=1) == 1.0)

    def test_degree_columns_exclusive(self, planted):
        data = planted(days=14)
        design = build_design(data.temps, data.demand, data.params)
        assert np.all(design.phi[:, 0] * design.phi[:, 1] == 0.0)
        assert design.phi[:, 0].any() and design.phi[:, 1].any()

    def test_rows_need_both_values(self, planted):
        data = planted(days=14)
        demand = data.demand.values.copy()
        demand[5] = np.nan
        temps = data.temps.values.copy()
        temps[9] = np.nan
        design = build_design(
            data.temps.with_values(temps),
            data.demand.with_values(demand),
            data.params,
        )
        assert design.n_rows == 168 * 2 - 2

    def test_deadband_monday_row_is_pure_baseload(self, hourly):
        start = datetime(2020, 1, 6, 1)
        temps = hourly([65.0, 73.0], start=start, variable=Variable.TEMPERATURE)
        demand = hourly([1000.0, 1100.0], start=start)
        design = build_design(temps, demand, PARAMS, log_warnings=False)
        expected = np.zeros(170)
        expected[2] = 1.0
        assert np.array_equal(design.phi[0], expected)
        assert design.hour_of_week.tolist() == [1, 2]

    def test_three_degrees_above_cooling_setpoint(self, hourly):
        start = datetime(2020, 1, 6, 1)
        temps = hourly([65.0, 73.0], start=start, variable=Variable.TEMPERATURE)
        demand = hourly([1000.0, 1100.0], start=start)
        design = build_design(temps, demand, PARAMS, log_warnings=False)
        assert design.phi[1, :2].tolist() == [0.0, 9.0]
        assert design.phi[1, 3] == 1.0

    def test_parameter_names(self):
        names = parameter_names()
        assert len(names) == 170
        assert names[:3] == ["alpha_h", "alpha_c", "b_1"]
        assert names[-1] == "b_168"


class TestFitOls:
    """Tests for the least-squares fit."""

    def test_exact_recovery(self, planted):
        data = planted()
        model, diagnostics = fit_ols(build_design(data.temps, data.demand, data.params))
        np.testing.assert_allclose(model.theta, data.theta, rtol=1e-8)
        assert diagnostics.r_squared == pytest.approx(1.0, abs=1e-10)
        assert model.n_train == 56 * 24
        assert model.training_window is not None
        assert model.training_window.start == date(2020, 1, 6)

    def test_noisy_recovery_within_standard_errors(self, planted):
        inside = 0
        total = 0
        degree_hits = 0
        for seed in range(20):
            data = planted(noise=50.0, seed=seed)
            model, diagnostics = fit_ols(build_design(data.temps, data.demand, data.params))
            se = np.array(diagnostics.standard_errors)
            within = np.abs(model.theta - data.theta) <= 3.0 * se
            inside += int(within.sum())
            total += within.size
            degree_hits += int(within[0] and within[1])
        assert inside / total >= 0.99
        assert degree_hits >= 19

    def test_residuals_orthogonal_to_design(self, planted):
        data = planted(noise=50.0, seed=3)
        design = build_design(data.temps, data.demand, data.params)
        model, diagnostics = fit_ols(design)
        scale = np.abs(design.phi).max() * np.abs(design.response).max() * design.n_rows
        assert np.abs(design.phi.T @ diagnostics.residuals).max() <= 1e-9 * scale

        lhs = design.phi.T @ design.phi @ model.theta
        rhs = design.phi.T @ design.response
        np.testing.assert_allclose(lhs, rhs, rtol=1e-6)

    def test_counterfactual_matches_fitted_bit_for_bit(self, planted):
        data = planted(noise=20.0, seed=1)
        model, diagnostics = fit_ols(build_design(data.temps, data.demand, data.params))
        predicted = predict_counterfactual(model, data.temps)
        assert np.array_equal(predicted.values, diagnostics.fitted)

    def test_constant_shift_moves_baseload(self, planted):
        data = planted(noise=20.0, seed=2)
        shifted = data.demand.with_values(data.demand.values + 250.0)
        model, _ = fit_ols(build_design(data.temps, data.demand, data.params))
        moved, _ = fit_ols(build_design(data.temps, shifted, data.params))
        np.testing.assert_allclose(moved.baseload, np.array(model.baseload) + 250.0, rtol=1e-9)
        assert moved.alpha_h == pytest.approx(model.alpha_h, rel=1e-7)
        assert moved.alpha_c == pytest.approx(model.alpha_c, rel=1e-7)

    def test_one_week_is_underdetermined(self, planted):
        data = planted(days=7)
        with pytest.raises(UnderdeterminedError) as exc:
            fit_ols(build_design(data.temps, data.demand, data.params))
        assert (exc.value.n_rows, exc.value.n_params) == (168, 170)

    def test_unseen_hour_of_week(self, planted):
        data = planted()
        demand = data.demand.values.copy()
        demand[hours_of_week(data.demand) == 1] = np.nan
        design = build_design(data.temps, data.demand.with_values(demand), data.params)
        with pytest.raises(RankError) as exc:
            fit_ols(design)
        assert exc.value.missing_hours == [1]

    def test_unexcited_degree_terms_pinned(self, planted):
        data = planted()
        wide = DegreeParams(heating_setpoint=30.0, cooling_setpoint=100.0)
        model, diagnostics = fit_ols(build_design(data.temps, data.demand, wide))
        assert (model.alpha_h, model.alpha_c) == (0.0, 0.0)
        assert diagnostics.pinned_parameters == ["alpha_h", "alpha_c"]
        assert diagnostics.standard_errors[0] == 0.0

    def test_response_length_checked(self, planted):
        data = planted(days=14)
        design = build_design(data.temps, data.demand, data.params)
        with pytest.raises(ValidationError):
            fit_ols(design, np.ones(3))


class TestPrediction:
    """Tests for counterfactual prediction and out-of-sample evaluation."""

    def test_missing_temperature_gives_missing_demand(self, planted):
        data = planted()
        model, _ = fit_ols(build_design(data.temps, data.demand, data.params))
        temps = data.temps.values.copy()
        temps[4] = np.nan
        predicted = predict_counterfactual(model, data.temps.with_values(temps))
        assert predicted.variable == Variable.DEMAND
        assert predicted.to_list()[4] is None
        assert predicted.n_present == len(temps) - 1

    def test_closed_form_predictions(self, hourly):
        baseload = [1000.0 + w for w in range(1, 169)]
        model = DemandModel(
            alpha_h=5.0,
            alpha_c=8.0,
            baseload=baseload,
            degree_params=PARAMS,
            n_train=170,
            condition_estimate=1.0,
        )
        temps = hourly([65.0, 72.0, 57.0], start=datetime(2020, 1, 6, 1), variable=Variable.TEMPERATURE)
        predicted = predict_counterfactual(model, temps).to_list()
        assert predicted[0] == baseload[0]
        assert predicted[1] == pytest.approx(baseload[1] + 4.0 * 8.0)
        assert predicted[2] == pytest.approx(baseload[2] + 9.0 * 5.0)

    def test_evaluate_on_training_data(self, planted):
        data = planted(noise=30.0, seed=4)
        model, diagnostics = fit_ols(build_design(data.temps, data.demand, data.params))
        again = evaluate_model(model, data.temps, data.demand)
        assert np.array_equal(again.fitted, diagnostics.fitted)
        assert again.std_rel_error == diagnostics.std_rel_error
        assert again.standard_errors == []


class TestModelJson:
    """Tests for model persistence."""

    def test_round_trip_bit_exact(self, planted, tmp_path):
        data = planted(noise=40.0, seed=5)
        model, _ = fit_ols(build_design(data.temps, data.demand, data.params))
        restored = DemandModel.from_json(model.to_json())
        assert np.array_equal(restored.theta, model.theta)
        assert restored.degree_params == model.degree_params

        path = tmp_path / "nested" / "model.json"
        model.save(path)
        assert np.array_equal(DemandModel.load(path).theta, model.theta)


class TestChangeSeries:
    """Tests for the daily change and its intervals."""

    @pytest.fixture
    def base(self, window):
        return window(date(2020, 3, 2), date(2020, 3, 8), "base")

    def test_known_intervals(self, base):
        base_series = _daily(np.full(7, 1000.0))
        observed = _daily([1098.0], start=date(2020, 4, 1))
        counterfactual = _daily([1000.0], start=date(2020, 4, 1))
        points = change_series(observed, counterfactual, base, 0.039, base_series=base_series)
        assert len(points) == 1
        point = points[0]
        assert point.change_pct == pytest.approx(9.8)
        assert point.ci95 == pytest.approx((2.0, 17.6))
        assert point.ci99 == pytest.approx((-1.9, 21.5))

    def test_zero_sigma_collapses_intervals(self, base):
        series = _daily(np.full(7, 1000.0))
        points = change_series(series, series, base, 0.0, series)
        assert all(p.ci95 == (0.0, 0.0) == p.ci99 for p in points)
        assert [p.change_pct for p in points] == [0.0] * 7

    def test_swapping_inputs_negates_change(self, base):
        base_series = _daily(np.full(7, 1100.0))
        observed = _daily(np.full(7, 1100.0))
        counterfactual = _daily(np.full(7, 1000.0))
        forward = change_series(observed, counterfactual, base, 0.02, base_series)
        swapped = change_series(counterfactual, observed, base, 0.02, base_series)
        assert [p.change_pct for p in swapped] == [-p.change_pct for p in forward]
        assert forward[0].change_pct == pytest.approx(100.0 / 11.0)

    def test_doubling_base_mean_halves_change(self, base):
        observed = _daily(np.full(7, 1100.0))
        counterfactual = _daily(np.full(7, 1000.0))
        single = change_series(observed, counterfactual, base, 0.0, _daily(np.full(7, 1000.0)))
        double = change_series(observed, counterfactual, base, 0.0, _daily(np.full(7, 2000.0)))
        assert [p.change_pct for p in single] == pytest.approx([10.0] * 7)
        assert [p.change_pct for p in double] == pytest.approx([5.0] * 7)

    def test_negative_sigma_rejected(self, base):
        series = _daily(np.full(7, 1000.0))
        with pytest.raises(ValidationError):
            change_series(series, series, base, -0.01, series)

    def test_missing_days_skipped(self, base):
        observed = _daily([1000.0, np.nan, 1000.0, 1000.0, 1000.0, 1000.0, 1000.0, 1000.0])
        counterfactual = _daily(np.full(8, 990.0))
        points = change_series(observed, counterfactual, base, 0.01, base_series=_daily(np.full(7, 1000.0)))
        assert date(2020, 3, 3) not in [p.date for p in points]
        assert len(points) == 7

    def test_base_mean_needs_a_week(self, window):
        with pytest.raises(InsufficientDataError):
            base_mean(_daily(np.full(6, 1000.0)), window(date(2020, 3, 2), date(2020, 3, 8)))

    def test_base_mean(self, base):
        assert base_mean(_daily(np.arange(1.0, 8.0) * 100.0), base) == 400.0

    def test_daily_residual_sigma(self):
        sigma = daily_residual_sigma(_daily([1000.0, 1010.0, 990.0]), _daily(np.full(3, 1000.0)), 1000.0)
        assert sigma == pytest.approx(0.01)

    def test_residual_sigma_needs_two_days(self):
        with pytest.raises(InsufficientDataError):
            daily_residual_sigma(_daily([1000.0]), _daily([990.0]), 1000.0)


class TestDegreeDayModel:
    """Tests for the daily degree-day baseline."""

    def test_recovers_planted_coefficients(self, planted):
        data = planted()
        days, cdd, hdd = daily_degree_days(data.temps, data.params)
        energy = 5000.0 + 40.0 * cdd + 30.0 * hdd
        daily = _daily(energy, start=days[0])
        fit = fit_degree_day_model(daily, data.temps, data.params)
        assert fit.alpha_c == pytest.approx(40.0, rel=1e-8)
        assert fit.alpha_h == pytest.approx(30.0, rel=1e-8)
        assert fit.baseload == pytest.approx(5000.0, rel=1e-10)
        assert fit.r_squared == pytest.approx(1.0)
        assert fit.n_days == len(days)

    def test_needs_three_days(self, planted):
        data = planted(days=14)
        with pytest.raises(InsufficientDataError):
            fit_degree_day_model(_daily([1.0, 2.0], start=date(2020, 1, 6)), data.temps, data.params)
