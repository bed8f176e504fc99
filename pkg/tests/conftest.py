"""Pytest configuration and fixtures."""

from datetime import date, datetime
from typing import NamedTuple

import numpy as np
import pytest

from gridstress.core.constants import Variable
from gridstress.models.series import DateWindow, HourlySeries
from gridstress.models.weather import DegreeParams

REGION = "TST"
MONDAY = datetime(2020, 1, 6, 1)  # first hour of Monday 2020-01-06


class PlantedData(NamedTuple):
    """Temperature and demand drawn from a known 170-parameter model."""

    temps: HourlySeries
    demand: HourlySeries
    theta: np.ndarray
    params: DegreeParams


def planted_baseload() -> np.ndarray:
    """Smooth weekly baseload between 1500 and 2500 MWh."""
    w = np.arange(1, 169)
    return 2000.0 + 400.0 * np.sin(2 * np.pi * w / 24) + 100.0 * np.cos(2 * np.pi * w / 168)


def make_planted(
    days: int = 56,
    start: datetime = MONDAY,
    heating: float = 64.0,
    cooling: float = 72.0,
    alpha_h: float = 5.0,
    alpha_c: float = 8.0,
    noise: float = 0.0,
    seed: int = 0,
    drop: tuple[date, date, float] | None = None,
    region: str = REGION,
) -> PlantedData:
    """
    Build a planted dataset.

    Temperatures swing daily between about 50 and 86 degF so both degree terms
    are excited. ``noise`` is the std of additive Gaussian demand noise (MWh).
    ``drop`` = (first day, last day, percent) scales demand down on those days.
    """
    from gridstress.services.timeseries import hours_of_week
    from gridstress.services.weather_correct import degree_arrays

    n = days * 24
    k = np.arange(n)
    temp_rng = np.random.default_rng(12345)
    temps = (
        68.0
        + 12.0 * np.sin(2 * np.pi * (k % 24 - 9) / 24)
        + 6.0 * np.sin(2 * np.pi * k / (24 * 9))
        + temp_rng.normal(0.0, 1.0, n)
    )
    temperature = HourlySeries.from_values(region, Variable.TEMPERATURE, start, temps)

    params = DegreeParams(heating_setpoint=heating, cooling_setpoint=cooling)
    baseload = planted_baseload()
    heat, cool = degree_arrays(temps, params)
    demand = alpha_h * heat**2 + alpha_c * cool**2 + baseload[hours_of_week(temperature) - 1]
    if noise:
        demand = demand + np.random.default_rng(seed).normal(0.0, noise, n)
    if drop is not None:
        first, last, pct = drop
        days_of = temperature.day_labels
        inside = (days_of >= np.datetime64(first)) & (days_of <= np.datetime64(last))
        demand = np.where(inside, demand * (1.0 - pct / 100.0), demand)

    theta = np.array([alpha_h, alpha_c, *baseload])
    return PlantedData(
        temps=temperature,
        demand=HourlySeries.from_values(region, Variable.DEMAND, start, demand),
        theta=theta,
        params=params,
    )


@pytest.fixture
def planted():
    """Factory for planted datasets."""
    return make_planted


@pytest.fixture
def hourly():
    """Factory for a demand-like hourly series."""

    def build(
        values,
        start: datetime = datetime(2020, 1, 1, 1),
        variable: Variable = Variable.DEMAND,
        region: str = REGION,
    ) -> HourlySeries:
        return HourlySeries.from_values(region, variable, start, values)

    return build


@pytest.fixture
def window():
    """Factory for named date windows."""

    def build(start: date, end: date, name: str | None = None) -> DateWindow:
        return DateWindow(start=start, end=end, name=name)

    return build


@pytest.fixture
def grid_csv_text() -> str:
    """Three days of demand/forecast/interchange in the default timestamp format."""
    lines = ["Timestamp,Demand,Forecast,Interchange"]
    for i in range(72):
        ts = np.datetime64("2020-01-01T01:00") + np.timedelta64(i, "h")
        stamp = str(ts).replace("T", " ")[:16]
        demand = 1000.0 + 10.0 * (i % 24)
        lines.append(f"{stamp},{demand},{demand - 5.0},{-100.0 + i}")
    return "\n".join(lines) + "\n"
