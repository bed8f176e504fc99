"""Tests for grid and weather parsing."""

import io
import logging
from datetime import date, datetime

import numpy as np
import pytest

from gridstress.core.constants import Variable
from gridstress.core.exceptions import (
    AlignmentError,
    EmptyInputError,
    OrderError,
    SchemaError,
    WeatherValidationError,
)
from gridstress.models.ingest import GridCsvSchema, WeatherObservation
from gridstress.services.ingest import (
    coverage_report,
    hourly_mean_temperature,
    parse_grid_csv,
    parse_weather_csv,
    read_normalized_csv,
    write_normalized_csv,
)


@pytest.fixture
def schema():
    return GridCsvSchema(
        timestamp_column="Timestamp",
        value_columns={
            Variable.DEMAND: "Demand",
            Variable.FORECAST: "Forecast",
            Variable.INTERCHANGE: "Interchange",
        },
    )


class TestParseGridCsv:
    """Tests for parse_grid_csv."""

    def test_parses_all_declared_variables(self, grid_csv_text, schema):
        series = parse_grid_csv(io.StringIO(grid_csv_text), schema, "NYIS")
        assert set(series) == {Variable.DEMAND, Variable.FORECAST, Variable.INTERCHANGE}
        demand = series[Variable.DEMAND]
        assert demand.start == datetime(2020, 1, 1, 1)
        assert len(demand) == 72
        assert demand.values[0] == 1000.0
        assert series[Variable.FORECAST].values[0] == 995.0

    def test_gap_becomes_missing(self, schema):
        text = (
            "Timestamp,Demand,Forecast,Interchange\n"
            "2020-01-01 01:00,10,9,1\n"
            "2020-01-01 02:00,11,,1\n"
            "2020-01-01 05:00,14,13,1\n"
        )
        series = parse_grid_csv(io.StringIO(text), schema, "R")
        demand = series[Variable.DEMAND]
        assert len(demand) == 5
        assert demand.to_list() == [10.0, 11.0, None, None, 14.0]
        assert series[Variable.FORECAST].to_list()[1] is None

    def test_unparseable_value_is_missing(self, schema):
        text = "Timestamp,Demand,Forecast,Interchange\n2020-01-01 01:00,n/a,9,1\n2020-01-01 02:00,5,9,1\n"
        demand = parse_grid_csv(io.StringIO(text), schema, "R")[Variable.DEMAND]
        assert demand.to_list() == [None, 5.0]

    def test_missing_column_named(self, schema):
        text = "Timestamp,Demand,Forecast\n2020-01-01 01:00,1,1\n"
        with pytest.raises(SchemaError) as exc:
            parse_grid_csv(io.StringIO(text), schema, "R", source="grid.csv")
        assert exc.value.missing_columns == ["Interchange"]
        assert "Interchange" in str(exc.value)
        assert "grid.csv" in str(exc.value)

    def test_decreasing_timestamp_reports_line(self, schema):
        text = (
            "Timestamp,Demand,Forecast,Interchange\n"
            "2020-01-01 01:00,1,1,1\n"
            "2020-01-01 03:00,1,1,1\n"
            "2020-01-01 02:00,1,1,1\n"
        )
        with pytest.raises(OrderError) as exc:
            parse_grid_csv(io.StringIO(text), schema, "R", source="grid.csv")
        assert exc.value.row == 4
        assert "grid.csv:4" in str(exc.value)

    def test_duplicate_hour_keeps_first(self, schema, caplog):
        text = (
            "Timestamp,Demand,Forecast,Interchange\n"
            "2020-11-01 01:00,1,1,1\n"
            "2020-11-01 02:00,2,2,2\n"
            "2020-11-01 02:00,99,99,99\n"
            "2020-11-01 03:00,3,3,3\n"
        )
        with caplog.at_level(logging.WARNING, logger="gridstress"):
            demand = parse_grid_csv(io.StringIO(text), schema, "R")[Variable.DEMAND]
        assert demand.to_list() == [1.0, 2.0, 3.0]
        assert "duplicate" in caplog.text

    def test_off_hour_timestamp(self, schema):
        text = "Timestamp,Demand,Forecast,Interchange\n2020-01-01 01:30,1,1,1\n"
        with pytest.raises(AlignmentError):
            parse_grid_csv(io.StringIO(text), schema, "R")

    def test_thousands_separators_and_delimiter(self):
        schema = GridCsvSchema(
            timestamp_column="ts",
            value_columns={Variable.DEMAND: "load"},
            delimiter=";",
            decimal_grouping=True,
        )
        text = "ts;load\n2020-01-01 01:00;1,234.5\n2020-01-01 02:00;12,000\n"
        demand = parse_grid_csv(io.StringIO(text), schema, "R")[Variable.DEMAND]
        assert demand.to_list() == [1234.5, 12000.0]

    def test_custom_timestamp_format(self):
        schema = GridCsvSchema(
            timestamp_column="ts",
            timestamp_format="%m/%d/%Y %H",
            value_columns={Variable.DEMAND: "load"},
        )
        text = "ts,load\n01/01/2020 01,5\n01/01/2020 02,6\n"
        demand = parse_grid_csv(io.StringIO(text), schema, "R")[Variable.DEMAND]
        assert demand.start == datetime(2020, 1, 1, 1)

    def test_header_only(self, schema):
        with pytest.raises(EmptyInputError):
            parse_grid_csv(io.StringIO("Timestamp,Demand,Forecast,Interchange\n"), schema, "R")


class TestWeather:
    """Tests for weather parsing and hour-ending averaging."""

    def test_sub_hourly_readings_averaged_into_hour_ending(self):
        observations = [
            WeatherObservation(timestamp=datetime(2020, 1, 1, 0, 50), temperature=62.0),
            WeatherObservation(timestamp=datetime(2020, 1, 1, 0, 20), temperature=60.0),
            WeatherObservation(timestamp=datetime(2020, 1, 1, 1, 0), temperature=64.0),
            WeatherObservation(timestamp=datetime(2020, 1, 1, 1, 30), temperature=70.0),
        ]
        temps = hourly_mean_temperature(observations, "R")
        assert temps.variable == Variable.TEMPERATURE
        assert temps.start == datetime(2020, 1, 1, 1)
        assert temps.to_list() == [62.0, 70.0]

    def test_hour_without_readings_is_missing(self):
        observations = [
            WeatherObservation(timestamp=datetime(2020, 1, 1, 1), temperature=50.0),
            WeatherObservation(timestamp=datetime(2020, 1, 1, 4), temperature=53.0),
        ]
        temps = hourly_mean_temperature(observations)
        assert temps.to_list() == [50.0, None, None, 53.0]

    def test_parse_weather_csv(self):
        text = "timestamp,temperature_degF\n2020-01-01 00:30,40.5\n2020-01-01 01:00,\n2020-01-01 01:15,41\n"
        observations = parse_weather_csv(io.StringIO(text))
        assert [o.temperature for o in observations] == [40.5, 41.0]

    def test_out_of_bounds_rows_reported(self):
        text = "timestamp,temperature_degF\n2020-01-01 01:00,40\n2020-01-01 02:00,999\n2020-01-01 03:00,-80\n"
        with pytest.raises(WeatherValidationError) as exc:
            parse_weather_csv(io.StringIO(text))
        assert exc.value.rows == [3, 4]

    def test_custom_bounds(self):
        text = "timestamp,temperature_degF\n2020-01-01 01:00,40\n"
        with pytest.raises(WeatherValidationError):
            parse_weather_csv(io.StringIO(text), bounds=(50.0, 60.0))

    def test_missing_temperature_column(self):
        with pytest.raises(SchemaError):
            parse_weather_csv(io.StringIO("timestamp,temp\n2020-01-01 01:00,40\n"))


class TestCoverage:
    """Tests for coverage_report."""

    def test_gap_day_listed(self, hourly):
        values = np.ones(72)
        values[30:33] = np.nan
        report = coverage_report(hourly(values))
        assert report.present == 69
        assert report.missing == 3
        assert report.longest_gap == 3
        assert report.missing_days == [date(2020, 1, 2)]

    def test_window_beyond_series_counts_missing(self, hourly, window):
        report = coverage_report(hourly(np.ones(24)), window(date(2020, 1, 1), date(2020, 1, 2)))
        assert report.present == 24
        assert report.missing == 24
        assert report.missing_days == [date(2020, 1, 2)]
        assert not report.is_complete


class TestNormalizedFiles:
    """Tests for the normalized per-variable file."""

    def test_written_file_reads_back_identically(self, hourly):
        values = np.array([1.0, np.nan, 0.1 + 0.2, 1e-7, 123456.789])
        series = hourly(values)
        buffer = io.StringIO()
        write_normalized_csv(series, buffer)
        assert buffer.getvalue().splitlines()[0] == "timestamp,value"
        assert buffer.getvalue().splitlines()[2] == "2020-01-01 02:00,"

        buffer.seek(0)
        restored = read_normalized_csv(buffer, series.region_id, Variable.DEMAND)
        assert restored.equals(series)
