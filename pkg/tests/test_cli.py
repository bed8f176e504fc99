"""Tests for the command-line interface."""

import json
from datetime import date

import pytest
import yaml
from typer.testing import CliRunner

from gridstress import __version__
from gridstress.cli.main import app
from gridstress.core.constants import Columns, ExitCode

runner = CliRunner()

WINDOWS = {
    "validate": {"start": "2020-01-06", "end": "2020-01-19"},
    "train": {"start": "2020-01-20", "end": "2020-03-15"},
    "base": {"start": "2020-02-17", "end": "2020-03-15"},
    "event": {"start": "2020-03-16", "end": "2020-04-12"},
    "one_day": {"start": "2020-02-03", "end": "2020-02-03"},
    "before": {"start": "2019-01-01", "end": "2019-01-31"},
}


@pytest.fixture
def inputs(tmp_path, planted):
    """Grid and weather files for 14 weeks of planted data with a late 10% drop."""
    data = planted(days=98, noise=20.0, seed=0, drop=(date(2020, 3, 23), date(2020, 4, 12), 10.0))
    stamps = [ts.strftime("%Y-%m-%d %H:%M") for ts in data.demand.timestamps]

    grid = ["Timestamp,Demand,Forecast,Interchange"]
    for stamp, d in zip(stamps, data.demand.values):
        grid.append(f"{stamp},{float(d)!r},{float(0.98 * d)!r},-100.0")
    (tmp_path / "grid.csv").write_text("\n".join(grid) + "\n")

    weather = ["timestamp,temperature_degF"]
    weather += [f"{stamp},{float(t)!r}" for stamp, t in zip(stamps, data.temps.values)]
    (tmp_path / "weather.csv").write_text("\n".join(weather) + "\n")
    return tmp_path


def write_config(directory, columns=None, weather=True, model=None):
    region = {
        "region_id": "TST",
        "grid_csv": "grid.csv",
        "schema": {
            "timestamp_column": "Timestamp",
            "value_columns": columns
            or {"demand": "Demand", "forecast": "Forecast", "interchange": "Interchange"},
        },
    }
    if weather:
        region["weather_csv"] = "weather.csv"
    config = {
        "regions": [region],
        "windows": WINDOWS,
        "model": model
        or {
            "heating_grid": {"start": 63, "stop": 65},
            "cooling_grid": {"start": 71, "stop": 73},
        },
    }
    path = directory / "config.yaml"
    path.write_text(yaml.safe_dump(config))
    return path


def invoke(*args):
    return runner.invoke(app, [str(a) for a in args])


class TestApp:
    """Tests for the top-level app."""

    def test_version(self):
        result = invoke("--version")
        assert result.exit_code == 0
        assert __version__ in result.output

    def test_missing_config_file(self, tmp_path):
        result = invoke("ingest", "--config", tmp_path / "absent.yaml", "--out", tmp_path / "out")
        assert result.exit_code == ExitCode.INPUT_ERROR


class TestIngestCommand:
    """Tests for gridstress ingest."""

    def test_writes_normalized_series(self, inputs):
        config = write_config(inputs)
        out = inputs / "out"
        result = invoke("ingest", "--config", config, "--out", out)
        assert result.exit_code == 0, result.output

        folder = out / "normalized" / "TST"
        for name in ("demand", "forecast", "interchange", "temperature", "coverage"):
            assert (folder / f"{name}.csv").is_file()
        coverage = (folder / "coverage.csv").read_text().splitlines()
        assert coverage[0] == ",".join(Columns.COVERAGE)
        assert len(coverage) == 5

    def test_missing_column_named(self, inputs):
        config = write_config(inputs, columns={"demand": "Demand", "interchange": "NetInterchange"})
        result = invoke("ingest", "--config", config, "--out", inputs / "out")
        assert result.exit_code == ExitCode.INPUT_ERROR
        assert "NetInterchange" in result.output

    def test_unknown_region(self, inputs):
        config = write_config(inputs)
        result = invoke("ingest", "--config", config, "--region", "ZZZ", "--out", inputs / "out")
        assert result.exit_code == ExitCode.INPUT_ERROR


class TestIndicatorsCommand:
    """Tests for gridstress indicators."""

    def test_all_indicators(self, inputs):
        config = write_config(inputs)
        out = inputs / "out"
        result = invoke("indicators", "--config", config, "--out", out)
        assert result.exit_code == 0, result.output
        folder = out / "indicators" / "TST" / "all"
        for name in ("peak_trough", "ramp_rate", "daily_totals", "trend", "forecast_error", "interchange_daily_mean"):
            assert (folder / f"{name}.csv").is_file()
        assert (folder / "peak_trough.csv").read_text().splitlines()[0] == ",".join(Columns.PEAK_TROUGH)

    def test_demand_only_skips_with_warning(self, inputs):
        config = write_config(inputs, columns={"demand": "Demand"})
        out = inputs / "out"
        result = invoke("indicators", "--config", config, "--out", out)
        assert result.exit_code == 0, result.output
        assert "forecast_error skipped" in result.output
        assert "interchange_daily_mean skipped" in result.output
        assert not (out / "indicators" / "TST" / "all" / "forecast_error.csv").exists()

    def test_window_without_data(self, inputs):
        config = write_config(inputs)
        result = invoke("indicators", "--config", config, "--window", "before", "--out", inputs / "out")
        assert result.exit_code == ExitCode.INSUFFICIENT_DATA

    def test_json_format(self, inputs):
        config = write_config(inputs)
        out = inputs / "out"
        result = invoke("indicators", "--config", config, "--window", "train", "--format", "json", "--out", out)
        assert result.exit_code == 0, result.output
        assert (out / "indicators" / "TST" / "train" / "daily_totals.json").is_file()


class TestDensityCommand:
    """Tests for gridstress density."""

    def test_two_windows(self, inputs):
        config = write_config(inputs)
        out = inputs / "out"
        result = invoke("density", "--config", config, "-w", "train", "-w", "event", "--out", out)
        assert result.exit_code == 0, result.output
        folder = out / "density" / "TST"
        curves = (folder / "ramp_rate_train_vs_event.csv").read_text().splitlines()
        assert curves[0] == ",".join(Columns.DENSITY)
        assert len(curves) == 1 + 512
        summary = (folder / "ramp_rate_train_vs_event_summary.csv").read_text().splitlines()
        assert summary[0] == ",".join(Columns.DENSITY_SUMMARY)

    def test_one_sample_window(self, inputs):
        config = write_config(inputs)
        result = invoke(
            "density", "--config", config, "-i", "peak", "-w", "train", "-w", "one_day", "--out", inputs / "out"
        )
        assert result.exit_code == ExitCode.INSUFFICIENT_DATA

    def test_needs_two_windows(self, inputs):
        config = write_config(inputs)
        result = invoke("density", "--config", config, "-w", "train", "--out", inputs / "out")
        assert result.exit_code == ExitCode.INPUT_ERROR

    def test_missing_indicator_column(self, inputs):
        config = write_config(inputs, columns={"demand": "Demand"})
        result = invoke(
            "density", "--config", config, "-i", "interchange", "-w", "train", "-w", "event", "--out", inputs / "out"
        )
        assert result.exit_code == ExitCode.INPUT_ERROR


class TestBackcastCommand:
    """Tests for gridstress backcast."""

    def test_end_to_end(self, inputs):
        config = write_config(inputs)
        out = inputs / "out"
        result = invoke("backcast", "--config", config, "--out", out)
        assert result.exit_code == 0, result.output

        folder = out / "backcast" / "TST"
        assert (folder / "model.json").is_file()
        assert (folder / "report.md").is_file()
        change = (folder / "change.csv").read_text().splitlines()
        assert change[0] == ",".join(Columns.CHANGE_POINTS)
        assert len(change) == 1 + 28
        scores = (folder / "setpoint_scores.csv").read_text().splitlines()
        assert len(scores) == 1 + 9
        diagnostics = (folder / "diagnostics.csv").read_text().splitlines()
        assert [line.split(",")[0] for line in diagnostics[1:]] == ["train", "validation"]

    def test_outputs_are_deterministic(self, inputs):
        config = write_config(inputs)
        first, second = inputs / "first", inputs / "second"
        assert invoke("backcast", "--config", config, "--out", first).exit_code == 0
        assert invoke("backcast", "--config", config, "--out", second, "--max-workers", 3).exit_code == 0
        for name in ("change.csv", "setpoint_scores.csv", "model.json", "counterfactual_hourly.csv"):
            a = (first / "backcast" / "TST" / name).read_bytes()
            b = (second / "backcast" / "TST" / name).read_bytes()
            assert a == b, name

    def test_fixed_setpoints(self, inputs):
        config = write_config(inputs, model={"fixed_setpoints": {"heating_setpoint": 64, "cooling_setpoint": 72}})
        out = inputs / "out"
        result = invoke("backcast", "--config", config, "--out", out)
        assert result.exit_code == 0, result.output
        assert not (out / "backcast" / "TST" / "setpoint_scores.csv").exists()

    def test_json_report(self, inputs):
        config = write_config(inputs)
        out = inputs / "out"
        result = invoke("backcast", "--config", config, "--out", out, "--report-format", "json")
        assert result.exit_code == 0, result.output

        folder = out / "backcast" / "TST"
        assert not (folder / "report.md").exists()
        report = json.loads((folder / "report.json").read_text())
        assert report["region_id"] == "TST"
        assert report["days"] == 28
        assert report["sigma_source"] == "validation"

    def test_normalized_temperature_reused_with_same_bounds(self, inputs):
        config = write_config(inputs)
        out = inputs / "out"
        assert invoke("ingest", "--config", config, "--out", out).exit_code == 0
        assert (out / "normalized" / "TST" / "temperature_bounds.json").is_file()
        (inputs / "weather.csv").unlink()
        result = invoke("backcast", "--config", config, "--out", out)
        assert result.exit_code == 0, result.output

    def test_changed_bounds_rejected_after_ingest(self, inputs):
        config = write_config(inputs)
        out = inputs / "out"
        assert invoke("ingest", "--config", config, "--out", out).exit_code == 0
        result = invoke("backcast", "--config", config, "--out", out, "--temp-max", 70)
        assert result.exit_code == ExitCode.INPUT_ERROR

    def test_without_weather(self, inputs):
        config = write_config(inputs, weather=False)
        result = invoke("backcast", "--config", config, "--out", inputs / "out")
        assert result.exit_code == ExitCode.INPUT_ERROR
        assert "weather_csv" in result.output

    def test_overlapping_windows(self, inputs):
        config = write_config(inputs)
        result = invoke("backcast", "--config", config, "--event", "base", "--out", inputs / "out")
        assert result.exit_code == ExitCode.INPUT_ERROR
