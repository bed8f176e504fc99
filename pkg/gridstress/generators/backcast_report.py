"""Backcast report generator."""

from __future__ import annotations

import json

from gridstress import __version__
from gridstress.core.constants import ReportFormat
from gridstress.models.backcast import BackcastResult
from gridstress.models.weather import FitDiagnostics


def generate_report(
    result: BackcastResult,
    format: ReportFormat | str = ReportFormat.MARKDOWN,
) -> str:
    """
    Generate a backcast report.

    Args:
        result: Backcast of one region
        format: Output format (markdown, json)

    Returns:
        Report content as string
    """
    if ReportFormat(format) is ReportFormat.JSON:
        return _generate_json_report(result)
    return _generate_markdown_report(result)


def _pct(value: float) -> str:
    return f"{100.0 * value:.2f}%"


def _diagnostics_table(entries: list[tuple[str, FitDiagnostics]]) -> str:
    text = """| Dataset | Mean rel. error | Std rel. error | R² | Rows |
|---------|-----------------|----------------|----|------|
"""
    for name, d in entries:
        text += f"| {name} | {_pct(d.mean_rel_error)} | {_pct(d.std_rel_error)} | {d.r_squared:.4f} | {d.n_rows} |\n"
    return text


def _generate_markdown_report(result: BackcastResult) -> str:
    """Generate Markdown format report."""
    model = result.model
    params = model.degree_params
    windows = result.windows
    setpoint_source = (
        f"exhaustive search over {len(result.search.table)} pairs ({result.search.criterion.value})"
        if result.search
        else "fixed in config"
    )

    report = f"""# Weather-Corrected Demand Backcast: {result.region_id}

## Windows

| Role | Window | Days |
|------|--------|------|
| Train | {windows.train.label} | {windows.train.n_days} |
| Event | {windows.event.label} | {windows.event.n_days} |
| Base | {windows.base.label} | {windows.base.n_days} |
"""
    if windows.validate_window is not None:
        report += f"| Validation | {windows.validate_window.label} | {windows.validate_window.n_days} |\n"

    report += f"""
---

## Model

| Parameter | Value |
|-----------|-------|
| Heating setpoint | {params.heating_setpoint:g} °F |
| Cooling setpoint | {params.cooling_setpoint:g} °F |
| Setpoints from | {setpoint_source} |
| alpha_h | {model.alpha_h:.6g} MWh/°F² |
| alpha_c | {model.alpha_c:.6g} MWh/°F² |
| Baseload range | {min(model.baseload):.6g} .. {max(model.baseload):.6g} MWh |
| Training rows | {model.n_train} |
| Condition number | {model.condition_estimate:.4g} |

"""
    if result.diagnostics.pinned_parameters:
        report += f"Pinned at zero (no excitation): {', '.join(result.diagnostics.pinned_parameters)}\n\n"
    if result.diagnostics.negative_parameters:
        report += f"Negative estimates: {', '.join(result.diagnostics.negative_parameters[:10])}\n\n"

    entries = [("train", result.diagnostics)]
    if result.validation is not None:
        entries.append(("validation", result.validation))

    report += f"""---

## Fit

{_diagnostics_table(entries)}"""

    d = result.diagnostics
    if d.residual_skew is not None and d.residual_excess_kurtosis is not None:
        report += f"\nResidual skew {d.residual_skew:.3f}, excess kurtosis {d.residual_excess_kurtosis:.3f}.\n"

    if result.degree_day_model is not None:
        dd = result.degree_day_model
        report += f"""
Daily degree-day baseline: {dd.alpha_c:.6g} MWh/CDD, {dd.alpha_h:.6g} MWh/HDD,
{dd.baseload:.6g} MWh/day, R² {dd.r_squared:.4f} over {dd.n_days} days.
"""

    report += f"""
---

## Weather-Corrected Change

Base mean: {result.base_mean:.6g} MWh/day. Daily error spread: {_pct(result.sigma_daily)}
of the base mean ({result.sigma_source}). Intervals are ±2σ (95%) and ±3σ (99%).

"""
    if result.changes:
        report += """| Date | Observed (MWh) | Counterfactual (MWh) | Change | 95% | 99% |
|------|----------------|----------------------|--------|-----|-----|
"""
        for p in result.changes:
            report += (
                f"| {p.date.isoformat()} | {p.observed:.6g} | {p.counterfactual:.6g} | "
                f"{p.change_pct:+.1f}% | {p.ci95[0]:+.1f}..{p.ci95[1]:+.1f} | "
                f"{p.ci99[0]:+.1f}..{p.ci99[1]:+.1f} |\n"
            )
        report += f"\nMean change over the event window: {result.mean_change_pct:+.2f}%.\n"
    else:
        report += "No fully covered event day with both observed and predicted demand.\n"

    report += f"""
---

*Report generated by gridstress v{__version__}*
"""
    return report


def _generate_json_report(result: BackcastResult) -> str:
    """Generate JSON format report."""
    report = {
        "region_id": result.region_id,
        "windows": result.windows.model_dump(mode="json", by_alias=True),
        "degree_params": result.model.degree_params.model_dump(mode="json"),
        "setpoint_search": (
            {
                "criterion": result.search.criterion.value,
                "pairs": len(result.search.table),
                "best_score": result.search.best_score,
            }
            if result.search
            else None
        ),
        "train": result.diagnostics.summary(),
        "validation": result.validation.summary() if result.validation else None,
        "degree_day_model": (
            result.degree_day_model.model_dump(mode="json") if result.degree_day_model else None
        ),
        "base_mean_mwh": result.base_mean,
        "sigma_daily": result.sigma_daily,
        "sigma_source": result.sigma_source,
        "mean_change_pct": result.mean_change_pct,
        "days": len(result.changes),
        "version": __version__,
    }
    return json.dumps(report, indent=2)
