"""Gaussian kernel density estimates of indicator samples."""

from __future__ import annotations

from collections.abc import Sequence

import numpy as np
from scipy.stats import norm

from gridstress.core.constants import Defaults
from gridstress.core.exceptions import DegenerateError, InsufficientDataError, ValidationError
from gridstress.core.logging import get_logger
from gridstress.models.density import DensityEstimate, PeriodComparison, PeriodDeltas, PeriodSummary
from gridstress.models.series import DailySeries, DateWindow, HourlySeries

logger = get_logger("services.density")

# Upper bound on the size of one (points x samples) kernel block
_BLOCK_ELEMENTS = 1 << 22


def _as_samples(samples: Sequence[float] | np.ndarray) -> np.ndarray:
    arr = np.asarray(samples, dtype=np.float64).reshape(-1)
    if not np.isfinite(arr).all():
        raise ValidationError("KDE samples must be finite; drop MISSING values first")
    return arr


def silverman_bandwidth(samples: Sequence[float] | np.ndarray) -> float:
    """
    Silverman's rule of thumb: h = 0.9 * min(std, IQR / 1.34) * n^(-1/5).

    The IQR term is ignored when the IQR is zero. Sample std uses ddof=1.
    """
    s = _as_samples(samples)
    n = s.size
    if n < 2:
        raise InsufficientDataError("Automatic bandwidth needs at least two samples", {"samples": n})

    std = float(np.std(s, ddof=1))
    q75, q25 = np.percentile(s, [75.0, 25.0])
    iqr = float(q75 - q25)
    spread = min(std, iqr / Defaults.IQR_TO_SIGMA) if iqr > 0.0 else std
    if spread <= 0.0:
        raise DegenerateError(
            "Samples have zero variance; pass an explicit bandwidth",
            {"samples": n, "value": float(s[0])},
        )
    return Defaults.SILVERMAN_FACTOR * spread * n ** (-0.2)


def evaluate_kde(
    samples: Sequence[float] | np.ndarray,
    points: Sequence[float] | np.ndarray,
    bandwidth: float,
) -> np.ndarray:
    """Density (1/n) * sum_i N(x; s_i, h) at every point, evaluated in blocks."""
    if not bandwidth > 0.0:
        raise ValidationError(f"Bandwidth must be positive, got {bandwidth}")
    s = _as_samples(samples)
    x = np.asarray(points, dtype=np.float64).reshape(-1)
    if s.size == 0:
        raise InsufficientDataError("No samples to estimate a density from")

    out = np.empty(x.size, dtype=np.float64)
    rows = max(1, _BLOCK_ELEMENTS // s.size)
    for lo in range(0, x.size, rows):
        block = x[lo : lo + rows, None]
        out[lo : lo + rows] = norm.pdf(block, loc=s[None, :], scale=bandwidth).sum(axis=1) / s.size
    return out


def kde(
    samples: Sequence[float] | np.ndarray,
    bandwidth: float | None = None,
    grid_spec: tuple[float, float, int] | None = None,
    grid_points: int = Defaults.KDE_GRID_POINTS,
) -> DensityEstimate:
    """
    Gaussian-kernel density estimate on a grid.

    Args:
        samples: Finite sample values
        bandwidth: Kernel width; Silverman's rule when omitted
        grid_spec: (lo, hi, count); defaults to [min - 3h, max + 3h] with ``grid_points`` points
        grid_points: Default grid size

    Returns:
        DensityEstimate with sample statistics
    """
    s = _as_samples(samples)
    if s.size == 0 or (bandwidth is None and s.size < 2):
        raise InsufficientDataError(
            "KDE needs at least two samples (one with an explicit bandwidth)", {"samples": int(s.size)}
        )
    h = silverman_bandwidth(s) if bandwidth is None else float(bandwidth)
    if not h > 0.0:
        raise ValidationError(f"Bandwidth must be positive, got {bandwidth}")

    if grid_spec is None:
        pad = Defaults.KDE_GRID_PAD * h
        grid_spec = (float(s.min()) - pad, float(s.max()) + pad, grid_points)
    grid = _grid(*grid_spec)

    return DensityEstimate(
        grid=grid,
        density=evaluate_kde(s, grid, h),
        bandwidth=h,
        n_samples=int(s.size),
        sample_mean=float(s.mean()),
        sample_std=float(np.std(s, ddof=1)) if s.size > 1 else 0.0,
    )


def _grid(lo: float, hi: float, count: int) -> np.ndarray:
    if count < 1:
        raise ValidationError(f"Grid needs at least one point, got {count}")
    if hi < lo or (count > 1 and hi == lo):
        raise ValidationError(f"Invalid grid span [{lo}, {hi}] for {count} points")
    return np.linspace(lo, hi, count)


def _window_samples(series: HourlySeries | DailySeries, window: DateWindow) -> np.ndarray:
    samples = series.window(window).values_present()
    if samples.size < 2:
        raise InsufficientDataError(
            f"Window '{window.label}' has {samples.size} sample(s); at least two are needed",
            {"region": series.region_id, "variable": series.variable.value},
        )
    return samples


def summarize(samples: np.ndarray, label: str) -> PeriodSummary:
    """Mean, std (ddof=1) and 1st/99th percentiles of a window's samples."""
    p01, p99 = np.percentile(
        samples, [Defaults.EXTREME_LOW_PERCENTILE, Defaults.EXTREME_HIGH_PERCENTILE]
    )
    return PeriodSummary(
        label=label,
        n_samples=int(samples.size),
        mean=float(samples.mean()),
        std=float(np.std(samples, ddof=1)),
        p01=float(p01),
        p99=float(p99),
    )


def compare_periods(
    series: HourlySeries | DailySeries,
    window_a: DateWindow,
    window_b: DateWindow,
    bandwidth: float | None = None,
    grid_points: int = Defaults.KDE_GRID_POINTS,
) -> PeriodComparison:
    """
    Densities of two windows of one series on a shared grid, plus B - A deltas.

    Each window keeps its own bandwidth; the grid spans the union of both
    windows' default grids.
    """
    a = _window_samples(series, window_a)
    b = _window_samples(series, window_b)
    h_a = silverman_bandwidth(a) if bandwidth is None else bandwidth
    h_b = silverman_bandwidth(b) if bandwidth is None else bandwidth

    lo = min(a.min() - Defaults.KDE_GRID_PAD * h_a, b.min() - Defaults.KDE_GRID_PAD * h_b)
    hi = max(a.max() + Defaults.KDE_GRID_PAD * h_a, b.max() + Defaults.KDE_GRID_PAD * h_b)
    spec = (float(lo), float(hi), grid_points)

    density_a = kde(a, h_a, spec)
    density_b = kde(b, h_b, spec)
    summary_a = summarize(a, window_a.label)
    summary_b = summarize(b, window_b.label)
    deltas = PeriodDeltas(
        mean=summary_b.mean - summary_a.mean,
        std=summary_b.std - summary_a.std,
        p01=summary_b.p01 - summary_a.p01,
        p99=summary_b.p99 - summary_a.p99,
    )
    logger.debug(
        f"{series.region_id}/{series.variable.value}: {window_a.label} vs {window_b.label}, "
        f"mean delta {deltas.mean:.6g}"
    )
    return PeriodComparison(
        density_a=density_a,
        density_b=density_b,
        summary_a=summary_a,
        summary_b=summary_b,
        deltas=deltas,
    )
