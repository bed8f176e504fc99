"""Exhaustive search over heating/cooling setpoint grids."""

from __future__ import annotations

from collections.abc import Callable, Sequence
from concurrent.futures import ThreadPoolExecutor

from gridstress.core.constants import Criterion
from gridstress.core.exceptions import GridError, GridStressError
from gridstress.core.logging import get_logger
from gridstress.models.series import HourlySeries
from gridstress.models.weather import DegreeParams, SetpointScore, SetpointSearchResult
from gridstress.services.weather_correct import build_design, fit_ols

logger = get_logger("services.setpoint_search")


def admissible_pairs(
    heating_grid: Sequence[float],
    cooling_grid: Sequence[float],
) -> list[tuple[float, float]]:
    """(heating, cooling) pairs with heating < cooling, in grid order."""
    return [(h, c) for h in heating_grid for c in cooling_grid if h < c]


def _score_pair(
    temps: HourlySeries,
    demand: HourlySeries,
    heating: float,
    cooling: float,
    criterion: Criterion,
) -> tuple[SetpointScore, GridStressError | None]:
    try:
        params = DegreeParams(heating_setpoint=heating, cooling_setpoint=cooling)
        design = build_design(temps, demand, params, log_warnings=False)
        _, diagnostics = fit_ols(design, log_warnings=False)
    except GridStressError as e:
        return (
            SetpointScore(heating_setpoint=heating, cooling_setpoint=cooling, score=None, status=e.message),
            e,
        )

    score = diagnostics.std_rel_error if criterion == Criterion.STD_REL_ERROR else diagnostics.ssr
    return SetpointScore(heating_setpoint=heating, cooling_setpoint=cooling, score=score), None


def search_setpoints(
    temps: HourlySeries,
    demand: HourlySeries,
    heating_grid: Sequence[float],
    cooling_grid: Sequence[float],
    criterion: Criterion = Criterion.STD_REL_ERROR,
    max_workers: int = 1,
    progress: Callable[[int, int], None] | None = None,
) -> SetpointSearchResult:
    """
    Fit the model for every admissible setpoint pair and keep the best.

    Ties on the score go to the smaller cooling - heating span, then the lower
    cooling setpoint. The score table is in grid order whatever the worker count.

    Args:
        temps: Hourly mean temperature of the training window
        demand: Hourly demand of the training window
        heating_grid: Candidate heating setpoints (degF)
        cooling_grid: Candidate cooling setpoints (degF)
        criterion: Score to minimise
        max_workers: Worker threads evaluating pairs
        progress: Optional callback (done, total)

    Returns:
        SetpointSearchResult with the best pair and the full table
    """
    criterion = Criterion(criterion)
    pairs = admissible_pairs(heating_grid, cooling_grid)
    if not pairs:
        raise GridError(details={"heating": list(heating_grid), "cooling": list(cooling_grid)})

    logger.info(f"{demand.region_id}: searching {len(pairs)} setpoint pair(s) by {criterion.value}")

    def run(pair: tuple[float, float]) -> tuple[SetpointScore, GridStressError | None]:
        return _score_pair(temps, demand, pair[0], pair[1], criterion)

    results: list[tuple[SetpointScore, GridStressError | None]] = []
    with ThreadPoolExecutor(max_workers=max(1, max_workers)) as executor:
        # map() yields in submission order, so the table never depends on scheduling
        for done, result in enumerate(executor.map(run, pairs), start=1):
            results.append(result)
            if progress:
                progress(done, len(pairs))

    table = [score for score, _ in results]
    scored = [s for s in table if s.score is not None]
    if not scored:
        first_error = next(e for _, e in results if e is not None)
        logger.error(f"{demand.region_id}: every setpoint pair failed to fit")
        raise first_error

    best = min(
        scored,
        key=lambda s: (s.score, s.cooling_setpoint - s.heating_setpoint, s.cooling_setpoint),
    )
    failed = len(table) - len(scored)
    if failed:
        logger.warning(f"{demand.region_id}: {failed} setpoint pair(s) could not be fitted")
    logger.info(
        f"{demand.region_id}: best setpoints {best.heating_setpoint:g}/{best.cooling_setpoint:g} "
        f"({criterion.value}={best.score:.6g})"
    )
    return SetpointSearchResult(
        best=DegreeParams(heating_setpoint=best.heating_setpoint, cooling_setpoint=best.cooling_setpoint),
        best_score=best.score,  # type: ignore[arg-type]
        criterion=criterion,
        table=table,
    )
