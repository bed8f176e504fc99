"""Data models for gridstress."""

from gridstress.models.series import (
    AlignedRow,
    DailySeries,
    DateWindow,
    HourlySeries,
)
from gridstress.models.ingest import (
    CoverageReport,
    GridCsvSchema,
    WeatherObservation,
)
from gridstress.models.indicators import (
    PeakTrough,
    PeakTroughTable,
    TrendFit,
)
from gridstress.models.density import (
    DensityEstimate,
    PeriodComparison,
    PeriodDeltas,
    PeriodSummary,
)
from gridstress.models.backcast import BackcastResult, BackcastWindows
from gridstress.models.weather import (
    ChangePoint,
    DegreeDayModel,
    DegreeHours,
    DegreePair,
    DegreeParams,
    DemandModel,
    DesignMatrix,
    FitDiagnostics,
    SetpointScore,
    SetpointSearchResult,
)

__all__ = [
    # Backcast models
    "BackcastResult",
    "BackcastWindows",
    # Series models
    "AlignedRow",
    "DailySeries",
    "DateWindow",
    "HourlySeries",
    # Ingest models
    "CoverageReport",
    "GridCsvSchema",
    "WeatherObservation",
    # Indicator models
    "PeakTrough",
    "PeakTroughTable",
    "TrendFit",
    # Density models
    "DensityEstimate",
    "PeriodComparison",
    "PeriodDeltas",
    "PeriodSummary",
    # Weather-correction models
    "ChangePoint",
    "DegreeDayModel",
    "DegreeHours",
    "DegreePair",
    "DegreeParams",
    "DemandModel",
    "DesignMatrix",
    "FitDiagnostics",
    "SetpointScore",
    "SetpointSearchResult",
]
