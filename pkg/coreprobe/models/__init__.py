"""Models module for CoreProbe."""

from coreprobe.models.report import EpsilonRow, EpsilonTable, GraphSummary, RunParameters, RunReport
from coreprobe.models.results import (
    ApproxResult,
    CoreLabels,
    LabeledDecomposition,
    LabelSource,
    OutcoreReport,
    OutcoreTally,
    RunStats,
)

__all__ = [
    "ApproxResult",
    "CoreLabels",
    "LabeledDecomposition",
    "LabelSource",
    "OutcoreReport",
    "OutcoreTally",
    "RunStats",
    "EpsilonRow",
    "EpsilonTable",
    "GraphSummary",
    "RunParameters",
    "RunReport",
]
