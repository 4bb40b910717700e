"""Services module for CoreProbe."""

from coreprobe.services.bench import (
    BenchConfig,
    EpsilonSweep,
    EpsilonSweepConfig,
    ScalingBench,
    run_epsilon_sweep,
    run_scaling,
)
from coreprobe.services.report_service import (
    ReportService,
    containment_rate,
    error_factor,
    write_labels,
    write_report,
)

__all__ = [
    "BenchConfig",
    "EpsilonSweep",
    "EpsilonSweepConfig",
    "ScalingBench",
    "run_epsilon_sweep",
    "run_scaling",
    "ReportService",
    "containment_rate",
    "error_factor",
    "write_labels",
    "write_report",
]
