"""Exact and approximate core computations."""

from coreprobe.algorithms.degeneracy import DegeneracyOptions, approximate_degeneracy
from coreprobe.algorithms.exact import (
    check_outcore_bound,
    core_decomposition,
    degeneracy_ordering,
    peel_degeneracy,
    peel_induced,
)
from coreprobe.algorithms.kcore import approximate_core_decomposition
from coreprobe.algorithms.params import Params, approximation_interval, init_params, within_interval
from coreprobe.algorithms.sampling import RandomSource, sample_index
from coreprobe.algorithms.schedules import BaselineSchedule, LeapSchedule, lower_start_threshold
from coreprobe.algorithms.trial import TrialEngine, TrialOutcome, TrialState, run_trial

__all__ = [
    "core_decomposition",
    "peel_degeneracy",
    "degeneracy_ordering",
    "peel_induced",
    "check_outcore_bound",
    "Params",
    "init_params",
    "approximation_interval",
    "within_interval",
    "RandomSource",
    "sample_index",
    "TrialEngine",
    "TrialOutcome",
    "TrialState",
    "run_trial",
    "BaselineSchedule",
    "LeapSchedule",
    "lower_start_threshold",
    "DegeneracyOptions",
    "approximate_degeneracy",
    "approximate_core_decomposition",
]
