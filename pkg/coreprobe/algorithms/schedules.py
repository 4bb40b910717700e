"""
Threshold schedules.

A schedule decides which steps of the threshold sequence to probe with a
trial and which step's threshold to report. All schedules share the
ScheduleContext, which runs trials, enforces the p < 1 and l >= 1 limits
and accumulates run statistics.

Schedules:
    BaselineSchedule - probe start, start+1, start+2, ... until a trial
        leaves survivors.
    LeapSchedule     - probe start, then start+1, start+2, start+4, ...
        and binary search the last gap for the first step with survivors.
"""

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from coreprobe.algorithms.params import Params
from coreprobe.algorithms.trial import TrialEngine, TrialOutcome
from coreprobe.graph.csr import Graph
from coreprobe.models.results import RunStats

logger = logging.getLogger(__name__)


class ProbeStatus(str, Enum):
    """Outcome of probing one schedule step."""
    SURVIVORS = "survivors"
    EMPTY = "empty"
    # p >= 1 or l < 1 at this step: sampling is over
    EXHAUSTED = "exhausted"


@dataclass
class Probe:
    step: int
    params: Params
    status: ProbeStatus
    outcome: TrialOutcome | None = None


@dataclass
class ScheduleContext:
    """State shared by a schedule's probes."""
    engine: TrialEngine
    base: Params
    start_step: int
    stats: RunStats = field(default_factory=RunStats)
    probes: list[Probe] = field(default_factory=list)

    def probe(self, step: int) -> Probe:
        """Run the trial for one step, or report that sampling is exhausted there."""
        params = self.base.at_step(step)
        if params.sampling_done or params.l < 1.0:
            probe = Probe(step=step, params=params, status=ProbeStatus.EXHAUSTED)
        else:
            outcome = self.engine.run(params.l, params.p)
            self.stats.absorb(outcome.samples_drawn, outcome.peeled)
            status = ProbeStatus.SURVIVORS if outcome.nonempty else ProbeStatus.EMPTY
            probe = Probe(step=step, params=params, status=status, outcome=outcome)
        logger.debug(f"Probe step={step} l={params.l:.4f} p={params.p:.6f}: {probe.status.value}")
        self.probes.append(probe)
        return probe


@dataclass
class ScheduleResult:
    """Result of a schedule search."""
    found: bool
    probe: Probe | None = None
    reason: str | None = None

    @classmethod
    def ok(cls, probe: Probe) -> "ScheduleResult":
        return cls(found=True, probe=probe)

    @classmethod
    def exhausted(cls, probe: Probe) -> "ScheduleResult":
        reason = "sampling rate reached 1" if probe.params.sampling_done else "threshold fell below 1"
        return cls(found=False, probe=probe, reason=reason)


class BaseSchedule(ABC):
    """Abstract base class for threshold schedules.

    Subclasses must implement search(), returning the first probed step
    whose trial leaves survivors or an exhausted result.
    """

    @property
    def name(self) -> str:
        return self.__class__.__name__

    @abstractmethod
    def search(self, context: ScheduleContext) -> ScheduleResult:
        pass


class BaselineSchedule(BaseSchedule):
    """Probe every step from the start until survivors remain."""

    def search(self, context: ScheduleContext) -> ScheduleResult:
        step = context.start_step
        while True:
            probe = context.probe(step)
            if probe.status is ProbeStatus.SURVIVORS:
                return ScheduleResult.ok(probe)
            if probe.status is ProbeStatus.EXHAUSTED:
                return ScheduleResult.exhausted(probe)
            step += 1


class LeapSchedule(BaseSchedule):
    """Exponentially growing leaps followed by a binary search.

    With j0 the start step, probes j0, j0+1, j0+2, j0+4, ... until the trial
    at j0+2^i leaves survivors, then binary searches (j0+2^(i-1), j0+2^i]
    for the smallest step with survivors.
    """

    def search(self, context: ScheduleContext) -> ScheduleResult:
        j0 = context.start_step
        probe = context.probe(j0)
        if probe.status is ProbeStatus.SURVIVORS:
            return ScheduleResult.ok(probe)
        if probe.status is ProbeStatus.EXHAUSTED:
            return ScheduleResult.exhausted(probe)

        low = j0
        leap = 1
        while True:
            probe = context.probe(j0 + leap)
            if probe.status is ProbeStatus.EXHAUSTED:
                return ScheduleResult.exhausted(probe)
            if probe.status is ProbeStatus.SURVIVORS:
                break
            low = j0 + leap
            leap *= 2

        best = probe
        high = best.step
        while high - low > 1:
            mid = (low + high) // 2
            probe = context.probe(mid)
            if probe.status is ProbeStatus.SURVIVORS:
                high, best = mid, probe
            else:
                low = mid
        return ScheduleResult.ok(best)


def lower_start_threshold(graph: Graph) -> int:
    """Largest d such that at least d nodes have degree >= d.

    Bounds the degeneracy from above: a d'-core needs d'+1 nodes of degree >= d'.
    """
    n = graph.node_count
    if n == 0:
        return 0
    histogram = np.bincount(np.minimum(graph.degrees, n), minlength=n + 1)
    at_least = np.cumsum(histogram[::-1])[::-1]
    candidates = np.flatnonzero(at_least >= np.arange(n + 1))
    return int(candidates.max())
