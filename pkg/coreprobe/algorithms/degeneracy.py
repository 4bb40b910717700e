"""
Sublinear (1+epsilon)-approximate degeneracy.

Walks the threshold schedule from l = n/(1+eps1) downwards, running one
sampling trial per probed step, and returns the first threshold whose
trial leaves survivors. If the sampling rate reaches 1 first, the exact
peeling result is returned instead. With probability at least 1 - 2/n^c
the returned l satisfies delta/(1+eps1)^2 < l <= delta*(1+1.5*eps1).
"""

import logging
import time
from dataclasses import dataclass

from coreprobe.algorithms.exact import peel_degeneracy
from coreprobe.algorithms.params import init_params, validate_epsilon_c
from coreprobe.algorithms.sampling import RandomSource
from coreprobe.algorithms.schedules import (
    BaselineSchedule,
    BaseSchedule,
    LeapSchedule,
    ScheduleContext,
    lower_start_threshold,
)
from coreprobe.algorithms.trial import TrialEngine
from coreprobe.graph.csr import Graph
from coreprobe.models.results import ApproxResult, RunStats

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DegeneracyOptions:
    """Schedule optimizations."""
    use_lower_start: bool = False
    use_leaps: bool = False
    rng: str = "philox"

    def schedule(self) -> BaseSchedule:
        return LeapSchedule() if self.use_leaps else BaselineSchedule()


def _elapsed_ms(start: float) -> float:
    return (time.perf_counter() - start) * 1000.0


def _fallback(graph: Graph, stats: RunStats, start: float, reason: str) -> ApproxResult:
    logger.info(f"Falling back to exact peeling ({reason})")
    value = peel_degeneracy(graph)
    stats.final_step = None
    stats.wall_ms = _elapsed_ms(start)
    return ApproxResult(value=value, used_fallback=True, stats=stats)


def approximate_degeneracy(
    graph: Graph,
    epsilon: float,
    c: float,
    seed: int = 0,
    opts: DegeneracyOptions | None = None,
) -> ApproxResult:
    """(1+epsilon)-approximate degeneracy of graph.

    Args:
        graph: Input graph.
        epsilon: Error factor in (0, 1].
        c: Failure probability exponent, > 0.
        seed: Seed of the reused random array.
        opts: Lower-start and leap optimizations.

    Raises:
        ParameterError: epsilon or c out of range.
    """
    validate_epsilon_c(epsilon, c)
    opts = opts or DegeneracyOptions()
    start = time.perf_counter()
    stats = RunStats()
    n = graph.node_count

    if graph.edge_count == 0:
        logger.info(f"Edgeless graph on {n} nodes: degeneracy 0")
        stats.wall_ms = _elapsed_ms(start)
        return ApproxResult(value=0, stats=stats)
    if n < 2:
        return _fallback(graph, stats, start, "fewer than 2 nodes")

    params = init_params(n, epsilon, c)
    if params.sampling_done:
        return _fallback(graph, stats, start, f"initial sampling rate p0={params.p0:.4f} >= 1")

    start_step = 1
    if opts.use_lower_start:
        bound = lower_start_threshold(graph)
        start_step = params.steps_to_threshold(bound)
        logger.debug(f"Lower start: bound d={bound}, starting at step {start_step}")

    rs = RandomSource.create(seed, graph.max_degree, rng=opts.rng)
    context = ScheduleContext(engine=TrialEngine(graph, rs), base=params, start_step=start_step, stats=stats)
    schedule = opts.schedule()
    result = schedule.search(context)

    if not result.found:
        return _fallback(graph, stats, start, f"{result.reason} at step {result.probe.step}")

    stats.final_step = result.probe.step
    stats.wall_ms = _elapsed_ms(start)
    value = result.probe.params.l
    logger.info(
        f"{schedule.name} found threshold l={value:.4f} at step {result.probe.step} "
        f"after {stats.trials} trials and {stats.samples_drawn} samples"
    )
    return ApproxResult(value=value, used_fallback=False, stats=stats)
