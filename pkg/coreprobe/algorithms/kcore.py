"""
Approximate k-core decomposition.

Runs the same threshold schedule as the degeneracy approximation but does
not stop at the first trial with survivors. Each step labels its survivors
with the step's threshold l and removes them from later trials; labeled
nodes count as L when sampled. Once p reaches 1, the still unlabeled
nodes are peeled exactly on the subgraph they induce, and any peeled core
number above l'/(1+1.5*eps1), with l' the last loop label, is capped to l'.
"""

import logging
import time

import numpy as np

from coreprobe.algorithms.exact import core_decomposition, peel_induced
from coreprobe.algorithms.params import init_params, validate_epsilon_c
from coreprobe.algorithms.sampling import RandomSource
from coreprobe.algorithms.trial import TrialEngine
from coreprobe.graph.csr import Graph
from coreprobe.models.results import LabeledDecomposition, LabelSource, RunStats

logger = logging.getLogger(__name__)


def _exact_labels(graph: Graph, stats: RunStats, start: float) -> LabeledDecomposition:
    labels = core_decomposition(graph).labels.astype(np.float64)
    stats.wall_ms = (time.perf_counter() - start) * 1000.0
    return LabeledDecomposition(
        labels=labels,
        label_source=[LabelSource.PEEL] * graph.node_count,
        last_loop_label=None,
        stats=stats,
        used_fallback=graph.edge_count > 0,
    )


def approximate_core_decomposition(
    graph: Graph,
    epsilon: float,
    c: float,
    seed: int = 0,
    rng: str = "philox",
) -> LabeledDecomposition:
    """Label every node with a (1+epsilon)-approximate core number.

    Raises:
        ParameterError: epsilon or c out of range.
    """
    validate_epsilon_c(epsilon, c)
    start = time.perf_counter()
    stats = RunStats()
    n = graph.node_count

    if graph.edge_count == 0 or n < 2:
        return _exact_labels(graph, stats, start)
    params = init_params(n, epsilon, c)
    if params.sampling_done:
        logger.info(f"Initial sampling rate p0={params.p0:.4f} >= 1, using exact peeling")
        return _exact_labels(graph, stats, start)

    engine = TrialEngine(graph, RandomSource.create(seed, graph.max_degree, rng=rng))
    labels = np.zeros(n, dtype=np.float64)
    source = [LabelSource.PEEL] * n
    loop_labels: list[float] = []

    while not params.sampling_done and params.l >= 1.0 and engine.excluded_count < n:
        outcome = engine.run(params.l, params.p)
        stats.absorb(outcome.samples_drawn, outcome.peeled)
        if outcome.survivors:
            labels[outcome.survivors] = params.l
            for v in outcome.survivors:
                source[v] = LabelSource.LOOP
            engine.exclude(outcome.survivors)
            loop_labels.append(params.l)
            stats.final_step = params.step
            logger.debug(f"Step {params.step}: labeled {len(outcome.survivors)} nodes with l={params.l:.4f}")
        params = params.advance()

    last = loop_labels[-1] if loop_labels else None
    unlabeled = np.array([not engine.is_excluded(v) for v in range(n)], dtype=bool)
    used_fallback = bool(unlabeled.any())
    if used_fallback:
        peeled = peel_induced(graph, unlabeled)
        cap = last / (1.0 + 1.5 * params.epsilon1) if last is not None else None
        for v in np.flatnonzero(unlabeled).tolist():
            value = int(peeled[v])
            if cap is not None and value > cap:
                labels[v] = last
                source[v] = LabelSource.CAPPED
            else:
                labels[v] = value
        logger.info(
            f"Peeled {int(unlabeled.sum())} unlabeled nodes"
            + (f" with cap l'={last:.4f}" if last is not None else "")
        )

    stats.wall_ms = (time.perf_counter() - start) * 1000.0
    return LabeledDecomposition(
        labels=labels,
        label_source=source,
        last_loop_label=last,
        loop_labels=loop_labels,
        stats=stats,
        used_fallback=used_fallback,
    )
