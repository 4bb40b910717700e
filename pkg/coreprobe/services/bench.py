"""Benchmarks - sample counts across graph sizes and estimates across epsilons."""

import asyncio
import logging
import math
from collections.abc import Callable
from dataclasses import dataclass
from typing import Any

import numpy as np

from coreprobe.algorithms.degeneracy import DegeneracyOptions, approximate_degeneracy
from coreprobe.algorithms.exact import peel_degeneracy
from coreprobe.algorithms.params import validate_epsilon_c, within_interval
from coreprobe.core.config import get_settings
from coreprobe.core.exceptions import ParameterError
from coreprobe.graph.csr import Graph
from coreprobe.graph.generators import gen_clique_union, gen_erdos_renyi
from coreprobe.models.report import EpsilonRow, EpsilonTable, GraphSummary, ScalingRow, ScalingTable
from coreprobe.models.results import ApproxResult
from coreprobe.services.report_service import error_factor

logger = logging.getLogger(__name__)

FAMILIES = ("er", "clique-union")


@dataclass(frozen=True)
class BenchConfig:
    """One scaling sweep."""
    family: str
    sizes: tuple[int, ...]
    epsilon: float
    c: float
    seeds_per_size: int = 5
    workers: int = 1
    er_avg_degree: float = 20.0
    clique_exponent: float = 0.5
    opts: DegeneracyOptions = DegeneracyOptions()

    @classmethod
    def from_settings(cls, family: str, sizes: list[int], **overrides) -> "BenchConfig":
        """Fill unset fields from the bench and sampling settings."""
        settings = get_settings()
        values = {
            "epsilon": settings.sampling.epsilon,
            "c": settings.sampling.c,
            "seeds_per_size": settings.bench.seeds_per_size,
            "workers": settings.bench.workers,
            "er_avg_degree": settings.bench.er_avg_degree,
            "clique_exponent": settings.bench.clique_exponent,
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(family=family, sizes=tuple(sizes), **values)

    def validate(self) -> None:
        if self.family not in FAMILIES:
            raise ParameterError("family", self.family, f"must be one of {', '.join(FAMILIES)}")
        if not self.sizes:
            raise ParameterError("sizes", self.sizes, "at least one size is required")
        for n in self.sizes:
            if n < 2:
                raise ParameterError("size", n, "must be at least 2")
        if self.seeds_per_size < 1:
            raise ParameterError("seeds_per_size", self.seeds_per_size, "must be at least 1")
        if self.workers < 1:
            raise ParameterError("workers", self.workers, "must be at least 1")


def clique_union_shape(n: int, exponent: float, epsilon: float) -> tuple[int, int, int]:
    """(large, small, count) for a clique union on about n nodes.

    large = round(n^exponent); the small cliques have size
    large / (1 + epsilon/3)^2 and fill the remaining nodes.
    """
    large = max(2, min(n, round(n ** exponent)))
    small = max(2, round(large / (1.0 + epsilon / 3.0) ** 2))
    count = max(0, (n - large) // small)
    return large, small, count


def build_graph(config: BenchConfig, n: int, seed: int) -> Graph:
    if config.family == "er":
        return gen_erdos_renyi(n, min(config.er_avg_degree, n - 1), seed=seed)
    return gen_clique_union(*clique_union_shape(n, config.clique_exponent, config.epsilon), seed=seed)


def run_once(config: BenchConfig, n: int, seed: int) -> ApproxResult:
    """Generate one instance and run the approximation on it with the same seed."""
    graph = build_graph(config, n, seed)
    return approximate_degeneracy(graph, config.epsilon, config.c, seed=seed, opts=config.opts)


def fitted_exponent(sizes: list[int], samples: list[float]) -> float | None:
    """Slope of log(samples) against log(n) over sizes with a positive sample count."""
    points = [(n, s) for n, s in zip(sizes, samples) if s > 0]
    if len(points) < 2:
        return None
    x = np.log([p[0] for p in points])
    y = np.log([p[1] for p in points])
    slope, _ = np.polyfit(x, y, 1)
    return float(slope)


def summarize_size(config: BenchConfig, n: int, results: list[ApproxResult]) -> ScalingRow:
    samples = [r.stats.samples_drawn for r in results]
    mean_samples = float(np.mean(samples))
    n_log_n = n * math.log(n)
    per_nb = None
    if config.family == "clique-union":
        per_nb = mean_samples / (n ** config.clique_exponent * math.log(n))
    return ScalingRow(
        n=n,
        runs=len(results),
        mean_samples=mean_samples,
        samples_per_nlogn=mean_samples / n_log_n,
        samples_per_nblogn=per_nb,
        mean_trials=float(np.mean([r.stats.trials for r in results])),
        fallback_runs=sum(r.used_fallback for r in results),
    )


async def run_limited(
    func: Callable[[Any, int], ApproxResult], jobs: list[tuple[Any, int]], workers: int
) -> list[ApproxResult]:
    """Run func(key, seed) for every job in a thread, at most ``workers`` at a time.

    Results come back in job order.
    """
    semaphore = asyncio.Semaphore(workers)

    async def run_with_limit(key: Any, seed: int) -> ApproxResult:
        async with semaphore:
            result = await asyncio.to_thread(func, key, seed)
            logger.debug(f"{key} seed={seed}: samples={result.stats.samples_drawn} fallback={result.used_fallback}")
            return result

    return list(await asyncio.gather(*(run_with_limit(key, seed) for key, seed in jobs)))


class ScalingBench:
    """Runs every (size, seed) pair of a sweep, optionally concurrently."""

    def __init__(self, config: BenchConfig):
        config.validate()
        self.config = config

    async def _run_all(self) -> dict[int, list[ApproxResult]]:
        jobs = [(n, seed) for n in self.config.sizes for seed in range(self.config.seeds_per_size)]
        outputs = await run_limited(lambda n, seed: run_once(self.config, n, seed), jobs, self.config.workers)

        # Aggregation is serialized and keyed by (size, seed) order
        by_size: dict[int, list[ApproxResult]] = {n: [] for n in self.config.sizes}
        for (n, _), result in zip(jobs, outputs):
            by_size[n].append(result)
        return by_size

    def run(self) -> ScalingTable:
        """Run the sweep and build the scaling table."""
        config = self.config
        logger.info(
            f"Scaling bench family={config.family} sizes={list(config.sizes)} "
            f"seeds={config.seeds_per_size} workers={config.workers}"
        )
        by_size = asyncio.run(self._run_all())
        rows = [summarize_size(config, n, by_size[n]) for n in config.sizes]

        ratios = [r.samples_per_nlogn for r in rows if r.mean_samples > 0]
        spread = max(ratios) / min(ratios) if len(ratios) >= 2 else None
        exponent = fitted_exponent([r.n for r in rows], [r.mean_samples for r in rows])
        fallback = sum(r.fallback_runs for r in rows)
        if fallback:
            logger.info(f"{fallback} runs used the exact fallback")

        return ScalingTable(
            family=config.family,
            epsilon=config.epsilon,
            c=config.c,
            rows=rows,
            nlogn_ratio_spread=spread,
            fitted_exponent=exponent,
        )


def run_scaling(config: BenchConfig) -> ScalingTable:
    return ScalingBench(config).run()


DEFAULT_EPSILONS = (0.5, 0.25, 0.1, 0.05, 0.01)


@dataclass(frozen=True)
class EpsilonSweepConfig:
    """Approximate degeneracy of one graph across several epsilons."""
    epsilons: tuple[float, ...] = DEFAULT_EPSILONS
    c: float = 1.0
    seed: int = 0
    seeds: int = 1
    workers: int = 1
    opts: DegeneracyOptions = DegeneracyOptions()

    def validate(self) -> None:
        if not self.epsilons:
            raise ParameterError("epsilons", self.epsilons, "at least one epsilon is required")
        if len(set(self.epsilons)) != len(self.epsilons):
            raise ParameterError("epsilons", self.epsilons, "must not repeat")
        for epsilon in self.epsilons:
            validate_epsilon_c(epsilon, self.c)
        if self.seeds < 1:
            raise ParameterError("seeds", self.seeds, "must be at least 1")
        if self.workers < 1:
            raise ParameterError("workers", self.workers, "must be at least 1")


def summarize_epsilon(epsilon: float, exact: int, results: list[ApproxResult]) -> EpsilonRow:
    values = [float(r.value) for r in results]
    factors = [error_factor(v, exact) for v in values]
    known = [f for f in factors if f is not None]
    return EpsilonRow(
        epsilon=epsilon,
        runs=len(results),
        mean_value=float(np.mean(values)),
        min_value=min(values),
        max_value=max(values),
        mean_error_factor=float(np.mean(known)) if len(known) == len(factors) else None,
        max_error_factor=max(known) if len(known) == len(factors) else None,
        within_rate=sum(within_interval(v, exact, epsilon) or v == exact for v in values) / len(values),
        mean_samples=float(np.mean([r.stats.samples_drawn for r in results])),
        mean_trials=float(np.mean([r.stats.trials for r in results])),
        fallback_runs=sum(r.used_fallback for r in results),
    )


class EpsilonSweep:
    """Runs every (epsilon, seed) pair on one graph against a single exact baseline."""

    def __init__(self, graph: Graph, config: EpsilonSweepConfig, source: str = ""):
        config.validate()
        self.graph = graph
        self.config = config
        self.source = source

    def run(self) -> EpsilonTable:
        config = self.config
        exact = peel_degeneracy(self.graph)
        logger.info(f"Epsilon sweep epsilons={list(config.epsilons)} seeds={config.seeds} exact={exact}")

        jobs = [(epsilon, config.seed + i) for epsilon in config.epsilons for i in range(config.seeds)]
        outputs = asyncio.run(
            run_limited(
                lambda epsilon, seed: approximate_degeneracy(self.graph, epsilon, config.c, seed=seed, opts=config.opts),
                jobs,
                config.workers,
            )
        )
        by_epsilon: dict[float, list[ApproxResult]] = {epsilon: [] for epsilon in config.epsilons}
        for (epsilon, _), result in zip(jobs, outputs):
            by_epsilon[epsilon].append(result)

        graph = self.graph
        return EpsilonTable(
            graph=GraphSummary(
                source=self.source,
                node_count=graph.node_count,
                edge_count=graph.edge_count,
                max_degree=graph.max_degree,
            ),
            c=config.c,
            exact=exact,
            rows=[summarize_epsilon(epsilon, exact, by_epsilon[epsilon]) for epsilon in by_epsilon],
        )


def run_epsilon_sweep(graph: Graph, config: EpsilonSweepConfig, source: str = "") -> EpsilonTable:
    return EpsilonSweep(graph, config, source).run()
