"""
One threshold trial: sample neighbors of high-degree nodes and peel.

Given threshold l and sampling rate p, the trial puts every node of degree
>= l into H, lets each v in H draw k(v) = ceil(p * deg(v)) neighbor samples,
and moves v to L as soon as its surviving-sample counter t(v) drops below
l * k(v) / deg(v). Peels propagate through the Sampled lists: when u leaves
H, every node that sampled u while u was in H loses one survivor. The
nodes still in H once the queue drains are the survivors.
"""

import bisect
import logging
import math
from collections import deque
from dataclasses import dataclass, field
from typing import Protocol

import numpy as np

from coreprobe.algorithms.sampling import RandomSource
from coreprobe.core.exceptions import ParameterError
from coreprobe.graph.csr import Graph

logger = logging.getLogger(__name__)


class TrialObserver(Protocol):
    """Instrumentation hooks called from inside a trial."""

    def on_sample(self, v: int, u: int) -> None:
        """v drew neighbor u."""

    def on_peel(self, v: int, t: int, k: int) -> None:
        """v moved from H to L with counter t out of k samples."""

    def on_dequeue(self, u: int) -> None:
        """u is taken off the peel queue before its Sampled list is processed."""


@dataclass
class TrialState:
    """Per-trial working state, reused across trials by epoch stamping.

    A node is in H for the current trial iff ``in_h[v] == epoch``; its
    Sampled list is valid iff ``sampled_epoch[v] == epoch``. Neither array
    needs clearing between trials.
    """
    in_h: list[int]
    k: list[int]
    t: list[int]
    sampled_by: list[list[int]]
    sampled_epoch: list[int]
    queue: deque = field(default_factory=deque)
    epoch: int = 0

    @classmethod
    def allocate(cls, n: int) -> "TrialState":
        return cls(
            in_h=[0] * n,
            k=[0] * n,
            t=[0] * n,
            sampled_by=[[] for _ in range(n)],
            sampled_epoch=[0] * n,
        )

    def is_in_h(self, v: int) -> bool:
        return self.in_h[v] == self.epoch

    def sampled(self, u: int) -> list[int]:
        """Sampled(u) for the current trial."""
        return self.sampled_by[u] if self.sampled_epoch[u] == self.epoch else []


@dataclass
class TrialOutcome:
    """Result of a single trial."""
    l: float
    p: float
    h_size: int
    survivors: list[int]
    samples_drawn: int
    peeled: int

    @property
    def nonempty(self) -> bool:
        return bool(self.survivors)


def sample_count(p: float, degree: int) -> int:
    """k(v) = ceil(p * deg(v)), never more than deg(v)."""
    return min(math.ceil(p * degree), degree)


def is_peeled(t: int, degree: int, l: float, k: int) -> bool:
    """t(v) < l * k(v) / deg(v), compared without division."""
    return t * degree < l * k


class TrialEngine:
    """Runs trials on one graph with one RandomSource.

    Nodes can be excluded permanently (the labeled nodes of the k-core
    extension); excluded nodes never enter H and count as L when sampled.
    """

    def __init__(self, graph: Graph, rs: RandomSource):
        if len(rs) < graph.max_degree:
            raise ParameterError("RandomSource size", len(rs), f"must cover max degree {graph.max_degree}")
        self.graph = graph
        self.rs = rs
        self.state = TrialState.allocate(graph.node_count)
        self._excluded = bytearray(graph.node_count)
        self._excluded_count = 0

        # nodes by descending degree, ties by ascending id; H is always a prefix
        degrees = graph.degrees
        self._order: list[int] = np.lexsort((np.arange(graph.node_count), -degrees)).tolist()
        self._neg_sorted_degrees: list[int] = (-degrees[self._order]).tolist() if graph.node_count else []

    @property
    def excluded_count(self) -> int:
        return self._excluded_count

    def exclude(self, nodes: list[int]) -> None:
        for v in nodes:
            if not self._excluded[v]:
                self._excluded[v] = 1
                self._excluded_count += 1

    def is_excluded(self, v: int) -> bool:
        return bool(self._excluded[v])

    def high_degree_nodes(self, l: float) -> list[int]:
        """H = {v not excluded : deg(v) >= l}, in descending degree order."""
        count = bisect.bisect_right(self._neg_sorted_degrees, -l)
        excluded = self._excluded
        return [v for v in self._order[:count] if not excluded[v]]

    def run(self, l: float, p: float, observer: TrialObserver | None = None) -> TrialOutcome:
        """Execute one trial at threshold l and sampling rate p."""
        if not 0.0 < p < 1.0:
            raise ParameterError("p", p, "trial needs 0 < p < 1")
        if l <= 0.0:
            raise ParameterError("l", l, "threshold must be positive")

        offsets, nbrs, deg = self.graph.lists
        r = self.rs.as_list
        state = self.state
        state.epoch += 1
        epoch = state.epoch
        in_h, k_of, t_of = state.in_h, state.k, state.t
        sampled_by, sampled_epoch = state.sampled_by, state.sampled_epoch
        queue = state.queue
        queue.clear()

        h_nodes = self.high_degree_nodes(l)
        for v in h_nodes:
            in_h[v] = epoch

        samples = 0
        peeled = 0
        for v in h_nodes:
            d = deg[v]
            kv = min(math.ceil(p * d), d)
            need = l * kv
            t = kv
            base = offsets[v]
            k_of[v] = kv
            for i in range(kv):
                u = nbrs[base + min(int(r[i] * d), d - 1)]
                samples += 1
                if observer is not None:
                    observer.on_sample(v, u)
                if in_h[u] != epoch:
                    t -= 1
                    if t * d < need:
                        in_h[v] = 0
                        queue.append(v)
                        peeled += 1
                        if observer is not None:
                            observer.on_peel(v, t, kv)
                        break
                elif sampled_epoch[u] != epoch:
                    sampled_epoch[u] = epoch
                    sampled_by[u] = [v]
                else:
                    sampled_by[u].append(v)
            t_of[v] = t

        while queue:
            u = queue.popleft()
            if observer is not None:
                observer.on_dequeue(u)
            if sampled_epoch[u] != epoch:
                continue
            for v in sampled_by[u]:
                if in_h[v] == epoch:
                    t = t_of[v] - 1
                    t_of[v] = t
                    if t * deg[v] < l * k_of[v]:
                        in_h[v] = 0
                        queue.append(v)
                        peeled += 1
                        if observer is not None:
                            observer.on_peel(v, t, k_of[v])

        survivors = [v for v in h_nodes if in_h[v] == epoch]
        logger.debug(
            f"Trial l={l:.4f} p={p:.6f}: |H|={len(h_nodes)} survivors={len(survivors)} "
            f"samples={samples} peeled={peeled}"
        )
        return TrialOutcome(
            l=l,
            p=p,
            h_size=len(h_nodes),
            survivors=survivors,
            samples_drawn=samples,
            peeled=peeled,
        )


def run_trial(graph: Graph, l: float, p: float, rs: RandomSource) -> tuple[set[int], int]:
    """One trial on a fresh engine.

    Returns:
        (surviving nodes of H, number of samples drawn)
    """
    outcome = TrialEngine(graph, rs).run(l, p)
    return set(outcome.survivors), outcome.samples_drawn
