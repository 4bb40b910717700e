"""
Result model definitions for exact and approximate core computations.
"""

from dataclasses import dataclass, field
from enum import Enum

import numpy as np
from pydantic import BaseModel, Field


class LabelSource(str, Enum):
    """How an approximate core label was assigned."""
    LOOP = "loop"
    PEEL = "peel"
    CAPPED = "capped"


@dataclass
class CoreLabels:
    """Exact core numbers c(v) and the degeneracy of a graph."""
    labels: np.ndarray
    degeneracy: int

    def __len__(self) -> int:
        return int(self.labels.size)

    def core(self, k: int) -> np.ndarray:
        """Nodes whose core number is exactly k."""
        return np.flatnonzero(self.labels == k)


class OutcoreTally(BaseModel):
    """Edge tally for one core level."""
    k: int
    core_size: int
    outcore_edges: int
    bound: int
    holds: bool


class OutcoreReport(BaseModel):
    """Per-level |outcore(k)| <= k * |core(k)| check."""
    tallies: list[OutcoreTally] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(t.holds for t in self.tallies)

    @property
    def violations(self) -> list[OutcoreTally]:
        return [t for t in self.tallies if not t.holds]


class RunStats(BaseModel):
    """Cost counters of an approximate run."""
    trials: int = 0
    samples_drawn: int = 0
    nodes_peeled: int = 0
    # Schedule index j of the returned threshold, None for early exit or fallback
    final_step: int | None = None
    wall_ms: float = 0.0

    def absorb(self, samples: int, peeled: int) -> None:
        """Add one trial's counters."""
        self.trials += 1
        self.samples_drawn += samples
        self.nodes_peeled += peeled


class ApproxResult(BaseModel):
    """Output of approximate_degeneracy."""
    # Threshold l from the schedule, or the exact integer degeneracy
    value: int | float
    used_fallback: bool = False
    stats: RunStats = Field(default_factory=RunStats)


@dataclass
class LabeledDecomposition:
    """Approximate core numbers for every node."""
    labels: np.ndarray
    label_source: list[LabelSource]
    # Last label assigned inside the threshold loop (l'), None if the loop labeled nothing
    last_loop_label: float | None
    # Distinct loop labels in assignment order
    loop_labels: list[float] = field(default_factory=list)
    stats: RunStats = field(default_factory=RunStats)
    used_fallback: bool = False

    def __len__(self) -> int:
        return int(self.labels.size)

    def rounded(self) -> np.ndarray:
        return np.rint(self.labels).astype(np.int64)
