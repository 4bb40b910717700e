"""
Reused randomness for neighbor sampling.

A single array R of max-degree uniform doubles is drawn once per run. The
i-th sample of any node v is the entry at position floor(R[i] * deg(v)) of
v's incidence list, in every trial. The union bound over all nodes and
trials covers this reuse, so no fresh randomness is needed per sample.
"""

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from coreprobe.core.exceptions import NodeBoundsError, ParameterError

_BIT_GENERATORS = {
    "philox": np.random.Philox,
    "pcg64": np.random.PCG64,
}


@dataclass(frozen=True, eq=False)
class RandomSource:
    """Seeded array R of doubles in [0, 1) built from 53 random mantissa bits."""
    seed: int
    values: np.ndarray = field(repr=False)

    @classmethod
    def create(cls, seed: int, size: int, rng: str = "philox") -> "RandomSource":
        """Draw R of the given size (the graph's maximum degree)."""
        if size < 0:
            raise ParameterError("size", size, "must be nonnegative")
        bit_generator = _BIT_GENERATORS.get(rng)
        if bit_generator is None:
            raise ParameterError("rng", rng, f"must be one of {sorted(_BIT_GENERATORS)}")
        values = np.random.Generator(bit_generator(seed)).random(size)
        values.flags.writeable = False
        return cls(seed=seed, values=values)

    def __len__(self) -> int:
        return int(self.values.size)

    @cached_property
    def as_list(self) -> list[float]:
        return self.values.tolist()


def sample_index(rs: RandomSource, v: int, i: int, d: int) -> int:
    """Position in v's incidence list of v's i-th sample, given deg(v) = d.

    The result depends only on (i, d), so nodes of equal degree sample the
    same positions and every trial repeats the same choices.
    """
    if not 0 <= i < len(rs):
        raise NodeBoundsError(f"Sample index {i} outside R of size {len(rs)}", node=v, index=i)
    if d <= i:
        raise NodeBoundsError(f"Sample index {i} not below degree {d}", node=v, index=i)
    return min(int(rs.values[i] * d), d - 1)
