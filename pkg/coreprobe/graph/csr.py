"""
Immutable CSR graph storage.

The Graph answers the two queries of the incident-list access model in
constant time: ``degree(v)`` and ``neighbor(v, i)``. Every undirected edge
is stored twice, once in each endpoint's incidence list, and every
incidence list is sorted by neighbor id so that sampling by list position
is reproducible across platforms.
"""

import logging
from functools import cached_property

import numpy as np
from pydantic import BaseModel, Field

from coreprobe.core.exceptions import GraphFormatError, NodeBoundsError

logger = logging.getLogger(__name__)

INDEX_DTYPE = np.int64


class GraphStats(BaseModel):
    """Summary statistics of a Graph."""
    node_count: int
    edge_count: int
    max_degree: int
    # histogram[d] = number of nodes of degree d
    histogram: list[int] = Field(default_factory=list)


def _readonly(arr: np.ndarray) -> np.ndarray:
    arr = np.ascontiguousarray(arr, dtype=INDEX_DTYPE)
    arr.flags.writeable = False
    return arr


class Graph:
    """Undirected graph in compressed sparse row form.

    Attributes:
        offsets: n+1 cumulative-degree indices into ``neighbors``.
        neighbors: flat array of 2m node ids.
        original_ids: external id of each compacted node, or None when the
            ids were not remapped.
    """

    def __init__(
        self,
        offsets: np.ndarray,
        neighbors: np.ndarray,
        original_ids: np.ndarray | None = None,
        validate: bool = True,
    ):
        self._offsets = _readonly(offsets)
        self._neighbors = _readonly(neighbors)
        self._original_ids = _readonly(original_ids) if original_ids is not None else None
        if validate:
            self.validate(simple=False)

    # --- construction ---

    @classmethod
    def from_edges(
        cls,
        src: np.ndarray | list[int],
        dst: np.ndarray | list[int],
        n: int | None = None,
        symmetrize: bool = True,
        drop_self_loops: bool = True,
        dedup: bool = True,
        original_ids: np.ndarray | None = None,
    ) -> "Graph":
        """Build a Graph from parallel endpoint arrays.

        Without ``symmetrize`` the input must already list both directions
        of every edge; the result is validated for symmetry.
        """
        src = np.asarray(src, dtype=INDEX_DTYPE).ravel()
        dst = np.asarray(dst, dtype=INDEX_DTYPE).ravel()
        if src.shape != dst.shape:
            raise GraphFormatError("Endpoint arrays differ in length")
        if n is None:
            n = int(max(src.max(initial=-1), dst.max(initial=-1))) + 1
        if src.size and (min(src.min(), dst.min()) < 0 or max(src.max(), dst.max()) >= n):
            raise GraphFormatError(f"Edge endpoint outside 0..{n - 1}")

        if drop_self_loops:
            keep = src != dst
            src, dst = src[keep], dst[keep]

        base = max(n, 1)
        if symmetrize:
            lo, hi = np.minimum(src, dst), np.maximum(src, dst)
            if dedup:
                keys = np.unique(lo * base + hi)
                lo, hi = keys // base, keys % base
            # a kept self-loop contributes two entries, as any other edge does
            src, dst = np.concatenate([lo, hi]), np.concatenate([hi, lo])
        elif dedup:
            keys = np.unique(src * base + dst)
            src, dst = keys // base, keys % base
            loops = src == dst
            src = np.concatenate([src, src[loops]])
            dst = np.concatenate([dst, dst[loops]])

        order = np.lexsort((dst, src))
        src, dst = src[order], dst[order]

        offsets = np.zeros(n + 1, dtype=INDEX_DTYPE)
        np.cumsum(np.bincount(src, minlength=n), out=offsets[1:])
        graph = cls(offsets, dst, original_ids=original_ids, validate=False)
        graph.validate(simple=drop_self_loops and dedup)
        return graph

    @classmethod
    def empty(cls, n: int = 0) -> "Graph":
        """Edgeless graph on n nodes."""
        return cls(np.zeros(n + 1, dtype=INDEX_DTYPE), np.empty(0, dtype=INDEX_DTYPE))

    def validate(self, simple: bool = True) -> None:
        """Check the CSR invariants, raising GraphFormatError on violation.

        Args:
            simple: Also reject self-loops and parallel edges.
        """
        offsets, nbrs = self._offsets, self._neighbors
        n = offsets.size - 1
        if n < 0 or offsets[0] != 0:
            raise GraphFormatError("offsets must start at 0")
        if np.any(np.diff(offsets) < 0):
            raise GraphFormatError("offsets must be nondecreasing")
        if offsets[-1] != nbrs.size or nbrs.size % 2:
            raise GraphFormatError(f"offsets[n]={int(offsets[-1])} does not match 2m={nbrs.size}")
        if self._original_ids is not None and self._original_ids.size != n:
            raise GraphFormatError("original_ids length differs from node count")
        if nbrs.size == 0:
            return
        if nbrs.min() < 0 or nbrs.max() >= n:
            raise GraphFormatError("neighbor id out of range")

        src = self.sources
        fwd = src * n + nbrs
        rev = np.sort(nbrs * n + src)
        if not np.array_equal(np.sort(fwd), rev):
            raise GraphFormatError("adjacency is not symmetric")
        if simple:
            if np.any(src == nbrs):
                raise GraphFormatError("self-loop present")
            # lists are sorted, so a parallel edge shows up as equal consecutive keys
            same_row = src[1:] == src[:-1]
            if np.any(same_row & (nbrs[1:] == nbrs[:-1])):
                raise GraphFormatError("parallel edge present")

    # --- basic properties ---

    @property
    def node_count(self) -> int:
        return self._offsets.size - 1

    @property
    def edge_count(self) -> int:
        return self._neighbors.size // 2

    @property
    def offsets(self) -> np.ndarray:
        return self._offsets

    @property
    def neighbors(self) -> np.ndarray:
        return self._neighbors

    @property
    def original_ids(self) -> np.ndarray | None:
        return self._original_ids

    @cached_property
    def degrees(self) -> np.ndarray:
        return _readonly(np.diff(self._offsets))

    @cached_property
    def sources(self) -> np.ndarray:
        """Owner node of each entry in ``neighbors``."""
        return _readonly(np.repeat(np.arange(self.node_count, dtype=INDEX_DTYPE), np.diff(self._offsets)))

    @property
    def max_degree(self) -> int:
        return int(self.degrees.max(initial=0))

    @cached_property
    def lists(self) -> tuple[list[int], list[int], list[int]]:
        """(offsets, neighbors, degrees) as Python lists for scalar hot loops."""
        return self._offsets.tolist(), self._neighbors.tolist(), self.degrees.tolist()

    # --- access model ---

    def degree(self, v: int) -> int:
        """Degree query: deg(v) in constant time."""
        if not 0 <= v < self.node_count:
            raise NodeBoundsError(f"Node {v} out of range 0..{self.node_count - 1}", node=v)
        return int(self._offsets[v + 1] - self._offsets[v])

    def neighbor(self, v: int, i: int) -> int:
        """Neighbor query: the i-th entry of v's incidence list."""
        d = self.degree(v)
        if not 0 <= i < d:
            raise NodeBoundsError(f"Index {i} out of range for node {v} of degree {d}", node=v, index=i)
        return int(self._neighbors[self._offsets[v] + i])

    def neighbors_of(self, v: int) -> np.ndarray:
        self.degree(v)
        return self._neighbors[self._offsets[v]:self._offsets[v + 1]]

    def original_id(self, v: int) -> int:
        if self._original_ids is None:
            return v
        return int(self._original_ids[v])

    # --- derived graphs ---

    def stats(self) -> GraphStats:
        degrees = self.degrees
        histogram = np.bincount(degrees).tolist() if degrees.size else []
        return GraphStats(
            node_count=self.node_count,
            edge_count=self.edge_count,
            max_degree=self.max_degree,
            histogram=histogram,
        )

    def edge_pairs(self) -> tuple[np.ndarray, np.ndarray]:
        """Each undirected edge once as (u, v) with u <= v."""
        src, dst = self.sources, self._neighbors
        upper = src < dst
        loops = np.flatnonzero(src == dst)[::2]
        return (
            np.concatenate([src[upper], src[loops]]),
            np.concatenate([dst[upper], dst[loops]]),
        )

    def induced_subgraph(self, mask: np.ndarray) -> tuple["Graph", np.ndarray]:
        """Subgraph induced by the nodes where ``mask`` is true.

        Returns:
            The subgraph and the array mapping its node ids to ids in self.
        """
        mask = np.asarray(mask, dtype=bool)
        if mask.size != self.node_count:
            raise GraphFormatError("mask length differs from node count")
        kept = np.flatnonzero(mask).astype(INDEX_DTYPE)
        remap = np.full(self.node_count, -1, dtype=INDEX_DTYPE)
        remap[kept] = np.arange(kept.size, dtype=INDEX_DTYPE)
        src, dst = self.sources, self._neighbors
        inside = mask[src] & mask[dst]
        sub = self._from_directed(remap[src[inside]], remap[dst[inside]], kept.size)
        return sub, kept

    def permuted(self, permutation: np.ndarray) -> "Graph":
        """Relabel node v as ``permutation[v]``."""
        perm = np.asarray(permutation, dtype=INDEX_DTYPE)
        if perm.size != self.node_count or not np.array_equal(np.sort(perm), np.arange(perm.size)):
            raise GraphFormatError("not a permutation of the node ids")
        return self._from_directed(perm[self.sources], perm[self._neighbors], self.node_count)

    @classmethod
    def _from_directed(cls, src: np.ndarray, dst: np.ndarray, n: int) -> "Graph":
        order = np.lexsort((dst, src))
        offsets = np.zeros(n + 1, dtype=INDEX_DTYPE)
        np.cumsum(np.bincount(src, minlength=n), out=offsets[1:])
        return cls(offsets, dst[order], validate=False)

    def __repr__(self) -> str:
        return f"Graph(n={self.node_count}, m={self.edge_count})"
