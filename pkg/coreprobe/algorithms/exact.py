"""
Exact core decomposition by bucket-queue peeling.

Implements the linear-time peeling algorithm: nodes are kept in an array
partitioned into buckets by current degree, and each removal of a
minimum-degree node moves its higher-degree neighbors one bucket down in
constant time. Runs in O(n + m).

The degeneracy ordering is produced by a separate peel that always removes
the smallest node id among the minimum-degree nodes, so the traversal is
reproducible from the graph alone. Each degree bucket is a heap of ids,
giving O((n + m) log n).
"""

import heapq
import logging

import numpy as np

from coreprobe.core.exceptions import InvariantViolationError, ValidationError
from coreprobe.graph.csr import INDEX_DTYPE, Graph
from coreprobe.models.results import CoreLabels, OutcoreReport, OutcoreTally

logger = logging.getLogger(__name__)


def _bucket_peel(graph: Graph) -> list[int]:
    """Return the core number of every node."""
    n = graph.node_count
    if n == 0:
        return []
    offsets, nbrs, degrees = graph.lists
    deg = list(degrees)
    max_deg = max(deg)

    # bin_start[d]: first position of bucket d in vert
    bin_start = [0] * (max_deg + 1)
    for d in deg:
        bin_start[d] += 1
    start = 0
    for d in range(max_deg + 1):
        count = bin_start[d]
        bin_start[d] = start
        start += count

    pos = [0] * n
    vert = [0] * n
    for v in range(n):
        p = bin_start[deg[v]]
        pos[v] = p
        vert[p] = v
        bin_start[deg[v]] += 1
    for d in range(max_deg, 0, -1):
        bin_start[d] = bin_start[d - 1]
    bin_start[0] = 0

    for i in range(n):
        v = vert[i]
        dv = deg[v]
        for j in range(offsets[v], offsets[v + 1]):
            u = nbrs[j]
            du = deg[u]
            if du > dv:
                pu = pos[u]
                pw = bin_start[du]
                w = vert[pw]
                if u != w:
                    pos[u] = pw
                    vert[pu] = w
                    pos[w] = pu
                    vert[pw] = u
                bin_start[du] += 1
                deg[u] = du - 1
    return deg


def _smallest_id_peel(graph: Graph) -> list[int]:
    """Removal order of min-degree peeling, ties by smallest node id."""
    n = graph.node_count
    if n == 0:
        return []
    offsets, nbrs, degrees = graph.lists
    deg = list(degrees)
    # ids are appended in ascending order, so every bucket starts as a valid heap
    buckets: list[list[int]] = [[] for _ in range(max(deg) + 1)]
    for v in range(n):
        buckets[deg[v]].append(v)

    removed = [False] * n
    order: list[int] = []
    d = 0
    while len(order) < n:
        bucket = buckets[d]
        # entries left behind by a degree decrement are stale
        while bucket and (removed[bucket[0]] or deg[bucket[0]] != d):
            heapq.heappop(bucket)
        if not bucket:
            d += 1
            continue
        v = heapq.heappop(bucket)
        removed[v] = True
        order.append(v)
        for j in range(offsets[v], offsets[v + 1]):
            u = nbrs[j]
            if not removed[u]:
                deg[u] -= 1
                heapq.heappush(buckets[deg[u]], u)
        if d > 0:
            d -= 1
    return order


def core_decomposition(graph: Graph) -> CoreLabels:
    """Exact core number of every node.

    Degree-0 nodes receive core number 0; the degeneracy of an edgeless
    graph is 0.
    """
    labels = np.asarray(_bucket_peel(graph), dtype=INDEX_DTYPE)
    degeneracy = int(labels.max(initial=0))
    logger.debug(f"Core decomposition of {graph!r}: degeneracy={degeneracy}")
    return CoreLabels(labels=labels, degeneracy=degeneracy)


def peel_degeneracy(graph: Graph) -> int:
    """Exact degeneracy, the largest k with a non-empty k-core."""
    return max(_bucket_peel(graph), default=0)


def degeneracy_ordering(graph: Graph) -> np.ndarray:
    """Node removal order of min-degree peeling, ties by smallest node id.

    Every node has at most degeneracy-many neighbors later in the order.
    """
    return np.asarray(_smallest_id_peel(graph), dtype=INDEX_DTYPE)


def peel_induced(graph: Graph, mask: np.ndarray) -> np.ndarray:
    """Core numbers within the subgraph induced by ``mask``.

    Returns:
        Array of length n; entries outside the mask are -1.
    """
    sub, kept = graph.induced_subgraph(mask)
    result = np.full(graph.node_count, -1, dtype=INDEX_DTYPE)
    if kept.size:
        result[kept] = _bucket_peel(sub)
    return result


def check_outcore_bound(graph: Graph, labels: CoreLabels, strict: bool = False) -> OutcoreReport:
    """Check |outcore(k)| <= k * |core(k)| for every nonempty core(k).

    core(k) is the set of nodes with core number exactly k; outcore(k) the
    edges joining a node of core(k) to a node of core number >= k. Each
    undirected edge belongs to outcore(min(c(u), c(v))).

    Args:
        graph: The graph the labels were computed on.
        labels: Exact core numbers.
        strict: Raise InvariantViolationError instead of only reporting.
    """
    c = np.asarray(labels.labels, dtype=INDEX_DTYPE)
    if c.size != graph.node_count:
        raise ValidationError(
            f"Label count {c.size} differs from node count {graph.node_count}",
            {"labels": int(c.size), "nodes": graph.node_count},
        )
    if c.size == 0:
        return OutcoreReport()

    u, v = graph.edge_pairs()
    levels = int(c.max()) + 1
    core_sizes = np.bincount(c, minlength=levels)
    outcore = np.bincount(np.minimum(c[u], c[v]), minlength=levels)

    tallies = []
    for k in np.flatnonzero(core_sizes).tolist():
        bound = k * int(core_sizes[k])
        edges = int(outcore[k])
        tallies.append(OutcoreTally(k=k, core_size=int(core_sizes[k]), outcore_edges=edges, bound=bound, holds=edges <= bound))

    report = OutcoreReport(tallies=tallies)
    if not report.ok:
        bad = report.violations[0]
        logger.error(f"Outcore bound violated at k={bad.k}: {bad.outcore_edges} > {bad.bound}")
        if strict:
            raise InvariantViolationError(
                f"|outcore({bad.k})|={bad.outcore_edges} exceeds {bad.k}*|core({bad.k})|={bad.bound}",
                {"violations": [t.model_dump() for t in report.violations]},
            )
    return report
