"""
Synthetic graph generators used as test and benchmark workloads.

Every generator is registered under a family name so graphs can be
requested with shell-friendly spec strings such as ``er:1000,20`` or
``clique-union:100,80,50`` (see ``parse_graph_spec``).
"""

import logging

import numpy as np

from coreprobe.core.exceptions import ParameterError
from coreprobe.graph.csr import INDEX_DTYPE, Graph
from coreprobe.graph.registry import GeneratorRegistry, register_generator

logger = logging.getLogger(__name__)


def make_rng(seed: int) -> np.random.Generator:
    """Counter-based generator, reproducible across platforms."""
    return np.random.Generator(np.random.Philox(seed))


def _require_count(name: str, value: float, minimum: int = 0) -> int:
    if value != int(value) or value < minimum:
        raise ParameterError(name, value, f"must be an integer >= {minimum}")
    return int(value)


def _pair_index_to_edges(k: np.ndarray, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Map linear indices over the pairs i < j (row-major) to (i, j)."""
    def row_start(i: np.ndarray) -> np.ndarray:
        return i * (2 * n - i - 1) // 2

    b = 2.0 * n - 1.0
    i = np.floor((b - np.sqrt(b * b - 8.0 * k)) / 2.0).astype(INDEX_DTYPE)
    i = np.clip(i, 0, max(n - 2, 0))
    # float rounding can leave i off by one near row boundaries
    i = np.where(row_start(i) > k, i - 1, i)
    i = np.where(row_start(i + 1) <= k, i + 1, i)
    j = k - row_start(i) + i + 1
    return i, j


@register_generator("er", arity=2, description="er:n,avg_degree  random G(n, p) graph")
def gen_erdos_renyi(n: int, avg_degree: float, seed: int = 0) -> Graph:
    """Random simple graph with each pair present with probability avg_degree/(n-1).

    The edge count is drawn from the binomial distribution and the edge set
    is a uniform subset of that size, which is the same distribution as
    independent coin flips per pair.
    """
    n = _require_count("n", n, minimum=1)
    if avg_degree < 0:
        raise ParameterError("avg_degree", avg_degree, "must be nonnegative")
    if avg_degree > n - 1:
        raise ParameterError("avg_degree", avg_degree, f"cannot exceed n-1={n - 1}")

    pairs = n * (n - 1) // 2
    prob = avg_degree / (n - 1) if n > 1 else 0.0
    rng = make_rng(seed)
    m = int(rng.binomial(pairs, prob)) if pairs else 0
    k = np.sort(rng.choice(pairs, size=m, replace=False)).astype(INDEX_DTYPE) if m else np.empty(0, INDEX_DTYPE)
    src, dst = _pair_index_to_edges(k, n)
    graph = Graph.from_edges(src, dst, n=n)
    logger.debug(f"Generated ER graph n={n} avg_degree={avg_degree} seed={seed}: m={graph.edge_count}")
    return graph


def _clique_edges(start: int, size: int) -> tuple[np.ndarray, np.ndarray]:
    i, j = np.triu_indices(size, k=1)
    return i.astype(INDEX_DTYPE) + start, j.astype(INDEX_DTYPE) + start


@register_generator("clique-union", arity=3, description="clique-union:L,S,count  K_L plus count disjoint K_S")
def gen_clique_union(large_size: int, small_size: int, small_count: int, seed: int = 0) -> Graph:
    """One clique of large_size nodes plus small_count disjoint cliques of small_size nodes.

    The large clique occupies ids 0..large_size-1.
    """
    large_size = _require_count("large_size", large_size, minimum=1)
    small_size = _require_count("small_size", small_size, minimum=1)
    small_count = _require_count("small_count", small_count)

    parts = [_clique_edges(0, large_size)]
    start = large_size
    for _ in range(small_count):
        parts.append(_clique_edges(start, small_size))
        start += small_size
    src = np.concatenate([p[0] for p in parts])
    dst = np.concatenate([p[1] for p in parts])
    return Graph.from_edges(src, dst, n=start)


@register_generator("complete", arity=1, description="complete:n  K_n")
def gen_complete(n: int, seed: int = 0) -> Graph:
    n = _require_count("n", n, minimum=1)
    src, dst = _clique_edges(0, n)
    return Graph.from_edges(src, dst, n=n)


@register_generator("path", arity=1, description="path:n  path on n nodes")
def gen_path(n: int, seed: int = 0) -> Graph:
    n = _require_count("n", n, minimum=1)
    src = np.arange(n - 1, dtype=INDEX_DTYPE)
    return Graph.from_edges(src, src + 1, n=n)


@register_generator("cycle", arity=1, description="cycle:n  cycle on n >= 3 nodes")
def gen_cycle(n: int, seed: int = 0) -> Graph:
    n = _require_count("n", n, minimum=3)
    src = np.arange(n, dtype=INDEX_DTYPE)
    return Graph.from_edges(src, (src + 1) % n, n=n)


@register_generator("star", arity=1, description="star:leaves  center 0 joined to each leaf")
def gen_star(leaves: int, seed: int = 0) -> Graph:
    leaves = _require_count("leaves", leaves)
    dst = np.arange(1, leaves + 1, dtype=INDEX_DTYPE)
    return Graph.from_edges(np.zeros(leaves, dtype=INDEX_DTYPE), dst, n=leaves + 1)


@register_generator("bipartite", arity=2, description="bipartite:a,b  complete bipartite K_{a,b}")
def gen_complete_bipartite(a: int, b: int, seed: int = 0) -> Graph:
    a = _require_count("a", a, minimum=1)
    b = _require_count("b", b, minimum=1)
    left, right = np.meshgrid(np.arange(a, dtype=INDEX_DTYPE), np.arange(a, a + b, dtype=INDEX_DTYPE), indexing="ij")
    return Graph.from_edges(left.ravel(), right.ravel(), n=a + b)


def disjoint_union(*graphs: Graph) -> Graph:
    """Disjoint union, ids of later graphs shifted past earlier ones."""
    srcs, dsts = [], []
    shift = 0
    for g in graphs:
        u, v = g.edge_pairs()
        srcs.append(u + shift)
        dsts.append(v + shift)
        shift += g.node_count
    if not srcs:
        return Graph.empty()
    return Graph.from_edges(np.concatenate(srcs), np.concatenate(dsts), n=shift)


def parse_graph_spec(spec: str, seed: int = 0) -> Graph:
    """Build a graph from a ``family:arg1,arg2,...`` string.

    An optional extra trailing argument overrides ``seed``.
    """
    family, _, arg_text = spec.partition(":")
    entry = GeneratorRegistry.get_instance().get(family.strip())
    if entry is None:
        known = ", ".join(GeneratorRegistry.get_instance().families())
        raise ParameterError("graph spec", spec, f"unknown family {family!r} (known: {known})")

    try:
        args = [float(a) for a in arg_text.split(",") if a.strip()]
    except ValueError as e:
        raise ParameterError("graph spec", spec, "arguments must be numbers") from e
    if len(args) == entry.arity + 1:
        seed = _require_count("seed", args.pop())
    if len(args) != entry.arity:
        raise ParameterError("graph spec", spec, f"{family} takes {entry.arity} arguments")

    logger.debug(f"Generating {spec} with seed {seed}")
    return entry.func(*args, seed=seed)
