"""Graph storage, ingestion and synthetic generators."""

from coreprobe.graph.csr import Graph, GraphStats
from coreprobe.graph.generators import (
    disjoint_union,
    gen_clique_union,
    gen_complete,
    gen_complete_bipartite,
    gen_cycle,
    gen_erdos_renyi,
    gen_path,
    gen_star,
    parse_graph_spec,
)
from coreprobe.graph.io import LoadOptions, dump_edge_list, load_csr, load_edge_list, load_graph, save_csr
from coreprobe.graph.registry import GeneratorRegistry, register_generator

__all__ = [
    "Graph",
    "GraphStats",
    "LoadOptions",
    "load_edge_list",
    "dump_edge_list",
    "load_csr",
    "save_csr",
    "load_graph",
    "gen_erdos_renyi",
    "gen_clique_union",
    "gen_complete",
    "gen_complete_bipartite",
    "gen_cycle",
    "gen_path",
    "gen_star",
    "disjoint_union",
    "parse_graph_spec",
    "GeneratorRegistry",
    "register_generator",
]
