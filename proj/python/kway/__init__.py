"""Multi-way spectral partitioning.

Pipeline functions return the same JSON report the ``kway-cli`` tool prints,
as a dict.
"""

from ._kway import (
    Graph,
    KwayError,
    cheeger_sweep,
    clique_ring,
    clique_union,
    complete_graph,
    cycle_graph,
    disjoint_support_functions,
    disjoint_support_functions_reduced,
    eigenbasis,
    expansion,
    gnp_graph,
    grid_graph,
    k_sparse_cuts,
    k_way_expansion_exact,
    k_way_partition,
    noisy_hypercube,
    path_graph,
    planted_partition,
    rayleigh,
    read_graph,
)

__all__ = [
    "Graph",
    "KwayError",
    "cheeger_sweep",
    "clique_ring",
    "clique_union",
    "complete_graph",
    "cycle_graph",
    "disjoint_support_functions",
    "disjoint_support_functions_reduced",
    "eigenbasis",
    "expansion",
    "gnp_graph",
    "grid_graph",
    "k_sparse_cuts",
    "k_way_expansion_exact",
    "k_way_partition",
    "noisy_hypercube",
    "path_graph",
    "planted_partition",
    "rayleigh",
    "read_graph",
]
