"""Metric dimension, resolving number and basis number of small graphs,
the randomly k-dimensional property, and exhaustive theorem checks."""

from .errors import *  # noqa: F401,F403
from .graph import (
    DistanceMatrix,
    Graph,
    GraphSummary,
    all_pairs_distances,
    build_graph,
    clique_number,
    cut_vertices,
    has_no_cut_vertex,
    is_connected,
    is_two_connected,
    summarize,
    twin_pairs,
)
from .metric import (
    SolveReport,
    all_bases,
    basis_number,
    equidistant_class,
    greedy_dimension_upper_bound,
    is_randomly_k_dimensional,
    is_resolving,
    metric_dimension,
    representation,
    resolves_pair,
    resolving_number,
    solve,
)
from .corpus import (
    GraphRecord,
    emit_graph6,
    enumerate_connected,
    generate,
    parse_edge_list,
    parse_graph6,
    read_graphs,
)

__version__ = "0.1.0"
