"""Spanning trees with few leaves and branch vertices in K_{1,5}-free graphs.

The main entry points are re-exported here; see the submodules for details.
"""
from ._accel import backend
from .families import Family, FamilySpec, generate, sharpness_graph
from .graph import Graph, build_graph, is_connected, parse_edge_list, read_edge_list, write_edge_list
from .oracle import OracleResult, enumerate_spanning_trees, min_score, spanning_tree_count_check
from .search import (
    ExchangeMove,
    MoveKind,
    Potential,
    SolverConfig,
    SolveResult,
    SolveStatus,
    apply_move,
    enumerate_moves,
    extend,
    potential_of,
    solve,
)
from .structure import HypothesisReport, check_hypotheses, independence_number, is_k1r_free, sigma_k
from .tree import SpanningSubtree, decompose, metrics, score

__version__ = "0.1.0"

__all__ = [
    "ExchangeMove", "Family", "FamilySpec", "Graph", "HypothesisReport", "MoveKind", "OracleResult", "Potential",
    "SolveResult", "SolveStatus", "SolverConfig", "SpanningSubtree", "apply_move", "backend", "build_graph",
    "check_hypotheses", "decompose", "enumerate_moves", "enumerate_spanning_trees", "extend", "generate",
    "independence_number", "is_connected", "is_k1r_free", "metrics", "min_score", "parse_edge_list",
    "potential_of", "read_edge_list", "score", "sharpness_graph", "sigma_k", "solve",
    "spanning_tree_count_check", "write_edge_list",
]
