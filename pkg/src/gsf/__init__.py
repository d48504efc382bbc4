"""Parameterized streaming algorithms for vertex deletion problems."""
from .common_neighbor import (
    CnConfig,
    CommonNeighborSubgraph,
    cn_space_report,
    run_common_neighbor,
    validate_cn_subgraph,
)
from .cvd import CvdParams, CvdReport, cvd_space_report, run_cvd
from .graph import Graph, Matching, contains_minor, contains_subgraph, read_graph
from .oracle import OracleVerdict, Property, oracle_cn_equivalence, oracle_decide
from .pipeline import run_problem, solve_stream
from .solvers import FamilyKind, FamilySpec, Solution, solve_cvd, solve_minor_deletion, solve_subgraph_deletion
from .streams import Model, Stream, graph_to_stream, read_stream, replay, validate

__version__ = "0.1.0"

__all__ = [
    "CnConfig", "CommonNeighborSubgraph", "cn_space_report", "run_common_neighbor",
    "validate_cn_subgraph", "CvdParams", "CvdReport", "cvd_space_report", "run_cvd",
    "Graph", "Matching", "contains_minor", "contains_subgraph", "read_graph",
    "OracleVerdict", "Property", "oracle_cn_equivalence", "oracle_decide",
    "run_problem", "solve_stream", "FamilyKind", "FamilySpec", "Solution", "solve_cvd",
    "solve_minor_deletion", "solve_subgraph_deletion", "Model", "Stream",
    "graph_to_stream", "read_stream", "replay", "validate",
]
