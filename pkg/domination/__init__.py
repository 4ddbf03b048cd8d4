"""
Minimum semipaired domination: a linear-time solver for block graphs, exact
oracles for small graphs, and the reduction gadgets relating semipaired
domination to domination, paired domination and vertex cover.
"""
from domination.errors import (
    BudgetExceeded,
    DominationError,
    GraphError,
    InvalidSolutionError,
    InvariantViolation,
    LiftError,
    ParseError,
    PreconditionError,
)
from domination.graph_core import Graph, VertexSet, build_graph, parse_edge_list
from domination.semipaired_solver import SemipairedSolution, solve_block_graph, verify_solution

__all__ = [
    "BudgetExceeded",
    "DominationError",
    "Graph",
    "GraphError",
    "InvalidSolutionError",
    "InvariantViolation",
    "LiftError",
    "ParseError",
    "PreconditionError",
    "SemipairedSolution",
    "VertexSet",
    "build_graph",
    "parse_edge_list",
    "solve_block_graph",
    "verify_solution",
]
