"""Kernelization and exact solving for semitotal domination."""

from .graph import Graph, dumps, load_graph
from .oracle import DominationKind, solve_exact, verify_domination
from .rules import lift_solution, reduce

__all__ = [
    "DominationKind",
    "Graph",
    "dumps",
    "lift_solution",
    "load_graph",
    "reduce",
    "solve_exact",
    "verify_domination",
]
