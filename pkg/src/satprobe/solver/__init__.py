"""Satisfiability oracles: CDCL, 2-SAT and brute force."""

from .brute import DEFAULT_MAX_VARIABLES, OracleTooLarge, brute_force
from .cdcl import CdclSolver, solve_cdcl
from .result import UNLIMITED, SolveBudget, SolveResult, Status
from .twosat import implication_graph, literal_components, solve_2sat, strongly_connected_components

__all__ = [
    "CdclSolver",
    "DEFAULT_MAX_VARIABLES",
    "OracleTooLarge",
    "SolveBudget",
    "SolveResult",
    "Status",
    "UNLIMITED",
    "brute_force",
    "implication_graph",
    "literal_components",
    "solve",
    "solve_2sat",
    "solve_cdcl",
    "strongly_connected_components",
]


def solve(formula, budget: SolveBudget = UNLIMITED) -> SolveResult:
    """Route width<=2 formulas to the 2-SAT procedure, everything else to CDCL."""
    if formula.max_width <= 2:
        return solve_2sat(formula)
    return solve_cdcl(formula, budget)
