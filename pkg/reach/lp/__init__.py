"""Linear programming contract behind every support-function query.

Public API:
  - LPProblem / LPOutcome / LPStatus: problem and result types
  - solve_lp(problem, solver=None): solve with the configured backend
  - get_solver(name): "simplex" (built-in, default) or "highs" (scipy)
  - NumericalFailure: raised when no status can be certified
"""

from reach.lp.base import LPSolver
from reach.lp.highs import HighsSolver
from reach.lp.simplex import SimplexSolver
from reach.lp.solver import get_solver, solve_lp
from reach.lp.types import LPOutcome, LPProblem, LPStatus, NumericalFailure

__all__ = [
    "HighsSolver",
    "LPOutcome",
    "LPProblem",
    "LPSolver",
    "LPStatus",
    "NumericalFailure",
    "SimplexSolver",
    "get_solver",
    "solve_lp",
]
