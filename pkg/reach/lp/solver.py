from __future__ import annotations

from reach.config import settings
from reach.lp.base import LPSolver
from reach.lp.highs import HighsSolver
from reach.lp.simplex import SimplexSolver
from reach.lp.types import LPOutcome, LPProblem

_BACKENDS = {
    SimplexSolver.name: SimplexSolver,
    HighsSolver.name: HighsSolver,
}


def get_solver(name: str | None = None) -> LPSolver:
    """Return a fresh solver for ``name`` (defaults to ``settings.LP_BACKEND``)."""
    backend = (name or settings.LP_BACKEND).lower()
    try:
        cls = _BACKENDS[backend]
    except KeyError as exc:
        raise ValueError(f"unknown LP backend {backend!r}") from exc
    if cls is SimplexSolver:
        return SimplexSolver(settings.LP_FEAS_TOL, settings.LP_OPT_TOL, settings.LP_MAX_ITER_FACTOR)
    return cls(settings.LP_FEAS_TOL, settings.LP_OPT_TOL)


def solve_lp(problem: LPProblem, solver: LPSolver | None = None) -> LPOutcome:
    return (solver or get_solver()).solve(problem)
