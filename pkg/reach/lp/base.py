from __future__ import annotations

from abc import ABC, abstractmethod

import numpy as np

from reach.lp.types import LPOutcome, LPProblem


class LPSolver(ABC):
    """Backend-agnostic LP solver; instances hold only tolerances."""

    name: str = "abstract"

    def __init__(self, feas_tol: float = 1e-9, opt_tol: float = 1e-9) -> None:
        self.feas_tol = float(feas_tol)
        self.opt_tol = float(opt_tol)

    def solve(self, problem: LPProblem) -> LPOutcome:
        degenerate = self._solve_degenerate(problem)
        if degenerate is not None:
            return degenerate
        return self._solve(problem)

    @abstractmethod
    def _solve(self, problem: LPProblem) -> LPOutcome:
        ...

    def _solve_degenerate(self, problem: LPProblem) -> LPOutcome | None:
        if problem.num_vars == 0:
            consistent = bool(np.all(problem.ineq_rhs >= -self.feas_tol)) and bool(
                np.all(np.abs(problem.eq_rhs) <= self.feas_tol)
            )
            if consistent:
                return LPOutcome.optimal(0.0, np.zeros(0))
            return LPOutcome.infeasible()
        if problem.num_rows == 0:
            if np.any(problem.objective != 0.0):
                return LPOutcome.unbounded()
            return LPOutcome.optimal(0.0, np.zeros(problem.num_vars))
        return None
