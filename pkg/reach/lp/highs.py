from __future__ import annotations

import numpy as np
from scipy.optimize import linprog

from reach.lp.base import LPSolver
from reach.lp.types import LPOutcome, LPProblem, NumericalFailure


class HighsSolver(LPSolver):
    """scipy's HiGHS interface behind the common solver contract."""

    name = "highs"

    def _solve(self, problem: LPProblem) -> LPOutcome:
        n = problem.num_vars
        has_ub = problem.ineq_rhs.size > 0
        has_eq = problem.eq_rhs.size > 0
        result = linprog(
            -problem.objective,
            A_ub=problem.ineq_lhs if has_ub else None,
            b_ub=problem.ineq_rhs if has_ub else None,
            A_eq=problem.eq_lhs if has_eq else None,
            b_eq=problem.eq_rhs if has_eq else None,
            bounds=[(None, None)] * n,
            method="highs",
            options={
                "primal_feasibility_tolerance": self.feas_tol,
                "dual_feasibility_tolerance": self.opt_tol,
            },
        )
        if result.status == 0:
            x = np.asarray(result.x, dtype=float)
            return LPOutcome.optimal(float(problem.objective @ x), x)
        if result.status == 2:
            return LPOutcome.infeasible()
        if result.status == 3:
            return LPOutcome.unbounded()
        raise NumericalFailure(f"HiGHS returned status {result.status}: {result.message}")
