"""Dense two-phase primal simplex with Bland's anti-cycling rule.

The problem ``max cᵀx, A_ub x ≤ b_ub, A_eq x = b_eq`` over free ``x`` is put
into standard form with ``x = x⁺ − x⁻`` and one slack per inequality. Rows
with a nonnegative right-hand side start with their slack in the basis; the
rest receive an artificial variable for phase 1.
"""

from __future__ import annotations

import logging

import numpy as np

from reach.lp.base import LPSolver
from reach.lp.types import LPOutcome, LPProblem, NumericalFailure

logger = logging.getLogger(__name__)

_PIVOT_TOL = 1e-11


def _pivot(tableau: np.ndarray, cost: np.ndarray, row: int, col: int) -> None:
    tableau[row] /= tableau[row, col]
    factors = tableau[:, col].copy()
    factors[row] = 0.0
    tableau -= np.outer(factors, tableau[row])
    cost -= cost[col] * tableau[row]
    # Round-off may leave tiny negative basic values.
    np.maximum(tableau[:, -1], 0.0, out=tableau[:, -1])


class SimplexSolver(LPSolver):
    name = "simplex"

    def __init__(self, feas_tol: float = 1e-9, opt_tol: float = 1e-9, max_iter_factor: int = 50) -> None:
        super().__init__(feas_tol, opt_tol)
        self.max_iter_factor = int(max_iter_factor)

    # ── Iteration ──────────────────────────────────────────────────────────

    def _iterate(self, tableau: np.ndarray, cost: np.ndarray, basis: np.ndarray, n_allowed: int) -> bool:
        """Run Bland pivots to optimality. Returns False when unbounded."""
        rows, cols = tableau.shape
        limit = self.max_iter_factor * (rows + cols) + 100
        for _ in range(limit):
            if not np.all(np.isfinite(cost)):
                raise NumericalFailure("simplex tableau became non-finite")
            entering = np.flatnonzero(cost[:n_allowed] < -self.opt_tol)
            if entering.size == 0:
                return True
            col = int(entering[0])
            column = tableau[:, col]
            positive = np.flatnonzero(column > _PIVOT_TOL)
            if positive.size == 0:
                return False
            ratios = tableau[positive, -1] / column[positive]
            best = float(np.min(ratios))
            tied = positive[ratios <= best + 1e-12 * (1.0 + abs(best))]
            row = int(tied[np.argmin(basis[tied])])
            _pivot(tableau, cost, row, col)
            basis[row] = col
        raise NumericalFailure(f"simplex exceeded {limit} iterations")

    # ── Solve ──────────────────────────────────────────────────────────────

    def _solve(self, problem: LPProblem) -> LPOutcome:
        c = problem.objective
        n = c.size
        a_ub, b_ub = problem.ineq_lhs, problem.ineq_rhs
        a_eq, b_eq = problem.eq_lhs, problem.eq_rhs
        p, q = b_ub.size, b_eq.size
        m = p + q
        n_std = 2 * n + p

        std = np.zeros((m, n_std))
        std[:p, :n] = a_ub
        std[:p, n:2 * n] = -a_ub
        std[:p, 2 * n:] = np.eye(p)
        std[p:, :n] = a_eq
        std[p:, n:2 * n] = -a_eq
        rhs = np.concatenate([b_ub, b_eq])

        flip = rhs < 0.0
        std[flip] *= -1.0
        rhs = np.where(flip, -rhs, rhs)

        basis = np.full(m, -1, dtype=int)
        slack_rows = np.flatnonzero(~flip[:p])
        basis[slack_rows] = 2 * n + slack_rows
        art_rows = np.flatnonzero(basis < 0)
        n_art = art_rows.size

        tableau = np.zeros((m, n_std + n_art + 1))
        tableau[:, :n_std] = std
        tableau[art_rows, n_std + np.arange(n_art)] = 1.0
        tableau[:, -1] = rhs
        basis[art_rows] = n_std + np.arange(n_art)

        if n_art:
            cost = np.zeros(n_std + n_art + 1)
            cost[n_std:n_std + n_art] = 1.0
            cost -= tableau[art_rows].sum(axis=0)
            self._iterate(tableau, cost, basis, n_std + n_art)
            residual = -cost[-1]
            if residual > self.feas_tol * max(1.0, float(np.max(rhs, initial=0.0))):
                return LPOutcome.infeasible()
            tableau, basis = self._drive_out_artificials(tableau, basis, n_std)

        tableau = np.hstack([tableau[:, :n_std], tableau[:, -1:]])
        f = np.concatenate([-c, c, np.zeros(p)])
        cost = np.zeros(n_std + 1)
        cost[:n_std] = f - f[basis] @ tableau[:, :n_std]
        cost[-1] = -f[basis] @ tableau[:, -1]
        if not self._iterate(tableau, cost, basis, n_std):
            return LPOutcome.unbounded()

        y = np.zeros(n_std)
        y[basis] = tableau[:, -1]
        x = y[:n] - y[n:2 * n]
        violation = problem.max_violation(x)
        if violation > self.feas_tol * problem.scale(x):
            raise NumericalFailure(
                f"simplex optimum violates constraints by {violation:.3e}"
            )
        return LPOutcome.optimal(float(c @ x), x)

    @staticmethod
    def _drive_out_artificials(tableau: np.ndarray, basis: np.ndarray, n_std: int):
        dummy = np.zeros(tableau.shape[1])
        keep = np.ones(tableau.shape[0], dtype=bool)
        for row in np.flatnonzero(basis >= n_std):
            candidates = np.flatnonzero(np.abs(tableau[row, :n_std]) > 1e-9)
            if candidates.size == 0:
                keep[row] = False
                continue
            col = int(candidates[0])
            _pivot(tableau, dummy, row, col)
            basis[row] = col
        if not np.all(keep):
            logger.debug("dropping %d redundant equality rows", int(np.sum(~keep)))
        return tableau[keep], basis[keep]
