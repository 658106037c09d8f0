from __future__ import annotations

from typing import Union

import numpy as np

from reach.backward import TimeIntervalResult
from reach.geomsets import ConstrainedZonotope, HPolytope, support_rows
from reach.lp import LPProblem, LPStatus, solve_lp

MEMBERSHIP_TOL = 1e-9


def cz_distance_bound(x: np.ndarray, cz: ConstrainedZonotope) -> float:
    """min ‖x − (c + Gα)‖∞ over feasible factors α (inf when empty)."""
    x = np.asarray(x, dtype=float).reshape(-1)
    if cz.is_trivially_empty:
        return float("inf")
    n, gamma = cz.dim, cz.num_generators
    offset = x - cz.center
    ones = np.ones((n, 1))
    eye = np.eye(gamma)
    zeros = np.zeros((gamma, 1))
    ineq_lhs = np.vstack([
        np.hstack([cz.generators, -ones]),
        np.hstack([-cz.generators, -ones]),
        np.hstack([eye, zeros]),
        np.hstack([-eye, zeros]),
    ])
    ineq_rhs = np.concatenate([offset, -offset, np.ones(2 * gamma)])
    eq_lhs = np.hstack([cz.con_lhs, np.zeros((cz.num_constraints, 1))])
    objective = np.zeros(gamma + 1)
    objective[-1] = -1.0
    outcome = solve_lp(LPProblem(objective, ineq_lhs, ineq_rhs, eq_lhs, cz.con_rhs))
    if outcome.status is not LPStatus.OPTIMAL:
        return float("inf")
    return max(0.0, -float(outcome.value))


def membership(x: np.ndarray, S: Union[ConstrainedZonotope, HPolytope], tol: float = MEMBERSHIP_TOL) -> bool:
    x = np.asarray(x, dtype=float).reshape(-1)
    if isinstance(S, HPolytope):
        return S.contains(x, tol)
    return cz_distance_bound(x, S) <= tol


def union_membership(x: np.ndarray, result: TimeIntervalResult, tol: float = MEMBERSHIP_TOL) -> bool:
    return any(membership(x, piece.set, tol) for piece in result.nonempty_pieces())


def directional_gap(S_in, S_out, directions: np.ndarray) -> float:
    """maxⱼ ρ(S_in, ℓⱼ) − ρ(S_out, ℓⱼ) over the rows ℓⱼ of ``directions``.

    Non-positive values certify containment along the tested directions.
    """
    directions = np.atleast_2d(np.asarray(directions, dtype=float))
    inner = support_rows(S_in, directions)
    outer = support_rows(S_out, directions)
    if np.all(np.isneginf(inner)):
        return float("-inf")
    return float(np.max(inner - outer))
