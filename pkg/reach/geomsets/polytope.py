"""Halfspace-represented polytopes ⟨C, d⟩ = {x | Cx ≤ d}."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np
import scipy.linalg

from reach.config import settings
from reach.geomsets.conzono import ConstrainedZonotope
from reach.geomsets.errors import EmptySetError, SingularMatrixError, UnboundedSetError, check_dim
from reach.geomsets.interval import Interval
from reach.geomsets.support import support, support_rows
from reach.geomsets.zonotope import Zonotope, zono_compact
from reach.lp import LPProblem, LPStatus, solve_lp

logger = logging.getLogger(__name__)

MAX_CONDITION = 1e12


@dataclass(frozen=True, eq=False)
class HPolytope:
    con_lhs: np.ndarray
    con_rhs: np.ndarray

    def __post_init__(self) -> None:
        lhs = np.atleast_2d(np.asarray(self.con_lhs, dtype=float))
        rhs = np.asarray(self.con_rhs, dtype=float).reshape(-1)
        if lhs.shape[0] != rhs.size:
            raise ValueError(f"constraint matrix has {lhs.shape[0]} rows but rhs has {rhs.size}")
        if rhs.size and np.any(~np.any(lhs != 0.0, axis=1)):
            raise ValueError("constraint matrix contains an all-zero row")
        if not (np.all(np.isfinite(lhs)) and np.all(np.isfinite(rhs))):
            raise ValueError("polytope entries must be finite")
        object.__setattr__(self, "con_lhs", lhs)
        object.__setattr__(self, "con_rhs", rhs)

    @staticmethod
    def from_box(lo, hi) -> "HPolytope":
        box = Interval(lo, hi)
        eye = np.eye(box.dim)
        return HPolytope(np.vstack([eye, -eye]), np.concatenate([box.hi, -box.lo]))

    @staticmethod
    def whole_space(dim: int) -> "HPolytope":
        return HPolytope(np.zeros((0, dim)), np.zeros(0))

    @property
    def dim(self) -> int:
        return self.con_lhs.shape[1]

    @property
    def num_constraints(self) -> int:
        return self.con_rhs.size

    def contains(self, x: np.ndarray, tol: float = 1e-9) -> bool:
        x = np.asarray(x, dtype=float)
        return bool(np.all(self.con_lhs @ x <= self.con_rhs + tol))

    def violation(self, x: np.ndarray) -> float:
        """Largest normalised constraint excess (≤ 0 inside)."""
        if self.num_constraints == 0:
            return float("-inf")
        norms = np.linalg.norm(self.con_lhs, axis=1)
        return float(np.max((self.con_lhs @ np.asarray(x, dtype=float) - self.con_rhs) / norms))


# ─── Support queries ─────────────────────────────────────────────────────────


def poly_support_point(poly: HPolytope, direction: np.ndarray):
    direction = np.asarray(direction, dtype=float).reshape(-1)
    check_dim(poly.dim, direction.size, "poly_support")
    outcome = solve_lp(LPProblem(direction, poly.con_lhs, poly.con_rhs))
    if outcome.status is LPStatus.INFEASIBLE:
        return float("-inf"), None
    if outcome.status is LPStatus.UNBOUNDED:
        return float("inf"), None
    return float(outcome.value), outcome.point


def poly_support(poly: HPolytope, direction: np.ndarray) -> float:
    return poly_support_point(poly, direction)[0]


def poly_is_empty(poly: HPolytope) -> bool:
    if poly.num_constraints == 0:
        return False
    outcome = solve_lp(LPProblem(np.zeros(poly.dim), poly.con_lhs, poly.con_rhs))
    return outcome.status is LPStatus.INFEASIBLE


def poly_box(poly: HPolytope) -> Interval:
    n = poly.dim
    hi = np.empty(n)
    lo = np.empty(n)
    for i, axis in enumerate(np.eye(n)):
        upper = poly_support(poly, axis)
        lower = poly_support(poly, -axis)
        if upper == float("-inf") or lower == float("-inf"):
            raise EmptySetError("poly_box: polytope is empty")
        if upper == float("inf") or lower == float("inf"):
            raise UnboundedSetError(f"poly_box: polytope is unbounded along axis {i}")
        hi[i], lo[i] = upper, -lower
    return Interval(np.minimum(lo, hi), np.maximum(lo, hi))


# ─── Operations ──────────────────────────────────────────────────────────────


def poly_linmap_inv(matrix: np.ndarray, poly: HPolytope, inverse: Optional[np.ndarray] = None) -> HPolytope:
    """Image M·P = ⟨C M⁻¹, d⟩ for invertible M; ``inverse`` skips the inversion."""
    matrix = np.atleast_2d(np.asarray(matrix, dtype=float))
    if matrix.shape[0] != matrix.shape[1]:
        raise SingularMatrixError(f"poly_linmap_inv needs a square matrix, got {matrix.shape}")
    check_dim(matrix.shape[1], poly.dim, "poly_linmap_inv")
    if inverse is not None:
        return HPolytope(poly.con_lhs @ np.asarray(inverse, dtype=float), poly.con_rhs)
    condition = np.linalg.cond(matrix)
    if not np.isfinite(condition) or condition > MAX_CONDITION:
        raise SingularMatrixError(f"matrix condition estimate {condition:.3e} exceeds {MAX_CONDITION:.0e}")
    mapped = scipy.linalg.solve(matrix.T, poly.con_lhs.T).T
    return HPolytope(mapped, poly.con_rhs)


def poly_minkdiff(poly: HPolytope, shape) -> HPolytope:
    """P ⊖ S = ⟨C, d − ρ(S, Cᵀ)⟩."""
    if poly.num_constraints == 0:
        return poly
    offsets = support_rows(shape, poly.con_lhs)
    if np.any(offsets == float("-inf")):
        logger.warning("poly_minkdiff: subtrahend is empty, result is the whole space")
        return HPolytope.whole_space(poly.dim)
    return HPolytope(poly.con_lhs, poly.con_rhs - offsets)


def poly_outer_minksum(poly: HPolytope, zono: Zonotope) -> HPolytope:
    """Enclosure ⟨C, d + ρ(Z, Cᵀ)⟩ of P ⊕ Z, tight along every row of C."""
    check_dim(poly.dim, zono.dim, "poly_outer_minksum")
    if poly.num_constraints == 0:
        return poly
    return HPolytope(poly.con_lhs, poly.con_rhs + support_rows(zono, poly.con_lhs))


def poly_to_cz(poly: HPolytope, enclosure: Optional[Zonotope] = None) -> ConstrainedZonotope:
    """Convert a bounded polytope into an equal constrained zonotope.

    Each row either is implied by the enclosing zonotope ⟨c, G⟩ (and is
    dropped) or adds one lifted factor with offset oⱼ = −ρ(⟨c, G⟩, −Cⱼᵀ).
    Without ``enclosure`` the interval hull box(P) is used; any zonotope
    containing P gives the same set.
    """
    if enclosure is None:
        enclosure = poly_box(poly).to_zonotope()
    check_dim(poly.dim, enclosure.dim, "poly_to_cz")
    enclosure = zono_compact(enclosure)
    lhs, rhs = poly.con_lhs, poly.con_rhs
    center, generators = enclosure.center, enclosure.generators

    mid = lhs @ center
    spread = np.sum(np.abs(lhs @ generators), axis=1)
    lower = mid - spread
    upper = mid + spread
    scale = np.maximum(1.0, np.abs(rhs))

    if np.any(rhs < lower - settings.LP_FEAS_TOL * scale):
        return ConstrainedZonotope.empty(poly.dim)
    active = np.flatnonzero(rhs < upper - 1e-12 * scale)
    if active.size == 0:
        return ConstrainedZonotope.from_zonotope(enclosure)

    c_act = lhs[active]
    d_act = np.maximum(rhs[active], lower[active])
    o_act = lower[active]
    h, gamma = active.size, generators.shape[1]

    new_generators = np.hstack([generators, np.zeros((poly.dim, h))])
    con_lhs = np.hstack([c_act @ generators, np.diag(0.5 * (o_act - d_act))])
    con_rhs = 0.5 * (d_act + o_act) - c_act @ center
    return ConstrainedZonotope(center, new_generators, con_lhs, con_rhs)


def set_in_poly(shape, poly: HPolytope, tol: Optional[float] = None) -> bool:
    if poly.num_constraints == 0:
        return True
    tol = settings.LP_FEAS_TOL if tol is None else tol
    values = support_rows(shape, poly.con_lhs)
    if np.any(values == float("-inf")):
        return True
    return bool(np.all(values <= poly.con_rhs + tol))


@support.register(HPolytope)
def _poly_support(poly: HPolytope, direction: np.ndarray) -> float:
    return poly_support(poly, direction)
