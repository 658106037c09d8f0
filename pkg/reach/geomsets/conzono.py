"""Constrained zonotopes ⟨c, G, Â, b̂⟩ = {c + Gα | Âα = b̂, α ∈ [−1, 1]^γ}.

Emptiness is a queryable state: every constructor accepts infeasible factor
constraints and ``cz_is_empty`` answers with a feasibility LP.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Optional, Tuple

import numpy as np

from reach.config import settings
from reach.geomsets.errors import EmptySetError, check_dim
from reach.geomsets.interval import IntervalMatrix
from reach.geomsets.support import support, support_rows
from reach.geomsets.zonotope import Zonotope, _as_center, _as_generators, intmat_radius_generators
from reach.lp import LPProblem, LPStatus, solve_lp

if TYPE_CHECKING:
    from reach.geomsets.polytope import HPolytope


@dataclass(frozen=True, eq=False)
class ConstrainedZonotope:
    center: np.ndarray
    generators: np.ndarray
    con_lhs: Optional[np.ndarray] = None
    con_rhs: Optional[np.ndarray] = None

    def __post_init__(self) -> None:
        center = _as_center(self.center)
        generators = _as_generators(self.generators, center.size)
        gamma = generators.shape[1]
        if self.con_lhs is None or np.asarray(self.con_lhs).size == 0:
            rows = 0 if self.con_rhs is None else np.asarray(self.con_rhs).size
            con_lhs = np.zeros((rows, gamma))
        else:
            con_lhs = np.atleast_2d(np.asarray(self.con_lhs, dtype=float))
        con_rhs = np.zeros(0) if self.con_rhs is None else np.asarray(self.con_rhs, dtype=float).reshape(-1)
        if generators.shape[0] != center.size:
            raise ValueError(f"generator matrix must have {center.size} rows, got {generators.shape}")
        if con_lhs.shape != (con_rhs.size, gamma):
            raise ValueError(
                f"constraint matrix must be {con_rhs.size}x{gamma}, got {con_lhs.shape}"
            )
        for arr in (center, generators, con_lhs, con_rhs):
            if not np.all(np.isfinite(arr)):
                raise ValueError("constrained zonotope entries must be finite")
        object.__setattr__(self, "center", center)
        object.__setattr__(self, "generators", generators)
        object.__setattr__(self, "con_lhs", con_lhs)
        object.__setattr__(self, "con_rhs", con_rhs)

    # ── Constructors ────────────────────────────────────────────────────────

    @staticmethod
    def from_zonotope(zono: Zonotope) -> "ConstrainedZonotope":
        return ConstrainedZonotope(zono.center, zono.generators)

    @staticmethod
    def empty(dim: int) -> "ConstrainedZonotope":
        """Canonical empty set: a single factor constrained by 0·α = 1."""
        return ConstrainedZonotope(np.zeros(dim), np.zeros((dim, 1)), np.zeros((1, 1)), np.ones(1))

    # ── Properties ──────────────────────────────────────────────────────────

    @property
    def dim(self) -> int:
        return self.center.size

    @property
    def num_generators(self) -> int:
        return self.generators.shape[1]

    @property
    def num_constraints(self) -> int:
        return self.con_rhs.size

    @property
    def is_trivially_empty(self) -> bool:
        """True when some constraint row reads 0 = b with b ≠ 0."""
        if self.num_constraints == 0:
            return False
        zero_rows = ~np.any(self.con_lhs != 0.0, axis=1)
        return bool(np.any(np.abs(self.con_rhs[zero_rows]) > settings.LP_FEAS_TOL))

    def relaxation(self) -> Zonotope:
        """Zonotope obtained by dropping the factor constraints (a superset)."""
        return Zonotope(self.center, self.generators)

    def __neg__(self) -> "ConstrainedZonotope":
        return ConstrainedZonotope(-self.center, -self.generators, self.con_lhs, self.con_rhs)

    def point_at(self, factors: np.ndarray) -> np.ndarray:
        return self.center + self.generators @ np.asarray(factors, dtype=float)


# ─── LP helpers ──────────────────────────────────────────────────────────────


def _factor_problem(cz: ConstrainedZonotope, objective: np.ndarray) -> LPProblem:
    gamma = cz.num_generators
    eye = np.eye(gamma)
    return LPProblem(
        objective=objective,
        ineq_lhs=np.vstack([eye, -eye]),
        ineq_rhs=np.ones(2 * gamma),
        eq_lhs=cz.con_lhs,
        eq_rhs=cz.con_rhs,
    )


def cz_support_point(cz: ConstrainedZonotope, direction: np.ndarray) -> Tuple[float, Optional[np.ndarray]]:
    """Support value and a maximizing factor vector (−∞, None when empty)."""
    direction = np.asarray(direction, dtype=float).reshape(-1)
    check_dim(cz.dim, direction.size, "cz_support")
    if cz.is_trivially_empty:
        return float("-inf"), None
    offset = float(direction @ cz.center)
    weights = direction @ cz.generators
    if cz.num_constraints == 0:
        return offset + float(np.sum(np.abs(weights))), np.sign(weights)
    outcome = solve_lp(_factor_problem(cz, weights))
    if outcome.status is LPStatus.INFEASIBLE:
        return float("-inf"), None
    return offset + float(outcome.value), outcome.point


def cz_support(cz: ConstrainedZonotope, direction: np.ndarray) -> float:
    return cz_support_point(cz, direction)[0]


def cz_is_empty(cz: ConstrainedZonotope) -> bool:
    if cz.is_trivially_empty:
        return True
    if cz.num_constraints == 0:
        return False
    outcome = solve_lp(_factor_problem(cz, np.zeros(cz.num_generators)))
    return outcome.status is LPStatus.INFEASIBLE


# ─── Operations ──────────────────────────────────────────────────────────────


def _block_constraints(first: ConstrainedZonotope, second: ConstrainedZonotope) -> Tuple[np.ndarray, np.ndarray]:
    h1, h2 = first.num_constraints, second.num_constraints
    g1, g2 = first.num_generators, second.num_generators
    lhs = np.zeros((h1 + h2, g1 + g2))
    lhs[:h1, :g1] = first.con_lhs
    lhs[h1:, g1:] = second.con_lhs
    return lhs, np.concatenate([first.con_rhs, second.con_rhs])


def cz_linmap(matrix: np.ndarray, cz: ConstrainedZonotope) -> ConstrainedZonotope:
    matrix = np.atleast_2d(np.asarray(matrix, dtype=float))
    check_dim(matrix.shape[1], cz.dim, "cz_linmap")
    return ConstrainedZonotope(matrix @ cz.center, matrix @ cz.generators, cz.con_lhs, cz.con_rhs)


def cz_minksum(first: ConstrainedZonotope, second: ConstrainedZonotope) -> ConstrainedZonotope:
    check_dim(first.dim, second.dim, "cz_minksum")
    lhs, rhs = _block_constraints(first, second)
    return ConstrainedZonotope(
        first.center + second.center,
        np.hstack([first.generators, second.generators]),
        lhs,
        rhs,
    )


def cz_halfspace_intersect(
    cz: ConstrainedZonotope,
    row: np.ndarray,
    rhs: float,
    offset: Optional[float] = None,
) -> ConstrainedZonotope:
    """Intersect with {x | row·x ≤ rhs} by appending one lifted factor.

    ``offset`` must be a lower bound of row·x over ``cz``; by default the bound
    of the unconstrained relaxation is used, which needs no LP.
    """
    row = np.asarray(row, dtype=float).reshape(-1)
    check_dim(cz.dim, row.size, "cz_halfspace_intersect")
    if cz.is_trivially_empty:
        return cz
    mid = float(row @ cz.center)
    spread = float(np.sum(np.abs(row @ cz.generators)))
    if rhs >= mid + spread:
        return cz
    lower = mid - spread if offset is None else float(offset)
    if rhs < lower - settings.LP_FEAS_TOL * max(1.0, abs(lower)):
        return ConstrainedZonotope.empty(cz.dim)
    upper = max(float(rhs), lower)

    gamma, h = cz.num_generators, cz.num_constraints
    lhs = np.zeros((h + 1, gamma + 1))
    lhs[:h, :gamma] = cz.con_lhs
    lhs[h, :gamma] = row @ cz.generators
    lhs[h, gamma] = 0.5 * (upper - lower)
    new_rhs = np.append(cz.con_rhs, 0.5 * (upper + lower) - mid)
    generators = np.hstack([cz.generators, np.zeros((cz.dim, 1))])
    return ConstrainedZonotope(cz.center, generators, lhs, new_rhs)


def cz_poly_intersect(cz: ConstrainedZonotope, poly: "HPolytope") -> ConstrainedZonotope:
    check_dim(cz.dim, poly.dim, "cz_poly_intersect")
    result = cz
    for row, rhs in zip(poly.con_lhs, poly.con_rhs):
        result = cz_halfspace_intersect(result, row, float(rhs))
    return result


def cz_convhull(first: ConstrainedZonotope, second: ConstrainedZonotope) -> ConstrainedZonotope:
    """Exact convex hull via a lifted hull factor λ and slack factors.

    x = ½(1+λ)·x₁ + ½(1−λ)·x₂ with scaled factors ξᵢ constrained by
    |ξ₁| ≤ ½(1+λ), |ξ₂| ≤ ½(1−λ); each bound becomes an equality with a
    slack factor in [−1, 1].
    """
    check_dim(first.dim, second.dim, "cz_convhull")
    if first.is_trivially_empty or second.is_trivially_empty:
        raise EmptySetError("cz_convhull needs two nonempty operands")
    n = first.dim
    g1, g2 = first.num_generators, second.num_generators
    h1, h2 = first.num_constraints, second.num_constraints
    n_slack = 2 * (g1 + g2)
    cols = g1 + g2 + 1 + n_slack
    lam = g1 + g2

    generators = np.zeros((n, cols))
    generators[:, :g1] = first.generators
    generators[:, g1:g1 + g2] = second.generators
    generators[:, lam] = 0.5 * (first.center - second.center)

    lhs = np.zeros((h1 + h2 + n_slack, cols))
    rhs = np.zeros(h1 + h2 + n_slack)
    lhs[:h1, :g1] = first.con_lhs
    lhs[:h1, lam] = -0.5 * first.con_rhs
    rhs[:h1] = 0.5 * first.con_rhs
    lhs[h1:h1 + h2, g1:g1 + g2] = second.con_lhs
    lhs[h1:h1 + h2, lam] = 0.5 * second.con_rhs
    rhs[h1:h1 + h2] = 0.5 * second.con_rhs

    base = h1 + h2
    slack = lam + 1
    blocks = (
        (np.arange(g1), 1.0, -0.5),
        (np.arange(g1), -1.0, -0.5),
        (g1 + np.arange(g2), 1.0, 0.5),
        (g1 + np.arange(g2), -1.0, 0.5),
    )
    offset = 0
    for factor_cols, sign, lam_coeff in blocks:
        rows = base + offset + np.arange(factor_cols.size)
        lhs[rows, factor_cols] = sign
        lhs[rows, lam] = lam_coeff
        lhs[rows, slack + offset + np.arange(factor_cols.size)] = 1.0
        rhs[rows] = -0.5
        offset += factor_cols.size

    return ConstrainedZonotope(0.5 * (first.center + second.center), generators, lhs, rhs)


def intmat_mul_cz(imat: IntervalMatrix, cz: ConstrainedZonotope) -> ConstrainedZonotope:
    check_dim(imat.shape[1], cz.dim, "intmat_mul_cz")
    mid = imat.center
    nu = np.abs(cz.center) + np.sum(np.abs(cz.generators), axis=1)
    extra = intmat_radius_generators(imat.radius, nu)
    lhs = np.hstack([cz.con_lhs, np.zeros((cz.num_constraints, extra.shape[1]))])
    return ConstrainedZonotope(
        mid @ cz.center,
        np.hstack([mid @ cz.generators, extra]),
        lhs,
        cz.con_rhs,
    )


@support.register(ConstrainedZonotope)
def _cz_support(cz: ConstrainedZonotope, direction: np.ndarray) -> float:
    return cz_support(cz, direction)


@support_rows.register(ConstrainedZonotope)
def _cz_support_rows(cz: ConstrainedZonotope, directions: np.ndarray) -> np.ndarray:
    directions = np.atleast_2d(np.asarray(directions, dtype=float))
    if cz.num_constraints == 0:
        return support_rows(cz.relaxation(), directions)
    return np.array([cz_support(cz, row) for row in directions], dtype=float)
