"""Zonotopes ⟨c, G⟩ = {c + Gα | α ∈ [−1, 1]^γ}."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from reach.geomsets.errors import check_dim
from reach.geomsets.interval import Interval, IntervalMatrix
from reach.geomsets.support import support, support_rows
from reach.lp import LPProblem, LPStatus, solve_lp

ZERO_GENERATOR_TOL = 1e-14


def _as_center(value) -> np.ndarray:
    return np.atleast_1d(np.asarray(value, dtype=float)).reshape(-1)


def _as_generators(value, dim: int) -> np.ndarray:
    if value is None:
        return np.zeros((dim, 0))
    arr = np.asarray(value, dtype=float)
    if arr.size == 0:
        return np.zeros((dim, 0))
    if arr.ndim == 1:
        arr = arr.reshape(dim, -1)
    return arr


@dataclass(frozen=True, eq=False)
class Zonotope:
    center: np.ndarray
    generators: np.ndarray

    def __post_init__(self) -> None:
        center = _as_center(self.center)
        generators = _as_generators(self.generators, center.size)
        if generators.ndim != 2 or generators.shape[0] != center.size:
            raise ValueError(
                f"generator matrix must have {center.size} rows, got shape {generators.shape}"
            )
        if not (np.all(np.isfinite(center)) and np.all(np.isfinite(generators))):
            raise ValueError("zonotope entries must be finite")
        object.__setattr__(self, "center", center)
        object.__setattr__(self, "generators", generators)

    # ── Constructors ────────────────────────────────────────────────────────

    @staticmethod
    def point(center) -> "Zonotope":
        return Zonotope(center, None)

    @staticmethod
    def origin(dim: int) -> "Zonotope":
        return Zonotope(np.zeros(dim), None)

    @staticmethod
    def from_interval(lo, hi) -> "Zonotope":
        box = Interval(lo, hi)
        return zono_compact(Zonotope(box.center, np.diag(box.radius)))

    # ── Properties ──────────────────────────────────────────────────────────

    @property
    def dim(self) -> int:
        return self.center.size

    @property
    def num_generators(self) -> int:
        return self.generators.shape[1]

    @property
    def order(self) -> float:
        return self.num_generators / max(self.dim, 1)

    @property
    def is_point(self) -> bool:
        return self.num_generators == 0

    def __neg__(self) -> "Zonotope":
        return Zonotope(-self.center, -self.generators)

    def translate(self, offset) -> "Zonotope":
        return Zonotope(self.center + _as_center(offset), self.generators)

    def centered(self) -> "Zonotope":
        return Zonotope(np.zeros(self.dim), self.generators)

    def abs_extent(self) -> np.ndarray:
        """Per-coordinate radius Σ|Gᵢ| of the interval hull."""
        return np.sum(np.abs(self.generators), axis=1)

    def interval_hull(self) -> Interval:
        radius = self.abs_extent()
        return Interval(self.center - radius, self.center + radius)

    def point_at(self, factors: np.ndarray) -> np.ndarray:
        return self.center + self.generators @ np.asarray(factors, dtype=float)


# ─── Operations ──────────────────────────────────────────────────────────────


def zono_linmap(matrix: np.ndarray, zono: Zonotope) -> Zonotope:
    matrix = np.atleast_2d(np.asarray(matrix, dtype=float))
    check_dim(matrix.shape[1], zono.dim, "zono_linmap")
    return Zonotope(matrix @ zono.center, matrix @ zono.generators)


def zono_minksum(first: Zonotope, second: Zonotope) -> Zonotope:
    check_dim(first.dim, second.dim, "zono_minksum")
    return Zonotope(
        first.center + second.center,
        np.hstack([first.generators, second.generators]),
    )


def zono_support(zono: Zonotope, direction: np.ndarray) -> float:
    direction = np.asarray(direction, dtype=float).reshape(-1)
    check_dim(zono.dim, direction.size, "zono_support")
    return float(direction @ zono.center + np.sum(np.abs(direction @ zono.generators)))


def zono_compact(zono: Zonotope, tol: float = ZERO_GENERATOR_TOL) -> Zonotope:
    """Drop generators whose Euclidean norm is at most ``tol``."""
    if zono.num_generators == 0:
        return zono
    keep = np.linalg.norm(zono.generators, axis=0) > tol
    if np.all(keep):
        return zono
    return Zonotope(zono.center, zono.generators[:, keep])


def zono_reduce(zono: Zonotope, max_order: float) -> Zonotope:
    """Girard reduction: bundle the flattest generators into their interval hull."""
    if max_order < 1:
        raise ValueError("max_order must be at least 1")
    n, gamma = zono.dim, zono.num_generators
    if gamma <= max_order * n:
        return zono
    generators = zono.generators
    keep = int(np.floor(n * (max_order - 1)))
    score = np.sum(np.abs(generators), axis=0) - np.max(np.abs(generators), axis=0)
    order = np.argsort(score, kind="stable")
    reduced, kept = order[: gamma - keep], order[gamma - keep:]
    box = np.diag(np.sum(np.abs(generators[:, reduced]), axis=1))
    box = box[:, np.any(box != 0.0, axis=0)]
    return Zonotope(zono.center, np.hstack([generators[:, np.sort(kept)], box]))


def intmat_radius_generators(radius: np.ndarray, nu: np.ndarray) -> np.ndarray:
    """Nonzero columns of diag(M_r ν)."""
    spread = radius @ nu
    nonzero = np.flatnonzero(spread != 0.0)
    columns = np.zeros((radius.shape[0], nonzero.size))
    columns[nonzero, np.arange(nonzero.size)] = spread[nonzero]
    return columns


def intmat_mul_zono(imat: IntervalMatrix, zono: Zonotope) -> Zonotope:
    check_dim(imat.shape[1], zono.dim, "intmat_mul_zono")
    mid = imat.center
    nu = np.abs(zono.center) + zono.abs_extent()
    return Zonotope(
        mid @ zono.center,
        np.hstack([mid @ zono.generators, intmat_radius_generators(imat.radius, nu)]),
    )


def zono_contains(zono: Zonotope, x: np.ndarray, tol: float = 1e-9) -> bool:
    """Point membership: min ‖α‖∞ subject to Gα = x − c is at most 1 + tol."""
    x = np.asarray(x, dtype=float).reshape(-1)
    check_dim(zono.dim, x.size, "zono_contains")
    offset = x - zono.center
    gamma = zono.num_generators
    if gamma == 0:
        return bool(np.max(np.abs(offset), initial=0.0) <= tol)
    eye = np.eye(gamma)
    bound = -np.ones((gamma, 1))
    problem = LPProblem(
        objective=np.concatenate([np.zeros(gamma), [-1.0]]),
        ineq_lhs=np.vstack([np.hstack([eye, bound]), np.hstack([-eye, bound])]),
        ineq_rhs=np.zeros(2 * gamma),
        eq_lhs=np.hstack([zono.generators, np.zeros((zono.dim, 1))]),
        eq_rhs=offset,
    )
    outcome = solve_lp(problem)
    if outcome.status is not LPStatus.OPTIMAL:
        return False
    return -float(outcome.value) <= 1.0 + tol


@support.register(Zonotope)
def _zonotope_support(zono: Zonotope, direction: np.ndarray) -> float:
    return zono_support(zono, direction)


@support_rows.register(Zonotope)
def _zonotope_support_rows(zono: Zonotope, directions: np.ndarray) -> np.ndarray:
    directions = np.atleast_2d(np.asarray(directions, dtype=float))
    check_dim(zono.dim, directions.shape[1], "zono_support")
    return directions @ zono.center + np.sum(np.abs(directions @ zono.generators), axis=1)
