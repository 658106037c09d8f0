"""Linear-program contract shared by every solver backend."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np


class NumericalFailure(RuntimeError):
    """Solver could not certify any status for the given tolerances."""


class LPStatus(str, Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


def _as_matrix(value, cols: int, name: str) -> np.ndarray:
    if value is None:
        return np.zeros((0, cols))
    arr = np.asarray(value, dtype=float)
    if arr.ndim == 1 and arr.size == 0:
        arr = arr.reshape(0, cols)
    if arr.ndim != 2:
        raise ValueError(f"{name} must be a matrix, got shape {arr.shape}")
    return arr


def _as_vector(value, name: str) -> np.ndarray:
    if value is None:
        return np.zeros(0)
    arr = np.asarray(value, dtype=float).reshape(-1)
    return arr


@dataclass(frozen=True)
class LPProblem:
    """maximize objectiveᵀx s.t. ineq_lhs·x ≤ ineq_rhs, eq_lhs·x = eq_rhs, x free."""

    objective: np.ndarray
    ineq_lhs: np.ndarray
    ineq_rhs: np.ndarray
    eq_lhs: Optional[np.ndarray] = None
    eq_rhs: Optional[np.ndarray] = None

    def __post_init__(self) -> None:
        obj = _as_vector(self.objective, "objective")
        n = obj.size
        a_ub = _as_matrix(self.ineq_lhs, n, "ineq_lhs")
        b_ub = _as_vector(self.ineq_rhs, "ineq_rhs")
        a_eq = _as_matrix(self.eq_lhs, n, "eq_lhs")
        b_eq = _as_vector(self.eq_rhs, "eq_rhs")

        if a_ub.shape[1] != n or a_eq.shape[1] != n:
            raise ValueError(
                f"constraint matrices must have {n} columns, got {a_ub.shape[1]} and {a_eq.shape[1]}"
            )
        if a_ub.shape[0] != b_ub.size:
            raise ValueError(f"ineq_lhs has {a_ub.shape[0]} rows but ineq_rhs has {b_ub.size}")
        if a_eq.shape[0] != b_eq.size:
            raise ValueError(f"eq_lhs has {a_eq.shape[0]} rows but eq_rhs has {b_eq.size}")
        for name, arr in (("objective", obj), ("ineq_lhs", a_ub), ("ineq_rhs", b_ub),
                          ("eq_lhs", a_eq), ("eq_rhs", b_eq)):
            if not np.all(np.isfinite(arr)):
                raise ValueError(f"{name} contains non-finite entries")

        object.__setattr__(self, "objective", obj)
        object.__setattr__(self, "ineq_lhs", a_ub)
        object.__setattr__(self, "ineq_rhs", b_ub)
        object.__setattr__(self, "eq_lhs", a_eq)
        object.__setattr__(self, "eq_rhs", b_eq)

    @property
    def num_vars(self) -> int:
        return self.objective.size

    @property
    def num_rows(self) -> int:
        return self.ineq_rhs.size + self.eq_rhs.size

    def max_violation(self, x: np.ndarray) -> float:
        """Largest constraint violation of ``x`` (0 when feasible)."""
        worst = 0.0
        if self.ineq_rhs.size:
            worst = max(worst, float(np.max(self.ineq_lhs @ x - self.ineq_rhs)))
        if self.eq_rhs.size:
            worst = max(worst, float(np.max(np.abs(self.eq_lhs @ x - self.eq_rhs))))
        return worst

    def scale(self, x: np.ndarray) -> float:
        """Magnitude used to turn absolute tolerances into residual bounds."""
        coeff = 0.0
        rhs = 0.0
        if self.num_rows:
            coeff = float(max(np.max(np.abs(self.ineq_lhs), initial=0.0),
                              np.max(np.abs(self.eq_lhs), initial=0.0)))
            rhs = float(max(np.max(np.abs(self.ineq_rhs), initial=0.0),
                            np.max(np.abs(self.eq_rhs), initial=0.0)))
        return max(1.0, coeff * float(np.sum(np.abs(x))), rhs)


@dataclass(frozen=True)
class LPOutcome:
    status: LPStatus
    value: Optional[float] = None
    point: Optional[np.ndarray] = None

    @property
    def is_optimal(self) -> bool:
        return self.status is LPStatus.OPTIMAL

    @staticmethod
    def optimal(value: float, point: np.ndarray) -> "LPOutcome":
        return LPOutcome(LPStatus.OPTIMAL, float(value), np.asarray(point, dtype=float))

    @staticmethod
    def infeasible() -> "LPOutcome":
        return LPOutcome(LPStatus.INFEASIBLE)

    @staticmethod
    def unbounded() -> "LPOutcome":
        return LPOutcome(LPStatus.UNBOUNDED)
