"""Matrix exponential and the interval matrices bounding its truncation."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from reach.config import settings
from reach.geomsets import IntervalMatrix

MAX_ETA = 50
CLOSED_FORM_CONDITION = 1e8
SERIES_TERM_TOL = 1e-16
SERIES_NORM_LIMIT = 10.0


class ExpmOverflowError(ArithmeticError):
    """Matrix exponential overflowed double precision."""


class TruncationError(ValueError):
    """No truncation order up to the limit meets the remainder tolerance."""


@dataclass(frozen=True)
class TruncationOrder:
    """Taylor truncation order η ≥ 1 of the exponential series."""

    value: int

    def __post_init__(self) -> None:
        if int(self.value) < 1:
            raise ValueError("truncation order must be at least 1")
        object.__setattr__(self, "value", int(self.value))

    def __int__(self) -> int:
        return self.value


def expm(matrix: np.ndarray, t: float = 1.0) -> np.ndarray:
    """e^{At} by scaling-and-squaring Padé (scipy)."""
    matrix = np.atleast_2d(np.asarray(matrix, dtype=float))
    with np.errstate(over="ignore", invalid="ignore"):
        result = scipy.linalg.expm(matrix * float(t))
    if not np.all(np.isfinite(result)):
        raise ExpmOverflowError(f"expm overflow for ||At|| = {np.linalg.norm(matrix) * abs(t):.3e}")
    return result


def input_map(matrix: np.ndarray, t: float) -> np.ndarray:
    """∫₀ᵗ e^{Aθ} dθ, i.e. A⁻¹(e^{At} − I) when A is well conditioned."""
    matrix = np.atleast_2d(np.asarray(matrix, dtype=float))
    n = matrix.shape[0]
    if t == 0.0:
        return np.zeros((n, n))
    if n and np.linalg.cond(matrix) < CLOSED_FORM_CONDITION:
        return scipy.linalg.solve(matrix, expm(matrix, t) - np.eye(n))
    if np.linalg.norm(matrix * t, np.inf) <= SERIES_NORM_LIMIT:
        term = np.eye(n) * t
        total = term.copy()
        for i in range(1, 500):
            term = term @ matrix * (t / (i + 1))
            total += term
            if np.max(np.abs(term), initial=0.0) < SERIES_TERM_TOL:
                break
        return total
    # Large ||At||: the series cancels badly, use the augmented exponential.
    augmented = np.zeros((2 * n, 2 * n))
    augmented[:n, :n] = matrix
    augmented[:n, n:] = np.eye(n)
    return expm(augmented, t)[:n, n:]


def _taylor_partial(scaled: np.ndarray, eta: int) -> np.ndarray:
    n = scaled.shape[0]
    term = np.eye(n)
    total = term.copy()
    for i in range(1, eta + 1):
        term = term @ scaled / i
        total += term
    return total


def _tail_series(scaled: np.ndarray, eta: int) -> np.ndarray | None:
    term = np.linalg.matrix_power(scaled, eta + 1) / math.factorial(eta + 1)
    total = term.copy()
    for i in range(eta + 2, eta + 400):
        term = term @ scaled / i
        total += term
        if np.max(term, initial=0.0) <= 1e-300 or np.max(term, initial=0.0) <= 1e-18 * np.max(total, initial=0.0):
            return total
    return None


def remainder_matrix(matrix: np.ndarray, dt: float, eta: int) -> np.ndarray:
    """Elementwise E = e^{|A|Δt} − Σ_{i≤η} (|A|Δt)ⁱ/i! (nonnegative)."""
    scaled = np.abs(np.atleast_2d(np.asarray(matrix, dtype=float))) * dt
    direct = expm(scaled) - _taylor_partial(scaled, eta)
    tail = _tail_series(scaled, eta)
    if tail is None:
        return np.maximum(direct, 0.0)
    return np.maximum(np.maximum(direct, tail), 0.0)


def remainder_E(matrix: np.ndarray, dt: float, eta: int | TruncationOrder) -> IntervalMatrix:
    eta = int(eta)
    if dt <= 0:
        raise ValueError("time step must be positive")
    if eta < 1:
        raise ValueError("truncation order must be at least 1")
    return IntervalMatrix.symmetric(remainder_matrix(matrix, dt, eta))


def _curvature_coefficient(i: int, dt: float) -> float:
    return (i ** (-i / (i - 1)) - i ** (-1 / (i - 1))) * dt ** i


def curvature_F(matrix: np.ndarray, dt: float, eta: int | TruncationOrder) -> IntervalMatrix:
    """Curvature bound of the homogeneous solution over one step."""
    eta = int(eta)
    if eta < 2:
        raise ValueError("curvature_F needs eta >= 2")
    matrix = np.atleast_2d(np.asarray(matrix, dtype=float))
    n = matrix.shape[0]
    total = IntervalMatrix.zeros(n, n)
    power = matrix @ matrix
    for i in range(2, eta + 1):
        total = total + IntervalMatrix.scalar_times(_curvature_coefficient(i, dt), 0.0, power / math.factorial(i))
        power = power @ matrix
    return total + remainder_E(matrix, dt, eta)


def curvature_G(matrix: np.ndarray, dt: float, eta: int | TruncationOrder) -> IntervalMatrix:
    """Curvature bound of the input solution over one step."""
    eta = int(eta)
    if eta < 2:
        raise ValueError("curvature_G needs eta >= 2")
    matrix = np.atleast_2d(np.asarray(matrix, dtype=float))
    n = matrix.shape[0]
    total = IntervalMatrix.zeros(n, n)
    power = matrix.copy()
    for i in range(2, eta + 2):
        total = total + IntervalMatrix.scalar_times(_curvature_coefficient(i, dt), 0.0, power / math.factorial(i))
        power = power @ matrix
    return total + remainder_E(matrix, dt, eta).scaled(dt)


def auto_eta(matrix: np.ndarray, dt: float, tol: float | None = None) -> TruncationOrder:
    """Smallest η ≤ 50 whose remainder has max-abs entry ≤ tol."""
    tol = settings.ETA_TOL if tol is None else tol
    scaled = np.abs(np.atleast_2d(np.asarray(matrix, dtype=float))) * dt
    exp_abs = expm(scaled)
    n = scaled.shape[0]
    term = np.eye(n)
    partial = term.copy()
    for eta in range(1, MAX_ETA + 1):
        term = term @ scaled / eta
        partial = partial + term
        remainder = np.maximum(exp_abs - partial, 0.0)
        if np.max(remainder, initial=0.0) <= tol:
            return TruncationOrder(eta)
    raise TruncationError(
        f"remainder above {tol:.1e} at eta={MAX_ETA}; reduce the time step (dt={dt:.3e})"
    )
