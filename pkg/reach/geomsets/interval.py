from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from reach.geomsets.support import support, support_rows


@dataclass(frozen=True, eq=False)
class Interval:
    """Axis-aligned box [lo, hi] in ℝⁿ."""

    lo: np.ndarray
    hi: np.ndarray

    def __post_init__(self) -> None:
        lo = np.atleast_1d(np.asarray(self.lo, dtype=float)).reshape(-1)
        hi = np.atleast_1d(np.asarray(self.hi, dtype=float)).reshape(-1)
        if lo.shape != hi.shape:
            raise ValueError(f"interval bounds differ in shape: {lo.shape} vs {hi.shape}")
        if np.any(lo > hi):
            raise ValueError("interval requires lo <= hi elementwise")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def dim(self) -> int:
        return self.lo.size

    @property
    def center(self) -> np.ndarray:
        return 0.5 * (self.lo + self.hi)

    @property
    def radius(self) -> np.ndarray:
        return 0.5 * (self.hi - self.lo)

    def contains(self, x: np.ndarray, tol: float = 0.0) -> bool:
        x = np.asarray(x, dtype=float)
        return bool(np.all(x >= self.lo - tol) and np.all(x <= self.hi + tol))

    def to_zonotope(self):
        from reach.geomsets.zonotope import Zonotope

        return Zonotope.from_interval(self.lo, self.hi)


@support.register(Interval)
def _interval_support(box: Interval, direction: np.ndarray) -> float:
    direction = np.asarray(direction, dtype=float)
    return float(direction @ box.center + np.abs(direction) @ box.radius)


@support_rows.register(Interval)
def _interval_support_rows(box: Interval, directions: np.ndarray) -> np.ndarray:
    directions = np.atleast_2d(np.asarray(directions, dtype=float))
    return directions @ box.center + np.abs(directions) @ box.radius


@dataclass(frozen=True, eq=False)
class IntervalMatrix:
    """Elementwise matrix interval [L, U]."""

    lo: np.ndarray
    hi: np.ndarray

    def __post_init__(self) -> None:
        lo = np.atleast_2d(np.asarray(self.lo, dtype=float))
        hi = np.atleast_2d(np.asarray(self.hi, dtype=float))
        if lo.shape != hi.shape:
            raise ValueError(f"interval matrix bounds differ in shape: {lo.shape} vs {hi.shape}")
        if np.any(lo > hi):
            raise ValueError("interval matrix requires L <= U elementwise")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def shape(self) -> tuple[int, int]:
        return self.lo.shape

    @property
    def center(self) -> np.ndarray:
        return 0.5 * (self.lo + self.hi)

    @property
    def radius(self) -> np.ndarray:
        return 0.5 * (self.hi - self.lo)

    def max_abs(self) -> float:
        return float(max(np.max(np.abs(self.lo), initial=0.0), np.max(np.abs(self.hi), initial=0.0)))

    def contains(self, matrix: np.ndarray, tol: float = 0.0) -> bool:
        matrix = np.asarray(matrix, dtype=float)
        return bool(np.all(matrix >= self.lo - tol) and np.all(matrix <= self.hi + tol))

    def __add__(self, other: "IntervalMatrix") -> "IntervalMatrix":
        if self.shape != other.shape:
            raise ValueError(f"cannot add interval matrices of shapes {self.shape} and {other.shape}")
        return IntervalMatrix(self.lo + other.lo, self.hi + other.hi)

    def scaled(self, factor: float) -> "IntervalMatrix":
        """Multiply by a nonnegative scalar."""
        if factor < 0:
            raise ValueError("scaled() expects a nonnegative factor")
        return IntervalMatrix(factor * self.lo, factor * self.hi)

    @staticmethod
    def point(matrix: np.ndarray) -> "IntervalMatrix":
        matrix = np.atleast_2d(np.asarray(matrix, dtype=float))
        return IntervalMatrix(matrix, matrix.copy())

    @staticmethod
    def symmetric(radius: np.ndarray) -> "IntervalMatrix":
        radius = np.abs(np.atleast_2d(np.asarray(radius, dtype=float)))
        return IntervalMatrix(-radius, radius)

    @staticmethod
    def zeros(rows: int, cols: int) -> "IntervalMatrix":
        return IntervalMatrix(np.zeros((rows, cols)), np.zeros((rows, cols)))

    @staticmethod
    def scalar_times(a: float, b: float, matrix: np.ndarray) -> "IntervalMatrix":
        """Interval scalar [a, b] times a real matrix, entry by entry."""
        if a > b:
            raise ValueError("scalar interval requires a <= b")
        matrix = np.atleast_2d(np.asarray(matrix, dtype=float))
        first, second = a * matrix, b * matrix
        return IntervalMatrix(np.minimum(first, second), np.maximum(first, second))
