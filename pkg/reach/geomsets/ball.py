from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from reach.geomsets.support import support, support_rows


@dataclass(frozen=True)
class Ball:
    """Euclidean ball of radius ``radius`` centred at the origin of ℝ^dim."""

    radius: float
    dim: int

    def __post_init__(self) -> None:
        if self.radius < 0:
            raise ValueError("ball radius must be nonnegative")
        if self.dim < 1:
            raise ValueError("ball dimension must be positive")


@support.register(Ball)
def _ball_support(ball: Ball, direction: np.ndarray) -> float:
    return float(ball.radius * np.linalg.norm(direction))


@support_rows.register(Ball)
def _ball_support_rows(ball: Ball, directions: np.ndarray) -> np.ndarray:
    directions = np.atleast_2d(np.asarray(directions, dtype=float))
    return ball.radius * np.linalg.norm(directions, axis=1)
