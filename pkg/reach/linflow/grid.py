from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class StepGrid:
    """Uniform grid t_k = t0 + kΔt, k = 0..σ, over [t0, t_end]."""

    t0: float
    t_end: float
    steps: int

    def __post_init__(self) -> None:
        if self.t0 < 0:
            raise ValueError("grid start must be nonnegative")
        if not self.t_end > self.t0:
            raise ValueError("grid end must be after its start")
        if int(self.steps) < 1:
            raise ValueError("step count must be at least 1")
        object.__setattr__(self, "steps", int(self.steps))

    @property
    def dt(self) -> float:
        return (self.t_end - self.t0) / self.steps

    def time(self, k: int) -> float:
        return self.t0 + k * self.dt

    def interval(self, k: int) -> tuple[float, float]:
        return self.time(k), self.time(k + 1)

    @property
    def points(self) -> np.ndarray:
        return self.t0 + self.dt * np.arange(self.steps + 1)
