from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Tuple

import numpy as np


@dataclass(frozen=True, eq=False)
class PiecewiseConstantSignal:
    """s(θ) = values[i] on [breaks[i], breaks[i+1]).

    With ``breaks`` omitted the segments are uniform of length ``dt`` starting
    at 0. The last value is held beyond the final breakpoint.
    """

    values: np.ndarray
    dt: float
    breaks: Optional[np.ndarray] = None

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=float)
        if values.ndim == 1:
            values = values.reshape(-1, 1)
        if values.shape[0] < 1:
            raise ValueError("signal needs at least one value")
        if self.breaks is None:
            if not self.dt > 0:
                raise ValueError(f"signal step must be positive, got {self.dt}")
            breaks = self.dt * np.arange(values.shape[0] + 1)
        else:
            breaks = np.asarray(self.breaks, dtype=float).reshape(-1)
            if breaks.size != values.shape[0] + 1:
                raise ValueError(f"{values.shape[0]} values need {values.shape[0] + 1} breakpoints")
            if np.any(np.diff(breaks) < 0):
                raise ValueError("breakpoints must be non-decreasing")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "breaks", breaks)

    @staticmethod
    def constant(value: Sequence[float], duration: float) -> "PiecewiseConstantSignal":
        return PiecewiseConstantSignal(np.asarray(value, dtype=float).reshape(1, -1), float(duration))

    @staticmethod
    def from_segments(segments: Iterable[Tuple[float, float, np.ndarray]]) -> "PiecewiseConstantSignal":
        """Build from (start, end, value) triples that tile an interval in order."""
        segments = [seg for seg in segments if seg[1] - seg[0] > 0]
        if not segments:
            raise ValueError("signal needs at least one non-degenerate segment")
        breaks = [segments[0][0]] + [seg[1] for seg in segments]
        values = np.vstack([np.asarray(seg[2], dtype=float).reshape(1, -1) for seg in segments])
        return PiecewiseConstantSignal(values, float(np.min(np.diff(breaks))), np.asarray(breaks))

    @property
    def dim(self) -> int:
        return self.values.shape[1]

    @property
    def start(self) -> float:
        return float(self.breaks[0])

    @property
    def end(self) -> float:
        return float(self.breaks[-1])

    @property
    def min_step(self) -> float:
        steps = np.diff(self.breaks)
        steps = steps[steps > 0]
        return float(np.min(steps)) if steps.size else float(self.dt)

    def value_at(self, t: float) -> np.ndarray:
        i = int(np.searchsorted(self.breaks, t, side="right")) - 1
        return self.values[int(np.clip(i, 0, self.values.shape[0] - 1))]

    def breakpoints(self, t_end: float) -> np.ndarray:
        inner = self.breaks[(self.breaks > 0) & (self.breaks < t_end)]
        return inner
