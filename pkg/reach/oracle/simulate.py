"""Trajectories of ẋ = Ax + Bu + Ew under piecewise-constant signals.

``ode_simulate`` is a fixed-step RK4 integrator used as the independent
reference; ``exact_lti_state`` and ``lti_states`` solve each constant
segment in closed form through the exponential of an augmented matrix.
"""

from __future__ import annotations

import math
from typing import Dict, Sequence, Tuple

import numpy as np
from scipy.linalg import expm

from reach.backward import LinSys
from reach.oracle.signals import PiecewiseConstantSignal

RK4_SUBDIVISION = 20


def _segments(u: PiecewiseConstantSignal, w: PiecewiseConstantSignal, t: float) -> np.ndarray:
    cuts = np.concatenate([[0.0], u.breakpoints(t), w.breakpoints(t), [t]])
    return np.unique(cuts)


def _drift(sys: LinSys, u: PiecewiseConstantSignal, w: PiecewiseConstantSignal, a: float, b: float) -> np.ndarray:
    mid = 0.5 * (a + b)
    return sys.B @ u.value_at(mid) + sys.E @ w.value_at(mid)


def ode_simulate(
    sys: LinSys,
    x0: np.ndarray,
    u: PiecewiseConstantSignal,
    w: PiecewiseConstantSignal,
    t: float,
) -> np.ndarray:
    """RK4 with sub-steps no longer than 1/20 of the shortest signal step."""
    x = np.asarray(x0, dtype=float).copy()
    if t <= 0:
        return x
    h_max = min(u.min_step, w.min_step, t) / RK4_SUBDIVISION
    cuts = _segments(u, w, t)
    A = sys.A
    for a, b in zip(cuts[:-1], cuts[1:]):
        v = _drift(sys, u, w, a, b)
        count = max(1, math.ceil((b - a) / h_max - 1e-12))
        h = (b - a) / count
        for _ in range(count):
            k1 = A @ x + v
            k2 = A @ (x + 0.5 * h * k1) + v
            k3 = A @ (x + 0.5 * h * k2) + v
            k4 = A @ (x + h * k3) + v
            x = x + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
    return x


class SegmentPropagator:
    """Closed-form segment maps x ↦ e^{Ah}x + (∫₀ʰ e^{Aθ}dθ)·v, cached by h."""

    def __init__(self, A: np.ndarray) -> None:
        self.A = np.atleast_2d(np.asarray(A, dtype=float))
        self._cache: Dict[float, Tuple[np.ndarray, np.ndarray]] = {}

    def maps(self, h: float) -> Tuple[np.ndarray, np.ndarray]:
        key = round(float(h), 14)
        if key not in self._cache:
            n = self.A.shape[0]
            augmented = np.zeros((2 * n, 2 * n))
            augmented[:n, :n] = self.A
            augmented[:n, n:] = np.eye(n)
            full = expm(augmented * h)
            self._cache[key] = (full[:n, :n], full[:n, n:])
        return self._cache[key]

    def advance(self, x: np.ndarray, v: np.ndarray, h: float) -> np.ndarray:
        if h <= 0:
            return x
        flow, integral = self.maps(h)
        return flow @ x + integral @ v


def lti_states(
    sys: LinSys,
    x0: np.ndarray,
    u: PiecewiseConstantSignal,
    w: PiecewiseConstantSignal,
    times: Sequence[float],
    propagator: SegmentPropagator | None = None,
) -> np.ndarray:
    """Exact states at each of ``times`` (any order), one row per time."""
    times = np.asarray(times, dtype=float)
    order = np.argsort(times)
    propagator = propagator or SegmentPropagator(sys.A)
    out = np.empty((times.size, sys.n))
    x = np.asarray(x0, dtype=float).copy()
    clock = 0.0
    horizon = float(times[order[-1]]) if times.size else 0.0
    cuts = _segments(u, w, horizon) if horizon > 0 else np.array([0.0])
    for idx in order:
        target = float(times[idx])
        while clock < target - 1e-15:
            nxt = cuts[cuts > clock + 1e-15]
            stop = min(float(nxt[0]) if nxt.size else target, target)
            v = _drift(sys, u, w, clock, stop)
            x = propagator.advance(x, v, stop - clock)
            clock = stop
        out[idx] = x
    return out


def exact_lti_state(
    sys: LinSys,
    x0: np.ndarray,
    u: PiecewiseConstantSignal,
    w: PiecewiseConstantSignal,
    t: float,
) -> np.ndarray:
    return lti_states(sys, x0, u, w, [t])[0]


def time_inverted(sys: LinSys) -> LinSys:
    """ẏ = −Ay − Bu − Ew, the dynamics of y(θ) = x(t − θ)."""
    return LinSys(-sys.A, -sys.B, -sys.E, sys.U, sys.W)
