"""Step-by-step particular solutions on a FlowCache grid.

Both propagators start at the cache's t0. When t0 > 0 the starting set is
obtained by a pre-propagation over [0, t0] on its own, finer grid.
"""

from __future__ import annotations

import math
from typing import Optional, Tuple

import numpy as np

from reach.backward.types import InputLedger
from reach.geomsets import Zonotope, zono_linmap, zono_minksum, zono_reduce
from reach.linflow import FlowCache, inner_particular_step, outer_particular_step


class OuterPropagator:
    """Ẑ_S(t_{k+1}) = Ẑ_S(t_k) ⊕ e^{At_k}·Ẑ_S(Δt), reduced to ``max_order``."""

    def __init__(
        self,
        cache: FlowCache,
        S: Zonotope,
        start: Optional[Zonotope] = None,
        max_order: Optional[float] = None,
    ) -> None:
        self.cache = cache
        self.max_order = max_order
        self.step = outer_particular_step(cache.A, S, cache.dt, cache.eta, cache.E)
        self.current = Zonotope.origin(cache.dim) if start is None else start
        self.k = 0

    def advance(self) -> Zonotope:
        block = zono_linmap(self.cache.flow(self.k), self.step)
        self.current = zono_minksum(self.current, block)
        if self.max_order is not None:
            self.current = zono_reduce(self.current, self.max_order)
        self.k += 1
        return self.current


class InnerPropagator:
    """Ž_{BU}(t_k) with one generator block per step; never order-reduced.

    The ledger records the time-to-go window of every block so factor values
    of a result can be decoded back into an input signal.
    """

    def __init__(
        self,
        cache: FlowCache,
        B: np.ndarray,
        U: Zonotope,
        start: Optional[Zonotope] = None,
        ledger: Optional[InputLedger] = None,
    ) -> None:
        self.cache = cache
        self.step = inner_particular_step(cache.A, zono_linmap(B, U), cache.dt, cache.input_step)
        self.current = Zonotope.origin(cache.dim) if start is None else start
        self.ledger = ledger.copy() if ledger is not None else InputLedger(U.center, U.generators)
        self.last_block: Optional[Zonotope] = None
        self.k = 0

    def advance(self) -> Zonotope:
        block = zono_linmap(self.cache.flow(self.k), self.step)
        self.current = zono_minksum(self.current, block)
        self.ledger.windows.append((self.cache.time(self.k), self.cache.time(self.k + 1)))
        self.last_block = block
        self.k += 1
        return self.current


def pre_grid(t0: float, dt: float) -> Tuple[int, float]:
    """Step count and step size covering [0, t0] with steps no longer than dt."""
    steps = max(1, math.ceil(t0 / dt - 1e-9))
    return steps, t0 / steps


def outer_solution(
    A: np.ndarray,
    S: Zonotope,
    t: float,
    dt: float,
    eta: int,
    max_order: Optional[float] = None,
) -> Zonotope:
    """Ẑ_S(t) from a zero start on a grid of step ≤ dt."""
    if t <= 0:
        return Zonotope.origin(np.atleast_2d(A).shape[0])
    steps, step = pre_grid(t, dt)
    propagator = OuterPropagator(FlowCache.build(A, step, eta, steps), S, max_order=max_order)
    for _ in range(steps):
        propagator.advance()
    return propagator.current


def inner_solution(
    A: np.ndarray,
    B: np.ndarray,
    U: Zonotope,
    t: float,
    dt: float,
    eta: int,
) -> Tuple[Zonotope, InputLedger]:
    """Ž_{BU}(t) with its ledger, from a zero start on a grid of step ≤ dt."""
    A = np.atleast_2d(np.asarray(A, dtype=float))
    if t <= 0:
        return Zonotope.origin(A.shape[0]), InputLedger(U.center, U.generators)
    steps, step = pre_grid(t, dt)
    propagator = InnerPropagator(FlowCache.build(A, step, eta, steps), B, U)
    for _ in range(steps):
        propagator.advance()
    return propagator.current, propagator.ledger
