"""Particular solutions Z_S(t) = {∫₀ᵗ e^{A(t−θ)} s(θ) dθ | s(θ) ∈ S}.

Outer steps hold for every measurable input in S, inner steps are exact for
inputs held constant over the step. Propagation adds one step image per
grid point, Z(t_{k+1}) = Z(t_k) ⊕ e^{At_k}·Z(Δt), without re-enclosing.
"""

from __future__ import annotations

import math
from typing import Optional, Sequence

import numpy as np

from reach.geomsets import (
    IntervalMatrix,
    Zonotope,
    intmat_mul_zono,
    zono_compact,
    zono_linmap,
    zono_minksum,
    zono_reduce,
)
from reach.linflow.cache import FlowCache
from reach.linflow.expm import expm, input_map, remainder_E


def outer_particular_step(
    A: np.ndarray,
    S: Zonotope,
    dt: float,
    eta: int,
    E: Optional[IntervalMatrix] = None,
) -> Zonotope:
    """⊕_{i≤η} AⁱΔt^{i+1}/(i+1)!·S ⊕ EΔt·S."""
    A = np.atleast_2d(np.asarray(A, dtype=float))
    eta = int(eta)
    E = remainder_E(A, dt, eta) if E is None else E
    power = np.eye(A.shape[0])
    centers = np.zeros(A.shape[0])
    blocks = []
    for i in range(eta + 1):
        factor = power * (dt ** (i + 1) / math.factorial(i + 1))
        centers = centers + factor @ S.center
        blocks.append(factor @ S.generators)
        power = power @ A
    remainder = intmat_mul_zono(E.scaled(dt), S)
    centers = centers + remainder.center
    blocks.append(remainder.generators)
    return zono_compact(Zonotope(centers, np.hstack(blocks)))


def inner_particular_step(
    A: np.ndarray,
    S: Zonotope,
    dt: float,
    input_step: Optional[np.ndarray] = None,
) -> Zonotope:
    """A⁻¹(e^{AΔt} − I)·S (integrated series for singular A)."""
    transfer = input_map(A, dt) if input_step is None else input_step
    return zono_linmap(transfer, S)


def propagate_particular(
    previous: Zonotope,
    A: np.ndarray,
    t_k: float,
    step: Zonotope,
    flow: Optional[np.ndarray] = None,
    max_order: Optional[float] = None,
) -> Zonotope:
    flow = expm(A, t_k) if flow is None else flow
    result = zono_minksum(previous, zono_linmap(flow, step))
    if max_order is not None:
        result = zono_reduce(result, max_order)
    return result


def chord_enclosure(
    start: np.ndarray,
    end: np.ndarray,
    value: np.ndarray,
    F: IntervalMatrix,
    G: IntervalMatrix,
) -> Zonotope:
    """Encloses a constant-input trajectory over one step.

    ``start``/``end`` are the trajectory points at both ends of the step and
    ``value`` the input held over it; the curvature terms bound the distance
    between the trajectory and the straight chord.
    """
    chord = Zonotope(0.5 * (start + end), (0.5 * (end - start)).reshape(-1, 1))
    result = zono_minksum(chord, intmat_mul_zono(F, Zonotope.point(start)))
    result = zono_minksum(result, intmat_mul_zono(G, Zonotope.point(value)))
    return zono_compact(result)


def traj_particular(
    A: np.ndarray,
    s_traj: Sequence[np.ndarray],
    dt: float,
    eta: int,
    k: int,
    cache: Optional[FlowCache] = None,
) -> Zonotope:
    """Enclosure of Z_s(τ_k) for a trajectory held at s(t_j) over each [t_j, t_{j+1}]."""
    if len(s_traj) < k + 1:
        raise ValueError(f"trajectory needs at least {k + 1} entries, got {len(s_traj)}")
    cache = cache or FlowCache.build(A, dt, eta, k + 1)
    n = cache.dim
    start = np.zeros(n)
    for j in range(k):
        start = start + cache.flow(k - 1 - j) @ (cache.input_step @ np.asarray(s_traj[j], dtype=float))
    value = np.asarray(s_traj[k], dtype=float)
    end = cache.step @ start + cache.input_step @ value
    return chord_enclosure(start, end, value, cache.F, cache.G)


def constant_trajectory(cache: FlowCache, value: np.ndarray, k: int) -> Zonotope:
    """Enclosure of {∫₀ᵗ e^{A(t−θ)}dθ·value | t ∈ [t_k, t_{k+1}]} on the cache's grid."""
    value = np.asarray(value, dtype=float)
    start = cache.input_flows[k] @ value
    end = cache.input_flows[k + 1] @ value
    return chord_enclosure(start, end, value, cache.F, cache.G)


def outer_particular_interval(
    A: np.ndarray,
    S: Zonotope,
    k: int,
    dt: float,
    eta: int,
    cache: Optional[FlowCache] = None,
    centered_next: Optional[Zonotope] = None,
    max_order: Optional[float] = None,
) -> Zonotope:
    """Z_S(τ_k) ⊆ Ẑ_{S₀}(t_{k+1}) ⊕ Z_s(τ_k) with S = S₀ ⊕ {s}, s = center(S).

    ``centered_next`` is the already propagated Ẑ_{S₀}(t_{k+1}); when omitted
    it is rebuilt from a zero start on the cache grid (t0 must be 0 then).
    """
    cache = cache or FlowCache.build(A, dt, eta, k + 1)
    centered = S.centered()
    if centered_next is None:
        if cache.t0 != 0.0:
            raise ValueError("centered_next is required when the grid does not start at 0")
        step = outer_particular_step(cache.A, centered, cache.dt, cache.eta, cache.E)
        centered_next = step
        for j in range(1, k + 1):
            centered_next = propagate_particular(
                centered_next, cache.A, cache.time(j), step, cache.flow(j), max_order
            )
    if not np.any(S.center):
        return centered_next
    return zono_minksum(centered_next, constant_trajectory(cache, S.center, k))
