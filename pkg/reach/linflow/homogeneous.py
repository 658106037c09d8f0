from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from reach.geomsets import (
    Ball,
    ConstrainedZonotope,
    HPolytope,
    IntervalMatrix,
    Zonotope,
    cz_convhull,
    cz_linmap,
    cz_minksum,
    intmat_mul_cz,
    intmat_mul_zono,
    poly_box,
    poly_linmap_inv,
    poly_minkdiff,
)
from reach.linflow.expm import expm


def homog_outer_interval(
    H_k: ConstrainedZonotope,
    A: np.ndarray,
    dt: float,
    F: IntervalMatrix,
    step: Optional[np.ndarray] = None,
) -> ConstrainedZonotope:
    """conv(H_k, e^{AΔt}H_k) ⊕ F·H_k ⊇ {e^{Ar}x | r ∈ [0, Δt], x ∈ H_k}."""
    if H_k.is_trivially_empty:
        return ConstrainedZonotope.empty(H_k.dim)
    step = expm(A, dt) if step is None else step
    hull = cz_convhull(H_k, cz_linmap(step, H_k))
    return cz_minksum(hull, intmat_mul_cz(F, H_k))


def mu_bound(box_generators: np.ndarray, A: np.ndarray, dt: float, step: Optional[np.ndarray] = None) -> float:
    """√γ·‖(e^{AΔt} − I)G‖₂."""
    box_generators = np.atleast_2d(np.asarray(box_generators, dtype=float))
    gamma = box_generators.shape[1]
    if gamma == 0:
        return 0.0
    step = expm(A, dt) if step is None else step
    drift = (step - np.eye(step.shape[0])) @ box_generators
    return float(np.sqrt(gamma) * np.linalg.norm(drift, 2))


@dataclass(frozen=True, eq=False)
class InnerHomogeneous:
    """The two eroded endpoint sets whose hull lies inside the time-interval flow."""

    first: HPolytope
    second: HPolytope
    box: Zonotope
    mu: float


def homog_inner_interval(
    X: HPolytope,
    A: np.ndarray,
    dt: float,
    F: IntervalMatrix,
    step: Optional[np.ndarray] = None,
    step_inv: Optional[np.ndarray] = None,
) -> InnerHomogeneous:
    """(X ⊖ F·box(X)) ⊖ B_μ and (e^{AΔt}X ⊖ F·box(X)) ⊖ B_μ."""
    step = expm(A, dt) if step is None else step
    step_inv = expm(-np.asarray(A, dtype=float), dt) if step_inv is None else step_inv
    box = poly_box(X).to_zonotope()
    curvature = intmat_mul_zono(F, box)
    mu = mu_bound(box.generators, A, dt, step)
    ball = Ball(mu, X.dim)
    first = poly_minkdiff(poly_minkdiff(X, curvature), ball)
    shifted = poly_linmap_inv(step, X, inverse=step_inv)
    second = poly_minkdiff(poly_minkdiff(shifted, curvature), ball)
    return InnerHomogeneous(first, second, box, mu)
