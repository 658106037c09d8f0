"""Backward reachable sets over a time interval τ = [t0, t_end].

Both algorithms return one constrained zonotope per step τ_k = [t_k, t_{k+1}];
their union is the result and is never formed explicitly.

``ae_ti_outer`` encloses the AE set: the explicit pieces follow the input held
at the center of U, and every piece is cut by halfspaces whose offsets come
from per-direction minimizing input trajectories. ``ea_ti_inner`` under-
approximates the EA set; in the default witness mode every point of a piece
comes with a certifying input.
"""

from __future__ import annotations

import logging
from typing import Dict, List, Tuple

import numpy as np

from reach.backward.propagation import InnerPropagator, OuterPropagator, inner_solution, outer_solution
from reach.backward.types import (
    BackwardSpec,
    HorizonError,
    IntervalMode,
    LinSys,
    Piece,
    ResultKind,
    TimeIntervalResult,
    WitnessLayout,
)
from reach.geomsets import (
    ConstrainedZonotope,
    HPolytope,
    cz_convhull,
    cz_is_empty,
    cz_linmap,
    cz_minksum,
    cz_poly_intersect,
    intmat_mul_zono,
    poly_box,
    poly_is_empty,
    poly_minkdiff,
    poly_to_cz,
    support_rows,
    zono_contains,
    zono_linmap,
    zono_minksum,
)
from reach.linflow import FlowCache, chord_enclosure, constant_trajectory, homog_inner_interval, homog_outer_interval
from reach.logging import log_event, log_metric, stage_timer

logger = logging.getLogger(__name__)


def _setup(sys: LinSys, spec: BackwardSpec) -> Tuple[float, float, int]:
    if not spec.horizon.is_interval:
        raise HorizonError("time-interval algorithms need a time-interval horizon")
    if spec.target.dim != sys.n:
        raise ValueError(f"target lives in R^{spec.target.dim}, system in R^{sys.n}")
    grid = spec.grid()
    eta = spec.resolve_eta(sys.A, grid.dt)
    logger.debug("time-interval setup t0=%.4g dt=%.4g steps=%d eta=%d", grid.t0, grid.dt, grid.steps, eta)
    return grid.t0, grid.dt, eta


def _check_extra_inputs(sys: LinSys, spec: BackwardSpec) -> None:
    for value in spec.extra_inputs:
        if value.size != sys.m:
            raise ValueError(f"extra input {value.tolist()} must have {sys.m} entries")
        if not zono_contains(sys.U, value):
            raise ValueError(f"extra input {value.tolist()} lies outside the input set U")


def _empty_piece(k: int, window: Tuple[float, float], dim: int, stage: str) -> Piece:
    return Piece(index=k, window=window, set=ConstrainedZonotope.empty(dim), empty_stage=stage)


# ─── AE, outer ───────────────────────────────────────────────────────────────


def ae_ti_outer(sys: LinSys, spec: BackwardSpec) -> TimeIntervalResult:
    """Outer enclosure of the time-interval AE set as a union of pieces.

    Particular solutions run on the time-inverted dynamics −A. For direction
    ℓⱼ the halfspace offset is

        pⱼ = max_k  max(ρ(X, e^{−At_k}ᵀℓⱼ), ρ(X, e^{−At_{k+1}}ᵀℓⱼ))
                    + ρ(F·e^{−At_{k+1}}box(X), ℓⱼ) + ρ(−Ẑ_W(τ_k), ℓⱼ) + βⱼ(k)

    with βⱼ(k) = −ρ(Ž_{U₀}(t_k), ℓⱼ), realised by one input trajectory per
    direction. Extra constant inputs from ``spec.extra_inputs`` give further offsets; the
    smallest one is kept.
    """
    t0, dt, eta = _setup(sys, spec)
    _check_extra_inputs(sys, spec)
    grid = spec.grid()
    timings: Dict[str, float] = {}
    X = spec.target
    n = sys.n
    rows = spec.direction_rows()

    with stage_timer("caches", timings, algorithm="ae_ti_outer"):
        forward = FlowCache.build(sys.A, dt, eta, grid.steps, t0)
        backward = FlowCache.build(-sys.A, dt, eta, grid.steps, t0)

    U0 = sys.U.centered()
    W0 = sys.disturbance_set().centered()
    w_center = sys.E @ sys.W.center
    w_total = sys.B @ sys.U.center + w_center

    with stage_timer("pre_propagation", timings, algorithm="ae_ti_outer"):
        Zw_start = outer_solution(-sys.A, W0, t0, dt, eta, spec.max_order)
        Zu_start, _ = inner_solution(-sys.A, sys.B, U0, t0, dt, eta)
    disturbance = OuterPropagator(backward, W0, Zw_start, spec.max_order)
    control = InnerPropagator(backward, sys.B, U0, Zu_start)
    input_support = support_rows(Zu_start, rows)

    box = poly_box(X).to_zonotope()
    target_cz = poly_to_cz(X, box)

    with stage_timer("target_supports", timings, algorithm="ae_ti_outer"):
        target_support = [support_rows(X, rows @ backward.flow(k)) for k in range(grid.steps + 1)]

    bound = np.full(rows.shape[0], -np.inf)
    extra_bounds = [np.full(rows.shape[0], -np.inf) for _ in spec.extra_inputs]
    explicit: List[ConstrainedZonotope] = []

    with stage_timer("pieces", timings, algorithm="ae_ti_outer"):
        for k in range(grid.steps):
            Zw_next = disturbance.advance()
            homogeneous = np.maximum(target_support[k], target_support[k + 1])
            curvature = intmat_mul_zono(forward.F, zono_linmap(backward.flow(k + 1), box))
            shared = homogeneous + support_rows(curvature, rows)

            reach_w = zono_minksum(Zw_next, constant_trajectory(backward, w_total, k))
            bound = np.maximum(bound, shared + support_rows(-reach_w, rows) - input_support)
            for i, value in enumerate(spec.extra_inputs):
                held = sys.B @ value + w_center
                reach_extra = zono_minksum(Zw_next, constant_trajectory(backward, held, k))
                extra_bounds[i] = np.maximum(extra_bounds[i], shared + support_rows(-reach_extra, rows))

            start = cz_linmap(backward.flow(k + 1), target_cz)
            hull = homog_outer_interval(start, sys.A, dt, forward.F, forward.step)
            explicit.append(cz_minksum(hull, ConstrainedZonotope.from_zonotope(-reach_w)))

            control.advance()
            input_support = input_support + support_rows(control.last_block, rows)

    for candidate in extra_bounds:
        bound = np.minimum(bound, candidate)
    halfspaces = HPolytope(rows, bound)

    pieces: List[Piece] = []
    with stage_timer("intersection", timings, algorithm="ae_ti_outer"):
        for k, piece_set in enumerate(explicit):
            window = grid.interval(k)
            cut = cz_poly_intersect(piece_set, halfspaces)
            if cut.is_trivially_empty or cz_is_empty(cut):
                pieces.append(_empty_piece(k, window, n, "intersection"))
                continue
            pieces.append(Piece(index=k, window=window, set=cut))

    empty_count = sum(piece.is_empty for piece in pieces)
    log_metric("ae_ti_outer_empty_pieces", empty_count, {"steps": grid.steps})
    return TimeIntervalResult(
        pieces=pieces,
        kind=ResultKind.AE_OUTER,
        grid=grid,
        diagnostics={"timings": timings, "eta": eta, "dt": dt, "bounds": bound.tolist(), "empty_pieces": empty_count},
        bounds=halfspaces,
    )


# ─── EA, inner ───────────────────────────────────────────────────────────────


def ea_ti_inner(sys: LinSys, spec: BackwardSpec) -> TimeIntervalResult:
    """Inner approximation of the time-interval EA set as a union of pieces.

    P₁ and P₂ are the eroded endpoint sets of the homogeneous flow. Piece k is

        witness: e^{−At_{k+1}}·conv(czof(P₁ ⊖ D_k), czof(P₂ ⊖ e^{AΔt}D_k)) ⊕ −e^{−At_k}Ž_U(t_k)
        literal: e^{−At_{k+1}}·(conv(czof(P₁ ⊖ D_k), czof(P₂ ⊖ D_k)) ⊕ −Ž_U(t_k))

    with D_k = Ẑ_W(τ_k), in witness mode widened by the trajectory of the
    center input over one step. The certifying input of a witness-mode point
    is its decoded Ž_U block input on [0, t_k] followed by the center of U.
    """
    t0, dt, eta = _setup(sys, spec)
    grid = spec.grid()
    timings: Dict[str, float] = {}
    X = spec.target
    n = sys.n
    witness_mode = spec.interval_mode is IntervalMode.WITNESS

    with stage_timer("caches", timings, algorithm="ea_ti_inner"):
        cache = FlowCache.build(sys.A, dt, eta, grid.steps, t0)

    W0 = sys.disturbance_set().centered()
    w_center = sys.E @ sys.W.center
    u_center = sys.B @ sys.U.center

    with stage_timer("pre_propagation", timings, algorithm="ea_ti_inner"):
        Zw_start = outer_solution(sys.A, W0, t0, dt, eta, spec.max_order)
        Zu_start, ledger = inner_solution(sys.A, sys.B, sys.U, t0, dt, eta)
    disturbance = OuterPropagator(cache, W0, Zw_start, spec.max_order)
    control = InnerPropagator(cache, sys.B, sys.U, Zu_start, ledger)

    with stage_timer("homogeneous", timings, algorithm="ea_ti_inner"):
        hom = homog_inner_interval(X, sys.A, dt, cache.F, cache.step, cache.step_inv)
    first_enclosure = hom.box
    second_enclosure = zono_linmap(cache.step, hom.box)
    held_input = chord_enclosure(np.zeros(n), cache.input_step @ u_center, u_center, cache.F, cache.G)

    pieces: List[Piece] = []
    with stage_timer("pieces", timings, algorithm="ea_ti_inner"):
        for k in range(grid.steps):
            window = grid.interval(k)
            Zu_k = control.current
            snapshot = control.ledger.copy()
            erosion = disturbance.advance()
            if np.any(w_center):
                erosion = zono_minksum(erosion, constant_trajectory(cache, w_center, k))
            if witness_mode:
                if np.any(u_center):
                    erosion = zono_minksum(erosion, held_input)
                second_erosion = zono_linmap(cache.step, erosion)
            else:
                second_erosion = erosion

            first = poly_minkdiff(hom.first, erosion)
            second = poly_minkdiff(hom.second, second_erosion)
            parts = []
            if not poly_is_empty(first):
                parts.append(poly_to_cz(first, first_enclosure))
            if not poly_is_empty(second):
                parts.append(poly_to_cz(second, second_enclosure))
            parts = [part for part in parts if not part.is_trivially_empty]
            control.advance()
            if not parts:
                pieces.append(_empty_piece(k, window, n, "minkdiff"))
                continue

            hull = parts[0] if len(parts) == 1 else cz_convhull(parts[0], parts[1])
            offset = hull.num_generators
            if witness_mode:
                piece_set = cz_minksum(
                    cz_linmap(cache.flow_inv(k + 1), hull),
                    ConstrainedZonotope.from_zonotope(zono_linmap(-cache.flow_inv(k), Zu_k)),
                )
            else:
                piece_set = cz_linmap(
                    cache.flow_inv(k + 1),
                    cz_minksum(hull, ConstrainedZonotope.from_zonotope(-Zu_k)),
                )
            layout = WitnessLayout(offset=offset, ledger=snapshot, eval_time=window[0], window=window)
            pieces.append(Piece(index=k, window=window, set=piece_set, witness=layout))

    empty_count = sum(piece.is_empty for piece in pieces)
    if empty_count == len(pieces):
        log_event("empty_result", algorithm="ea_ti_inner", stage="minkdiff")
    log_metric("ea_ti_inner_empty_pieces", empty_count, {"steps": grid.steps})
    return TimeIntervalResult(
        pieces=pieces,
        kind=ResultKind.EA_INNER,
        grid=grid,
        diagnostics={
            "timings": timings,
            "eta": eta,
            "dt": dt,
            "mu": hom.mu,
            "mode": spec.interval_mode.value,
            "empty_pieces": empty_count,
        },
    )
