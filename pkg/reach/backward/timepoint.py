"""Backward reachable sets at a single time point t.

AE (for all disturbances there exists an input) and EA (there exists an
input for all disturbances) sets, each as an outer or inner approximation.
Outer AE sets are H-polytopes, all others constrained zonotopes.
"""

from __future__ import annotations

import logging
from typing import Dict, Tuple

import numpy as np

from reach.backward.propagation import inner_solution, outer_solution
from reach.backward.types import (
    BackwardSpec,
    HorizonError,
    LinSys,
    ResultKind,
    TimePointResult,
    WitnessLayout,
)
from reach.geomsets import (
    ConstrainedZonotope,
    cz_linmap,
    cz_minksum,
    poly_is_empty,
    poly_linmap_inv,
    poly_minkdiff,
    poly_outer_minksum,
    poly_to_cz,
)
from reach.linflow import expm
from reach.logging import log_event, stage_timer

logger = logging.getLogger(__name__)


def _setup(sys: LinSys, spec: BackwardSpec) -> Tuple[float, float, int]:
    if spec.horizon.is_interval:
        raise HorizonError("time-point algorithms need a time-point horizon")
    if spec.target.dim != sys.n:
        raise ValueError(f"target lives in R^{spec.target.dim}, system in R^{sys.n}")
    t = spec.horizon.t_end
    dt = t / spec.steps
    eta = spec.resolve_eta(sys.A, dt)
    logger.debug("time-point setup t=%.4g dt=%.4g eta=%d", t, dt, eta)
    return t, dt, eta


def _diagnostics(timings: Dict[str, float], supports: Dict[str, list], **extra) -> Dict[str, object]:
    return {"timings": timings, "supports": supports, **extra}


def _backward_cz(cz: ConstrainedZonotope, A: np.ndarray, t: float) -> ConstrainedZonotope:
    return cz_linmap(expm(A, -t), cz)


def ae_tp_outer(sys: LinSys, spec: BackwardSpec) -> TimePointResult:
    """e^{−At}((X ⊕ −Ẑ_W(t)) ⊖ Ž_U(t)) as an H-polytope."""
    t, dt, eta = _setup(sys, spec)
    timings: Dict[str, float] = {}
    X = spec.target

    with stage_timer("particular_solutions", timings, algorithm="ae_tp_outer"):
        Z_w = outer_solution(sys.A, sys.disturbance_set(), t, dt, eta, spec.max_order)
        Z_u, _ = inner_solution(sys.A, sys.B, sys.U, t, dt, eta)
    with stage_timer("set_ops", timings, algorithm="ae_tp_outer"):
        widened = poly_outer_minksum(X, -Z_w)
        eroded = poly_minkdiff(widened, Z_u)
        result = poly_linmap_inv(expm(sys.A, -t), eroded, inverse=expm(sys.A, t))
    with stage_timer("emptiness", timings, algorithm="ae_tp_outer"):
        empty = poly_is_empty(result)

    supports = {
        "target": X.con_rhs.tolist(),
        "outer_minksum": widened.con_rhs.tolist(),
        "minkdiff": eroded.con_rhs.tolist(),
    }
    if empty:
        log_event("empty_result", algorithm="ae_tp_outer", stage="minkdiff")
    return TimePointResult(
        set=result,
        kind=ResultKind.AE_OUTER,
        t=t,
        diagnostics=_diagnostics(timings, supports, eta=eta, dt=dt),
        empty_stage="minkdiff" if empty else None,
    )


def ae_tp_inner(sys: LinSys, spec: BackwardSpec) -> TimePointResult:
    """e^{−At}((X ⊖ Ẑ_U(t)) ⊕ −Ž_W(t)) as a constrained zonotope."""
    t, dt, eta = _setup(sys, spec)
    timings: Dict[str, float] = {}
    X = spec.target

    with stage_timer("particular_solutions", timings, algorithm="ae_tp_inner"):
        Z_u = outer_solution(sys.A, sys.input_set(), t, dt, eta, spec.max_order)
        Z_w, _ = inner_solution(sys.A, sys.E, sys.W, t, dt, eta)
    with stage_timer("set_ops", timings, algorithm="ae_tp_inner"):
        eroded = poly_minkdiff(X, Z_u)
    supports = {"target": X.con_rhs.tolist(), "minkdiff": eroded.con_rhs.tolist()}
    with stage_timer("emptiness", timings, algorithm="ae_tp_inner"):
        empty = poly_is_empty(eroded)
    if empty:
        log_event("empty_result", algorithm="ae_tp_inner", stage="minkdiff")
        return TimePointResult(
            set=ConstrainedZonotope.empty(sys.n),
            kind=ResultKind.AE_INNER,
            t=t,
            diagnostics=_diagnostics(timings, supports, eta=eta, dt=dt),
            empty_stage="minkdiff",
        )
    with stage_timer("conversion", timings, algorithm="ae_tp_inner"):
        cz = poly_to_cz(eroded)
        cz = cz_minksum(cz, ConstrainedZonotope.from_zonotope(-Z_w))
        result = _backward_cz(cz, sys.A, t)
    return TimePointResult(
        set=result,
        kind=ResultKind.AE_INNER,
        t=t,
        diagnostics=_diagnostics(timings, supports, eta=eta, dt=dt),
    )


def ea_tp_outer(sys: LinSys, spec: BackwardSpec) -> TimePointResult:
    """e^{−At}((X ⊖ Ž_W(t)) ⊕ −Ẑ_U(t))."""
    t, dt, eta = _setup(sys, spec)
    timings: Dict[str, float] = {}
    X = spec.target

    with stage_timer("particular_solutions", timings, algorithm="ea_tp_outer"):
        Z_w, _ = inner_solution(sys.A, sys.E, sys.W, t, dt, eta)
        Z_u = outer_solution(sys.A, sys.input_set(), t, dt, eta, spec.max_order)
    with stage_timer("set_ops", timings, algorithm="ea_tp_outer"):
        eroded = poly_minkdiff(X, Z_w)
    supports = {"target": X.con_rhs.tolist(), "minkdiff": eroded.con_rhs.tolist()}
    with stage_timer("emptiness", timings, algorithm="ea_tp_outer"):
        empty = poly_is_empty(eroded)
    if empty:
        log_event("empty_result", algorithm="ea_tp_outer", stage="minkdiff")
        return TimePointResult(
            set=ConstrainedZonotope.empty(sys.n),
            kind=ResultKind.EA_OUTER,
            t=t,
            diagnostics=_diagnostics(timings, supports, eta=eta, dt=dt),
            empty_stage="minkdiff",
        )
    with stage_timer("conversion", timings, algorithm="ea_tp_outer"):
        cz = cz_minksum(poly_to_cz(eroded), ConstrainedZonotope.from_zonotope(-Z_u))
        result = _backward_cz(cz, sys.A, t)
    return TimePointResult(
        set=result,
        kind=ResultKind.EA_OUTER,
        t=t,
        diagnostics=_diagnostics(timings, supports, eta=eta, dt=dt),
    )


def ea_tp_inner(sys: LinSys, spec: BackwardSpec) -> TimePointResult:
    """e^{−At}((X ⊖ Ẑ_W(t)) ⊕ −Ž_U(t)), with the input factors recorded.

    Every point of the result comes with a factor vector whose input part
    decodes into a piecewise-constant input steering it into X at time t
    for every admissible disturbance.
    """
    t, dt, eta = _setup(sys, spec)
    timings: Dict[str, float] = {}
    X = spec.target

    with stage_timer("particular_solutions", timings, algorithm="ea_tp_inner"):
        Z_w = outer_solution(sys.A, sys.disturbance_set(), t, dt, eta, spec.max_order)
        Z_u, ledger = inner_solution(sys.A, sys.B, sys.U, t, dt, eta)
    with stage_timer("set_ops", timings, algorithm="ea_tp_inner"):
        eroded = poly_minkdiff(X, Z_w)
    supports = {"target": X.con_rhs.tolist(), "minkdiff": eroded.con_rhs.tolist()}
    with stage_timer("emptiness", timings, algorithm="ea_tp_inner"):
        empty = poly_is_empty(eroded)
    if empty:
        log_event("empty_result", algorithm="ea_tp_inner", stage="minkdiff")
        return TimePointResult(
            set=ConstrainedZonotope.empty(sys.n),
            kind=ResultKind.EA_INNER,
            t=t,
            diagnostics=_diagnostics(timings, supports, eta=eta, dt=dt),
            empty_stage="minkdiff",
        )
    with stage_timer("conversion", timings, algorithm="ea_tp_inner"):
        cz = poly_to_cz(eroded)
        offset = cz.num_generators
        cz = cz_minksum(cz, ConstrainedZonotope.from_zonotope(-Z_u))
        result = _backward_cz(cz, sys.A, t)
    return TimePointResult(
        set=result,
        kind=ResultKind.EA_INNER,
        t=t,
        diagnostics=_diagnostics(timings, supports, eta=eta, dt=dt),
        witness=WitnessLayout(offset=offset, ledger=ledger, eval_time=t, window=(t, t)),
    )
