"""Backward reachable sets of perturbed LTI systems.

Public API:
  - LinSys, Horizon, BackwardSpec, IntervalMode: problem description
  - ae_tp_outer, ae_tp_inner, ea_tp_outer, ea_tp_inner: time-point sets
  - ae_ti_outer, ea_ti_inner: time-interval sets as unions of pieces
  - unperturbed_mode: the same system with W = {0}
  - TimePointResult, TimeIntervalResult, Piece, WitnessLayout, InputLedger
"""

from reach.backward.interval import ae_ti_outer, ea_ti_inner
from reach.backward.propagation import InnerPropagator, OuterPropagator, inner_solution, outer_solution
from reach.backward.timepoint import ae_tp_inner, ae_tp_outer, ea_tp_inner, ea_tp_outer
from reach.backward.types import (
    BackwardSpec,
    Horizon,
    HorizonError,
    HorizonKind,
    InputLedger,
    IntervalMode,
    LinSys,
    Piece,
    ResultKind,
    TimeIntervalResult,
    TimePointResult,
    WitnessLayout,
    unperturbed_mode,
)

ALGORITHMS = {
    "ae-tp-outer": ae_tp_outer,
    "ae-tp-inner": ae_tp_inner,
    "ae-ti-outer": ae_ti_outer,
    "ea-tp-outer": ea_tp_outer,
    "ea-tp-inner": ea_tp_inner,
    "ea-ti-inner": ea_ti_inner,
}

__all__ = [
    "ALGORITHMS",
    "BackwardSpec",
    "Horizon",
    "HorizonError",
    "HorizonKind",
    "InnerPropagator",
    "InputLedger",
    "IntervalMode",
    "LinSys",
    "OuterPropagator",
    "Piece",
    "ResultKind",
    "TimeIntervalResult",
    "TimePointResult",
    "WitnessLayout",
    "ae_ti_outer",
    "ae_tp_inner",
    "ae_tp_outer",
    "ea_ti_inner",
    "ea_tp_inner",
    "ea_tp_outer",
    "inner_solution",
    "outer_solution",
    "unperturbed_mode",
]
