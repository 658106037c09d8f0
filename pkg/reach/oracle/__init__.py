"""Independent validation of backward reachable sets.

Public API:
  - PiecewiseConstantSignal, ode_simulate (RK4), exact_lti_state, lti_states
  - analytic_1d_brs: closed-form intervals for ẋ = ax + u + w
  - membership, union_membership, directional_gap
  - sample_points, random_signal, decode_witnesses, scaled_about_center
  - GameVerdict, ea_witness_replay, ae_backward_sampling
"""

from reach.oracle.analytic import analytic_1d_brs
from reach.oracle.checks import cz_distance_bound, directional_gap, membership, union_membership
from reach.oracle.game import GameVerdict, ae_backward_sampling, ea_witness_replay
from reach.oracle.sampling import (
    Witness,
    decode_witnesses,
    random_signal,
    sample_points,
    scaled_about_center,
    witness_signal,
)
from reach.oracle.signals import PiecewiseConstantSignal
from reach.oracle.simulate import (
    SegmentPropagator,
    exact_lti_state,
    lti_states,
    ode_simulate,
    time_inverted,
)

__all__ = [
    "GameVerdict",
    "PiecewiseConstantSignal",
    "SegmentPropagator",
    "Witness",
    "ae_backward_sampling",
    "analytic_1d_brs",
    "cz_distance_bound",
    "decode_witnesses",
    "directional_gap",
    "ea_witness_replay",
    "exact_lti_state",
    "lti_states",
    "membership",
    "ode_simulate",
    "random_signal",
    "sample_points",
    "scaled_about_center",
    "time_inverted",
    "union_membership",
    "witness_signal",
]
