"""Matrix-exponential machinery for set propagation of ẋ = Ax + s.

Public API:
  - expm, input_map: e^{At} and ∫₀ᵗ e^{Aθ}dθ
  - remainder_E, curvature_F, curvature_G, auto_eta: interval bounds
  - outer/inner_particular_step, propagate_particular, traj_particular,
    outer_particular_interval: particular solutions
  - homog_outer_interval, homog_inner_interval, mu_bound: homogeneous
    time-interval enclosures
  - StepGrid, TruncationOrder, FlowCache
"""

from reach.linflow.cache import FlowCache
from reach.linflow.expm import (
    ExpmOverflowError,
    TruncationError,
    TruncationOrder,
    auto_eta,
    curvature_F,
    curvature_G,
    expm,
    input_map,
    remainder_E,
)
from reach.linflow.grid import StepGrid
from reach.linflow.homogeneous import InnerHomogeneous, homog_inner_interval, homog_outer_interval, mu_bound
from reach.linflow.particular import (
    chord_enclosure,
    constant_trajectory,
    inner_particular_step,
    outer_particular_interval,
    outer_particular_step,
    propagate_particular,
    traj_particular,
)

__all__ = [
    "ExpmOverflowError",
    "FlowCache",
    "InnerHomogeneous",
    "StepGrid",
    "TruncationError",
    "TruncationOrder",
    "auto_eta",
    "chord_enclosure",
    "constant_trajectory",
    "curvature_F",
    "curvature_G",
    "expm",
    "homog_inner_interval",
    "homog_outer_interval",
    "inner_particular_step",
    "input_map",
    "mu_bound",
    "outer_particular_interval",
    "outer_particular_step",
    "propagate_particular",
    "remainder_E",
    "traj_particular",
]
