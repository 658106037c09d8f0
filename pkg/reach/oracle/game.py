"""Game oracles: replay EA witnesses and sample AE trajectories backwards."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, List, Sequence, Union

import numpy as np
from scipy.optimize import minimize_scalar

from reach.backward import LinSys, TimeIntervalResult, TimePointResult
from reach.geomsets import ConstrainedZonotope, HPolytope
from reach.logging import log_metric
from reach.oracle.checks import cz_distance_bound
from reach.oracle.sampling import Witness, random_signal, sample_points, scaled_about_center
from reach.oracle.signals import PiecewiseConstantSignal
from reach.oracle.simulate import SegmentPropagator, exact_lti_state, lti_states, ode_simulate, time_inverted


GAME_TOL = 1e-4
GRID_POINTS = 100
DISTURBANCE_STEPS = 100


@dataclass
class GameVerdict:
    samples: int = 0
    passes: int = 0
    worst_violation: float = float("-inf")
    stage_log: List[Dict[str, Any]] = field(default_factory=list)

    def record(self, passed: bool, violation: float, **details: Any) -> None:
        self.samples += 1
        self.passes += int(passed)
        self.worst_violation = max(self.worst_violation, float(violation))
        self.stage_log.append({"passed": passed, "violation": float(violation), **details})

    @property
    def failures(self) -> int:
        return self.samples - self.passes

    @property
    def all_passed(self) -> bool:
        return self.samples > 0 and self.passes == self.samples

    def to_dict(self, verbose: bool = False) -> Dict[str, Any]:
        payload: Dict[str, Any] = {
            "samples": self.samples,
            "passes": self.passes,
            "worst_violation": self.worst_violation,
        }
        if verbose:
            payload["stage_log"] = self.stage_log
        return payload


def _replay_interval(
    sys: LinSys,
    target: HPolytope,
    witness: Witness,
    w: PiecewiseConstantSignal,
    grid_points: int,
    propagator: SegmentPropagator,
) -> float:
    lo, hi = witness.window
    times = np.linspace(lo, hi, grid_points)
    states = lti_states(sys, witness.x0, witness.u, w, times, propagator)
    violations = np.array([target.violation(x) for x in states])
    best = int(np.argmin(violations))
    value = float(violations[best])
    if value <= 0 or grid_points < 2:
        return value
    left, right = times[max(best - 1, 0)], times[min(best + 1, grid_points - 1)]
    refined = minimize_scalar(
        lambda s: target.violation(lti_states(sys, witness.x0, witness.u, w, [s], propagator)[0]),
        bounds=(left, right),
        method="bounded",
    )
    return min(value, float(refined.fun))


def ea_witness_replay(
    sys: LinSys,
    target: HPolytope,
    witnesses: Sequence[Witness],
    n_w: int,
    seed: int = 0,
    grid_points: int = GRID_POINTS,
    tol: float = GAME_TOL,
    w_steps: int = DISTURBANCE_STEPS,
    integrator: str = "rk4",
) -> GameVerdict:
    """Play every witness input against ``n_w`` random disturbance signals.

    Time-point witnesses must end in the target at their time; time-interval
    witnesses must touch it somewhere in their window (checked on a grid and
    refined by bounded scalar minimization).
    """
    verdict = GameVerdict()
    propagator = SegmentPropagator(sys.A)
    for i, witness in enumerate(witnesses):
        lo, hi = witness.window
        for j in range(n_w):
            rng = np.random.default_rng([seed, i, j])
            w = random_signal(sys.W, hi, w_steps, rng)
            if hi - lo <= 0:
                if integrator == "rk4":
                    x = ode_simulate(sys, witness.x0, witness.u, w, hi)
                else:
                    x = exact_lti_state(sys, witness.x0, witness.u, w, hi)
                violation = target.violation(x)
            else:
                violation = _replay_interval(sys, target, witness, w, grid_points, propagator)
            verdict.record(violation <= tol, violation, sample=i, disturbance=j, piece=witness.piece)
    log_metric("ea_witness_replay_failures", verdict.failures, {"samples": verdict.samples})
    return verdict


def _violation(x: np.ndarray, S: Union[HPolytope, ConstrainedZonotope]) -> float:
    if isinstance(S, HPolytope):
        return S.violation(x)
    return cz_distance_bound(x, S)


def ae_backward_sampling(
    sys: LinSys,
    target: HPolytope,
    result: Union[TimePointResult, TimeIntervalResult],
    n_samples: int,
    seed: int = 0,
    w_steps: int = 50,
    tol: float = 1e-7,
    scale: float = 1.0,
    extreme: bool = False,
) -> GameVerdict:
    """Integrate the time-inverted dynamics from target states and test membership.

    The input set must be a single point; the sampled initial state must lie
    in the outer AE result (the piece of the sampled time for interval results).
    ``scale`` ≠ 1 tests against the result sets scaled about their centers,
    ``extreme`` draws the target states from its LP maximizers only.
    """
    if not sys.U.is_point:
        raise ValueError("backward sampling needs a singleton input set")
    inverted = time_inverted(sys)
    rng = np.random.default_rng(seed)
    ends, _ = sample_points(target, n_samples, rng, extreme=extreme)

    def checked(S):
        return S if scale == 1.0 else scaled_about_center(S, scale)

    verdict = GameVerdict()
    for i, x_end in enumerate(ends):
        sample_rng = np.random.default_rng([seed, i])
        if isinstance(result, TimePointResult):
            t = result.t
        else:
            t = float(sample_rng.uniform(result.grid.t0, result.grid.t_end))
        w = random_signal(sys.W, t, w_steps, sample_rng)
        u = PiecewiseConstantSignal.constant(sys.U.center, t)
        x0 = exact_lti_state(inverted, x_end, u, w, t)
        if isinstance(result, TimePointResult):
            violation = _violation(x0, checked(result.set))
            piece_index = None
        else:
            k = result.grid.steps
            piece_index = int(np.clip(np.floor((t - result.grid.t0) / result.grid.dt), 0, k - 1))
            candidates = [c for c in (piece_index - 1, piece_index, piece_index + 1) if 0 <= c < k]
            violation = min(
                (_violation(x0, checked(result.pieces[c].set)) for c in candidates if not result.pieces[c].is_empty),
                default=float("inf"),
            )
        verdict.record(violation <= tol, violation, sample=i, t=t, piece=piece_index)
    log_metric("ae_backward_sampling_failures", verdict.failures, {"samples": verdict.samples})
    return verdict
