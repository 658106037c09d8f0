from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import List

import numpy as np

from reach.geomsets import IntervalMatrix
from reach.linflow.expm import curvature_F, curvature_G, expm, input_map, remainder_E

logger = logging.getLogger(__name__)

REVALIDATE_EVERY = 64
DRIFT_TOL = 1e-9


@dataclass
class FlowCache:
    """Exponentials and interval matrices for one (A, Δt, η) triple.

    ``flows[k]`` is e^{A t_k} with t_k = t0 + kΔt, ``flows_inv[k]`` its inverse,
    ``input_flows[k]`` is ∫₀^{t_k} e^{Aθ}dθ. Built once, read-only afterwards.
    """

    A: np.ndarray
    dt: float
    eta: int
    t0: float
    step: np.ndarray
    step_inv: np.ndarray
    input_step: np.ndarray
    powers: List[np.ndarray]
    E: IntervalMatrix
    F: IntervalMatrix
    G: IntervalMatrix
    flows: List[np.ndarray] = field(default_factory=list)
    flows_inv: List[np.ndarray] = field(default_factory=list)
    input_flows: List[np.ndarray] = field(default_factory=list)

    @classmethod
    def build(cls, A: np.ndarray, dt: float, eta: int, steps: int, t0: float = 0.0) -> "FlowCache":
        A = np.atleast_2d(np.asarray(A, dtype=float))
        eta = int(eta)
        curvature_order = max(eta, 2)
        powers = [np.eye(A.shape[0])]
        for _ in range(eta + 1):
            powers.append(powers[-1] @ A)
        cache = cls(
            A=A,
            dt=float(dt),
            eta=eta,
            t0=float(t0),
            step=expm(A, dt),
            step_inv=expm(-A, dt),
            input_step=input_map(A, dt),
            powers=powers,
            E=remainder_E(A, dt, eta),
            F=curvature_F(A, dt, curvature_order),
            G=curvature_G(A, dt, curvature_order),
        )
        cache._fill_flows(steps)
        return cache

    def _fill_flows(self, steps: int) -> None:
        flow = expm(self.A, self.t0)
        flow_inv = expm(-self.A, self.t0)
        integral = input_map(self.A, self.t0)
        self.flows = [flow]
        self.flows_inv = [flow_inv]
        self.input_flows = [integral]
        for k in range(1, steps + 1):
            flow = self.step @ flow
            flow_inv = self.step_inv @ flow_inv
            integral = self.input_step + self.step @ integral
            if k % REVALIDATE_EVERY == 0:
                flow, flow_inv = self._revalidate(k, flow, flow_inv)
            self.flows.append(flow)
            self.flows_inv.append(flow_inv)
            self.input_flows.append(integral)

    def _revalidate(self, k: int, flow: np.ndarray, flow_inv: np.ndarray):
        t_k = self.t0 + k * self.dt
        exact = expm(self.A, t_k)
        drift = np.max(np.abs(flow - exact)) / max(1.0, float(np.max(np.abs(exact))))
        if drift > DRIFT_TOL:
            logger.warning("flow cache drift %.2e at step %d, resetting from expm", drift, k)
            return exact, expm(-self.A, t_k)
        return flow, flow_inv

    @property
    def dim(self) -> int:
        return self.A.shape[0]

    @property
    def steps(self) -> int:
        return len(self.flows) - 1

    def time(self, k: int) -> float:
        return self.t0 + k * self.dt

    def flow(self, k: int) -> np.ndarray:
        return self.flows[k]

    def flow_inv(self, k: int) -> np.ndarray:
        return self.flows_inv[k]
