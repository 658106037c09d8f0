"""Builtin benchmark systems.

Matrices and sets live as YAML under ``resource/assets/benchmarks``; this
module turns them into (LinSys, BackwardSpec) pairs for a parameter dict.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, List, Mapping, Optional, Tuple

import numpy as np
import yaml

from reach.backward import BackwardSpec, Horizon, LinSys
from reach.config import settings
from reach.geomsets import HPolytope, Zonotope

logger = logging.getLogger(__name__)


class UnknownSystemError(KeyError):
    """No builtin benchmark with the requested name."""


class BenchmarkDataMissing(FileNotFoundError):
    """The data file behind a builtin benchmark is not installed."""


@dataclass
class Benchmark:
    sys: LinSys
    spec: BackwardSpec
    provenance: List[str] = field(default_factory=list)


def load_benchmark_data(stem: str, directory: Optional[Path] = None) -> Dict[str, Any]:
    path = Path(directory or settings.BENCHMARK_DIR) / f"{stem}.yaml"
    if not path.exists():
        raise BenchmarkDataMissing(
            f"benchmark data file {path} is missing; set REACH_BENCHMARK_DIR or reinstall resource/assets"
        )
    with path.open("r", encoding="utf-8") as f:
        raw = yaml.safe_load(f)
    if not isinstance(raw, dict):
        raise ValueError(f"{path} must contain a mapping")
    return raw


def _matrix(rows) -> np.ndarray:
    return np.atleast_2d(np.asarray(rows, dtype=float))


def _horizon(data: Mapping[str, Any], params: Mapping[str, Any]) -> Tuple[Horizon, int]:
    block = data.get("horizon", {})
    steps = int(params.get("steps", data.get("steps", 100)))
    kind = params.get("horizon", "interval")
    if kind == "point":
        t = float(params.get("t", data.get("t", block.get("t_end"))))
        return Horizon.point(t), steps
    t0 = float(params.get("t0", block.get("t0", 0.0)))
    t_end = float(params.get("t_end", block.get("t_end")))
    return Horizon.interval(t0, t_end), steps


def _spec(target: HPolytope, data: Mapping[str, Any], params: Mapping[str, Any]) -> BackwardSpec:
    horizon, steps = _horizon(data, params)
    extra = {}
    if "eta" in params:
        extra["eta"] = params["eta"]
    if "max_order" in params:
        extra["max_order"] = float(params["max_order"])
    return BackwardSpec(target=target, horizon=horizon, steps=steps, **extra)


def _case(data: Mapping[str, Any], params: Mapping[str, Any]) -> Tuple[float, float]:
    cases = data.get("cases", {})
    case = params.get("case")
    if case is not None:
        chosen = cases.get(int(case))
        if chosen is None:
            raise ValueError(f"unknown case {case!r}; available: {sorted(cases)}")
        zeta, phi = chosen["zeta"], chosen["phi"]
    else:
        default = cases.get(2, {"zeta": 1.0, "phi": 1.0})
        zeta, phi = default["zeta"], default["phi"]
    return float(params.get("zeta", zeta)), float(params.get("phi", phi))


# ─── Builders ────────────────────────────────────────────────────────────────


def _pursuit_evasion(params: Mapping[str, Any]) -> Benchmark:
    data = load_benchmark_data("pursuit_evasion")
    sys = LinSys(
        _matrix(data["A"]),
        _matrix(data["B"]),
        _matrix(data["E"]),
        Zonotope.from_interval(data["U"]["lo"], data["U"]["hi"]),
        Zonotope.from_interval(data["W"]["lo"], data["W"]["hi"]),
    )
    target = HPolytope.from_box(data["target"]["lo"], data["target"]["hi"])
    return Benchmark(sys, _spec(target, data, params), [data["provenance"]])


def _quadrotor_6d(params: Mapping[str, Any]) -> Benchmark:
    data = load_benchmark_data("quadrotor_6d")
    c = data["constants"]
    g, d0, d1, n0 = c["g"], c["d0"], c["d1"], c["n0"]
    K = c["K_num"] / c["K_den"]
    zeta, phi = _case(data, params)
    A = np.zeros((6, 6))
    A[0, 2] = A[1, 3] = A[4, 5] = 1.0
    A[2, 4] = g
    A[5, 4], A[5, 5] = -d0, -d1
    B = np.zeros((6, 2))
    B[3, 0], B[5, 1] = K, n0
    E = np.zeros((6, 2))
    E[2, 0] = E[3, 1] = 1.0
    r_u = np.asarray(data["input_radius"], dtype=float) * np.array([zeta, 1.0])
    r_w = np.asarray(data["disturbance_radius"], dtype=float) * np.array([phi, 1.0])
    U = Zonotope(np.array([g / K, 0.0]), np.diag(r_u))
    W = Zonotope(np.zeros(2), np.diag(r_w))
    target = HPolytope(_matrix(data["target"]["C"]), np.asarray(data["target"]["d"], dtype=float))
    notes = [data["provenance"], f"zeta={zeta}, phi={phi}"]
    return Benchmark(LinSys(A, B, E, U, W), _spec(target, data, params), notes)


def _quadrotor_12d(params: Mapping[str, Any]) -> Benchmark:
    data = load_benchmark_data("quadrotor_12d")
    zeta, phi = _case(data, params)
    A, B = _matrix(data["A"]), _matrix(data["B"])
    E = np.zeros((12, 3))
    for col, row in enumerate(data["disturbance_rows"]):
        E[int(row) - 1, col] = 1.0
    G = float(data["set_generators_scale"]) * _matrix(data["set_generators"])
    lo, hi = data["thrust"]
    U = Zonotope(
        np.array([0.5 * (lo + hi), 0.0, 0.0, 0.0]),
        np.vstack([
            np.hstack([[0.5 * (hi - lo)], np.zeros(G.shape[1])]),
            np.hstack([np.zeros((3, 1)), zeta * G]),
        ]),
    )
    W = Zonotope(np.zeros(3), phi * G)
    terminal = _matrix(data["terminal_generators"])
    inverse = np.linalg.inv(terminal)
    target = HPolytope(np.vstack([inverse, -inverse]), np.ones(24))
    notes = [data["provenance"], f"zeta={zeta}, phi={phi}"]
    return Benchmark(LinSys(A, B, E, U, W), _spec(target, data, params), notes)


def platoon_system(theta: int, data: Mapping[str, Any], target_kind: str = "ae") -> Tuple[LinSys, HPolytope]:
    if theta < 1:
        raise ValueError(f"platoon needs at least one truck, got theta={theta}")
    truck = data["truck"]
    block = _matrix(truck["A"])
    b = np.asarray(truck["B"], dtype=float)
    row, col = truck["coupling"]
    n = 3 * theta
    A = np.zeros((n, n))
    B = np.zeros((n, theta))
    for j in range(theta):
        s = 3 * j
        A[s:s + 3, s:s + 3] = block
        B[s:s + 3, j] = b
        if j > 0:
            A[s + row, s - 3 + col] = 1.0
    E = np.zeros((n, 1))
    E[1, 0] = 1.0
    lo, hi = data["input"]
    U = Zonotope.from_interval(np.full(theta, lo), np.full(theta, hi))
    W = Zonotope.from_interval([data["disturbance"][0]], [data["disturbance"][1]])
    if target_kind not in ("ae", "ea"):
        raise ValueError(f"platoon target must be 'ae' or 'ea', got {target_kind!r}")
    C = _matrix(data["target"]["C"])
    d = np.asarray(data["target"][f"d_{target_kind}"], dtype=float)
    lhs = np.zeros((C.shape[0] * theta, n))
    for j in range(theta):
        lhs[C.shape[0] * j:C.shape[0] * (j + 1), 3 * j:3 * j + 3] = C
    return LinSys(A, B, E, U, W), HPolytope(lhs, np.tile(d, theta))


def _platoon(params: Mapping[str, Any]) -> Benchmark:
    data = load_benchmark_data("platoon")
    theta = int(params.get("theta", 5))
    sys, target = platoon_system(theta, data, str(params.get("target", "ae")))
    notes = [data["provenance"], f"theta={theta}"]
    return Benchmark(sys, _spec(target, data, params), notes)


def _scalar(params: Mapping[str, Any]) -> Benchmark:
    a = float(params.get("a", -1.0))
    U = params.get("U", (-0.1, 0.1))
    W = params.get("W", (-0.05, 0.05))
    X = params.get("X", (-1.0, 1.0))
    sys = LinSys(
        np.array([[a]]),
        np.array([[1.0]]),
        np.array([[1.0]]),
        Zonotope.from_interval([U[0]], [U[1]]),
        Zonotope.from_interval([W[0]], [W[1]]),
    )
    data = {"horizon": {"t0": 0.0, "t_end": 1.0}, "steps": 1000, "t": 1.0}
    params = {"horizon": "point", **params}
    return Benchmark(sys, _spec(HPolytope.from_box([X[0]], [X[1]]), data, params), ["closed-form test system"])


BUILDERS: Dict[str, Callable[[Mapping[str, Any]], Benchmark]] = {
    "pursuit-evasion": _pursuit_evasion,
    "quadrotor-6d": _quadrotor_6d,
    "quadrotor-12d": _quadrotor_12d,
    "platoon": _platoon,
    "scalar": _scalar,
}


def load_benchmark(name: str, params: Optional[Mapping[str, Any]] = None) -> Benchmark:
    builder = BUILDERS.get(name)
    if builder is None:
        raise UnknownSystemError(f"unknown system {name!r}; available: {', '.join(sorted(BUILDERS))}")
    benchmark = builder(dict(params or {}))
    logger.info("loaded benchmark %s (n=%d, m=%d, r=%d)", name, benchmark.sys.n, benchmark.sys.m, benchmark.sys.r)
    return benchmark


def builtin_system(name: str, params: Optional[Mapping[str, Any]] = None) -> Tuple[LinSys, BackwardSpec]:
    benchmark = load_benchmark(name, params)
    return benchmark.sys, benchmark.spec
