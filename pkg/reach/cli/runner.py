from __future__ import annotations

import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

import numpy as np

from reach.backward import (
    ALGORITHMS,
    BackwardSpec,
    Horizon,
    LinSys,
    ResultKind,
    TimeIntervalResult,
    TimePointResult,
)
from reach.cli.projection import Polygon, project_all, write_polygons
from reach.cli.systems import Benchmark, load_benchmark
from reach.config import settings
from reach.geomsets import poly_box, support_rows
from reach.logging import log_event, stage_timer
from reach.oracle import (
    ae_backward_sampling,
    analytic_1d_brs,
    decode_witnesses,
    ea_witness_replay,
)
from reach.schemas import (
    Algorithm,
    ProjectionPayload,
    RunConfig,
    RunReport,
    VerdictPayload,
    set_to_payload,
    verdict_to_payload,
    write_report,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_EMPTY = 2

ANALYTIC_TOL = 1e-3

Result = Union[TimePointResult, TimeIntervalResult]


def _inline(config: RunConfig) -> Benchmark:
    inline = config.inline
    sys = LinSys(
        np.asarray(inline.A, dtype=float),
        np.asarray(inline.B, dtype=float),
        np.asarray(inline.E, dtype=float),
        inline.U.build(),
        inline.W.build(),
    )
    spec = BackwardSpec(target=config.target.build(), horizon=Horizon.point(1.0), steps=1)
    return Benchmark(sys, spec, ["inline system"])


def build_problem(config: RunConfig) -> Benchmark:
    """Resolve a config into a system and a fully specified BackwardSpec."""
    if config.inline is not None:
        benchmark = _inline(config)
    else:
        params: Dict[str, Any] = dict(config.params)
        params.setdefault("horizon", "interval" if config.algorithm.is_interval else "point")
        benchmark = load_benchmark(config.system, params)

    spec = benchmark.spec
    horizon = spec.horizon
    if config.horizon is not None:
        if config.horizon.kind == "point":
            horizon = Horizon.point(config.horizon.t_end)
        else:
            horizon = Horizon.interval(config.horizon.t0, config.horizon.t_end)
    target = config.target.build() if config.target is not None else spec.target
    directions = None if config.directions is None else np.asarray(config.directions, dtype=float)
    spec = BackwardSpec(
        target=target,
        horizon=horizon,
        steps=config.steps or spec.steps,
        eta=config.eta if config.eta != "auto" else spec.eta,
        directions=directions,
        max_order=config.max_order if config.max_order is not None else spec.max_order,
        extra_inputs=tuple(np.asarray(u, dtype=float) for u in config.extra_inputs),
        interval_mode=config.interval_mode,
    )
    return Benchmark(benchmark.sys, spec, benchmark.provenance)


def _set_payloads(result: Result):
    if isinstance(result, TimePointResult):
        return [set_to_payload(result.set, empty_stage=result.empty_stage)], None
    payloads = [
        set_to_payload(piece.set, index=piece.index, window=piece.window, empty_stage=piece.empty_stage)
        for piece in result.pieces
    ]
    bounds = set_to_payload(result.bounds) if result.bounds is not None else None
    return payloads, bounds


def _projection_sets(result: Result) -> List[Tuple[Optional[int], object]]:
    if isinstance(result, TimePointResult):
        return [] if result.is_empty else [(None, result.set)]
    return [(piece.index, piece.set) for piece in result.nonempty_pieces()]


def _plain(value: Any) -> Any:
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, (np.ndarray, np.generic)):
        return value.tolist()
    return value


def _polygon_payload(polygon: Polygon) -> ProjectionPayload:
    i, j = polygon.dims
    return ProjectionPayload(
        dims=(i + 1, j + 1),
        piece=polygon.piece,
        vertices=[[float(x), float(y)] for x, y in polygon.vertices],
        area=polygon.area,
        empty=polygon.empty,
    )


def _ea_witnesses(result: Result, checks, seed: int, scale: float = 1.0, extreme: bool = False):
    if isinstance(result, TimePointResult):
        return decode_witnesses(result, checks.n_x0, seed, scale=scale, extreme=extreme)
    witnesses = []
    for piece in result.pieces[:: max(1, checks.pieces_every)]:
        witnesses.extend(
            decode_witnesses(piece, max(1, checks.n_x0 // 10), seed + piece.index, scale=scale, extreme=extreme)
        )
    return witnesses


def validate_result(problem: Benchmark, result: Result, config: RunConfig) -> List[VerdictPayload]:
    """Run the oracles that apply to this result kind.

    With negative controls on, the EA replay is repeated on boundary states
    of the set inflated by ``control_margin`` and the AE sampling on the set
    deflated by it; both are expected to fail at least once.
    """
    sys, spec = problem.sys, problem.spec
    verdicts: List[VerdictPayload] = []
    checks = config.validation
    margin = checks.control_margin

    if sys.n == 1 and isinstance(result, TimePointResult):
        verdicts.append(_analytic_verdict(sys, spec.target, result))

    if result.kind is ResultKind.EA_INNER:
        witnesses = _ea_witnesses(result, checks, config.seed)
        verdict = ea_witness_replay(sys, spec.target, witnesses, checks.n_w, seed=config.seed)
        verdicts.append(verdict_to_payload("ea_witness_replay", verdict))
        if checks.negative_controls and not result.is_empty:
            inflated = _ea_witnesses(result, checks, config.seed, scale=1.0 + margin, extreme=True)
            verdict = ea_witness_replay(sys, spec.target, inflated, checks.n_w, seed=config.seed)
            verdicts.append(verdict_to_payload("ea_inflated_control", verdict, expect_failure=True))

    if result.kind is ResultKind.AE_OUTER and sys.U.is_point:
        verdict = ae_backward_sampling(sys, spec.target, result, checks.n_samples, seed=config.seed)
        verdicts.append(verdict_to_payload("ae_backward_sampling", verdict))
        if checks.negative_controls and not result.is_empty:
            verdict = ae_backward_sampling(
                sys, spec.target, result, checks.n_samples, seed=config.seed, scale=1.0 - margin, extreme=True
            )
            verdicts.append(verdict_to_payload("ae_deflated_control", verdict, expect_failure=True))

    if not verdicts:
        log_event("validation_skipped", kind=result.kind.value)
    return verdicts


def _bounds(S) -> Tuple[float, float]:
    hull = S.interval_hull() if hasattr(S, "interval_hull") else poly_box(S)
    return float(hull.lo[0]), float(hull.hi[0])


def _analytic_verdict(sys: LinSys, target, result: TimePointResult) -> VerdictPayload:
    a = float(sys.A[0, 0])
    exact = analytic_1d_brs(
        a, _bounds(sys.input_set()), _bounds(sys.disturbance_set()), _bounds(target), result.t, result.kind
    )
    if exact is None or result.is_empty:
        passed = exact is None and result.is_empty
        return VerdictPayload(name="analytic_1d", samples=1, passes=int(passed), worst_violation=0.0 if passed else None)
    values = support_rows(result.set, np.array([[1.0], [-1.0]]))
    error = max(abs(values[0] - exact[1]), abs(-values[1] - exact[0]))
    return VerdictPayload(name="analytic_1d", samples=1, passes=int(error <= ANALYTIC_TOL), worst_violation=float(error))


def run(config: RunConfig, validate: bool = False, out: Optional[Path] = None) -> Tuple[RunReport, int]:
    """Dispatch one config, write the report and return it with the exit code."""
    timings: Dict[str, float] = {}
    with stage_timer("build", timings):
        problem = build_problem(config)
    algorithm = ALGORITHMS[config.algorithm.value]
    with stage_timer("algorithm", timings, algorithm=config.algorithm.value):
        result = algorithm(problem.sys, problem.spec)

    sets, bounds = _set_payloads(result)
    pairs = [(i - 1, j - 1) for i, j in config.projections]
    with stage_timer("projection", timings):
        polygons = project_all(_projection_sets(result), pairs, config.angles) if pairs else []

    verdicts: List[VerdictPayload] = []
    if validate:
        with stage_timer("validation", timings):
            verdicts = validate_result(problem, result, config)

    diagnostics = _plain({k: v for k, v in result.diagnostics.items() if k != "timings"})
    timings.update({f"algorithm.{k}": v for k, v in result.diagnostics.get("timings", {}).items()})
    report = RunReport(
        config=config,
        kind=result.kind.value,
        timings=timings,
        sets=sets,
        bounds=bounds,
        projections=[_polygon_payload(p) for p in polygons],
        verdicts=verdicts,
        provenance=problem.provenance,
        diagnostics=diagnostics,
        empty=result.is_empty,
    )

    target_dir = Path(out or config.output or settings.OUTPUT_DIR)
    write_report(report, target_dir / "result.json")
    if polygons:
        write_polygons(polygons, target_dir)
    failed = [v.name for v in verdicts if not v.ok]
    if failed:
        logger.warning("validation failures: %s", failed)
    return report, EXIT_EMPTY if result.is_empty else EXIT_OK
