"""
Run schemas: pydantic contracts for `reach run` configs and result files.

Matrices are row-major nested lists. Non-finite floats are stored as null.
"""

from __future__ import annotations

import math
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel, Field, model_validator

from reach.geomsets import ConstrainedZonotope, HPolytope, Zonotope

SCHEMA_VERSION = "1"

Matrix = List[List[float]]
Vector = List[float]


class Algorithm(str, Enum):
    AE_TP_OUTER = "ae-tp-outer"
    AE_TP_INNER = "ae-tp-inner"
    AE_TI_OUTER = "ae-ti-outer"
    EA_TP_OUTER = "ea-tp-outer"
    EA_TP_INNER = "ea-tp-inner"
    EA_TI_INNER = "ea-ti-inner"

    @property
    def is_interval(self) -> bool:
        return "-ti-" in self.value


# ─── Config ──────────────────────────────────────────────────────────────────


class ZonotopeSpec(BaseModel):
    """Either a box (lo, hi) or an explicit zonotope (center, generators n×g)."""

    lo: Optional[Vector] = None
    hi: Optional[Vector] = None
    center: Optional[Vector] = None
    generators: Optional[Matrix] = None

    @model_validator(mode="after")
    def _one_form(self) -> "ZonotopeSpec":
        box = self.lo is not None and self.hi is not None
        zono = self.center is not None
        if box == zono:
            raise ValueError("set needs either lo/hi or center (with optional generators)")
        return self

    def build(self) -> Zonotope:
        if self.lo is not None:
            return Zonotope.from_interval(self.lo, self.hi)
        generators = None if not self.generators else np.asarray(self.generators, dtype=float)
        return Zonotope(self.center, generators)


class PolytopeSpec(BaseModel):
    """Either a box (lo, hi) or halfspaces C x ≤ d."""

    lo: Optional[Vector] = None
    hi: Optional[Vector] = None
    C: Optional[Matrix] = None
    d: Optional[Vector] = None

    @model_validator(mode="after")
    def _one_form(self) -> "PolytopeSpec":
        box = self.lo is not None and self.hi is not None
        halfspaces = self.C is not None and self.d is not None
        if box == halfspaces:
            raise ValueError("target needs either lo/hi or C/d")
        return self

    def build(self) -> HPolytope:
        if self.lo is not None:
            return HPolytope.from_box(self.lo, self.hi)
        return HPolytope(np.asarray(self.C, dtype=float), np.asarray(self.d, dtype=float))


class InlineSystem(BaseModel):
    A: Matrix
    B: Matrix
    E: Matrix
    U: ZonotopeSpec
    W: ZonotopeSpec


class HorizonSpec(BaseModel):
    kind: Literal["point", "interval"] = "point"
    t0: float = 0.0
    t_end: float


class ValidationSpec(BaseModel):
    n_x0: int = 200
    n_w: int = 50
    n_samples: int = 10_000
    pieces_every: int = 10
    negative_controls: bool = True
    control_margin: float = Field(default=0.1, gt=0.0, lt=1.0)


class RunConfig(BaseModel):
    schema_version: str = SCHEMA_VERSION
    system: Optional[str] = None
    params: Dict[str, Any] = Field(default_factory=dict)
    inline: Optional[InlineSystem] = None
    target: Optional[PolytopeSpec] = None
    algorithm: Algorithm
    horizon: Optional[HorizonSpec] = None
    steps: Optional[int] = None
    eta: Union[int, Literal["auto"]] = "auto"
    directions: Optional[Matrix] = None
    extra_inputs: List[Vector] = Field(default_factory=list)
    interval_mode: Literal["witness", "literal"] = "witness"
    max_order: Optional[float] = None
    seed: int = 0
    output: Optional[str] = None
    projections: List[Tuple[int, int]] = Field(default_factory=list)
    angles: int = 128
    validation: ValidationSpec = Field(default_factory=ValidationSpec)

    @model_validator(mode="after")
    def _one_system(self) -> "RunConfig":
        if (self.system is None) == (self.inline is None):
            raise ValueError("config needs exactly one of 'system' (builtin name) or 'inline'")
        if self.inline is not None and (self.target is None or self.horizon is None or self.steps is None):
            raise ValueError("inline systems need target, horizon and steps")
        if self.steps is not None and self.steps < 1:
            raise ValueError("steps must be at least 1")
        return self


# ─── Report ──────────────────────────────────────────────────────────────────


def _finite_or_none(value: float) -> Optional[float]:
    return float(value) if math.isfinite(value) else None


class SetPayload(BaseModel):
    kind: Literal["hpolytope", "conzono"]
    dim: int
    center: Vector = Field(default_factory=list)
    generators: Matrix = Field(default_factory=list)
    con_lhs: Matrix = Field(default_factory=list)
    con_rhs: Vector = Field(default_factory=list)
    index: Optional[int] = None
    window: Optional[Tuple[float, float]] = None
    empty_stage: Optional[str] = None


class ProjectionPayload(BaseModel):
    dims: Tuple[int, int]
    piece: Optional[int] = None
    vertices: Matrix = Field(default_factory=list)
    area: float = 0.0
    empty: bool = False


class VerdictPayload(BaseModel):
    name: str
    samples: int
    passes: int
    worst_violation: Optional[float] = None
    stage_log: Optional[List[Dict[str, Any]]] = None
    expect_failure: bool = False

    @property
    def ok(self) -> bool:
        """All samples pass, or for a negative control at least one fails."""
        if self.expect_failure:
            return self.passes < self.samples
        return self.passes == self.samples


class RunReport(BaseModel):
    schema_version: str = SCHEMA_VERSION
    config: RunConfig
    kind: str
    timings: Dict[str, float] = Field(default_factory=dict)
    sets: List[SetPayload] = Field(default_factory=list)
    bounds: Optional[SetPayload] = None
    projections: List[ProjectionPayload] = Field(default_factory=list)
    verdicts: List[VerdictPayload] = Field(default_factory=list)
    provenance: List[str] = Field(default_factory=list)
    diagnostics: Dict[str, Any] = Field(default_factory=dict)
    empty: bool = False


# ─── Conversions ─────────────────────────────────────────────────────────────


def _rows(matrix: np.ndarray) -> Matrix:
    return [[float(v) for v in row] for row in np.atleast_2d(matrix)]


def set_to_payload(
    S: Union[HPolytope, ConstrainedZonotope],
    index: Optional[int] = None,
    window: Optional[Tuple[float, float]] = None,
    empty_stage: Optional[str] = None,
) -> SetPayload:
    if isinstance(S, HPolytope):
        return SetPayload(
            kind="hpolytope",
            dim=S.dim,
            con_lhs=_rows(S.con_lhs) if S.num_constraints else [],
            con_rhs=[float(v) for v in S.con_rhs],
            index=index,
            window=window,
            empty_stage=empty_stage,
        )
    return SetPayload(
        kind="conzono",
        dim=S.dim,
        center=[float(v) for v in S.center],
        generators=_rows(S.generators) if S.num_generators else [[] for _ in range(S.dim)],
        con_lhs=_rows(S.con_lhs) if S.num_constraints else [],
        con_rhs=[float(v) for v in S.con_rhs],
        index=index,
        window=window,
        empty_stage=empty_stage,
    )


def payload_to_set(payload: SetPayload) -> Union[HPolytope, ConstrainedZonotope]:
    if payload.kind == "hpolytope":
        lhs = np.asarray(payload.con_lhs, dtype=float).reshape(-1, payload.dim)
        return HPolytope(lhs, np.asarray(payload.con_rhs, dtype=float))
    generators = np.asarray(payload.generators, dtype=float).reshape(payload.dim, -1)
    gamma = generators.shape[1]
    lhs = np.asarray(payload.con_lhs, dtype=float).reshape(-1, gamma)
    return ConstrainedZonotope(
        np.asarray(payload.center, dtype=float),
        generators,
        lhs,
        np.asarray(payload.con_rhs, dtype=float),
    )


def verdict_to_payload(name: str, verdict, verbose: bool = False, expect_failure: bool = False) -> VerdictPayload:
    return VerdictPayload(
        name=name,
        samples=verdict.samples,
        passes=verdict.passes,
        worst_violation=_finite_or_none(verdict.worst_violation),
        stage_log=verdict.stage_log if verbose else None,
        expect_failure=expect_failure,
    )


def write_report(report: RunReport, path: Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(report.model_dump_json(indent=2), encoding="utf-8")
    return path


def read_report(path: Path) -> RunReport:
    return RunReport.model_validate_json(Path(path).read_text(encoding="utf-8"))


def read_config(path: Path) -> RunConfig:
    return RunConfig.model_validate_json(Path(path).read_text(encoding="utf-8"))
