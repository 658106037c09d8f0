from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from reach.config import settings
from reach.geomsets import ConstrainedZonotope, HPolytope, Zonotope, zono_compact, zono_linmap
from reach.linflow import StepGrid, TruncationOrder, auto_eta


class HorizonError(ValueError):
    """Horizon kind does not match the requested algorithm."""


# ─── System and problem ────────────────────────────────────────────────────


@dataclass(frozen=True, eq=False)
class LinSys:
    """ẋ = Ax + Bu + Ew with u ∈ U, w ∈ W."""

    A: np.ndarray
    B: np.ndarray
    E: np.ndarray
    U: Zonotope
    W: Zonotope

    def __post_init__(self) -> None:
        A = np.atleast_2d(np.asarray(self.A, dtype=float))
        n = A.shape[0]
        B = np.asarray(self.B, dtype=float).reshape(n, -1)
        E = np.asarray(self.E, dtype=float).reshape(n, -1)
        if A.shape != (n, n):
            raise ValueError(f"A must be square, got {A.shape}")
        if B.shape[1] != self.U.dim:
            raise ValueError(f"B has {B.shape[1]} columns but U lives in R^{self.U.dim}")
        if E.shape[1] != self.W.dim:
            raise ValueError(f"E has {E.shape[1]} columns but W lives in R^{self.W.dim}")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)
        object.__setattr__(self, "E", E)
        object.__setattr__(self, "U", zono_compact(self.U))
        object.__setattr__(self, "W", zono_compact(self.W))

    @property
    def n(self) -> int:
        return self.A.shape[0]

    @property
    def m(self) -> int:
        return self.B.shape[1]

    @property
    def r(self) -> int:
        return self.E.shape[1]

    def input_set(self) -> Zonotope:
        """B·U in state space."""
        return zono_linmap(self.B, self.U)

    def disturbance_set(self) -> Zonotope:
        """E·W in state space."""
        return zono_linmap(self.E, self.W)

    def with_sets(self, U: Optional[Zonotope] = None, W: Optional[Zonotope] = None) -> "LinSys":
        return LinSys(self.A, self.B, self.E, self.U if U is None else U, self.W if W is None else W)


def unperturbed_mode(sys: LinSys) -> LinSys:
    """Same system with W replaced by the zero point."""
    if sys.W.is_point and not np.any(sys.W.center):
        return sys
    return sys.with_sets(W=Zonotope.origin(sys.r))


class HorizonKind(str, Enum):
    POINT = "point"
    INTERVAL = "interval"


@dataclass(frozen=True)
class Horizon:
    kind: HorizonKind
    t0: float
    t_end: float

    def __post_init__(self) -> None:
        if self.kind is HorizonKind.POINT and not self.t_end > 0:
            raise ValueError("time-point horizon needs t > 0")
        if self.kind is HorizonKind.INTERVAL and not (self.t_end > self.t0 >= 0):
            raise ValueError("time-interval horizon needs t_end > t0 >= 0")

    @staticmethod
    def point(t: float) -> "Horizon":
        return Horizon(HorizonKind.POINT, 0.0, float(t))

    @staticmethod
    def interval(t0: float, t_end: float) -> "Horizon":
        return Horizon(HorizonKind.INTERVAL, float(t0), float(t_end))

    @property
    def is_interval(self) -> bool:
        return self.kind is HorizonKind.INTERVAL


class IntervalMode(str, Enum):
    """Piece construction of the time-interval EA algorithm."""

    WITNESS = "witness"
    LITERAL = "literal"


EtaSpec = Union[int, TruncationOrder, str]


@dataclass(frozen=True, eq=False)
class BackwardSpec:
    target: HPolytope
    horizon: Horizon
    steps: int
    eta: EtaSpec = "auto"
    directions: Optional[np.ndarray] = None
    max_order: float = field(default_factory=lambda: settings.MAX_ORDER)
    extra_inputs: Tuple[np.ndarray, ...] = ()
    interval_mode: IntervalMode = IntervalMode.WITNESS

    def __post_init__(self) -> None:
        if int(self.steps) < 1:
            raise ValueError("step count must be at least 1")
        object.__setattr__(self, "steps", int(self.steps))
        if isinstance(self.eta, str) and self.eta != "auto":
            raise ValueError(f"eta must be a positive integer or 'auto', got {self.eta!r}")
        if self.directions is not None:
            directions = np.atleast_2d(np.asarray(self.directions, dtype=float))
            if directions.shape[0] != self.target.dim:
                raise ValueError(
                    f"direction matrix must have {self.target.dim} rows, got {directions.shape[0]}"
                )
            object.__setattr__(self, "directions", directions)
        object.__setattr__(self, "interval_mode", IntervalMode(self.interval_mode))
        object.__setattr__(
            self, "extra_inputs", tuple(np.asarray(u, dtype=float).reshape(-1) for u in self.extra_inputs)
        )

    def grid(self) -> StepGrid:
        return StepGrid(self.horizon.t0, self.horizon.t_end, self.steps)

    def resolve_eta(self, A: np.ndarray, dt: float) -> int:
        if self.eta == "auto":
            return int(auto_eta(A, dt))
        return int(self.eta)

    def direction_rows(self) -> np.ndarray:
        """Rows ℓⱼᵀ of the direction set N: [I −I] followed by user directions."""
        n = self.target.dim
        rows = np.vstack([np.eye(n), -np.eye(n)])
        if self.directions is not None:
            rows = np.vstack([rows, self.directions.T])
        return rows

    def with_horizon(self, horizon: Horizon, steps: Optional[int] = None) -> "BackwardSpec":
        return BackwardSpec(
            self.target,
            horizon,
            self.steps if steps is None else steps,
            self.eta,
            self.directions,
            self.max_order,
            self.extra_inputs,
            self.interval_mode,
        )


# ─── Witness bookkeeping ─────────────────────────────────────────────────────


@dataclass
class InputLedger:
    """Which generator columns of an inner input solution steer which time span.

    Block i owns columns [i·g, (i+1)·g) and controls the input over the
    time-to-go window ``windows[i]`` = (a, b), i.e. absolute times
    [T − b, T − a] for evaluation time T.
    """

    center: np.ndarray
    generators: np.ndarray
    windows: List[Tuple[float, float]] = field(default_factory=list)

    @property
    def block_size(self) -> int:
        return self.generators.shape[1]

    @property
    def num_columns(self) -> int:
        return self.block_size * len(self.windows)

    def copy(self) -> "InputLedger":
        return InputLedger(self.center, self.generators, list(self.windows))

    def decode(self, factors: np.ndarray, eval_time: float) -> List[Tuple[float, float, np.ndarray]]:
        """Absolute (start, end, u) segments sorted by start time."""
        factors = np.asarray(factors, dtype=float)
        g = self.block_size
        segments = []
        for i, (a, b) in enumerate(self.windows):
            beta = factors[i * g:(i + 1) * g]
            segments.append((eval_time - b, eval_time - a, self.center + self.generators @ beta))
        segments.sort(key=lambda item: item[0])
        return segments


@dataclass
class WitnessLayout:
    """Locates the input factors of an EA set and how to replay them."""

    offset: int
    ledger: InputLedger
    eval_time: float
    window: Tuple[float, float]


# ─── Results ─────────────────────────────────────────────────────────────────


class ResultKind(str, Enum):
    AE_OUTER = "ae-outer"
    AE_INNER = "ae-inner"
    EA_OUTER = "ea-outer"
    EA_INNER = "ea-inner"


SetResult = Union[HPolytope, ConstrainedZonotope]


@dataclass
class TimePointResult:
    set: SetResult
    kind: ResultKind
    t: float
    diagnostics: Dict[str, Any] = field(default_factory=dict)
    empty_stage: Optional[str] = None
    witness: Optional[WitnessLayout] = None

    def __post_init__(self) -> None:
        expected = HPolytope if self.kind is ResultKind.AE_OUTER else ConstrainedZonotope
        if not isinstance(self.set, expected):
            raise TypeError(f"{self.kind.value} result must be a {expected.__name__}")

    @property
    def is_empty(self) -> bool:
        return self.empty_stage is not None


@dataclass
class Piece:
    index: int
    window: Tuple[float, float]
    set: ConstrainedZonotope
    empty_stage: Optional[str] = None
    witness: Optional[WitnessLayout] = None

    @property
    def is_empty(self) -> bool:
        return self.empty_stage is not None


@dataclass
class TimeIntervalResult:
    pieces: List[Piece]
    kind: ResultKind
    grid: StepGrid
    diagnostics: Dict[str, Any] = field(default_factory=dict)
    bounds: Optional[HPolytope] = None

    @property
    def is_empty(self) -> bool:
        return all(piece.is_empty for piece in self.pieces)

    def nonempty_pieces(self) -> Sequence[Piece]:
        return [piece for piece in self.pieces if not piece.is_empty]

    def piece_at(self, t: float) -> Piece:
        k = int(np.clip(np.floor((t - self.grid.t0) / self.grid.dt), 0, self.grid.steps - 1))
        return self.pieces[k]
