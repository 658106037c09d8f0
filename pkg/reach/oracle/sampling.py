from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple, Union

import numpy as np

from reach.backward import Piece, TimeIntervalResult, TimePointResult, WitnessLayout
from reach.geomsets import (
    ConstrainedZonotope,
    HPolytope,
    Zonotope,
    cz_support_point,
    poly_box,
    poly_support_point,
)
from reach.oracle.signals import PiecewiseConstantSignal

DIRICHLET_CONCENTRATION = 0.5


def _directions(dim: int, count: int, rng: np.random.Generator) -> np.ndarray:
    raw = rng.normal(size=(count, dim))
    raw = np.vstack([np.eye(dim), -np.eye(dim), raw])
    return raw / np.linalg.norm(raw, axis=1, keepdims=True)


def sample_points(
    S: Union[HPolytope, ConstrainedZonotope],
    count: int,
    rng: np.random.Generator,
    num_directions: Optional[int] = None,
    extreme: bool = False,
) -> Tuple[np.ndarray, Optional[np.ndarray]]:
    """Random points of S as convex combinations of LP maximizers.

    Returns the points (count × n) and, for constrained zonotopes, the factor
    vectors that produce them. Empty sets give zero rows. With ``extreme``
    the maximizers themselves are returned, cycled up to ``count``.
    """
    dim = S.dim
    num_directions = num_directions or max(2 * dim, 8)
    anchors = []
    for direction in _directions(dim, num_directions, rng):
        if isinstance(S, HPolytope):
            value, point = poly_support_point(S, direction)
        else:
            value, point = cz_support_point(S, direction)
        if point is None or not np.isfinite(value):
            continue
        anchors.append(np.asarray(point, dtype=float))
    if not anchors:
        empty_factors = None if isinstance(S, HPolytope) else np.zeros((0, S.num_generators))
        return np.zeros((0, dim)), empty_factors
    anchors_arr = np.vstack(anchors)
    if extreme:
        mixed = anchors_arr[np.arange(count) % len(anchors)]
    else:
        weights = rng.dirichlet(np.full(len(anchors), DIRICHLET_CONCENTRATION), size=count)
        mixed = weights @ anchors_arr
    if isinstance(S, HPolytope):
        return mixed, None
    factors = np.clip(mixed, -1.0, 1.0)
    points = S.center + factors @ S.generators.T
    return points, factors


def random_signal(
    S: Zonotope,
    duration: float,
    steps: int,
    rng: np.random.Generator,
    vertex: Optional[bool] = None,
) -> PiecewiseConstantSignal:
    """Piecewise-constant signal in S; vertex signals use factors ±1 only.

    With ``vertex`` unset the kind is drawn 50/50.
    """
    steps = max(1, int(steps))
    if vertex is None:
        vertex = bool(rng.random() < 0.5)
    g = S.num_generators
    if vertex:
        factors = rng.choice([-1.0, 1.0], size=(steps, g))
    else:
        factors = rng.uniform(-1.0, 1.0, size=(steps, g))
    values = S.center + factors @ S.generators.T
    dt = duration / steps if duration > 0 else 1.0
    return PiecewiseConstantSignal(values.reshape(steps, S.dim), dt)


# ─── Witnesses ───────────────────────────────────────────────────────────────


@dataclass
class Witness:
    x0: np.ndarray
    u: PiecewiseConstantSignal
    window: Tuple[float, float]
    piece: Optional[int] = None


def witness_signal(layout: WitnessLayout, factors: np.ndarray) -> PiecewiseConstantSignal:
    ledger = layout.ledger
    own = factors[layout.offset:layout.offset + ledger.num_columns]
    segments = ledger.decode(own, layout.eval_time)
    if layout.window[1] > layout.eval_time:
        segments.append((layout.eval_time, layout.window[1], ledger.center))
    if not any(end - start > 0 for start, end, _ in segments):
        return PiecewiseConstantSignal.constant(ledger.center, max(layout.window[1], 1e-9))
    return PiecewiseConstantSignal.from_segments(segments)


def _decode_set(
    S: ConstrainedZonotope,
    layout: WitnessLayout,
    count: int,
    rng: np.random.Generator,
    piece: Optional[int],
    scale: float = 1.0,
    extreme: bool = False,
) -> List[Witness]:
    _, factors = sample_points(S, count, rng, extreme=extreme)
    placed = S if scale == 1.0 else scaled_about_center(S, scale)
    points = placed.center + factors @ placed.generators.T
    return [
        Witness(x0=points[i], u=witness_signal(layout, factors[i]), window=layout.window, piece=piece)
        for i in range(points.shape[0])
    ]


def decode_witnesses(
    result: Union[TimePointResult, TimeIntervalResult, Piece],
    n: int,
    seed: int = 0,
    piece: Optional[int] = None,
    scale: float = 1.0,
    extreme: bool = False,
) -> List[Witness]:
    """Sample n states of an inner EA result with their certifying inputs.

    ``scale`` ≠ 1 places each state in the set scaled about its center while
    keeping the input decoded from the same factors.
    """
    rng = np.random.default_rng(seed)
    if isinstance(result, TimePointResult):
        if result.witness is None or result.is_empty:
            return []
        return _decode_set(result.set, result.witness, n, rng, None, scale, extreme)
    if isinstance(result, Piece):
        pieces = [] if result.is_empty else [result]
    elif piece is not None:
        pieces = [result.pieces[piece]] if not result.pieces[piece].is_empty else []
    else:
        pieces = list(result.nonempty_pieces())
    pieces = [p for p in pieces if p.witness is not None]
    if not pieces:
        return []
    counts = np.full(len(pieces), n // len(pieces))
    counts[: n % len(pieces)] += 1
    witnesses: List[Witness] = []
    for item, count in zip(pieces, counts):
        if count:
            witnesses.extend(_decode_set(item.set, item.witness, int(count), rng, item.index, scale, extreme))
    return witnesses


# ─── Negative controls ───────────────────────────────────────────────────────


def scaled_about_center(S: Union[HPolytope, ConstrainedZonotope], factor: float, center: Optional[np.ndarray] = None):
    """c + factor·(S − c); c defaults to the zonotope center or the box center."""
    if isinstance(S, ConstrainedZonotope):
        return ConstrainedZonotope(S.center, factor * S.generators, S.con_lhs, S.con_rhs)
    if center is None:
        center = poly_box(S).center
    center = np.asarray(center, dtype=float)
    rhs = factor * S.con_rhs + (1.0 - factor) * (S.con_lhs @ center)
    return HPolytope(S.con_lhs, rhs)
