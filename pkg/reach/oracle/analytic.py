from __future__ import annotations

import math
from typing import Optional, Tuple

from reach.backward import ResultKind

Bounds = Tuple[float, float]


def _transfer(a: float, t: float) -> float:
    """(e^{at} − 1)/a, equal to t for a = 0."""
    if abs(a * t) < 1e-12:
        return t
    return math.expm1(a * t) / a


def _scale(k: float, box: Bounds) -> Bounds:
    lo, hi = k * box[0], k * box[1]
    return (min(lo, hi), max(lo, hi))


def _minkdiff(p: Bounds, s: Bounds) -> Optional[Bounds]:
    lo, hi = p[0] - s[0], p[1] - s[1]
    return (lo, hi) if lo <= hi else None


def analytic_1d_brs(
    a: float,
    U: Bounds,
    W: Bounds,
    X_end: Bounds,
    t: float,
    kind: ResultKind | str,
) -> Optional[Bounds]:
    """Exact time-point AE / EA set of ẋ = ax + u + w as an interval.

    Inner and outer kinds of the same game share the exact answer. ``None``
    means the set is empty.
    """
    kind = ResultKind(kind) if not isinstance(kind, ResultKind) else kind
    g = _transfer(a, t)
    Z_u = _scale(g, U)
    Z_w = _scale(g, W)
    if kind in (ResultKind.AE_OUTER, ResultKind.AE_INNER):
        widened = (X_end[0] - Z_w[1], X_end[1] - Z_w[0])
        core = _minkdiff(widened, Z_u)
    else:
        eroded = _minkdiff(X_end, Z_w)
        core = None if eroded is None else (eroded[0] - Z_u[1], eroded[1] - Z_u[0])
    if core is None:
        return None
    return _scale(math.exp(-a * t), core)
