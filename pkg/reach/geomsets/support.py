"""Support-function dispatch over all set representations.

Each set module registers its own implementation; ``support_rows`` evaluates
the support function along every row of a matrix and may be specialised for
representations with a closed form.
"""

from __future__ import annotations

from functools import singledispatch

import numpy as np


@singledispatch
def support(shape, direction: np.ndarray) -> float:
    raise TypeError(f"no support function for {type(shape).__name__}")


@singledispatch
def support_rows(shape, directions: np.ndarray) -> np.ndarray:
    directions = np.atleast_2d(np.asarray(directions, dtype=float))
    return np.array([support(shape, row) for row in directions], dtype=float)
