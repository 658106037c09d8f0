"""Convex set representations and the set calculus built on them.

Public API:
  - Interval, IntervalMatrix, Zonotope, ConstrainedZonotope, HPolytope, Ball
  - support(S, ℓ) / support_rows(S, C): support function for any set type
  - zono_* / cz_* / poly_* operations, intmat_mul_zono / intmat_mul_cz
  - poly_to_cz: exact polytope → constrained zonotope conversion
  - set_in_poly: containment in an H-polytope via support values

Emptiness is queried (poly_is_empty, cz_is_empty), never raised on construction.
"""

from reach.geomsets.ball import Ball
from reach.geomsets.conzono import (
    ConstrainedZonotope,
    cz_convhull,
    cz_halfspace_intersect,
    cz_is_empty,
    cz_linmap,
    cz_minksum,
    cz_poly_intersect,
    cz_support,
    cz_support_point,
    intmat_mul_cz,
)
from reach.geomsets.errors import (
    DimensionMismatchError,
    EmptySetError,
    SingularMatrixError,
    UnboundedSetError,
)
from reach.geomsets.interval import Interval, IntervalMatrix
from reach.geomsets.polytope import (
    HPolytope,
    poly_box,
    poly_is_empty,
    poly_linmap_inv,
    poly_minkdiff,
    poly_outer_minksum,
    poly_support,
    poly_support_point,
    poly_to_cz,
    set_in_poly,
)
from reach.geomsets.support import support, support_rows
from reach.geomsets.zonotope import (
    Zonotope,
    intmat_mul_zono,
    zono_compact,
    zono_contains,
    zono_linmap,
    zono_minksum,
    zono_reduce,
    zono_support,
)

__all__ = [
    "Ball",
    "ConstrainedZonotope",
    "DimensionMismatchError",
    "EmptySetError",
    "HPolytope",
    "Interval",
    "IntervalMatrix",
    "SingularMatrixError",
    "UnboundedSetError",
    "Zonotope",
    "cz_convhull",
    "cz_halfspace_intersect",
    "cz_is_empty",
    "cz_linmap",
    "cz_minksum",
    "cz_poly_intersect",
    "cz_support",
    "cz_support_point",
    "intmat_mul_cz",
    "intmat_mul_zono",
    "poly_box",
    "poly_is_empty",
    "poly_linmap_inv",
    "poly_minkdiff",
    "poly_outer_minksum",
    "poly_support",
    "poly_support_point",
    "poly_to_cz",
    "set_in_poly",
    "support",
    "support_rows",
    "zono_compact",
    "zono_contains",
    "zono_linmap",
    "zono_minksum",
    "zono_reduce",
    "zono_support",
]
