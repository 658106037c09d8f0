"""
Set calculus: support functions, linear maps, Minkowski sums and differences,
polytope conversion, convex hulls and halfspace intersection.

Most checks compare support values along random directions, which is exact
for convex sets.
"""

import sys
from pathlib import Path

import numpy as np
import pytest

ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.append(str(ROOT))

from reach.geomsets import (
    Ball,
    ConstrainedZonotope,
    DimensionMismatchError,
    EmptySetError,
    HPolytope,
    Interval,
    IntervalMatrix,
    SingularMatrixError,
    Zonotope,
    cz_convhull,
    cz_is_empty,
    cz_linmap,
    cz_minksum,
    cz_poly_intersect,
    cz_support,
    intmat_mul_cz,
    intmat_mul_zono,
    poly_box,
    poly_is_empty,
    poly_linmap_inv,
    poly_minkdiff,
    poly_outer_minksum,
    poly_to_cz,
    set_in_poly,
    support,
    support_rows,
    zono_compact,
    zono_contains,
    zono_linmap,
    zono_minksum,
    zono_reduce,
)

TOL = 1e-8


@pytest.fixture(scope="module")
def directions() -> np.ndarray:
    rng = np.random.default_rng(3)
    raw = rng.normal(size=(24, 2))
    return raw / np.linalg.norm(raw, axis=1, keepdims=True)


@pytest.fixture(scope="module")
def triangle() -> HPolytope:
    # conv{(0,0), (1,0), (0,1)}
    return HPolytope([[-1.0, 0.0], [0.0, -1.0], [1.0, 1.0]], [0.0, 0.0, 1.0])


def _unit_box() -> Zonotope:
    return Zonotope.from_interval([-1.0, -1.0], [1.0, 1.0])


# ── Zonotopes ────────────────────────────────────────────────────────────────


def test_zonotope_support_closed_form() -> None:
    zono = Zonotope([1.0, 0.0], np.eye(2))
    assert support(zono, np.array([1.0, 1.0])) == pytest.approx(3.0)
    assert support(zono, np.array([-1.0, 0.0])) == pytest.approx(0.0)


def test_zonotope_linmap_scales() -> None:
    mapped = zono_linmap(2.0 * np.eye(2), Zonotope([1.0, 0.0], np.eye(2)))
    assert np.allclose(mapped.center, [2.0, 0.0])
    assert np.allclose(mapped.generators, 2.0 * np.eye(2))


def test_zonotope_minksum_keeps_column_order() -> None:
    first = Zonotope([0.0, 0.0], [[1.0], [0.0]])
    second = Zonotope([1.0, 1.0], [[0.0, 2.0], [3.0, 0.0]])
    total = zono_minksum(first, second)
    assert np.allclose(total.center, [1.0, 1.0])
    assert np.allclose(total.generators, [[1.0, 0.0, 2.0], [0.0, 3.0, 0.0]])


def test_zonotope_dimension_mismatch() -> None:
    with pytest.raises(DimensionMismatchError):
        zono_minksum(Zonotope.origin(2), Zonotope.origin(3))


def test_zono_compact_drops_zero_generators() -> None:
    zono = Zonotope([0.0, 0.0], [[1.0, 0.0, 0.0], [0.0, 0.0, 2.0]])
    assert zono_compact(zono).num_generators == 2
    assert Zonotope.from_interval([0.0, -1.0], [0.0, 1.0]).num_generators == 1


def test_zono_reduce_encloses(directions: np.ndarray) -> None:
    rng = np.random.default_rng(11)
    zono = Zonotope([0.5, -0.5], rng.normal(size=(2, 12)))
    reduced = zono_reduce(zono, 2.0)
    assert reduced.num_generators <= 4
    assert np.all(support_rows(reduced, directions) >= support_rows(zono, directions) - TOL)
    assert zono_reduce(zono, 10.0) is zono
    with pytest.raises(ValueError):
        zono_reduce(zono, 0.5)


def test_intmat_mul_zono_encloses_members(directions: np.ndarray) -> None:
    rng = np.random.default_rng(5)
    imat = IntervalMatrix([[0.9, -0.1], [0.0, 0.8]], [[1.1, 0.1], [0.2, 1.2]])
    zono = Zonotope([1.0, 0.5], [[0.3, 0.1], [0.0, 0.2]])
    image = intmat_mul_zono(imat, zono)
    bounds = support_rows(image, directions)
    for _ in range(50):
        M = rng.uniform(imat.lo, imat.hi)
        x = zono.point_at(rng.uniform(-1, 1, size=zono.num_generators))
        assert np.all(directions @ (M @ x) <= bounds + TOL)


def test_intmat_point_matrix_is_linear_map() -> None:
    zono = Zonotope([1.0, 2.0], np.eye(2))
    M = np.array([[0.0, 1.0], [-1.0, 0.0]])
    image = intmat_mul_zono(IntervalMatrix.point(M), zono)
    assert image.num_generators == 2
    assert np.allclose(image.generators, M)


# ── Polytopes ────────────────────────────────────────────────────────────────


def test_poly_box_and_emptiness(triangle: HPolytope) -> None:
    box = poly_box(triangle)
    assert np.allclose(box.lo, [0.0, 0.0], atol=TOL)
    assert np.allclose(box.hi, [1.0, 1.0], atol=TOL)
    assert not poly_is_empty(triangle)
    assert poly_is_empty(HPolytope([[1.0], [-1.0]], [-1.0, 0.0]))
    with pytest.raises(EmptySetError):
        poly_box(HPolytope([[1.0], [-1.0]], [-1.0, 0.0]))


def test_poly_minkdiff_of_boxes() -> None:
    outer = HPolytope.from_box([-1.0, -1.0], [1.0, 1.0])
    eroded = poly_minkdiff(outer, Zonotope.from_interval([-0.5, -0.5], [0.5, 0.5]))
    assert np.allclose(eroded.con_rhs, 0.5)
    assert poly_is_empty(poly_minkdiff(outer, Zonotope.from_interval([-2.0, 0.0], [2.0, 0.0])))


def test_poly_outer_minksum_is_tight_on_rows(triangle: HPolytope) -> None:
    grown = poly_outer_minksum(triangle, Zonotope([0.0, 0.0], [[0.1], [0.0]]))
    assert np.allclose(grown.con_rhs, [0.1, 0.0, 1.1])


def test_poly_linmap_inv() -> None:
    box = HPolytope.from_box([-1.0, -1.0], [1.0, 1.0])
    mapped = poly_linmap_inv(np.diag([2.0, 0.5]), box)
    assert support(mapped, np.array([1.0, 0.0])) == pytest.approx(2.0)
    assert support(mapped, np.array([0.0, 1.0])) == pytest.approx(0.5)
    with pytest.raises(SingularMatrixError):
        poly_linmap_inv(np.array([[1.0, 1.0], [1.0, 1.0]]), box)


def test_poly_to_cz_is_exact(triangle: HPolytope, directions: np.ndarray) -> None:
    cz = poly_to_cz(triangle)
    assert np.allclose(support_rows(cz, directions), support_rows(triangle, directions), atol=1e-7)


def test_poly_to_cz_with_enclosure_puts_enclosure_first(triangle: HPolytope) -> None:
    enclosure = Zonotope([0.5, 0.5], 0.5 * np.eye(2))
    cz = poly_to_cz(triangle, enclosure)
    assert np.allclose(cz.generators[:, :2], enclosure.generators)
    assert cz.num_constraints == 1


def test_poly_to_cz_redundant_rows_give_plain_zonotope() -> None:
    box = HPolytope.from_box([0.0, 0.0], [1.0, 1.0])
    cz = poly_to_cz(box)
    assert cz.num_constraints == 0


def test_set_in_poly(triangle: HPolytope) -> None:
    inside = Zonotope([0.25, 0.25], 0.1 * np.eye(2))
    outside = Zonotope([0.5, 0.5], 0.2 * np.eye(2))
    assert set_in_poly(inside, triangle)
    assert not set_in_poly(outside, triangle)


# ── Constrained zonotopes ────────────────────────────────────────────────────


def test_cz_minksum_adds_supports(triangle: HPolytope, directions: np.ndarray) -> None:
    first = poly_to_cz(triangle)
    second = ConstrainedZonotope.from_zonotope(_unit_box())
    total = cz_minksum(first, second)
    expected = support_rows(first, directions) + support_rows(second, directions)
    assert np.allclose(support_rows(total, directions), expected, atol=1e-7)


def test_cz_linmap_rotation(triangle: HPolytope) -> None:
    rotation = np.array([[0.0, -1.0], [1.0, 0.0]])
    rotated = cz_linmap(rotation, poly_to_cz(triangle))
    assert cz_support(rotated, np.array([-1.0, 0.0])) == pytest.approx(1.0, abs=1e-7)
    assert cz_support(rotated, np.array([1.0, 0.0])) == pytest.approx(0.0, abs=1e-7)


def test_cz_convhull_support_is_max(directions: np.ndarray) -> None:
    first = ConstrainedZonotope.from_zonotope(Zonotope([-2.0, 0.0], 0.5 * np.eye(2)))
    second = poly_to_cz(HPolytope([[-1.0, 0.0], [0.0, -1.0], [1.0, 1.0]], [-1.0, -1.0, 3.0]))
    hull = cz_convhull(first, second)
    expected = np.maximum(support_rows(first, directions), support_rows(second, directions))
    assert np.allclose(support_rows(hull, directions), expected, atol=1e-7)
    assert hull.num_generators == first.num_generators + second.num_generators + 1 + 2 * (
        first.num_generators + second.num_generators
    )


def test_cz_poly_intersect_cuts() -> None:
    box = ConstrainedZonotope.from_zonotope(_unit_box())
    cut = cz_poly_intersect(box, HPolytope([[1.0, 1.0]], [0.5]))
    assert cz_support(cut, np.array([1.0, 1.0])) == pytest.approx(0.5, abs=1e-7)
    assert cz_support(cut, np.array([-1.0, -1.0])) == pytest.approx(2.0, abs=1e-7)


def test_cz_emptiness_is_queryable() -> None:
    box = ConstrainedZonotope.from_zonotope(_unit_box())
    disjoint = cz_poly_intersect(box, HPolytope([[-1.0, 0.0]], [-2.0]))
    assert cz_is_empty(disjoint)
    assert support(disjoint, np.array([1.0, 0.0])) == float("-inf")
    assert ConstrainedZonotope.empty(3).is_trivially_empty
    assert not cz_is_empty(box)


def test_cz_empty_via_lp() -> None:
    # α₁ = 1.5 has no solution in [−1, 1]
    cz = ConstrainedZonotope([0.0], [[1.0, 1.0]], [[1.0, 0.0]], [1.5])
    assert not cz.is_trivially_empty
    assert cz_is_empty(cz)


def test_intmat_mul_cz_keeps_constraints(triangle: HPolytope) -> None:
    cz = poly_to_cz(triangle)
    image = intmat_mul_cz(IntervalMatrix.symmetric(0.1 * np.ones((2, 2))), cz)
    assert image.num_constraints == cz.num_constraints
    assert image.num_generators >= cz.num_generators


# ── Dispatch ─────────────────────────────────────────────────────────────────


def test_support_dispatch_covers_all_types() -> None:
    direction = np.array([3.0, 4.0])
    assert support(Ball(2.0, 2), direction) == pytest.approx(10.0)
    assert support(Interval([0.0, 0.0], [1.0, 1.0]), direction) == pytest.approx(7.0)
    assert support(HPolytope.from_box([0.0, 0.0], [1.0, 1.0]), direction) == pytest.approx(7.0)
    with pytest.raises(TypeError):
        support("not a set", direction)


def test_zono_contains_points() -> None:
    diamond = Zonotope([1.0, 0.0], [[1.0, 1.0], [1.0, -1.0]])
    assert zono_contains(diamond, [1.0, 0.0])
    assert zono_contains(diamond, [3.0, 0.0])
    assert not zono_contains(diamond, [2.5, 1.0])
    assert zono_contains(Zonotope.point([0.5]), [0.5])
    assert not zono_contains(Zonotope.point([0.5]), [0.6])
    with pytest.raises(DimensionMismatchError):
        zono_contains(diamond, [0.0])


def test_cz_convhull_rejects_empty_operand() -> None:
    box = ConstrainedZonotope.from_zonotope(_unit_box())
    with pytest.raises(EmptySetError):
        cz_convhull(ConstrainedZonotope.empty(2), box)
    with pytest.raises(EmptySetError):
        cz_convhull(box, ConstrainedZonotope.empty(2))


# ── Randomized properties ────────────────────────────────────────────────────

INSTANCES = 20
DIMS = [1, 2, 3, 4]


def _random_directions(rng: np.random.Generator, dim: int, count: int = 12) -> np.ndarray:
    raw = np.vstack([np.eye(dim), -np.eye(dim), rng.normal(size=(count, dim))])
    return raw / np.linalg.norm(raw, axis=1, keepdims=True)


def _random_zonotope(rng: np.random.Generator, dim: int, scale: float = 1.0) -> Zonotope:
    return Zonotope(rng.normal(size=dim), scale * rng.normal(size=(dim, rng.integers(1, 2 * dim + 2))))


def _random_box(rng: np.random.Generator, dim: int, lo_width: float, hi_width: float) -> tuple:
    center = rng.normal(size=dim)
    half = rng.uniform(lo_width, hi_width, size=dim)
    return center - half, center + half


def _random_polytope(rng: np.random.Generator, dim: int) -> HPolytope:
    # Box cut by halfspaces that keep the center strictly inside.
    lo, hi = _random_box(rng, dim, 0.5, 2.0)
    center = 0.5 * (lo + hi)
    cuts = rng.normal(size=(rng.integers(1, 2 * dim + 1), dim))
    offsets = cuts @ center + rng.uniform(0.1, 1.0, size=cuts.shape[0])
    box = HPolytope.from_box(lo, hi)
    return HPolytope(np.vstack([box.con_lhs, cuts]), np.concatenate([box.con_rhs, offsets]))


@pytest.mark.parametrize("dim", DIMS)
def test_support_identities(dim: int) -> None:
    rng = np.random.default_rng([17, dim])
    for _ in range(INSTANCES):
        rows = _random_directions(rng, dim)
        first, second = _random_zonotope(rng, dim), _random_zonotope(rng, dim)
        M = rng.normal(size=(dim, dim))
        assert np.allclose(support_rows(zono_linmap(M, first), rows), support_rows(first, rows @ M), atol=TOL)
        total = support_rows(zono_minksum(first, second), rows)
        assert np.allclose(total, support_rows(first, rows) + support_rows(second, rows), atol=TOL)
        assert np.allclose(support_rows(-first, rows), support_rows(first, -rows), atol=TOL)
        cz = poly_to_cz(_random_polytope(rng, dim))
        assert np.allclose(support_rows(cz_linmap(M, cz), rows), support_rows(cz, rows @ M), atol=1e-7)


@pytest.mark.parametrize("dim", DIMS)
def test_minkdiff_laws(dim: int) -> None:
    rng = np.random.default_rng([19, dim])
    for _ in range(INSTANCES):
        rows = _random_directions(rng, dim)
        poly = HPolytope.from_box(*_random_box(rng, dim, 1.0, 2.0))
        shape = _random_zonotope(rng, dim, scale=0.1)
        # (P ⊕ Z) ⊖ Z gives back P row by row
        restored = poly_minkdiff(poly_outer_minksum(poly, shape), shape)
        assert np.allclose(restored.con_rhs, poly.con_rhs, atol=TOL)
        # (P ⊖ Z) ⊕ Z ⊆ P
        eroded = poly_minkdiff(poly, shape)
        if poly_is_empty(eroded):
            continue
        assert np.all(support_rows(eroded, rows) + support_rows(shape, rows) <= support_rows(poly, rows) + 1e-7)


@pytest.mark.parametrize("dim", DIMS)
def test_reordering_inequality(dim: int) -> None:
    # (S1 ⊖ S3) ⊕ S2 ⊆ (S1 ⊕ S2) ⊖ S3
    rng = np.random.default_rng([23, dim])
    for _ in range(INSTANCES):
        rows = _random_directions(rng, dim)
        lo1, hi1 = _random_box(rng, dim, 1.0, 2.0)
        lo2, hi2 = _random_box(rng, dim, 0.1, 1.0)
        third = _random_zonotope(rng, dim, scale=0.1)
        first = HPolytope.from_box(lo1, hi1)
        eroded = poly_minkdiff(first, third)
        if poly_is_empty(eroded):
            continue
        left = cz_minksum(poly_to_cz(eroded), ConstrainedZonotope.from_zonotope(Zonotope.from_interval(lo2, hi2)))
        right = poly_minkdiff(HPolytope.from_box(lo1 + lo2, hi1 + hi2), third)
        assert np.all(support_rows(left, rows) <= support_rows(right, rows) + 1e-7)


@pytest.mark.parametrize("dim", DIMS)
def test_distributivity_inequality(dim: int) -> None:
    # conv(S1 ⊖ S3, S2 ⊖ S3) ⊕ S3 ⊆ conv(S1, S2)
    rng = np.random.default_rng([29, dim])
    for _ in range(INSTANCES):
        rows = _random_directions(rng, dim)
        first = HPolytope.from_box(*_random_box(rng, dim, 1.0, 2.0))
        second = HPolytope.from_box(*_random_box(rng, dim, 1.0, 2.0))
        third = _random_zonotope(rng, dim, scale=0.1)
        parts = [poly_minkdiff(first, third), poly_minkdiff(second, third)]
        if any(poly_is_empty(part) for part in parts):
            continue
        hull = cz_convhull(poly_to_cz(parts[0]), poly_to_cz(parts[1]))
        left = support_rows(hull, rows) + support_rows(third, rows)
        right = np.maximum(support_rows(first, rows), support_rows(second, rows))
        assert np.all(left <= right + 1e-7)


@pytest.mark.parametrize("dim", DIMS)
def test_poly_to_cz_exact_on_random_polytopes(dim: int) -> None:
    rng = np.random.default_rng([31, dim])
    for _ in range(INSTANCES):
        rows = _random_directions(rng, dim)
        poly = _random_polytope(rng, dim)
        cz = poly_to_cz(poly)
        assert np.allclose(support_rows(cz, rows), support_rows(poly, rows), atol=1e-7)


@pytest.mark.parametrize("dim", DIMS)
def test_intmat_enclosure_on_random_instances(dim: int) -> None:
    rng = np.random.default_rng([37, dim])
    for _ in range(INSTANCES):
        rows = _random_directions(rng, dim)
        mid = rng.normal(size=(dim, dim))
        radius = rng.uniform(0.0, 0.2, size=(dim, dim))
        imat = IntervalMatrix(mid - radius, mid + radius)
        zono = _random_zonotope(rng, dim)
        bounds = support_rows(intmat_mul_zono(imat, zono), rows)
        for _ in range(10):
            M = rng.uniform(imat.lo, imat.hi)
            x = zono.point_at(rng.uniform(-1, 1, size=zono.num_generators))
            assert np.all(rows @ (M @ x) <= bounds + TOL)
