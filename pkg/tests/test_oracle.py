import sys
from pathlib import Path

import numpy as np
import pytest

ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.append(str(ROOT))

from reach.backward import BackwardSpec, Horizon, LinSys, ae_ti_outer, ae_tp_outer, ea_ti_inner, ea_tp_inner
from reach.geomsets import ConstrainedZonotope, HPolytope, Zonotope, poly_to_cz, support_rows
from reach.oracle import (
    GameVerdict,
    PiecewiseConstantSignal,
    ae_backward_sampling,
    analytic_1d_brs,
    cz_distance_bound,
    decode_witnesses,
    directional_gap,
    ea_witness_replay,
    exact_lti_state,
    membership,
    ode_simulate,
    random_signal,
    sample_points,
    scaled_about_center,
    time_inverted,
    union_membership,
)

PURSUIT_A = np.array([[0, 1, 0, 0], [0, 0, 0, 0], [0, 0, 0, 1], [0, 0, 0, 0]], dtype=float)
PURSUIT_B = np.array([[0, 0], [1, 0], [0, 0], [0, 1]], dtype=float)


@pytest.fixture(scope="module")
def pursuit() -> LinSys:
    return LinSys(
        PURSUIT_A,
        PURSUIT_B,
        -PURSUIT_B,
        Zonotope.from_interval([-0.5, -0.1], [0.1, 0.5]),
        Zonotope.from_interval([-0.1, -0.5], [0.5, 0.1]),
    )


@pytest.fixture(scope="module")
def pursuit_target() -> HPolytope:
    return HPolytope.from_box(-0.5 * np.ones(4), 0.5 * np.ones(4))


def _scalar(u=(-0.1, 0.1), w=(-0.05, 0.05)) -> LinSys:
    return LinSys(
        np.array([[-1.0]]),
        np.array([[1.0]]),
        np.array([[1.0]]),
        Zonotope.from_interval([u[0]], [u[1]]),
        Zonotope.from_interval([w[0]], [w[1]]),
    )


# ── Signals and simulation ───────────────────────────────────────────────────


def test_signal_lookup() -> None:
    signal = PiecewiseConstantSignal.from_segments(
        [(0.0, 0.5, np.array([1.0])), (0.5, 0.5, np.array([9.0])), (0.5, 2.0, np.array([-1.0]))]
    )
    assert signal.value_at(0.25)[0] == 1.0
    assert signal.value_at(0.5)[0] == -1.0
    assert signal.value_at(5.0)[0] == -1.0
    assert signal.min_step == pytest.approx(0.5)
    assert np.allclose(signal.breakpoints(1.0), [0.5])
    with pytest.raises(ValueError):
        PiecewiseConstantSignal.from_segments([(0.0, 0.0, np.array([1.0]))])


def test_rk4_agrees_with_exact_solution(pursuit) -> None:
    rng = np.random.default_rng(4)
    for _ in range(3):
        x0 = rng.uniform(-1, 1, size=4)
        u = random_signal(pursuit.U, 1.0, 10, rng)
        w = random_signal(pursuit.W, 1.0, 7, rng)
        assert np.allclose(ode_simulate(pursuit, x0, u, w, 1.0), exact_lti_state(pursuit, x0, u, w, 1.0), atol=1e-9)


def test_time_inverted_returns_to_start(pursuit) -> None:
    x0 = np.array([0.2, -0.1, 0.3, 0.0])
    u = PiecewiseConstantSignal.constant([0.1, -0.05], 1.0)
    w = PiecewiseConstantSignal.constant([0.2, 0.0], 1.0)
    x_end = exact_lti_state(pursuit, x0, u, w, 1.0)
    back = exact_lti_state(time_inverted(pursuit), x_end, u, w, 1.0)
    assert np.allclose(back, x0, atol=1e-12)


def test_random_signal_stays_in_set(pursuit) -> None:
    rng = np.random.default_rng(8)
    hull = pursuit.W.interval_hull()
    for vertex in (True, False):
        signal = random_signal(pursuit.W, 2.0, 20, rng, vertex=vertex)
        assert signal.end == pytest.approx(2.0)
        for value in signal.values:
            assert hull.contains(value, tol=1e-12)


# ── Closed form ──────────────────────────────────────────────────────────────


def test_analytic_integrator_hand_values() -> None:
    # ẋ = u + w with a = 0: transfer is t
    assert analytic_1d_brs(0.0, (-1.0, 1.0), (0.0, 0.0), (-1.0, 1.0), 1.0, "ea-inner") == pytest.approx((-2.0, 2.0))
    assert analytic_1d_brs(0.0, (-1.0, 1.0), (0.0, 0.0), (-1.0, 1.0), 1.0, "ae-outer") == pytest.approx((0.0, 0.0))
    assert analytic_1d_brs(0.0, (-0.1, 0.1), (-2.0, 2.0), (-1.0, 1.0), 1.0, "ea-outer") is None


# ── Membership ───────────────────────────────────────────────────────────────


def test_cz_distance_bound() -> None:
    box = ConstrainedZonotope.from_zonotope(Zonotope([0.0, 0.0], np.eye(2)))
    assert cz_distance_bound(np.array([0.5, -0.5]), box) == pytest.approx(0.0, abs=1e-9)
    assert cz_distance_bound(np.array([2.0, 0.0]), box) == pytest.approx(1.0, abs=1e-9)
    assert cz_distance_bound(np.zeros(2), ConstrainedZonotope.empty(2)) == float("inf")


def test_membership_and_gap() -> None:
    triangle = HPolytope([[-1.0, 0.0], [0.0, -1.0], [1.0, 1.0]], [0.0, 0.0, 1.0])
    assert membership(np.array([0.2, 0.2]), triangle)
    assert not membership(np.array([0.8, 0.8]), triangle)
    assert membership(np.array([0.2, 0.2]), poly_to_cz(triangle), tol=1e-7)
    directions = np.vstack([np.eye(2), -np.eye(2)])
    small = Zonotope([0.2, 0.2], 0.1 * np.eye(2))
    assert directional_gap(small, triangle, directions) < 0.0
    assert directional_gap(triangle, small, directions) > 0.0


def test_sampled_points_are_members() -> None:
    rng = np.random.default_rng(2)
    triangle = HPolytope([[-1.0, 0.0], [0.0, -1.0], [1.0, 1.0]], [0.0, 0.0, 1.0])
    points, factors = sample_points(triangle, 50, rng)
    assert factors is None
    assert all(triangle.contains(p, 1e-9) for p in points)
    cz = poly_to_cz(triangle)
    points, factors = sample_points(cz, 50, rng)
    assert factors.shape == (50, cz.num_generators)
    assert np.allclose(factors @ cz.con_lhs.T, cz.con_rhs, atol=1e-7)
    assert all(triangle.contains(p, 1e-7) for p in points)


def test_sample_points_of_empty_set() -> None:
    points, factors = sample_points(ConstrainedZonotope.empty(3), 10, np.random.default_rng(0))
    assert points.shape == (0, 3)
    assert factors.shape[0] == 0


def test_scaled_about_center() -> None:
    box = HPolytope.from_box([0.0, 0.0], [2.0, 2.0])
    grown = scaled_about_center(box, 1.5)
    assert np.allclose(support_rows(grown, np.eye(2)), [2.5, 2.5], atol=1e-9)
    cz = ConstrainedZonotope.from_zonotope(Zonotope([1.0, 1.0], np.eye(2)))
    assert np.allclose(support_rows(scaled_about_center(cz, 0.5), np.eye(2)), [1.5, 1.5])


def test_game_verdict_counts() -> None:
    verdict = GameVerdict()
    verdict.record(True, -0.1, sample=0)
    verdict.record(False, 0.3, sample=1)
    assert verdict.samples == 2
    assert verdict.failures == 1
    assert not verdict.all_passed
    assert verdict.to_dict()["worst_violation"] == pytest.approx(0.3)
    assert "stage_log" in verdict.to_dict(verbose=True)
    assert not GameVerdict().all_passed


# ── Games ────────────────────────────────────────────────────────────────────


def test_scalar_ea_witnesses_survive_disturbances() -> None:
    system = _scalar()
    target = HPolytope.from_box([-1.0], [1.0])
    result = ea_tp_inner(system, BackwardSpec(target, Horizon.point(1.0), steps=100))
    witnesses = decode_witnesses(result, 20, seed=1)
    assert len(witnesses) == 20
    verdict = ea_witness_replay(system, target, witnesses, n_w=5, seed=1, integrator="exact")
    assert verdict.all_passed, verdict.to_dict()


def test_pursuit_interval_witnesses_survive_disturbances(pursuit, pursuit_target) -> None:
    spec = BackwardSpec(pursuit_target, Horizon.interval(0.0, 1.0), steps=10)
    result = ea_ti_inner(pursuit, spec)
    witnesses = decode_witnesses(result, 6, seed=2)
    assert witnesses
    for witness in witnesses:
        assert union_membership(witness.x0, result, tol=1e-6)
    verdict = ea_witness_replay(pursuit, pursuit_target, witnesses, n_w=3, seed=2, grid_points=50)
    assert verdict.all_passed, verdict.to_dict()


def test_ae_backward_sampling_time_point() -> None:
    system = _scalar(u=(0.05, 0.05))
    target = HPolytope.from_box([-1.0], [1.0])
    result = ae_tp_outer(system, BackwardSpec(target, Horizon.point(1.0), steps=100))
    verdict = ae_backward_sampling(system, target, result, n_samples=40, seed=3)
    assert verdict.all_passed, verdict.to_dict()


def test_ae_backward_sampling_time_interval() -> None:
    system = _scalar(u=(0.05, 0.05))
    target = HPolytope.from_box([-1.0], [1.0])
    result = ae_ti_outer(system, BackwardSpec(target, Horizon.interval(0.0, 1.0), steps=20))
    verdict = ae_backward_sampling(system, target, result, n_samples=30, seed=4)
    assert verdict.all_passed, verdict.to_dict()


def test_ae_backward_sampling_needs_point_input() -> None:
    system = _scalar()
    target = HPolytope.from_box([-1.0], [1.0])
    result = ae_tp_outer(system, BackwardSpec(target, Horizon.point(1.0), steps=10))
    with pytest.raises(ValueError):
        ae_backward_sampling(system, target, result, n_samples=5)


# ── Negative controls ────────────────────────────────────────────────────────


def test_extreme_samples_are_maximizers() -> None:
    box = HPolytope.from_box([-1.0], [1.0])
    points, _ = sample_points(box, 6, np.random.default_rng(5), extreme=True)
    assert points.shape == (6, 1)
    assert np.allclose(np.abs(points), 1.0)


def test_inflated_ea_witnesses_fail() -> None:
    system = _scalar()
    target = HPolytope.from_box([-1.0], [1.0])
    result = ea_tp_inner(system, BackwardSpec(target, Horizon.point(1.0), steps=100))
    witnesses = decode_witnesses(result, 20, seed=1, scale=1.1, extreme=True)
    assert len(witnesses) == 20
    verdict = ea_witness_replay(system, target, witnesses, n_w=5, seed=1, integrator="exact")
    assert verdict.failures >= 1, verdict.to_dict()


def test_deflated_ae_set_misses_samples() -> None:
    system = _scalar(u=(0.05, 0.05))
    target = HPolytope.from_box([-1.0], [1.0])
    result = ae_tp_outer(system, BackwardSpec(target, Horizon.point(1.0), steps=100))
    verdict = ae_backward_sampling(system, target, result, n_samples=20, seed=3, scale=0.9, extreme=True)
    assert verdict.failures >= 1, verdict.to_dict()
