"""
Command-line layer: builtin systems, config runs, projections and the
scaling sweep.
"""

import csv
import json
import sys
from pathlib import Path

import numpy as np
import pytest
from pydantic import ValidationError

ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.append(str(ROOT))

from reach.cli import (
    EXIT_EMPTY,
    EXIT_OK,
    BenchmarkDataMissing,
    UnknownSystemError,
    bench_scaling,
    builtin_system,
    loglog_slope,
    main,
    project2d,
    run,
)
from reach.config import settings
from reach.geomsets import ConstrainedZonotope, HPolytope, Zonotope
from reach.schemas import RunConfig, payload_to_set, read_report, set_to_payload


def _scalar_config(tmp_path: Path, **overrides) -> dict:
    config = {
        "inline": {
            "A": [[-1.0]],
            "B": [[1.0]],
            "E": [[1.0]],
            "U": {"lo": [-0.1], "hi": [0.1]},
            "W": {"lo": [-0.05], "hi": [0.05]},
        },
        "target": {"lo": [-1.0], "hi": [1.0]},
        "algorithm": "ea-tp-inner",
        "horizon": {"kind": "point", "t_end": 1.0},
        "steps": 1000,
        "output": str(tmp_path),
        "validation": {"n_x0": 4, "n_w": 2},
    }
    config.update(overrides)
    return config


# ── Builtin systems ──────────────────────────────────────────────────────────


def test_pursuit_evasion_sets() -> None:
    system, spec = builtin_system("pursuit-evasion", {"horizon": "point"})
    hull = system.U.interval_hull()
    assert np.allclose(hull.lo, [-0.5, -0.1])
    assert np.allclose(hull.hi, [0.1, 0.5])
    assert spec.horizon.t_end == pytest.approx(1.0)
    assert not spec.horizon.is_interval


def test_platoon_dimensions() -> None:
    system, spec = builtin_system("platoon", {"theta": 5})
    assert (system.n, system.m, system.r) == (15, 5, 1)
    assert spec.target.dim == 15
    with pytest.raises(ValueError):
        builtin_system("platoon", {"theta": 0})


def test_quadrotor_cases() -> None:
    first, _ = builtin_system("quadrotor-6d", {"case": 1, "horizon": "point"})
    third, _ = builtin_system("quadrotor-6d", {"case": 3, "horizon": "point"})
    assert first.W.generators[0, 0] == pytest.approx(10 * third.W.generators[0, 0])
    assert third.U.generators[0, 0] == pytest.approx(2 * first.U.generators[0, 0])
    with pytest.raises(ValueError):
        builtin_system("quadrotor-6d", {"case": 7})


def test_quadrotor_12d_target_is_bounded() -> None:
    system, spec = builtin_system("quadrotor-12d", {"horizon": "point"})
    assert system.n == 12
    assert spec.target.num_constraints == 24


def test_unknown_and_missing_systems(monkeypatch, tmp_path) -> None:
    with pytest.raises(UnknownSystemError):
        builtin_system("submarine")
    monkeypatch.setattr(settings, "BENCHMARK_DIR", tmp_path)
    with pytest.raises(BenchmarkDataMissing):
        builtin_system("platoon")


# ── Config schema ────────────────────────────────────────────────────────────


def test_config_needs_exactly_one_system(tmp_path) -> None:
    config = _scalar_config(tmp_path, system="pursuit-evasion")
    with pytest.raises(ValidationError):
        RunConfig.model_validate(config)
    with pytest.raises(ValidationError):
        RunConfig.model_validate({"algorithm": "ae-tp-outer"})
    with pytest.raises(ValidationError):
        RunConfig.model_validate({"system": "platoon", "algorithm": "ae-tp-sideways"})


def test_set_payload_preserves_numbers() -> None:
    cz = ConstrainedZonotope([0.1, 0.2], [[1.0, 0.5], [0.0, 1.0 / 3.0]], [[1.0, 1.0]], [0.25])
    back = payload_to_set(set_to_payload(cz, index=3, window=(0.1, 0.2)))
    assert np.array_equal(back.generators, cz.generators)
    assert np.array_equal(back.con_rhs, cz.con_rhs)
    poly = HPolytope.from_box([0.0], [np.pi])
    assert np.array_equal(payload_to_set(set_to_payload(poly)).con_rhs, poly.con_rhs)


# ── Runs ─────────────────────────────────────────────────────────────────────


def test_inline_scalar_run_validates(tmp_path) -> None:
    report, code = run(RunConfig.model_validate(_scalar_config(tmp_path)), validate=True)
    assert code == EXIT_OK
    names = {verdict.name: verdict for verdict in report.verdicts}
    assert names["analytic_1d"].passes == 1
    assert names["ea_witness_replay"].passes == names["ea_witness_replay"].samples
    control = names["ea_inflated_control"]
    assert control.expect_failure and control.ok
    assert control.passes < control.samples
    saved = read_report(tmp_path / "result.json")
    assert saved.kind == "ea-inner"
    assert saved.schema_version == "1"


def test_inline_ae_run_uses_backward_sampling(tmp_path) -> None:
    config = _scalar_config(
        tmp_path,
        algorithm="ae-tp-outer",
        validation={"n_samples": 20},
    )
    config["inline"]["U"] = {"lo": [0.05], "hi": [0.05]}
    report, code = run(RunConfig.model_validate(config), validate=True)
    assert code == EXIT_OK
    names = {verdict.name: verdict for verdict in report.verdicts}
    assert names["ae_backward_sampling"].passes == 20
    control = names["ae_deflated_control"]
    assert control.expect_failure and control.ok
    assert control.passes < control.samples


def test_negative_controls_can_be_switched_off(tmp_path) -> None:
    config = _scalar_config(tmp_path, validation={"n_x0": 4, "n_w": 2, "negative_controls": False})
    report, code = run(RunConfig.model_validate(config), validate=True)
    assert code == EXIT_OK
    assert "ea_inflated_control" not in {verdict.name for verdict in report.verdicts}
    names = {verdict.name: verdict for verdict in report.verdicts}
    assert names["analytic_1d"].passes == 1


def test_empty_result_exit_code(tmp_path) -> None:
    config = _scalar_config(tmp_path)
    config["inline"]["W"] = {"lo": [-5.0], "hi": [5.0]}
    report, code = run(RunConfig.model_validate(config))
    assert code == EXIT_EMPTY
    assert report.empty
    assert report.sets[0].empty_stage == "minkdiff"


def test_builtin_interval_run_writes_projections(tmp_path) -> None:
    config = RunConfig.model_validate(
        {
            "system": "pursuit-evasion",
            "algorithm": "ae-ti-outer",
            "steps": 5,
            "projections": [[1, 2]],
            "angles": 16,
            "output": str(tmp_path),
        }
    )
    report, code = run(config)
    assert code == EXIT_OK
    assert len(report.sets) == 5
    assert report.bounds is not None
    index = json.loads((tmp_path / "projection_index.json").read_text(encoding="utf-8"))
    assert index and all(entry["dims"] == [1, 2] for entry in index)
    with (tmp_path / index[0]["file"]).open(encoding="utf-8") as f:
        rows = list(csv.reader(f))
    assert rows[0] == ["x", "y"]
    assert len(rows) == 17


def test_single_step_gives_single_piece(tmp_path) -> None:
    config = RunConfig.model_validate(
        {"system": "pursuit-evasion", "algorithm": "ea-ti-inner", "steps": 1, "output": str(tmp_path)}
    )
    report, _ = run(config)
    assert len(report.sets) == 1


def test_reruns_are_deterministic(tmp_path) -> None:
    config = RunConfig.model_validate(_scalar_config(tmp_path))
    first, _ = run(config, validate=True, out=tmp_path / "a")
    second, _ = run(config, validate=True, out=tmp_path / "b")
    assert first.sets == second.sets
    assert first.verdicts == second.verdicts


# ── Projection ───────────────────────────────────────────────────────────────


def test_projection_of_unit_box() -> None:
    box = Zonotope.from_interval([-1.0, -1.0, 0.0], [1.0, 1.0, 0.0])
    polygon = project2d(box, (0, 1), 4)
    assert polygon.area == pytest.approx(4.0)
    assert np.allclose(np.abs(polygon.vertices), 1.0)


def test_projection_converges_for_rotated_box() -> None:
    diamond = Zonotope([0.0, 0.0], [[0.5, 0.5], [0.5, -0.5]])
    polygon = project2d(diamond, (0, 1), 256)
    assert 2.0 - 1e-9 <= polygon.area <= 2.0 * 1.01


def test_projection_of_empty_set() -> None:
    polygon = project2d(ConstrainedZonotope.empty(2), (0, 1), 8)
    assert polygon.empty
    assert polygon.area == 0.0


# ── Command line ─────────────────────────────────────────────────────────────


def test_main_run_and_project(tmp_path) -> None:
    config_path = tmp_path / "config.json"
    config = {"system": "pursuit-evasion", "algorithm": "ae-tp-outer", "steps": 20}
    config_path.write_text(json.dumps(config), encoding="utf-8")
    with pytest.raises(SystemExit) as exc:
        main(["run", str(config_path), "--out", str(tmp_path / "run")])
    assert exc.value.code == 0

    with pytest.raises(SystemExit) as exc:
        main(["project", str(tmp_path / "run" / "result.json"), "--dims", "1,3", "--angles", "8"])
    assert exc.value.code == 0
    index = json.loads((tmp_path / "run" / "projection_index.json").read_text(encoding="utf-8"))
    assert [entry["dims"] for entry in index] == [[1, 3]]


def test_main_reports_errors(tmp_path, capsys) -> None:
    with pytest.raises(SystemExit) as exc:
        main(["run", str(tmp_path / "missing.json")])
    assert exc.value.code == 1
    assert "Error:" in capsys.readouterr().err


# ── Scaling ──────────────────────────────────────────────────────────────────


def test_loglog_slope() -> None:
    assert loglog_slope([10, 20, 40], [1.0, 8.0, 64.0]) == pytest.approx(3.0)
    assert loglog_slope([10], [1.0]) is None


def test_bench_scaling_small_platoon(tmp_path) -> None:
    table = bench_scaling("ae-tp-outer", [1, 2], timeout=120.0)
    assert [row.n for row in table.rows] == [3, 6]
    assert all(row.status in ("ok", "empty") for row in table.rows)
    path = table.write_csv(tmp_path / "bench.csv")
    assert path.read_text(encoding="utf-8").splitlines()[0] == "n,m,wall_time,status"


def test_bench_scaling_timeout_marker() -> None:
    table = bench_scaling("ae-tp-outer", [1], timeout=1e-4)
    assert table.rows[0].status == "---"
    assert table.rows[0].wall_time is None
    assert table.slope is None
