"""Command-line surface: builtin systems, config runs, projections, scaling.

Public API:
  - builtin_system / load_benchmark: named benchmark → (LinSys, BackwardSpec)
  - run: dispatch a RunConfig, write result.json, return (report, exit code)
  - project2d: support-sampled 2D polygon of a set
  - bench_scaling: platoon sweep with per-run timeout
  - main: `reach` entrypoint
"""

from reach.cli.bench import BenchTable, bench_scaling, loglog_slope
from reach.cli.main import main
from reach.cli.projection import Polygon, project2d, write_polygons
from reach.cli.runner import EXIT_EMPTY, EXIT_ERROR, EXIT_OK, build_problem, run, validate_result
from reach.cli.systems import (
    BUILDERS,
    Benchmark,
    BenchmarkDataMissing,
    UnknownSystemError,
    builtin_system,
    load_benchmark,
    platoon_system,
)

__all__ = [
    "BUILDERS",
    "Benchmark",
    "BenchmarkDataMissing",
    "BenchTable",
    "EXIT_EMPTY",
    "EXIT_ERROR",
    "EXIT_OK",
    "Polygon",
    "UnknownSystemError",
    "bench_scaling",
    "build_problem",
    "builtin_system",
    "load_benchmark",
    "loglog_slope",
    "main",
    "platoon_system",
    "project2d",
    "run",
    "validate_result",
    "write_polygons",
]
