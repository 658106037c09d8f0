import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

from reach.config import settings


def _dims(raw: str) -> Tuple[int, int]:
    parts = [int(p) for p in raw.split(",")]
    if len(parts) != 2 or min(parts) < 1:
        raise argparse.ArgumentTypeError("--dims takes two 1-based coordinates, e.g. 1,2")
    return parts[0], parts[1]


def _sizes(raw: str) -> List[int]:
    return [int(p) for p in raw.split(",") if p.strip()]


def _run(args: argparse.Namespace) -> int:
    from reach.cli.runner import run
    from reach.schemas import read_config

    config = read_config(args.config)
    if args.seed is not None:
        config = config.model_copy(update={"seed": args.seed})
    report, code = run(config, validate=args.validate, out=args.out)
    for verdict in report.verdicts:
        note = " (negative control)" if verdict.expect_failure else ""
        print(f"[REACH] {verdict.name}: {verdict.passes}/{verdict.samples} passed{note}")
    if report.empty:
        print("[REACH] result is empty")
    return code


def _bench(args: argparse.Namespace) -> int:
    from reach.cli.bench import bench_scaling

    table = bench_scaling(args.algo, args.sizes, args.timeout)
    path = table.write_csv(Path(args.out) / "bench.csv")
    for row in table.rows:
        wall = "---" if row.wall_time is None else f"{row.wall_time:.3f}s"
        print(f"  n={row.n:<5} m={row.m:<4} {wall:>10}  {row.status}")
    if table.slope is not None:
        print(f"[REACH] log-log slope: {table.slope:.3f}")
    print(f"[REACH] wrote {path}")
    return 0


def _project(args: argparse.Namespace) -> int:
    from reach.cli.projection import project2d, write_polygons
    from reach.schemas import payload_to_set, read_report

    report = read_report(args.result)
    i, j = args.dims
    polygons = []
    for payload in report.sets:
        if payload.empty_stage is not None:
            continue
        S = payload_to_set(payload)
        if max(i, j) > S.dim:
            raise ValueError(f"--dims {i},{j} out of range for a set in R^{S.dim}")
        polygons.append(project2d(S, (i - 1, j - 1), args.angles, payload.index))
    out = Path(args.out) if args.out else Path(args.result).parent
    index = write_polygons(polygons, out)
    print(f"[REACH] {len(polygons)} polygon(s), index at {index}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="reach", description="Backward reachable sets of perturbed LTI systems")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="compute one reachable set from a JSON config")
    run.add_argument("config", type=Path)
    run.add_argument("--validate", action="store_true")
    run.add_argument("--seed", type=int, default=None)
    run.add_argument("--out", type=Path, default=None)
    run.set_defaults(handler=_run)

    bench = sub.add_parser("bench", help="scaling sweep over the platoon benchmark")
    bench.add_argument("system", choices=["platoon"])
    bench.add_argument("--algo", default="ae-tp-outer")
    bench.add_argument("--sizes", type=_sizes, default=[5, 17, 33])
    bench.add_argument("--timeout", type=float, default=100.0)
    bench.add_argument("--out", default=str(settings.OUTPUT_DIR))
    bench.set_defaults(handler=_bench)

    project = sub.add_parser("project", help="2D projections of the sets in a result file")
    project.add_argument("result", type=Path)
    project.add_argument("--dims", type=_dims, default=(1, 2))
    project.add_argument("--angles", type=int, default=128)
    project.add_argument("--out", default=None)
    project.set_defaults(handler=_project)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> None:
    logging.basicConfig(level=settings.LOG_LEVEL, format="%(asctime)s %(levelname)s %(name)s: %(message)s")
    try:
        args = build_parser().parse_args(argv)
        code = args.handler(args)
    except Exception as exc:  # noqa: BLE001 - CLI entrypoint
        print(f"Error: {exc}", file=sys.stderr)
        raise SystemExit(1) from exc
    raise SystemExit(code)


if __name__ == "__main__":
    main()
