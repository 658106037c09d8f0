import argparse
import sys
import time
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.append(str(ROOT))


def _run_algorithm(name: str, steps: int) -> None:
    from reach.backward import ALGORITHMS, TimeIntervalResult
    from reach.cli.systems import load_benchmark

    horizon = "interval" if "-ti-" in name else "point"
    benchmark = load_benchmark("pursuit-evasion", {"horizon": horizon, "steps": steps})
    started = time.perf_counter()
    result = ALGORITHMS[name](benchmark.sys, benchmark.spec)
    elapsed = time.perf_counter() - started
    if isinstance(result, TimeIntervalResult):
        detail = f"{len(result.nonempty_pieces())}/{len(result.pieces)} pieces"
    else:
        detail = "empty" if result.is_empty else f"{result.set.dim}D set"
    print(f"[SMOKE] {name:<12} {elapsed:8.3f}s  {detail}")


def main() -> None:
    try:
        parser = argparse.ArgumentParser(description="Run every backward algorithm once on pursuit-evasion")
        parser.add_argument("--steps", type=int, default=20)
        parser.add_argument("--only", default=None, help="comma-separated algorithm names")
        args = parser.parse_args()

        from reach.backward import ALGORITHMS

        names = args.only.split(",") if args.only else list(ALGORITHMS)
        for name in names:
            if name not in ALGORITHMS:
                raise RuntimeError(f"unknown algorithm {name!r}")
            _run_algorithm(name, args.steps)
    except Exception as exc:  # noqa: BLE001 - CLI entrypoint
        print(f"Error: {exc}", file=sys.stderr)
        raise SystemExit(1) from exc


if __name__ == "__main__":
    main()
