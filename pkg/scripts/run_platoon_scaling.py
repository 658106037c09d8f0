"""Long-running platoon scaling sweep.

Runs every backward algorithm over a list of platoon sizes and appends one
JSON line per run to ``logs/platoon_scaling.log`` so long sweeps can be
inspected while they are still going. Runs over the timeout are recorded with
status "---".

Usage:
    python scripts/run_platoon_scaling.py --sizes 5,17,33,50 --timeout 100
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import asdict
from pathlib import Path
from typing import Iterable, List

ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.append(str(ROOT))

from reach.backward import ALGORITHMS  # noqa: E402
from reach.cli.bench import bench_scaling  # noqa: E402


class PlatoonScalingRunner:
    """Runs the scaling sweep per algorithm and logs every row."""

    def __init__(self, log_path: Path | str = "logs/platoon_scaling.log") -> None:
        self.log_path = Path(log_path)
        self.logger = logging.getLogger("platoon_scaling")
        self.logger.setLevel(logging.INFO)
        self._configure_handler()

    def _configure_handler(self) -> None:
        self.log_path.parent.mkdir(parents=True, exist_ok=True)
        if not self.logger.handlers:
            handler = logging.FileHandler(self.log_path, encoding="utf-8")
            handler.setFormatter(logging.Formatter("%(message)s"))
            self.logger.addHandler(handler)
        self.logger.propagate = False

    def run_algorithm(self, algorithm: str, sizes: List[int], timeout: float) -> None:
        table = bench_scaling(algorithm, sizes, timeout)
        for row in table.rows:
            self.logger.info(json.dumps({"algorithm": algorithm, **asdict(row)}, ensure_ascii=False))
        self.logger.info(json.dumps({"algorithm": algorithm, "slope": table.slope}))

    def run_all(self, algorithms: Iterable[str], sizes: List[int], timeout: float) -> None:
        for algorithm in algorithms:
            self.run_algorithm(algorithm, sizes, timeout)


def main() -> None:
    parser = argparse.ArgumentParser(description="Platoon scaling sweep over all algorithms")
    parser.add_argument("--sizes", default="5,17,33,50")
    parser.add_argument("--timeout", type=float, default=100.0)
    parser.add_argument("--algorithms", default=",".join(ALGORITHMS))
    parser.add_argument("--log", default="logs/platoon_scaling.log")
    args = parser.parse_args()

    sizes = [int(s) for s in args.sizes.split(",") if s.strip()]
    runner = PlatoonScalingRunner(args.log)
    runner.run_all(args.algorithms.split(","), sizes, args.timeout)


if __name__ == "__main__":
    main()
