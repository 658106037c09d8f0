"""Platoon scaling sweep with a per-run timeout."""

from __future__ import annotations

import csv
import logging
import multiprocessing as mp
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from reach.backward import ALGORITHMS
from reach.cli.systems import load_benchmark
from reach.logging import log_event

logger = logging.getLogger(__name__)

TIMEOUT_STATUS = "---"


@dataclass
class BenchRow:
    theta: int
    n: int
    m: int
    wall_time: Optional[float]
    status: str


@dataclass
class BenchTable:
    algorithm: str
    rows: List[BenchRow]
    slope: Optional[float]

    def write_csv(self, path: Path) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", newline="", encoding="utf-8") as f:
            writer = csv.writer(f)
            writer.writerow(["n", "m", "wall_time", "status"])
            for row in self.rows:
                wall = "" if row.wall_time is None else f"{row.wall_time:.6f}"
                writer.writerow([row.n, row.m, wall, row.status])
        return path


def _problem_params(algorithm: str, theta: int) -> Dict[str, Any]:
    interval = "-ti-" in algorithm
    return {
        "theta": theta,
        "horizon": "interval" if interval else "point",
        "target": "ea" if algorithm.startswith("ea") else "ae",
    }


def _worker(algorithm: str, theta: int, queue: "mp.Queue") -> None:
    try:
        benchmark = load_benchmark("platoon", _problem_params(algorithm, theta))
        started = time.perf_counter()
        result = ALGORITHMS[algorithm](benchmark.sys, benchmark.spec)
        elapsed = time.perf_counter() - started
        queue.put(("empty" if result.is_empty else "ok", elapsed))
    except Exception as exc:  # noqa: BLE001 - reported through the queue
        queue.put((f"error: {exc}", None))


def loglog_slope(sizes: Sequence[int], times: Sequence[float]) -> Optional[float]:
    """Least-squares slope of log(time) over log(n); None with fewer than two points."""
    points = [(n, t) for n, t in zip(sizes, times) if t is not None and t > 0]
    if len(points) < 2:
        return None
    x = np.log([p[0] for p in points])
    y = np.log([p[1] for p in points])
    return float(np.polyfit(x, y, 1)[0])


def bench_scaling(algorithm: str, sizes: Sequence[int], timeout: float = 100.0) -> BenchTable:
    """Run platoon(θ) for every θ in ``sizes``; runs past ``timeout`` seconds are killed."""
    if algorithm not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {algorithm!r}")
    rows: List[BenchRow] = []
    ctx = mp.get_context("spawn")
    for theta in sizes:
        if theta < 1:
            raise ValueError(f"platoon size must be at least 1, got {theta}")
        queue = ctx.Queue()
        process = ctx.Process(target=_worker, args=(algorithm, theta, queue), daemon=True)
        process.start()
        process.join(timeout)
        if process.is_alive():
            process.terminate()
            process.join()
            status, wall_time = TIMEOUT_STATUS, None
        else:
            status, wall_time = queue.get() if not queue.empty() else ("error: worker exited", None)
        row = BenchRow(theta=theta, n=3 * theta, m=theta, wall_time=wall_time, status=status)
        log_event("bench_run", algorithm=algorithm, n=row.n, m=row.m, wall_time=wall_time, status=status)
        rows.append(row)

    finished = [row for row in rows if row.status in ("ok", "empty")]
    slope = loglog_slope([row.n for row in finished], [row.wall_time for row in finished])
    if slope is not None:
        logger.info("%s log-log slope over n: %.3f", algorithm, slope)
    return BenchTable(algorithm=algorithm, rows=rows, slope=slope)
