import json
import logging
import sys
import time
from contextlib import contextmanager
from typing import Any, Dict, Iterator

logger = logging.getLogger("reach.run")
logger.setLevel(logging.INFO)

# Dedicated stdout handler so stage timings stay separate from library warnings.
if not logger.handlers:
    handler = logging.StreamHandler(stream=sys.stdout)
    formatter = logging.Formatter("[REACH] %(asctime)s %(levelname)s: %(message)s")
    handler.setFormatter(formatter)
    logger.addHandler(handler)

logger.propagate = False


def _emit(data: Dict[str, Any]) -> None:
    try:
        logger.info(json.dumps(data, ensure_ascii=False, default=str))
    except Exception:
        logger.info(str(data))


def log_event(event_type: str, **payload: Any) -> None:
    _emit({"event_type": event_type, **payload})


def log_metric(metric_name: str, value: float = 1, extra: Dict[str, Any] | None = None) -> None:
    payload: Dict[str, Any] = {
        "event_type": "metric",
        "metric_name": metric_name,
        "value": value,
    }
    if extra:
        payload.update(extra)
    _emit(payload)


def log_stage(stage: str, seconds: float, extra: Dict[str, Any] | None = None) -> None:
    payload: Dict[str, Any] = {
        "event_type": "stage",
        "stage": stage,
        "seconds": round(seconds, 6),
    }
    if extra:
        payload.update(extra)
    _emit(payload)


@contextmanager
def stage_timer(stage: str, timings: Dict[str, float] | None = None, **extra: Any) -> Iterator[None]:
    """Time a block, log it as a stage record and accumulate into ``timings``."""
    started = time.perf_counter()
    try:
        yield
    finally:
        elapsed = time.perf_counter() - started
        if timings is not None:
            timings[stage] = timings.get(stage, 0.0) + elapsed
        log_stage(stage, elapsed, extra or None)
