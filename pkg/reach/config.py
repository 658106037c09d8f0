"""Runtime configuration for the reachability toolkit."""

from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path

from dotenv import load_dotenv

load_dotenv()

_ROOT = Path(__file__).resolve().parents[1]

LP_BACKENDS = ("simplex", "highs")


def _as_int(value: str | None, default: int) -> int:
    try:
        if value is None:
            return default
        return int(value)
    except (TypeError, ValueError):
        return default


def _as_float(value: str | None, default: float) -> float:
    try:
        if value is None:
            return default
        return float(value)
    except (TypeError, ValueError):
        return default


@dataclass
class Settings:
    """Container for environment-driven numerical settings."""

    LP_BACKEND: str = "simplex"
    LP_FEAS_TOL: float = 1e-9
    LP_OPT_TOL: float = 1e-9
    LP_MAX_ITER_FACTOR: int = 50
    MAX_ORDER: float = 20.0
    ETA_TOL: float = 1e-10
    SET_TOL: float = 1e-8
    LOG_LEVEL: str = "INFO"
    BENCHMARK_DIR: Path = _ROOT / "resource" / "assets" / "benchmarks"
    OUTPUT_DIR: Path = Path("out")
    ENVIRONMENT: str = "dev"
    IS_DEV: bool = True
    IS_PROD: bool = False

    def __post_init__(self) -> None:
        backend = (os.getenv("REACH_LP_BACKEND") or self.LP_BACKEND).strip().lower()
        if backend not in LP_BACKENDS:
            raise RuntimeError(
                f"REACH_LP_BACKEND must be one of {', '.join(LP_BACKENDS)}, got {backend!r}"
            )
        self.LP_BACKEND = backend

        self.LP_FEAS_TOL = _as_float(os.getenv("REACH_LP_FEAS_TOL"), self.LP_FEAS_TOL)
        self.LP_OPT_TOL = _as_float(os.getenv("REACH_LP_OPT_TOL"), self.LP_OPT_TOL)
        self.LP_MAX_ITER_FACTOR = _as_int(
            os.getenv("REACH_LP_MAX_ITER_FACTOR"), self.LP_MAX_ITER_FACTOR
        )
        self.MAX_ORDER = _as_float(os.getenv("REACH_MAX_ORDER"), self.MAX_ORDER)
        self.ETA_TOL = _as_float(os.getenv("REACH_ETA_TOL"), self.ETA_TOL)
        self.SET_TOL = _as_float(os.getenv("REACH_SET_TOL"), self.SET_TOL)
        self.LOG_LEVEL = (os.getenv("REACH_LOG_LEVEL") or self.LOG_LEVEL).upper()

        data_dir = os.getenv("REACH_BENCHMARK_DIR")
        if data_dir:
            self.BENCHMARK_DIR = Path(data_dir)
        output_dir = os.getenv("REACH_OUTPUT_DIR")
        if output_dir:
            self.OUTPUT_DIR = Path(output_dir)

        env = (os.getenv("REACH_ENVIRONMENT") or self.ENVIRONMENT).strip().lower()
        if env not in {"dev", "prod"}:
            env = "dev"
        self.ENVIRONMENT = env
        self.IS_DEV = env == "dev"
        self.IS_PROD = env == "prod"


settings = Settings()

LP_BACKEND = settings.LP_BACKEND
LP_FEAS_TOL = settings.LP_FEAS_TOL
LP_OPT_TOL = settings.LP_OPT_TOL
MAX_ORDER = settings.MAX_ORDER
ETA_TOL = settings.ETA_TOL
SET_TOL = settings.SET_TOL
