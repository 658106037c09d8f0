"""Structured logging helpers."""

from reach.logging.run_logging import log_event, log_metric, log_stage, stage_timer

__all__ = ["log_event", "log_metric", "log_stage", "stage_timer"]
