"""Verification harness: suite configs, the result cache, reports and the CLI."""

from .cache import Cache, cache_get, cache_put
from .config import PROFILES, SUITES, SuiteConfig, default_grid, load_config, make_config
from .report import body_bytes, load_report, run_suite, summarize, summary_text, to_csv, to_json
from .suites import CHECKS, PLANNERS, Task, run_task

__all__ = [
    "Cache", "cache_get", "cache_put",
    "PROFILES", "SUITES", "SuiteConfig", "default_grid", "load_config", "make_config",
    "body_bytes", "load_report", "run_suite", "summarize", "summary_text", "to_csv", "to_json",
    "CHECKS", "PLANNERS", "Task", "run_task",
]
