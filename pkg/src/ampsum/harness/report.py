"""Running suites and assembling self-contained reports.

A report is ``{"body": ..., "meta": ...}``.  The body holds the config echo,
the per-check records, the summary and the version; it is a deterministic
function of the config.  Wall-clock data (runtimes, timestamp, host versions)
lives in ``meta`` so two runs with the same seed give identical bodies.
"""

from __future__ import annotations

import csv
import io
import json
import math
import platform
import time
from concurrent.futures import ProcessPoolExecutor
from datetime import datetime, timezone
from fractions import Fraction
from typing import Any

import numpy as np

from .. import __version__
from ..errors import ConfigError
from .config import SUITES, SuiteConfig
from .suites import FAIL, PASS, PLANNERS, REPORT, Task, run_task


def _clean(obj: Any) -> Any:
    """Coerce check output into plain JSON values."""
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return [_clean(obj.real), _clean(obj.imag)]
    if isinstance(obj, (float, np.floating)):
        f = float(obj)
        return f if math.isfinite(f) else str(f)
    if isinstance(obj, np.ndarray):
        return _clean(obj.tolist())
    if obj is None or isinstance(obj, str):
        return obj
    return repr(obj)


def plan(config: SuiteConfig) -> list[Task]:
    suites = SUITES if config.suite == "all" else (config.suite,)
    tasks: list[Task] = []
    for s in suites:
        tasks += PLANNERS[s](config.suite_grid(s), config.seed)
    return tasks


def _run_one(args):
    task, cache_dir = args
    return run_task(task, cache_dir)


def summarize(records: list[dict]) -> dict:
    residuals = [r["residual"] for r in records if isinstance(r["residual"], (int, float))
                 and r["status"] != REPORT]
    return {
        "checks": len(records),
        "passed": sum(r["status"] == PASS for r in records),
        "failures": sum(r["status"] == FAIL for r in records),
        "report_only": sum(r["status"] == REPORT for r in records),
        "max_residual": max(residuals) if residuals else None,
        "failed_ids": [r["id"] for r in records if r["status"] == FAIL],
    }


def run_suite(config: SuiteConfig) -> dict:
    """Run every task of the configured suite and return the report."""
    tasks = plan(config)
    start = time.perf_counter()
    jobs = [(t, config.cache_dir) for t in tasks]
    if config.workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            results = list(pool.map(_run_one, jobs))
    else:
        results = [_run_one(j) for j in jobs]
    records, runtimes = [], {}
    for task, (rec, dt) in zip(tasks, results):
        records.append(_clean({"suite": task.suite, **rec}))
        runtimes[f"{task.suite}:{task.check_id}"] = round(dt, 6)
    body = {
        "version": __version__,
        "config": _clean(config.echo()),
        "records": records,
        "summary": summarize(records),
    }
    meta = {
        "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        "total_runtime": round(time.perf_counter() - start, 3),
        "runtimes": runtimes,
        "workers": config.workers,
        "python": platform.python_version(),
        "numpy": np.__version__,
    }
    return {"body": body, "meta": meta}


def body_bytes(report: dict) -> bytes:
    """Canonical serialization of the deterministic part of a report."""
    return json.dumps(report["body"], sort_keys=True, separators=(",", ":")).encode()


def to_json(report: dict) -> str:
    return json.dumps(report, indent=1, sort_keys=True) + "\n"


CSV_FIELDS = ("suite", "id", "status", "residual", "runtime", "params")


def to_csv(report: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_FIELDS)
    runtimes = report.get("meta", {}).get("runtimes", {})
    for r in report["body"]["records"]:
        w.writerow([r["suite"], r["id"], r["status"], "" if r["residual"] is None else repr(r["residual"]),
                    runtimes.get(f"{r['suite']}:{r['id']}", ""), json.dumps(r["params"], sort_keys=True)])
    return buf.getvalue()


def load_report(path: str) -> dict:
    try:
        with open(path) as fh:
            rep = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read report {path}: {exc}") from exc
    if not isinstance(rep, dict) or "body" not in rep or "records" not in rep["body"]:
        raise ConfigError(f"{path} is not an ampsum report")
    return rep


def summary_text(report: dict) -> str:
    body = report["body"]
    s = body["summary"]
    lines = [f"ampsum {body['version']}  suite={body['config']['suite']}  seed={body['config']['seed']}",
             f"checks {s['checks']}  passed {s['passed']}  failed {s['failures']}  report-only {s['report_only']}",
             f"max residual {s['max_residual']}"]
    per_suite: dict[str, list[int]] = {}
    for r in body["records"]:
        row = per_suite.setdefault(r["suite"], [0, 0, 0])
        row[(PASS, FAIL, REPORT).index(r["status"])] += 1
    for suite, (p, f, ro) in per_suite.items():
        lines.append(f"  {suite:<10} pass {p:<4} fail {f:<4} report-only {ro}")
    for rid in s["failed_ids"]:
        lines.append(f"  FAIL {rid}")
    return "\n".join(lines) + "\n"
