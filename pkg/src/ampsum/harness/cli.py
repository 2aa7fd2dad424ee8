"""Command line entry point.

    ampsum verify <suite> [--config FILE] [--seed N] [--workers N] [--out FILE] [--format json|csv] [--profile P]
    ampsum scan convexity --q-max N
    ampsum report --in FILE --summary

Exit status: 0 when every check passes, 1 when any check fails, 2 on a
configuration or system error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from ..errors import ConfigError
from .config import PROFILES, SUITES, load_config, make_config
from .report import load_report, run_suite, summary_text, to_csv, to_json

EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ampsum", description="Numerical verification suites.")
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", choices=SUITES + ("all",))
    v.add_argument("--config", help="JSON config file")
    v.add_argument("--seed", type=int)
    v.add_argument("--workers", type=int)
    v.add_argument("--profile", choices=PROFILES)
    v.add_argument("--out", help="write the report here instead of stdout")
    v.add_argument("--format", choices=("json", "csv"), default="json")

    s = sub.add_parser("scan", help="report-only scans")
    s.add_argument("target", choices=("convexity",))
    s.add_argument("--q-max", type=int, required=True)
    s.add_argument("--q-min", type=int, default=3)

    r = sub.add_parser("report", help="inspect a saved JSON report")
    r.add_argument("--in", dest="path", required=True)
    r.add_argument("--summary", action="store_true")
    return ap


def _write(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _verify(args) -> int:
    if args.config:
        cfg = load_config(args.config, suite=args.suite, seed=args.seed, workers=args.workers, profile=args.profile)
    else:
        cfg = make_config(args.suite, seed=args.seed or 0, workers=args.workers or 1, profile=args.profile)
    report = run_suite(cfg)
    _write(to_csv(report) if args.format == "csv" else to_json(report), args.out)
    if args.out:
        sys.stderr.write(summary_text(report))
    return EXIT_FAIL if report["body"]["summary"]["failures"] else EXIT_OK


def _scan(args) -> int:
    from ..lfunc import convexity_scan

    if args.q_max < args.q_min:
        raise ConfigError("--q-max must be at least --q-min")
    sc = convexity_scan(args.q_max, q_min=args.q_min)
    out = {"exponent": sc.exponent, "threshold": sc.threshold, "status": "report-only",
           "moduli": len(sc.moduli), "q_min": args.q_min, "q_max": args.q_max}
    sys.stdout.write(json.dumps(out, indent=1) + "\n")
    return EXIT_OK


def _report(args) -> int:
    rep = load_report(args.path)
    if args.summary:
        sys.stdout.write(summary_text(rep))
    else:
        sys.stdout.write(to_json(rep))
    return EXIT_FAIL if rep["body"]["summary"]["failures"] else EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = _parser().parse_args(argv)
    try:
        if args.command == "verify":
            return _verify(args)
        if args.command == "scan":
            return _scan(args)
        return _report(args)
    except ConfigError as exc:
        sys.stderr.write(f"ampsum: config error: {exc}\n")
        return EXIT_ERROR
    except OSError as exc:
        sys.stderr.write(f"ampsum: {exc}\n")
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
