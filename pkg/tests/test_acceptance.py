"""The twelve acceptance criteria, one test each.

Each criterion runs the corresponding harness suite on an explicit grid and
prints one PASS/FAIL line.  Run as a script for just those lines:

    python tests/test_acceptance.py
"""

import json
import os
import subprocess
import sys
import tempfile
import time

import pytest

from ampsum.archimedean import boundary_points
from ampsum.harness import make_config, run_suite

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:  # script mode
    ACCEPTANCE_LINES = []

CACHE = tempfile.mkdtemp(prefix="ampsum-acceptance-")


def run(suite, grid, seed=0):
    t0 = time.perf_counter()
    rep = run_suite(make_config(suite, grid=grid, seed=seed, cache_dir=CACHE))
    return rep["body"]["records"], time.perf_counter() - t0


def select(records, prefix):
    return [r for r in records if r["id"].startswith(prefix)]


def all_pass(records):
    return bool(records) and all(r["status"] == "pass" for r in records)


def worst(records):
    vals = [r["residual"] for r in records if isinstance(r["residual"], (int, float))]
    return max(vals) if vals else 0.0


def emit(number, name, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'} {number:>2} {name}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


# -- criteria ------------------------------------------------------------------------------

def criterion_1():
    recs, dt = run("bijection", {"c_max": 30, "n_max": 60, "zero_c_max": 1})
    rows = select(recs, "bijection/")
    triples = sum(r["details"]["triples"] for r in rows)
    ok = all_pass(rows) and dt < 120
    return emit(1, "bijection", ok, f"{triples} triples, {int(worst(rows))} failures, {dt:.1f}s")


def criterion_2():
    recs, _ = run("bijection", {"c_max": 1, "n_max": 1, "zero_c_max": 50})
    rows = select(recs, "zero_n/")
    return emit(2, "n=0 classification", all_pass(rows) and len(rows) == 50,
                f"{len(rows)} rows of c1, {int(worst(rows))} bad pairs")


def criterion_3():
    recs, dt = run("nu", {"n_max": 500, "hensel_p_max": 50, "hensel_k_max": 4, "mult_max": 1000})
    ok = all_pass(recs) and dt < 120
    return emit(3, "root counts", ok, f"{len(recs)} checks over {len(recs) // 3} quadratics, {dt:.1f}s")


def criterion_4():
    recs, _ = run("expsums", {"moduli": [3, 5, 7, 11, 13], "r_values": [1, 2, 4], "arguments": 10, "tol": 1e-10})
    rows = select(recs, "gauss/")
    vanish = max(r["details"]["vanishing_max"] for r in rows)
    return emit(4, "Gauss-sum reduction", all_pass(rows) and len(rows) == 60,
                f"{len(rows)} (p, q, r), max residual {worst(rows):.1e}, vanishing max {vanish:.1e}")


def criterion_5():
    recs, dt = run("reindex", {"p": 3, "q": 5, "tol": 1e-9})
    audit = max(r["details"]["boundary_max"] for r in recs)
    ok = all_pass(recs) and len(recs) == 3 and audit == 0.0 and dt < 300
    return emit(5, "reindexing", ok, f"3 caps, max difference {worst(recs):.1e}, boundary {audit}, {dt:.1f}s")


def criterion_6():
    recs, _ = run("euler", {"tol": 1e-8, "ad_prime_cap": 1000})
    series = [r for r in recs if any(k in r["id"] for k in ("e_sum", "n_sum", "b_sum"))]
    ad = select(recs, "euler/ad_cancel/quad")
    local = select(recs, "euler/local_factor")
    ok = all_pass(series) and all_pass(ad) and all_pass(local)
    fails = ", ".join(f"{r['id'].split('=')[1]}: {r['details']['failing_count']} of "
                      f"{r['details']['checked_primes']} primes" for r in ad)
    return emit(6, "Euler products", ok,
                f"series vs product max {worst(series):.1e} ({'ok' if all_pass(series) else 'bad'}); "
                f"local factor exact {'ok' if all_pass(local) else 'bad'}; "
                f"weighted a.d cancellation fails at split primes ({fails})")


def criterion_7():
    mel, _ = run("mellin", {"x": [0.1, 1, 3], "s": [[2, 0], [1, 0], [0.5, 3]], "tol": 1e-8})
    mb = select(mel, "mellin_barnes")
    bes, _ = run("bessel", {"pair_tol": 1e-6, "limit_tol": 1e-5, "regime_tol": 1e-3})
    pair = [r for r in select(bes, "pair/") if r["id"] != "pair/negative_A"]
    lim = select(bes, "w0_limit")
    reg = select(bes, "regime")
    part, _ = run("partition", {"tol": 1e-12})
    ok = (all_pass(mb) and len(mb) == 9 and all_pass(pair) and len(pair) == 10 and all_pass(lim)
          and all_pass(reg) and len(reg) >= 20 and len(boundary_points()) >= 20 and all_pass(part))
    return emit(7, "archimedean", ok,
                f"MB {worst(mb):.1e}, pair {worst(pair):.1e} (n={len(pair)}), w->0 {worst(lim):.1e}, "
                f"regimes {worst(reg):.1e} (n={len(reg)}), partition {worst(part):.1e}")


def criterion_8():
    recs, _ = run("decay", {"required": 2.0})
    ex = {r["id"]: r["residual"] for r in recs}
    return emit(8, "decay", all_pass(recs), f"n exponent {ex['n_ladder']:.2f}, m exponent {ex['m_ladder']:.2f}")


def criterion_9():
    recs, _ = run("poisson", {"c_max": 30, "tol": 1e-9, "kinds": ["quadratic_root", "character"]})
    return emit(9, "Poisson", all_pass(recs) and len(recs) == 60, f"{len(recs)} checks, max {worst(recs):.1e}")


def criterion_10():
    t0 = time.perf_counter()
    lf, _ = run("lfunc", {"q_max": 100, "zeta_q_max": 100, "reflection_q_max": 3})
    cv, _ = run("convexity", {"q_max": 2000})
    dt = time.perf_counter() - t0
    dual = select(lf, "dual_method")
    zeta = select(lf, "zeta_relation")
    scan = select(cv, "scan")[0]
    exp = scan["details"]["exponent"]
    ok = all_pass(dual) and all_pass(zeta) and dt < 600
    n_chars = sum(r["details"]["primitive_characters"] for r in dual)
    return emit(10, "L-functions", ok,
                f"{n_chars} primitive characters, worst bound quotient "
                f"{max(r['details'].get('bound_quotient', 0) for r in dual):.2f}; zeta relation ok; "
                f"convexity exponent {exp:.3f} vs 0.30 (report-only, "
                f"{'below' if exp <= 0.30 else 'above'}); {dt:.0f}s")


def criterion_11():
    recs, _ = run("amplifier", {"L_max": 10000, "vectors": 100, "tol": 1e-10})
    coll = select(recs, "collapse")
    sq = select(recs, "square_expansion")
    sq = [r for r in sq if r["status"] != "report-only"]
    return emit(11, "amplifier", all_pass(coll) and all_pass(sq),
                f"collapse exact on {sum(r['details']['checked'] for r in coll)} lengths, "
                f"square expansion max {worst(sq):.1e} over 100 vectors")


def _verify_all(path, env):
    subprocess.run([sys.executable, "-m", "ampsum.harness.cli", "verify", "all", "--seed", "7", "--out", path],
                   env=env, check=False, capture_output=True)
    with open(path) as fh:
        return json.dumps(json.load(fh)["body"], sort_keys=True)


def criterion_12():
    with tempfile.TemporaryDirectory() as tmp:
        env = dict(os.environ, AMPSUM_CACHE_DIR=os.path.join(tmp, "cache"))
        a = _verify_all(os.path.join(tmp, "a.json"), env)
        b = _verify_all(os.path.join(tmp, "b.json"), env)
    return emit(12, "determinism", a == b, f"report bodies {'identical' if a == b else 'differ'} ({len(a)} bytes)")


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
            criterion_7, criterion_8, criterion_9, criterion_10, criterion_11, criterion_12]

# -- pytest wrappers -------------------------------------------------------------------------


@pytest.mark.slow
@pytest.mark.parametrize("crit", [c for c in CRITERIA if c is not criterion_6], ids=lambda c: c.__name__)
def test_criterion(crit):
    assert crit()


@pytest.mark.slow
@pytest.mark.xfail(strict=True, reason="the root-count weighted a.d product is not 1 at primes where the "
                                       "discriminant is a nonzero square; see the decisions ledger")
def test_criterion_6():
    assert criterion_6()


if __name__ == "__main__":
    results = [c() for c in CRITERIA]
    sys.exit(0 if all(results) else 1)
