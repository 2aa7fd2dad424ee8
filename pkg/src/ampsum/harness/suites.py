"""Verification suites.

Each suite expands its grid into a list of :class:`Task` objects.  A task
names a registered check function and carries JSON-friendly parameters, so
tasks can be shipped to worker processes.  A check returns an
:class:`Outcome`; exceptions are caught per task and recorded as failures.
"""

from __future__ import annotations

import math
import time
import traceback
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Optional

import numpy as np

from ..errors import AmpsumError

PASS, FAIL, REPORT = "pass", "fail", "report-only"


@dataclass(frozen=True)
class Task:
    suite: str
    check_id: str
    fn: str
    params: dict


@dataclass
class Outcome:
    status: str
    residual: Optional[float] = None
    details: dict = field(default_factory=dict)


CHECKS: dict[str, Callable[[dict, dict], Outcome]] = {}
PLANNERS: dict[str, Callable[[dict, int], list]] = {}


def check(name: str):
    def deco(fn):
        CHECKS[name] = fn
        return fn
    return deco


def planner(suite: str):
    def deco(fn):
        PLANNERS[suite] = fn
        return fn
    return deco


def _verdict(ok: bool) -> str:
    return PASS if ok else FAIL


def _cx(z) -> list:
    z = complex(z)
    return [z.real, z.imag]


def _s(pair) -> complex:
    return complex(pair[0], pair[1])


def run_task(task: Task, cache_dir: Optional[str]) -> tuple[dict, float]:
    """Execute one task; returns its record and its wall time."""
    t0 = time.perf_counter()
    try:
        out = CHECKS[task.fn](task.params, {"cache_dir": cache_dir})
    except (AmpsumError, ArithmeticError, ValueError) as exc:
        out = Outcome(FAIL, None, {"error": f"{type(exc).__name__}: {exc}"})
    except Exception as exc:  # a bug, still not fatal to the suite
        out = Outcome(FAIL, None, {"error": f"{type(exc).__name__}: {exc}",
                                   "trace": traceback.format_exc(limit=3)})
    record = {"id": task.check_id, "params": task.params, "status": out.status,
              "residual": out.residual, "details": out.details}
    return record, time.perf_counter() - t0


# -- characters used throughout ------------------------------------------------------

def _char(q: int, which: str = "first"):
    """A fixed nonprincipal character mod q: the first one, or one of maximal order."""
    from ..arith import char_group

    G = char_group(q)
    if len(G) == 1:
        return G[0]
    if which == "first":
        return G[1]
    return max((c for c in G), key=lambda c: (c.order, -c.index))


# -- bijection ------------------------------------------------------------------------------

@planner("bijection")
def _plan_bijection(g: dict, seed: int) -> list:
    tasks = [Task("bijection", f"bijection/c1={c1}", "bijection_row",
                  {"c1": c1, "c_max": g["c_max"], "n_max": g["n_max"], "brute": g["brute"],
                   "phase_pairs": g["phase_pairs"]})
             for c1 in range(1, g["c_max"] + 1)]
    tasks += [Task("bijection", f"zero_n/c1={c1}", "zero_n_row", {"c1": c1, "c_max": g["zero_c_max"]})
              for c1 in range(1, g["zero_c_max"] + 1)]
    return tasks


@check("bijection_row")
def _bijection_row(p: dict, ctx: dict) -> Outcome:
    from ..reparam import bijection_scan

    scan = bijection_scan(p["c_max"], p["n_max"], [tuple(pp) for pp in p["phase_pairs"]], brute=p["brute"],
                          c1_values=[p["c1"]])
    bad = scan.failures + scan.brute_mismatches
    return Outcome(_verdict(bad == 0), float(bad),
                   {"triples": scan.triples, "classes": scan.total_classes, "failed": scan.failed[:5]})


@check("zero_n_row")
def _zero_n_row(p: dict, ctx: dict) -> Outcome:
    from ..reparam import zero_n_check, zero_n_classify

    c1 = p["c1"]
    bad = []
    for c2 in range(1, p["c_max"] + 1):
        if c2 == c1:
            if not zero_n_check(c1):
                bad.append(c2)
        elif zero_n_classify(c1, c2):
            bad.append(c2)
    return Outcome(_verdict(not bad), float(len(bad)), {"bad_c2": bad})


# -- phase identity --------------------------------------------------------------------------

@planner("phase")
def _plan_phase(g: dict, seed: int) -> list:
    chunk = 100
    n_chunks = max(1, math.ceil(g["samples"] / chunk))
    return [Task("phase", f"phase/chunk={i}", "phase_chunk",
                 {"seed": seed, "chunk": i, "size": min(chunk, g["samples"] - i * chunk),
                  "c_max": g["c_max"], "n_max": g["n_max"], "l_max": g["l_max"]})
            for i in range(n_chunks)]


@check("phase_chunk")
def _phase_chunk(p: dict, ctx: dict) -> Outcome:
    from ..reparam import enumerate_X, phase_identity_check

    rng = np.random.default_rng([p["seed"], p["chunk"]])
    done = nonzero = 0
    worst = None
    while done < p["size"]:
        c1, c2 = (int(v) for v in rng.integers(1, p["c_max"] + 1, 2))
        d = math.gcd(c1, c2)
        n = int(rng.integers(1, p["n_max"] // d + 1)) * d * int(rng.choice([-1, 1]))
        if n == 0 or abs(n) > p["n_max"]:
            continue
        X = enumerate_X(c1, c2, n)
        if not X:
            continue
        pair = X[int(rng.integers(len(X)))]
        l, lp = (int(v) for v in rng.integers(-p["l_max"], p["l_max"] + 1, 2))
        res = phase_identity_check(c1, c2, n, l, lp, pair)
        done += 1
        if res != 0:
            nonzero += 1
            worst = [c1, c2, n, l, lp, str(res)]
    return Outcome(_verdict(nonzero == 0), float(nonzero), {"samples": done, "example_failure": worst})


# -- reindexing ----------------------------------------------------------------------------

@planner("reindex")
def _plan_reindex(g: dict, seed: int) -> list:
    return [Task("reindex", f"reindex/caps={c[0]},{c[1]},{c[2]}", "reindex_cap",
                 {"p": g["p"], "q": g["q"], "caps": c, "theta": g["theta"], "l": g["l"], "lp": g["lp"],
                  "tol": g["tol"]}) for c in g["caps"]]


def reindex_kernel(C1: int, C2: int, N: int, theta: float):
    """Product kernel of bumps whose supports end just inside the caps."""
    from ..archimedean import Bump
    from ..reparam import ProductKernel

    return ProductKernel(Bump((C1 + 1) / 2, (C1 - 0.5) / 2), Bump((C2 + 1) / 2, (C2 - 0.5) / 2),
                         Bump(0.0, N + 0.5), theta=theta)


@check("reindex_cap")
def _reindex_cap(p: dict, ctx: dict) -> Outcome:
    from ..reparam import reindex_sum_check

    C1, C2, N = p["caps"]
    K = reindex_kernel(C1, C2, N, p["theta"])
    r = reindex_sum_check(_char(p["p"], "max"), _char(p["q"], "max"), K.support, K, l=p["l"], lp=p["lp"])
    ok = r.residual < p["tol"] and r.boundary_max == 0.0
    return Outcome(_verdict(ok), r.residual,
                   {"source": _cx(r.source), "boundary_max": r.boundary_max, "terms_source": r.terms_source,
                    "terms_target": r.terms_target, "literal_residual": r.literal_residual})


# -- root counts ----------------------------------------------------------------------------

@planner("nu")
def _plan_nu(g: dict, seed: int) -> list:
    out = []
    for quad in g["quads"]:
        tag = ",".join(map(str, quad))
        out.append(Task("nu", f"nu/fast_vs_brute/quad={tag}", "nu_fast_brute", {"quad": quad, "n_max": g["n_max"]}))
        out.append(Task("nu", f"nu/hensel/quad={tag}", "nu_hensel",
                        {"quad": quad, "p_max": g["hensel_p_max"], "k_max": g["hensel_k_max"]}))
        out.append(Task("nu", f"nu/multiplicative/quad={tag}", "nu_mult", {"quad": quad, "n_max": g["mult_max"]}))
    return out


@check("nu_fast_brute")
def _nu_fast_brute(p: dict, ctx: dict) -> Outcome:
    from ..quadcount import nu_brute, nu_fast

    m, a, b = p["quad"]
    bad, checked = [], 0
    for n in range(1, p["n_max"] + 1, 2):
        if math.gcd(2 * a, n) != 1:
            continue
        checked += 1
        if int(nu_fast(n, m, a, b)) != nu_brute(n, m, a, b):
            bad.append(n)
    return Outcome(_verdict(not bad), float(len(bad)), {"checked": checked, "mismatches": bad[:10]})


@check("nu_hensel")
def _nu_hensel(p: dict, ctx: dict) -> Outcome:
    from ..arith import jacobi, primes_upto
    from ..quadcount import discriminant, nu_brute

    m, a, b = p["quad"]
    delta = discriminant(m, a, b)
    bad, checked = [], 0
    for q in primes_upto(p["p_max"]):
        q = int(q)
        if q == 2 or (a * delta) % q == 0:
            continue
        expected = 1 + jacobi(delta, q)
        for k in range(1, p["k_max"] + 1):
            checked += 1
            if nu_brute(q**k, m, a, b) != expected:
                bad.append([q, k])
    return Outcome(_verdict(not bad), float(len(bad)), {"checked": checked, "mismatches": bad[:10]})


@check("nu_mult")
def _nu_mult(p: dict, ctx: dict) -> Outcome:
    from ..arith import factorize, mobius
    from ..quadcount import nu_brute

    m, a, b = p["quad"]
    bad, checked = [], 0
    for n in range(2, p["n_max"] + 1):
        if mobius(n) == 0:
            continue
        fs = factorize(n)
        if len(fs) < 2:
            continue
        checked += 1
        prod = 1
        for q, _ in fs:
            prod *= nu_brute(q, m, a, b)
        if nu_brute(n, m, a, b) != prod:
            bad.append(n)
    return Outcome(_verdict(not bad), float(len(bad)), {"checked": checked, "mismatches": bad[:10]})


# -- Euler products --------------------------------------------------------------------------

@planner("euler")
def _plan_euler(g: dict, seed: int) -> list:
    out = []
    for quad in g["quads"]:
        tag = ",".join(map(str, quad))
        for i, pt in enumerate(g["points"]):
            for kind in ("e_sum", "n_sum", "b_sum"):
                out.append(Task("euler", f"euler/{kind}/quad={tag}/point={i}", "euler_point",
                                {"kind": kind, "quad": quad, "point": pt, "trunc": g["trunc"],
                                 "chi_modulus": g["chi_modulus"], "psi_modulus": g["psi_modulus"], "tol": g["tol"]}))
        out.append(Task("euler", f"euler/ad_cancel/quad={tag}", "euler_ad",
                        {"quad": quad, "prime_cap": g["ad_prime_cap"]}))
    out.append(Task("euler", "euler/ad_cancel/unweighted", "euler_ad_unweighted", {"prime_cap": g["ad_prime_cap"]}))
    out.append(Task("euler", "euler/local_factor_rational", "euler_local_exact",
                    {"primes": g["rational_primes"], "r": g["rational_r"]}))
    return out


@check("euler_point")
def _euler_point(p: dict, ctx: dict) -> Outcome:
    from ..quadcount import euler_product_eval

    pt = p["point"]
    s = (complex(pt[0], pt[1]), complex(pt[2], pt[3]), complex(pt[4], pt[5]))
    r = euler_product_eval(p["kind"], s, tuple(p["quad"]), chi=_char(p["chi_modulus"], "max"),
                           psi=_char(p["psi_modulus"], "max"), trunc=p["trunc"])
    return Outcome(_verdict(r.residual < p["tol"]), r.residual,
                   {"exponent": _cx(r.exponent), "series": _cx(r.series), "product": _cx(r.product),
                    "literal_deviation": r.literal_deviation,
                    "bad_primes": sorted(int(k) for k in r.s_factors)})


@check("euler_ad")
def _euler_ad(p: dict, ctx: dict) -> Outcome:
    from ..quadcount import euler_product_eval

    r = euler_product_eval("ad_cancel", (2, 1, 0), tuple(p["quad"]), prime_cap=p["prime_cap"])
    return Outcome(_verdict(not r.failing_primes), float(len(r.failing_primes)),
                   {"checked_primes": r.checked_primes, "failing_count": len(r.failing_primes),
                    "failing_primes": r.failing_primes[:20],
                    "product_minus_one": r.residual})


@check("euler_ad_unweighted")
def _euler_ad_unweighted(p: dict, ctx: dict) -> Outcome:
    from ..quadcount import ad_cancel_unweighted

    ok = ad_cancel_unweighted(p["prime_cap"])
    return Outcome(_verdict(ok), 0.0 if ok else 1.0)


@check("euler_local_exact")
def _euler_local_exact(p: dict, ctx: dict) -> Outcome:
    from ..quadcount import local_factor_check

    bad, checked, worst = [], 0, 0.0
    for q in p["primes"]:
        for psi in (-1, 0, 1):
            for leg in (-1, 0, 1):
                for r in p["r"]:
                    rep = local_factor_check(q, psi, leg, r)
                    checked += 1
                    worst = max(worst, rep.residual)
                    if rep.exact is not True:
                        bad.append([q, psi, leg, r])
    return Outcome(_verdict(not bad), worst, {"checked": checked, "inexact": bad})


# -- exponential sums -----------------------------------------------------------------------

@planner("expsums")
def _plan_expsums(g: dict, seed: int) -> list:
    out = []
    for p in g["moduli"]:
        for q in g["moduli"]:
            if p == q:
                continue
            for r in g["r_values"]:
                out.append(Task("expsums", f"gauss/p={p}/q={q}/r={r}", "gauss_reduction",
                                {"p": p, "q": q, "r": r, "arguments": g["arguments"], "seed": seed, "tol": g["tol"]}))
    out.append(Task("expsums", "weil", "weil", {"p_max": g["weil_p_max"]}))
    for c1, c2 in g["crt_pairs"]:
        out.append(Task("expsums", f"kloosterman_crt/c1={c1}/c2={c2}", "kloosterman_crt", {"c1": c1, "c2": c2}))
    return out


@check("gauss_reduction")
def _gauss_reduction(p: dict, ctx: dict) -> Outcome:
    from ..expsums import gauss_reduction_check

    P, Q, r = p["p"], p["q"], p["r"]
    chi, psi = _char(P, "max"), _char(Q, "max")
    rng = np.random.default_rng([p["seed"], P, Q, r])
    c = P * Q * r
    coprime = [a for a in range(1, 4 * c) if math.gcd(a, P * Q) == 1]
    args = [int(a) for a in rng.choice(coprime, size=p["arguments"], replace=False)]
    closed = max(gauss_reduction_check(chi, psi, r, a).closed_residual for a in args)
    vanish_args = [P * int(rng.integers(1, 4 * Q * r)), Q * int(rng.integers(1, 4 * P * r))]
    vanish = max(abs(gauss_reduction_check(chi, psi, r, a).value) for a in vanish_args)
    literal = max(gauss_reduction_check(chi, psi, r, a).literal_closed_residual for a in args[:3])
    ok = closed < p["tol"] and vanish < p["tol"]
    return Outcome(_verdict(ok), max(closed, vanish),
                   {"arguments": args, "closed_residual": closed, "vanishing_max": vanish,
                    "literal_closed_residual": literal})


@check("weil")
def _weil(p: dict, ctx: dict) -> Outcome:
    from ..arith import primes_upto
    from ..expsums import weil_check

    worst, bad, checked = 0.0, [], 0
    for q in primes_upto(p["p_max"]):
        q = int(q)
        for l, n in ((1, 1), (2, 3), (q, 1), (1, -1), (5, 7)):
            if l % q == 0 and n % q == 0:
                continue
            w = weil_check(l, n, q)
            checked += 1
            worst = max(worst, abs(w.value) / w.bound)
            if not w.holds:
                bad.append([l, n, q])
    return Outcome(_verdict(not bad), worst, {"checked": checked, "violations": bad})


@check("kloosterman_crt")
def _kloosterman_crt(p: dict, ctx: dict) -> Outcome:
    from ..expsums import kloosterman_crt_residual

    chi1, chi2 = _char(p["c1"], "max"), _char(p["c2"], "max")
    worst = max(kloosterman_crt_residual(chi1, chi2, l, n) for l, n in ((1, 1), (2, 5), (3, -4), (0, 1)))
    return Outcome(_verdict(worst < 1e-10), worst)


# -- L-functions ----------------------------------------------------------------------------

def _cached_L(cache, chi, s: complex, method: str) -> tuple[complex, float]:
    from ..lfunc import dirichlet_L

    def compute():
        v = dirichlet_L(chi, s, method)
        return {"value": _cx(v.value), "error_bound": v.error_bound}

    key = ("L", chi.modulus, chi.index, [s.real, s.imag, method])
    rec = cache.get_or_compute(key, compute) if cache is not None else compute()
    return complex(*rec["value"]), float(rec["error_bound"])


def _cache(ctx: dict):
    from .cache import Cache

    return Cache(ctx["cache_dir"]) if ctx.get("cache_dir") else None


@planner("lfunc")
def _plan_lfunc(g: dict, seed: int) -> list:
    out = [Task("lfunc", f"dual_method/q={q}", "lfunc_dual", {"q": q}) for q in range(3, g["q_max"] + 1)]
    out += [Task("lfunc", f"zeta_relation/q={q}", "lfunc_zeta", {"q": q, "re": g["zeta_re"]})
            for q in range(1, g["zeta_q_max"] + 1)]
    out += [Task("lfunc", f"reflection/q={q}", "lfunc_reflection",
                 {"q": q, "samples": g["reflection_samples"], "seed": seed})
            for q in range(3, g["reflection_q_max"] + 1)]
    out.append(Task("lfunc", "examples", "lfunc_examples", {}))
    return out


@check("lfunc_dual")
def _lfunc_dual(p: dict, ctx: dict) -> Outcome:
    from ..arith import char_group

    cache = _cache(ctx)
    worst, quot, n = 0.0, 0.0, 0
    for chi in char_group(p["q"]):
        if not chi.is_primitive:
            continue
        a, ea = _cached_L(cache, chi, complex(0.5), "smoothed_sum")
        b, eb = _cached_L(cache, chi, complex(0.5), "functional_equation")
        n += 1
        worst = max(worst, abs(a - b))
        quot = max(quot, abs(a - b) / (ea + eb))
    if n == 0:
        return Outcome(PASS, 0.0, {"primitive_characters": 0})
    return Outcome(_verdict(quot <= 1.0), worst, {"primitive_characters": n, "bound_quotient": quot})


@check("lfunc_zeta")
def _lfunc_zeta(p: dict, ctx: dict) -> Outcome:
    from ..lfunc import zeta_relation_check

    worst, ok = 0.0, True
    for re in p["re"]:
        for t in (0.0, 3.0):
            r = zeta_relation_check(p["q"], complex(re, t))
            worst = max(worst, r.residual)
            ok = ok and r.passed
    return Outcome(_verdict(ok), worst)


@check("lfunc_reflection")
def _lfunc_reflection(p: dict, ctx: dict) -> Outcome:
    from ..arith import char_group
    from ..lfunc import reflection_check

    rng = np.random.default_rng([p["seed"], p["q"]])
    worst, ok, n = 0.0, True, 0
    for chi in char_group(p["q"]):
        if not chi.is_primitive:
            continue
        for _ in range(p["samples"]):
            s = complex(rng.uniform(0.3, 0.7), rng.uniform(-10, 10))
            r = reflection_check(chi, s)
            n += 1
            worst = max(worst, r.residual / max(abs(r.lhs), 1e-300))
            ok = ok and r.passed
    return Outcome(_verdict(ok), worst, {"evaluations": n})


@check("lfunc_examples")
def _lfunc_examples(p: dict, ctx: dict) -> Outcome:
    from ..arith import kronecker_character
    from ..lfunc import dirichlet_L, zeta

    z2 = abs(zeta(2).value - math.pi**2 / 6)
    l4 = abs(dirichlet_L(kronecker_character(-4), 1).value - math.pi / 4)
    chi5 = kronecker_character(5)
    q5 = abs(dirichlet_L(chi5, 0.5).value - dirichlet_L(chi5, 0.5, "functional_equation").value)
    worst = max(z2, l4, q5)
    return Outcome(_verdict(z2 < 1e-9 and l4 < 1e-9 and q5 < 1e-6), worst,
                   {"zeta2": z2, "L1_chi_minus4": l4, "chi5_dual": q5})


# -- convexity -----------------------------------------------------------------------------

@planner("convexity")
def _plan_convexity(g: dict, seed: int) -> list:
    return [
        Task("convexity", f"scan/q_max={g['q_max']}", "convexity_scan",
             {"q_max": g["q_max"], "t_grid": g["t_grid"], "threshold": g["threshold"], "q_min": g["q_min"]}),
        Task("convexity", f"stability/q_max={g['stability_q_max']}", "convexity_stability",
             {"q_max": g["stability_q_max"], "t_grid": g["t_grid"], "q_min": g["q_min"]}),
        Task("convexity", "single_modulus/q=5", "convexity_q5", {"t_grid": g["t_grid"]}),
    ]


@check("convexity_scan")
def _convexity_scan(p: dict, ctx: dict) -> Outcome:
    from ..lfunc import convexity_scan

    sc = convexity_scan(p["q_max"], tuple(p["t_grid"]), p["q_min"])
    return Outcome(REPORT, sc.exponent,
                   {"exponent": sc.exponent, "threshold": p["threshold"], "below_threshold": sc.exponent <= p["threshold"],
                    "moduli": len(sc.moduli), "largest_max": max(sc.max_abs)})


def _densify(grid: list) -> list:
    out = []
    for a, b in zip(grid, grid[1:]):
        out += [a, (a + b) / 2]
    return out + [grid[-1]]


@check("convexity_stability")
def _convexity_stability(p: dict, ctx: dict) -> Outcome:
    from ..lfunc import convexity_scan

    a = convexity_scan(p["q_max"], tuple(p["t_grid"]), p["q_min"])
    b = convexity_scan(p["q_max"], tuple(_densify(p["t_grid"])), p["q_min"])
    change = float(np.max(np.abs(np.array(b.max_abs) / np.array(a.max_abs) - 1)))
    return Outcome(_verdict(change < 0.05), change, {"exponent": a.exponent, "exponent_dense": b.exponent})


@check("convexity_q5")
def _convexity_q5(p: dict, ctx: dict) -> Outcome:
    from ..lfunc import convexity_scan, max_abs_critical

    sc = convexity_scan(5, tuple(p["t_grid"]), 5)
    direct = max_abs_critical(5, tuple(p["t_grid"]))
    diff = abs(sc.max_abs[0] - direct)
    return Outcome(_verdict(diff < 1e-10), diff)


# -- Mellin ---------------------------------------------------------------------------------

@planner("mellin")
def _plan_mellin(g: dict, seed: int) -> list:
    out = [Task("mellin", f"mellin_barnes/x={x}/s={s[0]},{s[1]}", "mellin_barnes",
                {"x": x, "s": s, "T_max": g["T_max"], "tol": g["tol"]}) for x in g["x"] for s in g["s"]]
    out.append(Task("mellin", "gamma_ratio", "gamma_ratio",
                    {"alpha": g["ratio_alpha"], "s2": g["ratio_s2"], "t": g["ratio_t"]}))
    out.append(Task("mellin", "mellin_bump", "mellin_bump", {}))
    return out


@check("mellin_barnes")
def _mellin_barnes(p: dict, ctx: dict) -> Outcome:
    from ..archimedean import ContourSpec, mellin_barnes_check

    r = mellin_barnes_check(p["x"], _s(p["s"]), ContourSpec(T_max=p["T_max"]))
    return Outcome(_verdict(r.residual < p["tol"]), r.residual, {"nodes": r.nodes, "tail": r.tail})


@check("gamma_ratio")
def _gamma_ratio(p: dict, ctx: dict) -> Outcome:
    from ..archimedean import gamma_ratio_decay

    r = gamma_ratio_decay(p["alpha"], _s(p["s2"]), p["t"])
    return Outcome(_verdict(not r.growth), r.max_quotient, {"quotients": list(r.quotient)})


@check("mellin_bump")
def _mellin_bump(p: dict, ctx: dict) -> Outcome:
    from ..archimedean import Bump, mellin

    f = Bump(1.5, 0.7)
    s = complex(0.5, 4)
    m = mellin(f, s)
    scaled = mellin(f.dilate(2.0), s).value
    scaling = abs(scaled - 2 ** (-s) * m.value)
    worst = max(m.residual, scaling)
    return Outcome(_verdict(worst < 1e-10), worst, {"oracle_residual": m.residual, "scaling_residual": scaling})


# -- Bessel ----------------------------------------------------------------------------------

@planner("bessel")
def _plan_bessel(g: dict, seed: int) -> list:
    from ..archimedean import boundary_points

    out = [Task("bessel", f"regime/{i}", "bessel_regime", {"index": i, "tol": g["regime_tol"]})
           for i in range(len(boundary_points()))]
    out += [Task("bessel", f"oracle/nu={a},{b}/x={x}", "bessel_oracle", {"nu": [a, b], "x": x})
            for a, b, x in g["oracle_points"]]
    out += [Task("bessel", f"pair/A={A}/B={B}/w={w[0]},{w[1]}", "bessel_pair", {"A": A, "B": B, "w": w, "tol": g["pair_tol"]})
            for A, B, w in g["pair_samples"]]
    out.append(Task("bessel", "pair/negative_A", "bessel_pair_negative", {"A": -1.0, "B": 1.0, "w": [0, 0.3]}))
    out += [Task("bessel", f"w0_limit/z={z}", "bessel_limit", {"z": z, "tol": g["limit_tol"]}) for z in g["limit_z"]]
    return out


@check("bessel_regime")
def _bessel_regime(p: dict, ctx: dict) -> Outcome:
    from ..archimedean import boundary_points, regime_crosscheck

    r = regime_crosscheck([boundary_points()[p["index"]]])[0]
    return Outcome(_verdict(r.relative_gap < p["tol"]), r.relative_gap,
                   {"nu": _cx(r.nu), "x": r.x, "regimes": list(r.regimes)})


@check("bessel_oracle")
def _bessel_oracle(p: dict, ctx: dict) -> Outcome:
    import mpmath

    from ..archimedean import bessel_J

    nu = _s(p["nu"])
    v = bessel_J(nu, p["x"])
    ref = complex(mpmath.besselj(mpmath.mpc(nu.real, nu.imag), p["x"]))
    rel = abs(v - ref) / max(abs(ref), 1e-300)
    return Outcome(_verdict(rel < 1e-8), rel)


@check("bessel_pair")
def _bessel_pair(p: dict, ctx: dict) -> Outcome:
    from ..archimedean import bessel_pair_integral

    r = bessel_pair_integral(p["A"], p["B"], _s(p["w"]))
    ok = r.passed and r.residual is not None and r.residual < p["tol"]
    return Outcome(_verdict(ok), r.residual,
                   {"quadrature": _cx(r.quadrature), "ladder_drift": r.ladder_drift,
                    "literal_residual": r.literal_residual})


@check("bessel_pair_negative")
def _bessel_pair_negative(p: dict, ctx: dict) -> Outcome:
    from ..archimedean import bessel_pair_integral

    r = bessel_pair_integral(p["A"], p["B"], _s(p["w"]))
    ok = math.isfinite(abs(r.quadrature)) and not r.closed_form_asserted
    return Outcome(_verdict(ok), r.residual, {"quadrature": _cx(r.quadrature), "closed_form_asserted": False})


@check("bessel_limit")
def _bessel_limit(p: dict, ctx: dict) -> Outcome:
    from ..archimedean import w0_limit_check

    r = w0_limit_check(p["z"])
    return Outcome(_verdict(r.continuity < p["tol"]), r.continuity, {"literal_gap": r.literal_gap})


# -- D-factor ------------------------------------------------------------------------------

DFACTOR_V = (1.5, 0.5)


@planner("dfactor")
def _plan_dfactor(g: dict, seed: int) -> list:
    out = [Task("dfactor", f"oracle/{i}", "dfactor_oracle",
                {"s": s, "nodes": g["nodes"], "geom": g["geom"], "tol": g["tol"]})
           for i, s in enumerate(g["oracle_s"])]
    out.append(Task("dfactor", "bound", "dfactor_bound",
                    {"t": g["t"], "eps": g["eps"], "nodes": g["nodes"], "geom": g["geom"]}))
    out.append(Task("dfactor", "w0_branch", "dfactor_w0", {"nodes": g["nodes"], "geom": g["geom"]}))
    return out


def _dfactor_weights():
    from ..archimedean import Bump

    return Bump(*DFACTOR_V), Bump(*DFACTOR_V)


@check("dfactor_oracle")
def _dfactor_oracle(p: dict, ctx: dict) -> Outcome:
    from ..archimedean import d_factor

    V, W = _dfactor_weights()
    s = p["s"]
    r = d_factor(complex(s[0], s[1]), complex(s[2], s[3]), complex(s[4], s[5]), V, W, p["geom"], nodes=p["nodes"])
    return Outcome(_verdict(r.residual < p["tol"]), r.residual,
                   {"value": _cx(r.value), "sign_change": r.sign_change, "ratio_max": r.ratio_max})


@check("dfactor_bound")
def _dfactor_bound(p: dict, ctx: dict) -> Outcome:
    from ..archimedean import d_factor_bound_check

    V, W = _dfactor_weights()
    r = d_factor_bound_check(p["t"], p["t"], p["t"], V, W, p["geom"], eps=p["eps"], nodes=p["nodes"])
    return Outcome(REPORT if r.passed else FAIL, r.constant, {"rows": len(r.rows)})


@check("dfactor_w0")
def _dfactor_w0(p: dict, ctx: dict) -> Outcome:
    from ..archimedean import d_factor

    V, W = _dfactor_weights()
    r = d_factor(0.5 + 1j, 0.5 + 2j, 0.0, V, W, p["geom"], nodes=p["nodes"], oracle=False)
    return Outcome(_verdict(math.isfinite(abs(r.value))), None, {"value": _cx(r.value)})


# -- decay -----------------------------------------------------------------------------------

DECAY_PARAMS = {"d0": 1, "m": 15, "l1": 1, "l2": 1, "k": 1, "p": 3, "q": 5}
DECAY_GEOM = {"d0": 1, "k": 1, "l1": 2, "l2": 3, "m": 1}


@planner("decay")
def _plan_decay(g: dict, seed: int) -> list:
    return [Task("decay", "n_ladder", "decay_n", {"doublings": g["doublings"], "required": g["required"]}),
            Task("decay", "m_ladder", "decay_m", {"doublings": g["doublings"], "required": g["required"]})]


@check("decay_n")
def _decay_n(p: dict, ctx: dict) -> Outcome:
    from ..archimedean import Bump, DyadicBlock, n_decay_audit

    V = Bump(1.1, 0.6)
    x = 4 * math.pi
    a = n_decay_audit(x, x, DECAY_PARAMS, DyadicBlock(1.0), V, V, doublings=p["doublings"], required=p["required"])
    return Outcome(_verdict(a.passed), a.exponent, {"step_ratios": list(a.step_ratios)})


@check("decay_m")
def _decay_m(p: dict, ctx: dict) -> Outcome:
    from ..archimedean import m_decay_audit

    x = 4 * math.pi
    a = m_decay_audit(x, x, DECAY_GEOM, 0.3j, doublings=p["doublings"], required=p["required"])
    return Outcome(_verdict(a.passed), a.exponent, {"step_ratios": list(a.step_ratios), "cross_check": a.cross_check})


# -- Poisson ---------------------------------------------------------------------------------

POISSON_F = (9.3, 8.1)


@planner("poisson")
def _plan_poisson(g: dict, seed: int) -> list:
    return [Task("poisson", f"{kind}/c={c}", "poisson", {"kind": kind, "c": c, "tol": g["tol"]})
            for kind in g["kinds"] for c in range(1, g["c_max"] + 1)]


@check("poisson")
def _poisson(p: dict, ctx: dict) -> Outcome:
    from ..archimedean import (Bump, character_weight, constant_weight, kloosterman_weight,
                               poisson_twisted_check, quadratic_root_weight)

    c, kind = p["c"], p["kind"]
    if kind == "quadratic_root":
        w = quadratic_root_weight(c, 1, 1)
    elif kind == "kloosterman":
        w = kloosterman_weight(c, 1, 1)
    elif kind == "character":
        w = character_weight(_char(c, "first"))
    elif kind == "constant":
        w = constant_weight(c)
    else:
        raise ValueError(f"unknown weight kind {kind!r}")
    r = poisson_twisted_check(Bump(*POISSON_F), c, w)
    ok = r.residual < p["tol"] and (r.dual_formula_residual is None or r.dual_formula_residual < p["tol"])
    return Outcome(_verdict(ok), r.residual,
                   {"dual_formula_residual": r.dual_formula_residual, "h_max": r.h_max})


# -- partition of unity -------------------------------------------------------------------

@planner("partition")
def _plan_partition(g: dict, seed: int) -> list:
    return [Task("partition", f"X_cap={X}", "partition", {"X": X, "grid": g["grid"], "tol": g["tol"]})
            for X in g["x_caps"]]


@check("partition")
def _partition(p: dict, ctx: dict) -> Outcome:
    from ..archimedean import partition_unity

    X = p["X"]
    spec = partition_unity(X)
    xs = np.concatenate([np.linspace(0.01, 1.0, p["grid"] // 4), np.linspace(1.0, X, p["grid"])])
    res = spec.residual(xs)
    count_ok = len(spec.M_list) <= 2 + math.log2(X)
    below = float(np.max(np.abs(spec.total(np.linspace(0.01, 0.5, 50)))))
    ok = res < p["tol"] and count_ok and below == 0.0
    return Outcome(_verdict(ok), res, {"blocks": len(spec.M_list), "count_bound": 2 + math.log2(X),
                                       "derivative_constants": spec.derivative_constants(3, 401)})


# -- amplifier ------------------------------------------------------------------------------

@planner("amplifier")
def _plan_amplifier(g: dict, seed: int) -> list:
    out = []
    for i in range(g["sequences"]):
        sd = seed * 1000 + i
        out.append(Task("amplifier", f"recursion/seq={i}", "amp_recursion", {"seed": sd, "prime_cap": g["prime_cap"]}))
        out.append(Task("amplifier", f"collapse/seq={i}", "amp_collapse",
                        {"seed": sd, "prime_cap": g["prime_cap"], "L_max": g["L_max"], "L_step": g["L_step"]}))
        out.append(Task("amplifier", f"lower_bound/seq={i}", "amp_lower",
                        {"seed": sd, "prime_cap": g["prime_cap"], "ladder": [L for L in g["ladder"] if L <= g["L_max"]]}))
    out.append(Task("amplifier", "square_expansion", "amp_square",
                    {"seed": seed, "prime_cap": g["prime_cap"], "vectors": g["vectors"], "support": g["support"],
                     "tol": g["tol"]}))
    out.append(Task("amplifier", "square_expansion/nontrivial_character", "amp_square_twisted",
                    {"seed": seed, "modulus": 7}))
    return out


@check("amp_recursion")
def _amp_recursion(p: dict, ctx: dict) -> Outcome:
    from ..amplifier import recursion_audit, satake_sequence

    a = recursion_audit(satake_sequence(p["seed"], p["prime_cap"]))
    return Outcome(_verdict(a.exact_zero and a.multiplicative), a.max_residual, {"checked": a.checked})


@check("amp_collapse")
def _amp_collapse(p: dict, ctx: dict) -> Outcome:
    from ..amplifier import kmv_coefficients, prime_count, satake_sequence

    seq = satake_sequence(p["seed"], p["prime_cap"])
    Ls = sorted(set(range(1, p["L_max"] + 1, p["L_step"])) | {p["L_max"], 100})
    bad = []
    for L in Ls:
        r = kmv_coefficients(seq, L)
        if r.amplified_sum != prime_count(math.isqrt(L)) or r.norm2 > r.norm_bound:
            bad.append(L)
    return Outcome(_verdict(not bad), float(len(bad)), {"checked": len(Ls), "failing_L": bad[:10]})


@check("amp_lower")
def _amp_lower(p: dict, ctx: dict) -> Outcome:
    from ..amplifier import amplifier_lower_bound_check, satake_sequence

    r = amplifier_lower_bound_check(satake_sequence(p["seed"], p["prime_cap"]), p["ladder"])
    return Outcome(_verdict(r.passed), None,
                   {"rows": [[row.L, str(row.square), row.expected, row.ratio] for row in r.rows]})


@check("amp_square")
def _amp_square(p: dict, ctx: dict) -> Outcome:
    from ..amplifier import hecke_square_expand, random_vector, satake_sequence

    seq = satake_sequence(p["seed"], p["prime_cap"])
    rng = np.random.default_rng(p["seed"])
    worst = max(hecke_square_expand(random_vector(rng, p["support"]), seq).residual for _ in range(p["vectors"]))
    return Outcome(_verdict(worst < p["tol"]), worst, {"vectors": p["vectors"]})


@check("amp_square_twisted")
def _amp_square_twisted(p: dict, ctx: dict) -> Outcome:
    from ..amplifier import hecke_square_expand, random_vector, satake_sequence

    seq = satake_sequence(p["seed"], 60, _char(p["modulus"], "max"))
    r = hecke_square_expand(random_vector(np.random.default_rng(p["seed"]), 20), seq, report_only=True)
    return Outcome(REPORT, r.residual, {"twisted_bilinear_residual": r.twisted_residual})
