"""Reparametrization of pair classes (x mod c1, y mod c2) with c2 x + c1 y = n.

For n != 0 the classes are in bijection with residues r mod |n| through

    xbar = (c2 + c1 r) / n  (mod c1),      ybar = (c1 + c2 rbar) / n  (mod c2),

where r rbar = 1 mod |n|.  This module enumerates both sides, checks the
bijection and the phase identity exactly, and compares the two orderings of
a compactly supported weighted sum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

import numpy as np

from . import kernels
from .arith import DirichletCharacter, Residue, divisors, mod_inverse
from .errors import DNotDividesN, MismatchedClasses, TruncationMismatch


@dataclass(frozen=True, order=True)
class PairClass:
    x: Residue
    y: Residue


def _pair(x: int, c1: int, y: int, c2: int) -> PairClass:
    return PairClass(Residue(x, c1), Residue(y, c2))


def _check_moduli(c1: int, c2: int) -> None:
    if c1 <= 0 or c2 <= 0:
        raise ValueError("moduli must be positive")


def enumerate_X(c1: int, c2: int, n: int) -> list[PairClass]:
    """Unit classes (x mod c1, y mod c2) admitting lifts with c2 x + c1 y = n."""
    _check_moduli(c1, c2)
    out = []
    for x in range(c1):
        if math.gcd(x, c1) != 1:
            continue
        t = n - c2 * x
        if t % c1:
            continue
        y = (t // c1) % c2
        if math.gcd(y, c2) == 1:
            out.append(_pair(x, c1, y, c2))
    return out


def enumerate_X_brute(c1: int, c2: int, n: int) -> list[PairClass]:
    """Exhaustive version of :func:`enumerate_X` over all (x, y)."""
    _check_moduli(c1, c2)
    mod = c1 * c2
    return [
        _pair(x, c1, y, c2)
        for x in range(c1)
        if math.gcd(x, c1) == 1
        for y in range(c2)
        if math.gcd(y, c2) == 1 and (c2 * x + c1 * y - n) % mod == 0
    ]


def _y_member(c1: int, c2: int, n: int, d: int, r: int) -> bool:
    N = abs(n)
    if math.gcd(r, N) != 1:
        return False
    u = (c1 // d) * r + c2 // d
    if u % (N // d):
        return False
    return all(u % (N // dp) for dp in divisors(d) if dp < d)


def enumerate_Y(c1: int, c2: int, n: int) -> list[Residue]:
    """Residues r mod |n| with (c1/d) r + c2/d = 0 mod n/d but not mod n/d' for d' | d, d' < d."""
    _check_moduli(c1, c2)
    if n == 0:
        raise ValueError("n = 0 has no r-parametrization; use zero_n_classify")
    d = math.gcd(c1, c2)
    if n % d:
        raise DNotDividesN(f"gcd({c1}, {c2}) = {d} does not divide {n}")
    N = abs(n)
    return [Residue(r, N) for r in range(N) if _y_member(c1, c2, n, d, r)]


def to_r(c1: int, c2: int, n: int, pair: PairClass) -> tuple[Residue, Residue]:
    """The residues (r, rbar) mod |n| attached to a class of X(c1, c2, n)."""
    N = abs(n)
    x, y = int(pair.x), int(pair.y)
    if (c2 * x + c1 * y - n) % (c1 * c2):
        raise MismatchedClasses("pair is not a class of X(c1, c2, n)")
    xb = int(mod_inverse(x, c1))
    yb = int(mod_inverse(y, c2))
    # n xbar = c2 (mod c1) since n = c2 x (mod c1)
    r1 = (n * xb - c2) // c1
    r2 = (n * yb - c1) // c2
    return Residue(r1, N), Residue(r2, N)


def from_r(c1: int, c2: int, n: int, r: int) -> PairClass:
    """Inverse of :func:`to_r` using xbar = (c2 + c1 r)/n and ybar = (c1 + c2 rbar)/n."""
    N = abs(n)
    v = c2 + c1 * r
    if v % n:
        raise MismatchedClasses("r does not satisfy c1 r + c2 = 0 mod n")
    rb = int(mod_inverse(r, N))
    w = c1 + c2 * rb
    xb, yb = (v // n) % c1, (w // n) % c2
    try:
        return _pair(int(mod_inverse(xb, c1)), c1, int(mod_inverse(yb, c2)), c2)
    except ValueError as exc:
        raise MismatchedClasses(f"r = {r} does not give unit classes") from exc


@dataclass(frozen=True)
class BijectionReport:
    c1: int
    c2: int
    n: int
    size_X: int
    size_Y: int
    size_X_brute: int
    bijective: bool
    inverse_exact: bool
    rbar_consistent: bool

    @property
    def passed(self) -> bool:
        return (self.bijective and self.inverse_exact and self.rbar_consistent
                and self.size_X == self.size_X_brute)


def bijection_check(c1: int, c2: int, n: int) -> BijectionReport:
    """Check X(c1, c2, n) <-> Y(c1, c2, n) for n != 0 exhaustively."""
    X = enumerate_X(c1, c2, n)
    Y = enumerate_Y(c1, c2, n)
    nb = len(enumerate_X_brute(c1, c2, n))
    N = abs(n)
    images = []
    inverse_ok = rbar_ok = True
    for pair in X:
        r1, r2 = to_r(c1, c2, n, pair)
        images.append(int(r1))
        if (int(r1) * int(r2) - 1) % N:
            rbar_ok = False
        try:
            back = from_r(c1, c2, n, int(r1))
        except MismatchedClasses:
            inverse_ok = False
            continue
        if back != pair:
            inverse_ok = False
    ys = sorted(int(r) for r in Y)
    bij = sorted(images) == ys and len(set(images)) == len(images)
    return BijectionReport(c1, c2, n, len(X), len(Y), nb, bij, inverse_ok, rbar_ok)


@dataclass
class BijectionScan:
    triples: int = 0
    failures: int = 0
    brute_mismatches: int = 0
    total_classes: int = 0
    failed: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.failures == 0 and self.brute_mismatches == 0 and self.triples > 0


def bijection_scan(c_max: int, n_max: int, phase_pairs: Sequence[tuple[int, int]] = ((1, 1),),
                   brute: bool = True, c1_values: Optional[Sequence[int]] = None) -> BijectionScan:
    """Kernel-backed scan over c1, c2 <= c_max, 0 < |n| <= n_max with gcd(c1, c2) | n.

    Each triple checks |X| = |Y|, injectivity of the map to Y, the inverse
    formulas, r rbar = 1 and the phase identity (integer arithmetic on the
    common denominator n c1 c2) for every ``(l, l')`` in ``phase_pairs``.
    ``c1_values`` restricts the scan to some rows.
    """
    ls = np.array([p[0] for p in phase_pairs], dtype=np.int64)
    lps = np.array([p[1] for p in phase_pairs], dtype=np.int64)
    out = BijectionScan()
    for c1 in (c1_values if c1_values is not None else range(1, c_max + 1)):
        for c2 in range(1, c_max + 1):
            d = math.gcd(c1, c2)
            for n in range(-n_max, n_max + 1):
                if n == 0 or n % d:
                    continue
                nX, nY, bad = kernels.bijection_triple(c1, c2, n, ls, lps)
                out.triples += 1
                out.total_classes += int(nX)
                if bad or nX != nY:
                    out.failures += 1
                    out.failed.append((c1, c2, n))
                if brute and kernels.x_count_brute(c1, c2, n) != nX:
                    out.brute_mismatches += 1
                    out.failed.append((c1, c2, n, "brute"))
    return out


def zero_n_classify(c1: int, c2: int) -> list[PairClass]:
    """Classes with c2 x + c1 y = 0 mod c1 c2: empty unless c1 = c2, then y = -x."""
    return enumerate_X(c1, c2, 0)


def zero_n_check(c: int) -> bool:
    """For c1 = c2 = c the n = 0 classes are exactly (x, -x) over units x."""
    expected = [_pair(x, c, -x, c) for x in range(c) if math.gcd(x, c) == 1]
    return sorted(zero_n_classify(c, c)) == sorted(expected)


def _frac_mod1(f: Fraction) -> Fraction:
    return f - math.floor(f)


def phase_identity_check(c1: int, c2: int, n: int, l: int, lp: int,
                         pair: PairClass, r: Optional[int] = None) -> Fraction:
    """Exact residual (mod 1) of

        l xbar/c1 + l' ybar/c2 = (l r + l' rbar)/n + (l c2^2 + l' c1^2)/(n c1 c2).

    Returns Fraction(0) when the identity holds.
    """
    r1, r2 = to_r(c1, c2, n, pair)
    if r is not None and (r - int(r1)) % abs(n):
        raise MismatchedClasses("r is not the image of the pair")
    xb = int(mod_inverse(int(pair.x), c1))
    yb = int(mod_inverse(int(pair.y), c2))
    lhs = Fraction(l * xb, c1) + Fraction(lp * yb, c2)
    rhs = Fraction(l * int(r1) + lp * int(r2), n) + Fraction(l * c2 * c2 + lp * c1 * c1, n * c1 * c2)
    return _frac_mod1(lhs - rhs)


# -- reordering of the weighted double sum ------------------------------------

@dataclass(frozen=True)
class ReindexCaps:
    c1_cap: int
    c2_cap: int
    n_cap: int


class ProductKernel:
    """K(c1, c2, n) = V(c1) W(c2) Phi(n) e(theta n) / (c1 c2) with compactly supported factors."""

    def __init__(self, V, W, Phi, theta: float = 0.0):
        self.V, self.W, self.Phi, self.theta = V, W, Phi, theta

    def __call__(self, c1, c2, n):
        c1 = np.asarray(c1, dtype=float)
        c2 = np.asarray(c2, dtype=float)
        n = np.asarray(n, dtype=float)
        return (self.V(c1) * self.W(c2) * self.Phi(n) * np.exp(2j * np.pi * self.theta * n)
                / (c1 * c2))

    @property
    def support(self) -> ReindexCaps:
        return ReindexCaps(int(math.floor(self.V.support[1])), int(math.floor(self.W.support[1])),
                           int(math.floor(max(abs(self.Phi.support[0]), abs(self.Phi.support[1])))))


@dataclass(frozen=True)
class ReindexReport:
    caps: ReindexCaps
    source: complex
    source_zero: complex
    zero_branch: complex
    target: complex
    residual: float
    boundary_max: float
    terms_source: int
    terms_target: int
    literal_residual: float

    @property
    def passed(self) -> bool:
        return self.residual < 1e-9 and self.boundary_max == 0.0


def _boundary_audit(kernel, caps: ReindexCaps, p: int, q: int) -> float:
    """Largest |K| on the shell just outside the caps (must vanish)."""
    C1, C2, N = caps.c1_cap, caps.c2_cap, caps.n_cap
    c1s = np.arange(1, 2 * C1 + 2)
    c2s = np.arange(1, 2 * C2 + 2)
    ns = np.arange(-2 * N - 1, 2 * N + 2)
    worst = 0.0
    # beyond each cap, with the other coordinates ranging over their extended ranges
    for a, b, c in (
        (np.arange(C1 + 1, 2 * C1 + 2), c2s, ns),
        (c1s, np.arange(C2 + 1, 2 * C2 + 2), ns),
        (c1s, c2s, np.concatenate([np.arange(-2 * N - 1, -N), np.arange(N + 1, 2 * N + 2)])),
    ):
        A, B, Cn = np.meshgrid(a, b, c, indexing="ij")
        worst = max(worst, float(np.max(np.abs(kernel(A, B, Cn)))))
    return worst


def reindex_sum_check(chi: DirichletCharacter, psi: DirichletCharacter, caps: ReindexCaps,
                      kernel: Callable, l: int = 1, lp: int = 1) -> ReindexReport:
    """Compare the (c1, c2, x, y, k) ordering with the (n, r, d, c1, lambda) ordering.

    Source: sum over c1 = 0 (p), c2 = 0 (q), units x mod c1, y mod c2 and all
    n = c2 x + c1 y (mod c1 c2) of chi(xbar) psi(ybar) e(l xbar/c1 + l' ybar/c2) K(c1, c2, n).

    Target, n != 0: with d | n, c1 = d a, c2 = d b, gcd(a, n/d) = 1 and
    b = lambda n/d - a r, gcd(lambda, a d) = 1, the class has xbar = lambda and
    ybar = d (a + b rbar)/n, so the summand is
    chi(lambda) psi(ybar) e((l r + l' rbar)/n) e(l c2/(n c1) + l' c1/(n c2)) K(c1, c2, n).
    Target, n = 0: c1 = c2 = c, y = -x.
    """
    p, q = chi.modulus, psi.modulus
    C1, C2, N = caps.c1_cap, caps.c2_cap, caps.n_cap
    boundary = _boundary_audit(kernel, caps, p, q)
    if boundary != 0.0:
        raise TruncationMismatch(f"kernel does not vanish outside caps (max {boundary:.3e})")

    ns_all = np.arange(-N, N + 1)
    # -- source ordering
    src = 0j
    src_zero = 0j
    src_lit = 0j
    terms_src = 0
    for c1 in range(p, C1 + 1, p):
        x = np.arange(c1)
        x = x[np.gcd(x, c1) == 1]
        xb = np.array([pow(int(v), -1, c1) if c1 > 1 else 0 for v in x])
        fx = chi.values_at(xb) * np.exp(2j * np.pi * l * xb / c1)
        for c2 in range(q, C2 + 1, q):
            M = c1 * c2
            kn = kernel(np.full(ns_all.shape, c1), np.full(ns_all.shape, c2), ns_all)
            if not np.any(kn):
                continue
            per_res = np.zeros(M, dtype=complex)
            np.add.at(per_res, ns_all % M, kn)
            y = np.arange(c2)
            y = y[np.gcd(y, c2) == 1]
            yb = np.array([pow(int(v), -1, c2) if c2 > 1 else 0 for v in y])
            fy = psi.values_at(yb) * np.exp(2j * np.pi * lp * yb / c2)
            res = (c2 * x[:, None] + c1 * y[None, :]) % M
            block = np.outer(fx, fy) * per_res[res]
            total = complex(block.sum())
            src += total
            terms_src += block.size
            if c1 == c2:
                k0 = kn[N]
                zero = complex(np.sum(np.outer(fx, fy) * (res == 0))) * k0
                src_zero += zero
            if c2 % p and c1 % q:
                lit = total
                if c1 == c2:
                    lit -= complex(np.sum(np.outer(fx, fy) * (res == 0))) * kn[N]
                src_lit += lit

    # -- n = 0 branch: c1 = c2 = c divisible by p and q, y = -x
    zero_branch = 0j
    step = math.lcm(p, q)
    for c in range(step, min(C1, C2) + 1, step):
        k0 = complex(kernel(np.array([c]), np.array([c]), np.array([0]))[0])
        if k0 == 0:
            continue
        x = np.arange(c)
        x = x[np.gcd(x, c) == 1]
        xb = np.array([pow(int(v), -1, c) for v in x])
        zero_branch += complex(np.sum(chi.values_at(xb) * psi.values_at(-xb)
                                      * np.exp(2j * np.pi * (l - lp) * xb / c))) * k0

    # -- (n, r, d, a, lambda) ordering for n != 0
    tgt = 0j
    tgt_lit = 0j
    terms_tgt = 0
    for n in range(-N, N + 1):
        if n == 0:
            continue
        Nn = abs(n)
        rs = [r for r in range(Nn) if math.gcd(r, Nn) == 1]
        rbs = [pow(r, -1, Nn) if Nn > 1 else 0 for r in rs]
        for d in divisors(Nn):
            nd = n // d
            B = C2 // d
            if B < 1:
                continue
            for a in range(1, C1 // d + 1):
                c1 = d * a
                if c1 % p or math.gcd(a, Nn // d) != 1:
                    continue
                for r, rb in zip(rs, rbs):
                    lo, hi = 1 + a * r, B + a * r
                    if nd > 0:
                        lam_lo, lam_hi = -((-lo) // nd), hi // nd
                    else:
                        lam_lo, lam_hi = -((-hi) // nd), lo // nd
                    for lam in range(lam_lo, lam_hi + 1):
                        if math.gcd(lam, a * d) != 1:
                            continue
                        b = lam * nd - a * r
                        c2 = d * b
                        if c2 % q:
                            continue
                        kval = complex(kernel(np.array([c1]), np.array([c2]), np.array([n]))[0])
                        terms_tgt += 1
                        if kval == 0:
                            continue
                        yb = (d * (a + b * rb)) // n
                        ph = (Fraction(l * r + lp * rb, n) + Fraction(l * c2, n * c1)
                              + Fraction(lp * c1, n * c2))
                        ph -= math.floor(ph)
                        e = complex(np.exp(2j * np.pi * float(ph)))
                        tgt += chi(lam) * psi(yb) * e * kval
                        tgt_lit += (chi(c2) * psi(c1) * (chi(n) * psi(n)).conjugate()) * e * kval
    residual = abs(src - (zero_branch + tgt))
    return ReindexReport(caps, src, src_zero, zero_branch, tgt, residual, boundary,
                         terms_src, terms_tgt, abs(src_lit - tgt_lit))
