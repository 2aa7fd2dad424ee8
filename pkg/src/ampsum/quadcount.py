"""Root counts of quadratic congruences and the Euler products built from them.

``nu(n; m, a, b) = #{x mod n : a x^2 - m x + b = 0 mod n}``.  For an odd prime
p not dividing ``a * Delta`` with ``Delta = m^2 - 4ab`` the count is
``1 + (Delta/p)`` at every power of p.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from . import kernels
from .arith import DirichletCharacter, factorize, jacobi, mobius_sieve, primes_upto
from .errors import Divergent


class NuCount(int):
    """Integer root count tagged with how it was obtained ('formula', 'brute' or 'mixed')."""

    provenance: str

    def __new__(cls, value: int, provenance: str):
        obj = super().__new__(cls, value)
        obj.provenance = provenance
        return obj

    def __repr__(self) -> str:
        return f"NuCount({int(self)}, {self.provenance!r})"


def nu_brute(n: int, m: int, a: int, b: int) -> int:
    if n <= 0:
        raise ValueError("modulus must be positive")
    return int(kernels.nu_counts(n, [m], [a], [b])[0])


def discriminant(m: int, a: int, b: int) -> int:
    return m * m - 4 * a * b


def nu_fast(n: int, m: int, a: int, b: int) -> NuCount:
    """Root count through the Legendre-symbol formula, prime power by prime power.

    Prime powers dividing ``2a`` or ``Delta`` fall back to exhaustive counting.
    """
    if n <= 0:
        raise ValueError("modulus must be positive")
    if n == 1:
        return NuCount(1, "formula")
    if math.gcd(2 * a, n) != 1:
        return NuCount(nu_brute(n, m, a, b), "brute")
    delta = discriminant(m, a, b)
    total = 1
    used = set()
    for p, k in factorize(n):
        s = jacobi(delta, p)
        if s == 0:
            total *= nu_brute(p**k, m, a, b)
            used.add("brute")
        else:
            total *= 1 + s
            used.add("formula")
        if total == 0:
            break
    prov = used.pop() if len(used) == 1 else "mixed"
    return NuCount(total, prov)


def nu_table(N: int, m: int, a: int, b: int) -> np.ndarray:
    """nu(n) for 0 <= n <= N (index 0 unused), extended multiplicatively from prime powers."""
    spf = np.zeros(N + 1, dtype=np.int64)
    for p in primes_upto(N)[::-1]:
        spf[p::p] = p
    out = np.zeros(N + 1, dtype=np.int64)
    out[1] = 1
    pp = {}
    for n in range(2, N + 1):
        p = int(spf[n])
        pk = p
        while n % (pk * p) == 0:
            pk *= p
        if pk not in pp:
            pp[pk] = int(nu_fast(pk, m, a, b))
        out[n] = pp[pk] * out[n // pk]
    return out


# -- local factor identity ------------------------------------------------------

@dataclass(frozen=True)
class LocalFactorReport:
    closed_form: complex
    series: complex
    residual: float
    exact: Optional[bool]


def local_factor_check(p: int, psi_val, delta_sym: int, r, terms: int = 200) -> LocalFactorReport:
    """1 + sum_{k>=1} nu psi^k p^{-kr} = (1 + psi (Delta/p) p^{-r}) / (1 - psi p^{-r}), nu = 1 + (Delta/p).

    With rational ``psi_val`` and integer ``r`` the identity is also checked in
    exact rational arithmetic.
    """
    if delta_sym not in (-1, 0, 1):
        raise ValueError("delta_sym must be a Legendre symbol value")
    if complex(r).real <= 0:
        raise Divergent("local factor series diverges for Re(r) <= 0")
    nu = 1 + delta_sym
    z = complex(psi_val) * p ** (-complex(r))
    if abs(z) >= 1:
        raise Divergent("|psi p^-r| >= 1")
    closed = (1 + delta_sym * z) / (1 - z)
    series = 1 + sum(nu * z**k for k in range(1, terms + 1))
    exact = None
    if isinstance(r, int) and isinstance(psi_val, (int, Fraction)) and psi_val in (-1, 0, 1):
        zq = Fraction(psi_val) / Fraction(p) ** r
        # geometric series summed exactly
        exact_series = 1 + nu * zq / (1 - zq)
        exact = exact_series == (1 + delta_sym * zq) / (1 - zq)
    return LocalFactorReport(complex(closed), complex(series), abs(closed - series), exact)


def local_factor_exact(p: int, psi_val: int, delta_sym: int, r: int) -> Fraction:
    """Closed form of the local factor as an exact rational."""
    zq = Fraction(psi_val) / Fraction(p) ** r
    return (1 + delta_sym * zq) / (1 - zq)


# -- Euler products ---------------------------------------------------------------

KINDS = ("e_sum", "n_sum", "b_sum", "ad_cancel")


@dataclass
class EulerReport:
    kind: str
    exponent: complex
    series: complex
    product: complex
    residual: float
    s_factors: dict = field(default_factory=dict)
    s_ratio: Optional[complex] = None
    literal_deviation: Optional[float] = None
    failing_primes: list = field(default_factory=list)
    checked_primes: int = 0

    @property
    def passed(self) -> bool:
        if self.kind == "ad_cancel":
            return not self.failing_primes
        return self.residual < 1e-8


def _exponent(kind: str, s1: complex, s2: complex, w: complex) -> complex:
    if kind in ("e_sum", "b_sum"):
        return s1 + 2 * s2 + 1 + w
    if kind == "n_sum":
        return s2 + 1 + w
    return s1 + s2 + 1 + w


def _char_val(chi: Optional[DirichletCharacter], n: int) -> complex:
    return 1.0 if chi is None else chi(n)


def _coefficient(kind: str, mu: int, nu: int, chi, psi, n: int) -> complex:
    if kind == "e_sum":
        return mu * _char_val(chi, n) * nu
    if kind == "b_sum":
        return mu * mu * _char_val(chi, n) * nu
    if kind == "n_sum":
        return _char_val(psi, n).conjugate() * nu
    raise ValueError(kind)


def bad_primes(quad: tuple[int, int, int], chi=None, psi=None) -> set[int]:
    """Primes where the closed local factors are not asserted: p | 2 q Delta a."""
    m, a, b = quad
    delta = discriminant(m, a, b)
    out = {2}
    for x in (delta, a, chi.modulus if chi else 1, psi.modulus if psi else 1):
        if x:
            out.update(p for p, _ in factorize(x))
    return out


def _closed_local(kind: str, p: int, z: complex, leg: int, chi_p: complex, psi_p: complex) -> complex:
    nu = 1 + leg
    if kind == "e_sum":
        return 1 - chi_p * nu * z
    if kind == "b_sum":
        u = chi_p * nu * z
        return (1 - u * u) / (1 - u) if u != 1 else 1 + u
    if kind == "n_sum":
        y = psi_p.conjugate() * z
        return (1 + leg * y) / (1 - y)
    raise ValueError(kind)


def _literal_local(kind: str, p: int, s1, s2, w, leg: int, chi_p: complex, psi_p: complex) -> complex:
    if kind == "e_sum":
        zz = p ** (-(s1 + 2 * s2 + w))
        return (1 - chi_p * zz) / (1 + chi_p * leg * zz)
    if kind == "b_sum":
        nu = 1 + leg
        num = 1 - chi_p**2 * nu**2 * p ** (-(2 * s1 + 4 * s2 + 1 + 2 * w))
        return num / (1 - chi_p * nu * p ** (-(s1 + 2 * s2 + 1 + w)))
    y = psi_p.conjugate() * p ** (-(s2 + 1 + w))
    return (1 + leg * y) / (1 - y)


def euler_product_eval(kind: str, s: tuple, quad: tuple[int, int, int],
                       chi: Optional[DirichletCharacter] = None,
                       psi: Optional[DirichletCharacter] = None,
                       trunc: int = 20000, prime_cap: int = 1000) -> EulerReport:
    """Compare a truncated Dirichlet series with its Euler product.

    ``s = (s1, s2, w)``; ``quad = (m, a, b)`` fixes the root counts.  Local
    factors at primes of :func:`bad_primes` are computed numerically from the
    root counts.  For ``ad_cancel`` the product of the a- and d-local factors is
    compared with 1 exactly at every good prime up to ``prime_cap``.
    """
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}; expected one of {KINDS}")
    s1, s2, w = (complex(v) for v in s)
    sigma = _exponent(kind, s1, s2, w)
    m, a, b = quad
    delta = discriminant(m, a, b)
    bad = bad_primes(quad, chi, psi)
    if kind == "ad_cancel":
        return _ad_cancel(sigma, quad, delta, bad, prime_cap)
    if sigma.real <= 1:
        raise Divergent("outside the region of absolute convergence")

    nu = nu_table(trunc, m, a, b)
    mu = mobius_sieve(trunc)
    ns = np.arange(1, trunc + 1)
    coef = np.array([_coefficient(kind, int(mu[n]), int(nu[n]), chi, psi, n) for n in range(1, trunc + 1)])
    series = complex(np.sum(coef * np.exp(-sigma * np.log(ns))))

    prod = 1 + 0j
    good_prod = 1 + 0j
    literal = 1 + 0j
    s_factors = {}
    for p in primes_upto(trunc):
        p = int(p)
        z = cmath.exp(-sigma * math.log(p))
        if p in bad:
            f = 0j
            pk, k = 1, 0
            while True:
                c = _coefficient(kind, (1, -1, 0)[min(k, 2)], int(nu_fast(pk, m, a, b)), chi, psi, pk)
                f += c * z**k
                if k > 0 and abs(z**k) < 1e-20:
                    break
                # root counts at p^k beyond 10^6 are not brute-forced; those terms are below p^(-k sigma) 2 p^(k/2)
                if pk * p > 10**6:
                    break
                if kind != "n_sum" and k >= 1:
                    break
                pk *= p
                k += 1
            s_factors[p] = complex(f)
            prod *= f
        else:
            leg = jacobi(delta, p)
            f = _closed_local(kind, p, z, leg, _char_val(chi, p), _char_val(psi, p))
            prod *= f
            good_prod *= f
            literal *= _literal_local(kind, p, s1, s2, w, leg, _char_val(chi, p), _char_val(psi, p))
    return EulerReport(kind, sigma, series, complex(prod), abs(series - prod), s_factors,
                       series / good_prod if good_prod else None, abs(good_prod - literal))


def _ad_cancel(sigma: complex, quad, delta: int, bad: set, prime_cap: int) -> EulerReport:
    m, a, b = quad
    failing = []
    checked = 0
    prod = 1 + 0j
    for p in primes_upto(prime_cap):
        p = int(p)
        if p in bad:
            continue
        checked += 1
        nu = int(nu_fast(p, m, a, b))
        # a-local: 1 - nu z;  d-local: 1 + nu z/(1 - z)  (nu(p^k) = nu(p));  compare
        # (1 - nu z)(1 + (nu - 1) z) with (1 - z) coefficientwise
        lhs = [1, (nu - 1) - nu, -nu * (nu - 1)]
        if lhs != [1, -1, 0]:
            failing.append(p)
        z = cmath.exp(-sigma * math.log(p))
        prod *= (1 - nu * z) * (1 + nu * z / (1 - z))
    return EulerReport("ad_cancel", sigma, 1 + 0j, complex(prod), abs(prod - 1),
                       failing_primes=failing, checked_primes=checked)


def ad_cancel_unweighted(prime_cap: int = 1000) -> bool:
    """Without root-count weights the a- and d-factors are 1 - z and 1/(1 - z): exact cancellation."""
    for p in primes_upto(prime_cap):
        zq = Fraction(1, int(p)) ** 2
        if (1 - zq) * (1 / (1 - zq)) != 1:
            return False
    return True
