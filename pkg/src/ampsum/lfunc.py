"""Dirichlet L-functions, the C(s1, s2, w) ratio, and convexity scans.

Two independent evaluation methods:

* ``smoothed_sum``: the periodic block sum sum_{n <= Nq} chi(n) n^-s closed
  off by Euler-Maclaurin tails of the Hurwitz zeta functions zeta(s, N + a/q).
  Valid for every s != 1; the error bound is the standard remainder estimate.
* ``functional_equation``: the theta-function (Gaussian-smoothed) approximate
  functional equation with incomplete Gamma weights, primitive chi only.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional

import mpmath
import numpy as np

from .arith import (
    DirichletCharacter,
    _is_primitive_root,
    char_group,
    factorize,
    kronecker_character,
    primes_upto,
    principal_character,
    product,
    root_number,
)
from .errors import NotPrimitive, PoleAt1, PoleHit
from .quadcount import discriminant, euler_product_eval

METHODS = ("smoothed_sum", "functional_equation")
SMOOTHED_MIN_RE = 0.25   # 1 - delta_safety
EM_TERMS = 14


@dataclass(frozen=True)
class LValue:
    s: complex
    character_id: tuple[int, int]
    value: complex
    error_bound: float
    method: str


@lru_cache(maxsize=1)
def _bernoulli_even(M: int = 40) -> tuple[float, ...]:
    """B_2, B_4, ..., B_2M from the standard recurrence in exact rationals."""
    B = [Fraction(1)]
    for n in range(1, 2 * M + 1):
        B.append(-sum(math.comb(n + 1, k) * B[k] for k in range(n)) / (n + 1))
    return tuple(float(B[2 * j]) for j in range(1, M + 1))


def _em_tail(s: complex, x: np.ndarray, M: int = EM_TERMS):
    """sum_{k >= 0} (x + k)^-s by Euler-Maclaurin, minus the x-independent pole part 1/(s - 1).

    The pole part cancels in every sum against a nonprincipal character, so it
    is kept apart; at s = 1 the remaining term is -log x.  Returns the tail and a
    remainder bound per entry.
    """
    logx = np.log(x)
    xs = np.exp(-s * logx)
    if s == 1:
        head = -logx
    else:
        head = np.expm1((1 - s) * logx) / (s - 1)
    total = head + xs / 2
    B = _bernoulli_even()
    poch = s  # s (s+1) ... (s + 2j - 2)
    fact = 2.0
    term = None
    for j in range(1, M + 2):
        term = B[j - 1] / fact * poch * xs / x ** (2 * j - 1)
        if j <= M:
            total = total + term
        poch = poch * (s + 2 * j - 1) * (s + 2 * j)
        fact *= (2 * j + 1) * (2 * j + 2)
    sigma = s.real
    bound = np.abs(term) * abs(s + 2 * M + 1) / max(sigma + 2 * M + 1, 1e-3)
    return total, bound


def _block_values(q: int, s: complex, N: Optional[int] = None):
    """Z_a = q^-s [sum_{k < N} (k + a/q)^-s + tail(N + a/q)] for 1 <= a <= q, with error bounds.

    sum_a chi(a) Z_a = L(s, chi) for every nonprincipal chi mod q; for the
    principal character add ``pole * phi(q)`` with ``pole = q^-s / (s - 1)``.
    """
    if N is None:
        N = 10 + int(math.ceil(abs(s)))
    a = np.arange(1, q + 1) / q
    k = np.arange(N)
    grid = k[None, :] + a[:, None]
    head = np.exp(-s * np.log(grid)).sum(axis=1)
    tail, bound = _em_tail(s, N + a)
    qs = cmath.exp(-s * math.log(q))
    Z = qs * (head + tail)
    err = abs(qs) * (bound + 4e-16 * np.abs(head) * math.sqrt(N))
    pole = qs / (s - 1) if s != 1 else math.inf
    return Z, err, pole


def _smoothed(chi: DirichletCharacter, s: complex) -> LValue:
    q = chi.modulus
    if s.real < SMOOTHED_MIN_RE:
        raise ValueError(f"smoothed_sum needs Re(s) >= {SMOOTHED_MIN_RE}")
    Z, err, pole = _block_values(q, s)
    vals = chi.values_at(np.arange(1, q + 1))
    value = complex(np.sum(vals * Z))
    if chi.is_principal:
        value += pole * int(np.count_nonzero(vals))
    bound = float(np.sum(np.abs(vals) * err)) + 1e-15 * float(np.sum(np.abs(vals * Z)))
    return LValue(s, chi.label, value, bound, "smoothed_sum")


def _fe(chi: DirichletCharacter, s: complex, dps: int = 20) -> LValue:
    if not chi.is_primitive:
        raise NotPrimitive(f"character {chi.label} is not primitive (conductor {chi.conductor})")
    q = chi.modulus
    t = abs(s.imag)
    n_max = int(math.ceil(10 * math.sqrt(q * (1 + t))))
    with mpmath.workdps(dps):
        sm = mpmath.mpc(s.real, s.imag)
        a = chi.parity
        eps = mpmath.mpc(root_number(chi)) if q > 1 else mpmath.mpf(1)
        z1 = (sm + a) / 2
        z2 = (1 - sm + a) / 2
        scale = mpmath.pi / q
        total = mpmath.mpc(0)
        biggest = mpmath.mpf(0)
        omitted = mpmath.mpf(0)
        n = 1
        while n <= n_max:
            x = scale * n * n
            block = mpmath.mpc(0)
            c = complex(chi(n))
            if c != 0:
                t1 = c * mpmath.power(n, -sm) * mpmath.gammainc(z1, x)
                t2 = eps * c.conjugate() * mpmath.power(n, sm - 1) * mpmath.gammainc(z2, x) \
                    * mpmath.power(scale, (2 * sm - 1) / 2)
                block = t1 + t2
            biggest = max(biggest, abs(block))
            if x > 40 and abs(block) < mpmath.mpf(10) ** (-dps + 2) * max(biggest, 1):
                omitted = abs(block)
                break
            total += block
            n += 1
        # total = (pi/q)^{(s+a)/2} Lambda(s); the q = 1 pole terms complete it
        if q == 1:
            total += -mpmath.power(scale, z1) * (1 / sm + 1 / (1 - sm))
        L = total / mpmath.gamma(z1)
        err = 10 * float(omitted / abs(mpmath.gamma(z1))) \
            + float(biggest / abs(mpmath.gamma(z1))) * 10.0 ** (-dps + 3)
    return LValue(s, chi.label, complex(L), err, "functional_equation")


def dirichlet_L(chi: DirichletCharacter, s: complex, method: str = "smoothed_sum") -> LValue:
    """L(s, chi) by the named method, with an error bound."""
    s = complex(s)
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")
    if chi.is_principal and s == 1:
        raise PoleAt1("L(s, chi_0) has a pole at s = 1")
    if method == "smoothed_sum":
        return _smoothed(chi, s)
    return _fe(chi, s)


def zeta(s: complex) -> LValue:
    return dirichlet_L(principal_character(1), s)


@dataclass(frozen=True)
class ZetaRelation:
    value: complex
    expected: complex
    residual: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.residual <= self.tolerance


def zeta_relation_check(q: int, s: complex) -> ZetaRelation:
    """L(s, chi_0 mod q) against zeta(s) prod_{p | q} (1 - p^-s)."""
    s = complex(s)
    L = dirichlet_L(principal_character(q), s)
    z = zeta(s)
    fac = 1 + 0j
    for p, _ in factorize(q) if q > 1 else ():
        fac *= 1 - p ** (-s)
    expected = z.value * fac
    tol = 2 * (L.error_bound + z.error_bound * abs(fac)) + 1e-14 * abs(expected)
    return ZetaRelation(L.value, expected, abs(L.value - expected), tol)


@dataclass(frozen=True)
class ReflectionCheck:
    s: complex
    lhs: complex
    rhs: complex
    residual: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.residual <= self.tolerance


def reflection_check(chi: DirichletCharacter, s: complex) -> ReflectionCheck:
    """Lambda(s, chi) = epsilon(chi) Lambda(1 - s, conj chi) with both L-values from the block sum."""
    if not chi.is_primitive:
        raise NotPrimitive(f"character {chi.label} is not primitive")
    s = complex(s)
    q, a = chi.modulus, chi.parity
    L1 = dirichlet_L(chi, s)
    L2 = dirichlet_L(chi.conj(), 1 - s)
    g1 = mpmath.power(q / mpmath.pi, (s + a) / 2) * mpmath.gamma((s + a) / 2)
    g2 = mpmath.power(q / mpmath.pi, (1 - s + a) / 2) * mpmath.gamma((1 - s + a) / 2)
    lhs = complex(g1) * L1.value
    rhs = complex(root_number(chi)) * complex(g2) * L2.value
    tol = abs(complex(g1)) * L1.error_bound + abs(complex(g2)) * L2.error_bound + 1e-12 * abs(lhs)
    return ReflectionCheck(s, lhs, rhs, abs(lhs - rhs), tol)


# -- the C-factor ---------------------------------------------------------------

@dataclass(frozen=True)
class CFactorInput:
    """Arguments of C(s1, s2, w); ``quad = (m, a, b)`` fixes Delta = m^2 - 4ab and the root counts in B."""

    s1: complex
    s2: complex
    w: complex
    chi: DirichletCharacter
    psi: DirichletCharacter
    quad: tuple[int, int, int]

    @property
    def delta(self) -> int:
        return discriminant(*self.quad)


@dataclass(frozen=True)
class CFactor:
    value: complex
    error_bound: float
    factors: dict = field(default_factory=dict)   # name -> (value, error bound, exponent)


def _factor(name: str, chi: DirichletCharacter, s: complex):
    if chi.is_principal and abs(s - 1) < 1e-12:
        raise PoleHit(f"factor {name} hits the pole at s = 1")
    if s.real >= SMOOTHED_MIN_RE:
        L = dirichlet_L(chi, s)
    else:
        L = dirichlet_L(chi.primitive(), s, "functional_equation")
    return L


def c_factor(inp: CFactorInput, b_trunc: int = 4000) -> CFactor:
    """C = L(s2, chi) L(s1, psi) / L(s1+s2, chi psi)
         * L(s1+2s2+1+w, (Delta/.) chi) / L(s1+2s2+1+w, chi)
         * L(s2+1+w, conj psi) / L(s2+1+w, (Delta/.) conj psi) * B(s1+2s2+1+w).

    B is the b-sum Euler product of quadcount; the error bound propagates the
    L-value bounds to first order.
    """
    s1, s2, w = complex(inp.s1), complex(inp.s2), complex(inp.w)
    chi, psi = inp.chi, inp.psi
    kr = kronecker_character(inp.delta)
    psib = psi.conj()
    e_arg = s1 + 2 * s2 + 1 + w
    n_arg = s2 + 1 + w
    spec = [
        ("L(s2, chi)", chi, s2, 1),
        ("L(s1, psi)", psi, s1, 1),
        ("L(s1+s2, chi psi)", product(chi, psi), s1 + s2, -1),
        ("L(e, (D/.) chi)", product(kr, chi), e_arg, 1),
        ("L(e, chi)", chi, e_arg, -1),
        ("L(n, conj psi)", psib, n_arg, 1),
        ("L(n, (D/.) conj psi)", product(kr, psib), n_arg, -1),
    ]
    value = 1 + 0j
    rel = 0.0
    factors = {}
    for name, ch, arg, sign in spec:
        L = _factor(name, ch, arg)
        if sign < 0 and abs(L.value) <= L.error_bound:
            raise PoleHit(f"factor {name} in the denominator vanishes within its error bound")
        value *= L.value if sign > 0 else 1 / L.value
        rel += L.error_bound / max(abs(L.value) - L.error_bound, 1e-300)
        factors[name] = (L.value, L.error_bound, sign)
    if e_arg.real <= 1:
        raise PoleHit("B(s) needs Re(s1 + 2 s2 + 1 + w) > 1")
    B = euler_product_eval("b_sum", (s1, s2, w), inp.quad, chi=chi, psi=psi, trunc=b_trunc)
    tail = 2 * sum(float(p) ** (-e_arg.real) for p in range(b_trunc, 4 * b_trunc))
    b_err = B.residual + tail
    value *= B.product
    rel += b_err / abs(B.product)
    factors["B"] = (B.product, b_err, 1)
    return CFactor(complex(value), abs(value) * rel, factors)


# -- convexity scan ---------------------------------------------------------------

def primitive_root(p: int) -> int:
    g = 2
    while not _is_primitive_root(g, p, p):
        g += 1
    return g if p > 2 else 1


def prime_modulus_values(q: int, s: complex) -> np.ndarray:
    """L(s, chi) for all characters mod prime q at once, ordered by chi(g) = e(j/(q-1)).

    With Z_a the block values, L(s, chi_j) = sum_k e(jk/(q-1)) Z_{g^k}: one FFT.
    Entry 0 (the principal character) omits the pole part and is not L(s, chi_0).
    """
    Z, _, _ = _block_values(q, complex(s))
    g = primitive_root(q)
    order = q - 1
    pw = np.empty(order, dtype=np.int64)
    x = 1
    for k in range(order):
        pw[k] = x
        x = x * g % q
    seq = Z[pw - 1]
    return np.fft.ifft(seq) * order


@dataclass(frozen=True)
class ConvexityScan:
    moduli: tuple
    max_abs: tuple
    exponent: float
    t_grid: tuple
    threshold: float = 0.30

    @property
    def passed(self) -> bool:
        return self.exponent <= self.threshold


def convexity_scan(q_max: int, t_grid=(0.0, 0.5, 1.0, 1.5, 2.0), q_min: int = 3) -> ConvexityScan:
    """max over nonprincipal chi mod q and t in the grid of |L(1/2 + it, chi)|, prime q <= q_max.

    The exponent is the least-squares slope of log max against log q.
    """
    moduli, maxima = [], []
    for q in primes_upto(q_max):
        q = int(q)
        if q < q_min:
            continue
        best = 0.0
        for t in t_grid:
            vals = prime_modulus_values(q, complex(0.5, t))
            best = max(best, float(np.max(np.abs(vals[1:]))))
        moduli.append(q)
        maxima.append(best)
    if len(moduli) < 2:
        exponent = float("nan")
    else:
        exponent = float(np.polyfit(np.log(moduli), np.log(maxima), 1)[0])
    return ConvexityScan(tuple(moduli), tuple(maxima), exponent, tuple(t_grid))


def max_abs_critical(q: int, t_grid) -> float:
    """max |L(1/2 + it, chi)| over nonprincipal chi mod q (any q) by dirichlet_L."""
    best = 0.0
    for chi in char_group(q):
        if chi.is_principal:
            continue
        for t in t_grid:
            best = max(best, abs(dirichlet_L(chi, complex(0.5, t)).value))
    return best
