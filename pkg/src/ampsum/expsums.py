"""Twisted Kloosterman sums and the Gauss-sum reduction of the diagonal sum."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np

from . import kernels
from .arith import (
    DirichletCharacter,
    _unit_roots,
    euler_phi,
    gauss_sum,
    mod_inverse,
    principal_character,
    ramanujan_f,
)
from .errors import BadTwist, NotCoprime


@dataclass(frozen=True)
class ExpSumValue:
    value: complex
    modulus: int
    term_count: int


def roots_of_unity(c: int) -> np.ndarray:
    """``e(k/c)`` for ``0 <= k < c``."""
    return _unit_roots(c)


@lru_cache(maxsize=512)
def _inverse_table(c: int) -> np.ndarray:
    inv = np.zeros(c, dtype=np.int64)
    for x in range(c):
        if math.gcd(x, c) == 1:
            inv[x] = pow(x, -1, c) if c > 1 else 0
    return inv


def kloosterman(chi: Optional[DirichletCharacter], l: int, n: int, c: int) -> ExpSumValue:
    """S_chi(l, n; c) = sum over x mod c, (x, c) = 1, of chi(x) e((l x + n xbar)/c).

    ``chi`` may be None for the untwisted sum; its modulus must divide ``c``.
    """
    if c <= 0:
        raise ValueError("modulus must be positive")
    if chi is None:
        chi = principal_character(1)
    if c % chi.modulus:
        raise BadTwist(f"character modulus {chi.modulus} does not divide {c}")
    val = kernels.kloosterman_sum(chi.value_table, chi.modulus, l, n, c, roots_of_unity(c))
    return ExpSumValue(complex(val), c, euler_phi(c))


def kloosterman_crt_residual(chi1: DirichletCharacter, chi2: DirichletCharacter, l: int, n: int) -> float:
    """Twisted multiplicativity for coprime moduli c1, c2 (the character moduli):

    S_{chi1 chi2}(l, n; c1 c2) = chi1(c2) chi2(c1) S_chi1(l, n c2bar^2; c1) S_chi2(l, n c1bar^2; c2).
    """
    c1, c2 = chi1.modulus, chi2.modulus
    if math.gcd(c1, c2) != 1:
        raise NotCoprime(f"moduli {c1} and {c2} are not coprime")
    whole = kloosterman(chi1 * chi2, l, n, c1 * c2).value
    i2 = int(mod_inverse(c2, c1))
    i1 = int(mod_inverse(c1, c2))
    a = kloosterman(chi1, l, n * i2 * i2, c1).value
    b = kloosterman(chi2, l, n * i1 * i1, c2).value
    return abs(whole - chi1(c2) * chi2(c1) * a * b)


@dataclass(frozen=True)
class WeilCheck:
    value: complex
    bound: float
    holds: bool
    ramanujan_case: bool


def weil_check(l: int, n: int, p: int) -> WeilCheck:
    """|S(l, n; p)| <= 2 sqrt(p) for prime p not dividing both l and n."""
    if l % p == 0 and n % p == 0:
        raise ValueError("need p not dividing both l and n")
    v = kloosterman(None, l, n, p).value
    bound = 2 * math.sqrt(p)
    return WeilCheck(v, bound, abs(v) <= bound + 1e-9, (l * n) % p == 0)


@dataclass(frozen=True)
class GaussReduction:
    """Residuals of the reduction of the diagonal character sum.

    ``crt_residual`` compares the full sum with the product of the three local
    sums; ``closed_residual`` with the Gauss-sum closed form (only defined when
    the argument is coprime to both character moduli).  The ``literal_*``
    fields evaluate the variants without the psi(-1) sign and with conjugated
    character factors at qr and pr; they are reported, not asserted.
    """

    value: complex
    crt_product: complex
    crt_residual: float
    closed_form: Optional[complex]
    closed_residual: Optional[float]
    vanishes: Optional[bool]
    literal_crt_residual: float
    literal_closed_residual: Optional[float]


def gauss_reduction_check(chi: DirichletCharacter, psi: DirichletCharacter, r: int, arg: int) -> GaussReduction:
    """Evaluate sum over x mod pqr, (x, pqr) = 1, of chi(xbar) psi(-xbar) e(xbar arg / (pqr))."""
    p, q = chi.modulus, psi.modulus
    if r <= 0:
        raise ValueError("r must be positive")
    if math.gcd(p, q) != 1 or math.gcd(p, r) != 1 or math.gcd(q, r) != 1:
        raise NotCoprime(f"moduli {p}, {q}, {r} are not pairwise coprime")
    c = p * q * r
    inv = _inverse_table(c)
    x = np.arange(c)
    units = x[np.gcd(x, c) == 1]
    xb = inv[units]
    e = roots_of_unity(c)
    full = np.sum(chi.values_at(xb) * psi.values_at(-xb) * e[(xb * arg) % c])

    def local(mod, other, twist):
        inv_m = _inverse_table(mod)
        ys = np.arange(mod)
        ys = ys[np.gcd(ys, mod) == 1]
        yb = inv_m[ys]
        o = int(mod_inverse(other, mod))
        phase = (o * yb % mod) * arg % mod
        return np.sum(twist(yb) * roots_of_unity(mod)[phase])

    a = local(p, q * r, chi.values_at)
    b = local(q, p * r, lambda yb: psi.values_at(-yb))
    b_lit = local(q, p * r, psi.values_at)
    cr = local(r, p * q, lambda yb: np.ones(yb.shape))
    crt = complex(a * b * cr)
    crt_lit = complex(a * b_lit * cr)

    closed = closed_res = lit_res = None
    vanishes = None
    if math.gcd(arg, p * q) == 1:
        tt = gauss_sum(chi) * gauss_sum(psi) * ramanujan_f(r, arg)
        chipsi = (chi(arg) * psi(arg)).conjugate()
        closed = psi(-1) * chi(q * r) * psi(p * r) * chipsi * tt
        lit = chi(q * r).conjugate() * psi(p * r).conjugate() * chipsi * tt
        closed_res = abs(full - closed)
        lit_res = abs(full - lit)
    elif not chi.is_principal and not psi.is_principal:
        vanishes = abs(full) < 1e-10
    return GaussReduction(complex(full), crt, abs(full - crt), closed, closed_res, vanishes,
                          abs(full - crt_lit), lit_res)
