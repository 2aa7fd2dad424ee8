"""Bessel functions J_nu(x) of complex order for real x > 0.

Three regimes, each with its own truncation-error estimate:

* ``series``: the ascending power series, summed with compensated addition;
  the error estimate accounts for cancellation among large terms.
* ``hankel``: the large-argument expansion, valid for x >> |nu|^2.
* ``debye``: the uniform expansion for purely imaginary order nu = i mu,
  built from the Debye polynomials u_k.  It reduces to the Hankel expansion
  at mu = 0 and stays accurate when |mu| is comparable to or larger than x.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np
from scipy import special

from ..errors import RegimeGap

EPS = 2.220446049250313e-16
REGIMES = ("series", "hankel", "debye")


@dataclass(frozen=True)
class BesselValue:
    value: complex
    regime: str
    error: float


# -- ascending series ------------------------------------------------------------

def _series(nu: complex, x: float) -> BesselValue:
    half = math.log(x / 2)
    re, im = [], []
    biggest = 0.0
    k = 0
    while True:
        arg = k + nu + 1
        if arg.imag == 0 and arg.real <= 0 and arg.real == int(arg.real):
            term = 0j  # 1/Gamma has a zero here
        else:
            logt = (2 * k + nu) * half - math.lgamma(k + 1) - special.loggamma(arg)
            term = cmath.exp(logt) * (-1) ** k
        re.append(term.real)
        im.append(term.imag)
        biggest = max(biggest, abs(term))
        if k > x and abs(term) < EPS * biggest * 1e-3:
            break
        k += 1
        if k > 600:
            break
    val = complex(math.fsum(re), math.fsum(im))
    err = 4 * EPS * biggest * math.sqrt(k + 1) + abs(term)
    return BesselValue(val, "series", err)


# -- large-argument expansion ----------------------------------------------------

def _hankel_pq(nu: complex, x: float):
    """Asymptotic series P, Q of the large-argument expansion and the last term kept."""
    mu = 4 * nu * nu
    P = Q = 0j
    a = 1 + 0j
    prev = math.inf
    last = 0.0
    k = 0
    while True:
        t = a / x**k
        mag = abs(t)
        if k > 2 and mag > prev:
            break
        prev = last = mag
        if k % 4 == 0:
            P += t
        elif k % 4 == 1:
            Q += t
        elif k % 4 == 2:
            P -= t
        else:
            Q -= t
        if mag < EPS * 1e-2:
            break
        k += 1
        a = a * (mu - (2 * k - 1) ** 2) / (k * 8)
        if k > 200:
            break
    return P, Q, last


def _hankel(nu: complex, x: float) -> BesselValue:
    P, Q, last = _hankel_pq(nu, x)
    omega = x - nu * math.pi / 2 - math.pi / 4
    amp = math.sqrt(2 / (math.pi * x))
    c, s = cmath.cos(omega), cmath.sin(omega)
    val = amp * (c * P - s * Q)
    scale = amp * max(abs(c), abs(s))
    return BesselValue(val, "hankel", scale * last + 8 * EPS * abs(val))


# -- Debye expansion for imaginary order ----------------------------------------

@lru_cache(maxsize=1)
def _debye_polys(K: int = 14) -> tuple:
    """Coefficients of u_k(t)/t^k as exact fractions (lowest degree first)."""
    # u_{k+1}(t) = t^2 (1 - t^2) u_k'(t) / 2 + (1/8) int_0^t (1 - 5 s^2) u_k(s) ds
    polys = [[Fraction(1)]]
    for _ in range(K):
        u = polys[-1]
        n = len(u)
        out = [Fraction(0)] * (n + 3)
        for i, c in enumerate(u):
            if i:
                out[i + 1] += c * i / 2
                out[i + 3] -= c * i / 2
            out[i + 1] += c / (8 * (i + 1))
            out[i + 3] -= 5 * c / (8 * (i + 3))
        while out and out[-1] == 0:
            out.pop()
        polys.append(out)
    # divide by t^k
    return tuple(tuple(float(c) for c in p[k:]) for k, p in enumerate(polys))


def _debye_h1(mu: float, x: float):
    """Expansion of H^(1)_{i mu}(x) with the magnitude of the smallest retained term."""
    z = math.hypot(x, mu)
    t = mu / z
    phase = z - mu * math.asinh(mu / x) - math.pi / 4
    lead = math.sqrt(2 / (math.pi * z)) * math.exp(math.pi * mu / 2) * cmath.exp(1j * phase)
    total = 0j
    prev = math.inf
    last = 0.0
    for k, coeffs in enumerate(_debye_polys()):
        # u_k(t)/t^k has only even powers of t
        poly = sum(c * t ** (2 * j) for j, c in enumerate(coeffs[::2]))
        term = poly / (1j * z) ** k
        mag = abs(term)
        if k > 2 and mag > prev:
            break
        total += term
        last = mag
        prev = mag
        if mag < EPS * 1e-2:
            break
    # the first omitted term is not much smaller than the last kept one
    return lead * total, 30 * abs(lead) * last


def _debye(nu: complex, x: float) -> BesselValue:
    if abs(nu.real) > 1e-14:
        raise RegimeGap("Debye regime needs purely imaginary order")
    mu = nu.imag
    h1, e1 = _debye_h1(mu, x)
    h1m, e2 = _debye_h1(-mu, x)
    val = (h1 + h1m.conjugate()) / 2
    return BesselValue(val, "debye", (e1 + e2) / 2 + 8 * EPS * abs(val))


_IMPL = {"series": _series, "hankel": _hankel, "debye": _debye}


def _default_regime(nu: complex, x: float) -> str:
    # the series error estimate is reliable, and its cancellation is mild up to x ~ 20
    if x <= 20:
        return "series"
    if abs(nu.real) <= 1e-14 and abs(nu.imag) >= x:
        return "debye"
    if x >= max(abs(nu) ** 2, 10.0):
        return "hankel"
    return "series"


def _envelope(nu: complex, x: float) -> float:
    """Rough size of J_nu near x; errors are measured against it so zeros of J do not fail."""
    if abs(nu.real) > 0.5:
        return 1e-300
    return math.exp(math.pi * abs(nu.imag) / 2) / math.sqrt(max(x, abs(nu), 1.0)) / 4


def bessel_J_info(nu: complex, x: float, tol: float = 1e-9, regime: str | None = None) -> BesselValue:
    """J_nu(x) with the regime used and its error estimate.

    Without ``regime`` the default regime for (nu, x) is tried first and the
    others in turn if its estimated error, relative to the local size of J,
    exceeds ``tol``; RegimeGap is raised when none meets the tolerance.
    """
    nu = complex(nu)
    x = float(x)
    if x <= 0:
        raise ValueError("x must be positive")
    if regime is not None:
        return _IMPL[regime](nu, x)
    first = _default_regime(nu, x)
    order = [first] + [r for r in REGIMES if r != first]
    best = None
    for name in order:
        try:
            v = _IMPL[name](nu, x)
        except RegimeGap:
            continue
        if not cmath.isfinite(v.value):
            continue
        rel = v.error / max(abs(v.value), _envelope(nu, x))
        if rel <= tol:
            return v
        if best is None or rel < best[0]:
            best = (rel, v)
    detail = f" (best {best[1].regime}: relative error {best[0]:.2e})" if best else ""
    raise RegimeGap(f"no regime reaches tol={tol:g} for nu={nu}, x={x}{detail}")


def bessel_J(nu: complex, x: float, tol: float = 1e-9, regime: str | None = None) -> complex:
    return bessel_J_info(nu, x, tol, regime).value


def bessel_Y0(x: float) -> float:
    """Y_0(x): logarithmic series below x = 14, large-argument expansion above."""
    x = float(x)
    if x <= 0:
        raise ValueError("x must be positive")
    if x >= 14:
        P, Q, _ = _hankel_pq(0j, x)
        omega = x - math.pi / 4
        return (math.sqrt(2 / (math.pi * x)) * (math.sin(omega) * P + math.cos(omega) * Q)).real
    q = x * x / 4
    terms = []
    term = 1.0
    H = 0.0
    k = 0
    while True:
        k += 1
        term *= -q / (k * k)
        H += 1 / k
        terms.append(-H * term)
        if k > 2 * x and abs(term) * H < EPS * 1e-3:
            break
    j0 = _series(0j, x).value
    return (2 / math.pi) * ((math.log(x / 2) + np.euler_gamma) * j0.real + math.fsum(terms))


def hankel1(nu: complex, x: float, tol: float = 1e-9) -> complex:
    """H^(1)_nu(x) = J_nu + i Y_nu, through J_{+-nu}; the nu = 0 case uses Y_0 directly."""
    nu = complex(nu)
    if nu == 0:
        return bessel_J(0, x, tol) + 1j * bessel_Y0(x)
    return (bessel_J(-nu, x, tol) - cmath.exp(-1j * math.pi * nu) * bessel_J(nu, x, tol)) \
        / (1j * cmath.sin(math.pi * nu))


def bessel_J_array(nu: complex, xs, tol: float = 1e-9) -> np.ndarray:
    return np.array([bessel_J(nu, float(x), tol) for x in np.ravel(xs)]).reshape(np.shape(xs))


@dataclass(frozen=True)
class RegimeCrossCheck:
    nu: complex
    x: float
    regimes: tuple[str, str]
    values: tuple[complex, complex]
    relative_gap: float


def regime_crosscheck(points) -> list[RegimeCrossCheck]:
    """Evaluate each (nu, x, regime_a, regime_b) point in both named regimes."""
    out = []
    for nu, x, ra, rb in points:
        va = _IMPL[ra](complex(nu), float(x)).value
        vb = _IMPL[rb](complex(nu), float(x)).value
        gap = abs(va - vb) / max(abs(va), abs(vb), 1e-300)
        out.append(RegimeCrossCheck(complex(nu), float(x), (ra, rb), (va, vb), gap))
    return out


def boundary_points() -> list[tuple]:
    """Twenty points near the regime boundaries, each claimable by two regimes."""
    pts = []
    for nu in (0.3j, 1j, 2j, 3j, 0.5 + 1j):
        for x in (10.0, 12.0):
            pts.append((nu, x, "series", "hankel"))
    for mu in (3.0, 4.0, 5.0, 6.0, 8.0, 10.0):
        pts.append((1j * mu, mu, "series", "debye"))
    for mu, x in ((2.0, 10.0), (2.0, 12.0), (3.0, 12.0), (4.0, 17.0)):
        pts.append((1j * mu, x, "hankel", "debye"))
    return pts


def bigarg_leading(gamma: float, T: float) -> complex:
    """Leading term of the imaginary-order expansion written with z = sqrt(T^2 + gamma^2):

    (2 sqrt(pi))^-1 z^-1/2 e^{-i pi/4} e^{pi gamma} e(z/pi - (gamma/pi) log((z - gamma)/T)).
    """
    z = math.hypot(T, gamma)
    ph = 2 * math.pi * (z / math.pi - gamma / math.pi * math.log((z - gamma) / T))
    return (1 / (2 * math.sqrt(math.pi))) * z**-0.5 * cmath.exp(-1j * math.pi / 4) \
        * math.exp(math.pi * gamma) * cmath.exp(1j * ph)
