"""The Kuznetsov kernel h(V, lambda), the I-integral and the decay audits built on them."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..errors import BadSpectralTag, QuadratureFailure
from .bessel import bessel_J, bessel_Y0
from .hintegral import h_integral, h_integral_quad
from .testfunc import QuadratureSpec, TestFunction, integrate_fn, integrate_panels


@dataclass(frozen=True)
class SpectralTag:
    """``kind`` is 'holomorphic' (value = even weight k >= 2) or 'maass' (value = real t)."""

    kind: str
    value: float

    def __post_init__(self):
        if self.kind == "holomorphic":
            k = self.value
            if not float(k).is_integer() or k < 2 or int(k) % 2:
                raise BadSpectralTag(f"holomorphic weight must be an even integer >= 2, got {k}")
        elif self.kind == "maass":
            if isinstance(self.value, complex) and self.value.imag != 0:
                raise BadSpectralTag("Maass spectral parameter must be real")
        else:
            raise BadSpectralTag(f"unknown spectral kind {self.kind!r}")


def _as_tag(tag) -> SpectralTag:
    if isinstance(tag, SpectralTag):
        return tag
    try:
        kind, value = tag
    except (TypeError, ValueError):
        raise BadSpectralTag(f"cannot read a spectral tag from {tag!r}") from None
    return SpectralTag(kind, value)


def B_kernel(t: float, x: float) -> complex:
    """B_{2it}(x) = (J_{-2it}(x) - J_{2it}(x)) / (2 sin(pi i t)); -Y_0(x) at t = 0."""
    if abs(t) < 1e-8:
        return complex(-bessel_Y0(x))
    nu = 2j * t
    return (bessel_J(-nu, x) - bessel_J(nu, x)) / (2 * cmath.sin(math.pi * 1j * t))


def kuznetsov_h(V: TestFunction, tag, spec: QuadratureSpec = QuadratureSpec()) -> complex:
    """h(V, lambda): i^k int V(x) J_{k-1}(x) dx/x, or int V(x) B_{2it}(x) dx/x."""
    tag = _as_tag(tag)
    lo, hi = V.support
    if lo <= 0:
        raise ValueError("V must be supported in (0, inf)")
    if tag.kind == "holomorphic":
        k = int(tag.value)
        kern = lambda x: bessel_J(k - 1, x).real
        pref = 1j**k
    else:
        t = float(tag.value.real if isinstance(tag.value, complex) else tag.value)
        kern = lambda x: B_kernel(t, x)
        pref = 1
    f = lambda xs: V(xs) * np.array([kern(float(x)) for x in np.ravel(xs)]).reshape(np.shape(xs)) / xs
    return complex(pref * integrate_fn(f, lo, hi, spec))


# -- the I-integral -------------------------------------------------------------

PARAM_KEYS = ("d0", "m", "l1", "l2", "k", "p", "q")


@dataclass(frozen=True)
class OscValue:
    value: complex
    oracle: complex
    residual: float


def _i_integrand(n: float, x: float, y: float, params: dict, F_M, V, W):
    d0, m, l1, l2, k, p, q = (params[key] for key in PARAM_KEYS)
    a = d0 * m / (p * q)
    b = l1 * l2 * m / (d0 * k * k * p * q)

    def f(t):
        return (np.exp(2j * math.pi * t * n / (x * y)) * F_M(t)
                * V(4 * math.pi * np.sqrt(t * a) / x) * W(4 * math.pi * np.sqrt(t * b) / y) / np.sqrt(t))
    return f


def oscillatory_I(n: float, x: float, y: float, params: dict, F_M: TestFunction,
                  V: TestFunction, W: TestFunction, order: int = 16) -> OscValue:
    """I(n, x, y) = int e(t n/(x y)) F_M(t) V(4 pi sqrt(t d0 m/(pq))/x) W(4 pi sqrt(t l1 l2 m/(d0 k^2 pq))/y) dt/sqrt(t).

    Composite Gauss-Legendre with panels matched to the oscillation; the
    oracle repeats the rule with four times the panels.
    """
    missing = [key for key in PARAM_KEYS if key not in params]
    if missing:
        raise ValueError(f"missing parameters {missing}")
    lo, hi = F_M.support
    lo = max(lo, 0.0)
    if hi <= lo:
        return OscValue(0j, 0j, 0.0)
    f = _i_integrand(n, x, y, params, F_M, V, W)
    periods = abs(n) * (hi - lo) / (x * y)
    panels = max(16, int(math.ceil(2 * periods)))
    v = integrate_panels(f, lo, hi, panels, order)
    o = integrate_panels(f, lo, hi, 4 * panels, order)
    if not (cmath.isfinite(v) and cmath.isfinite(o)):
        raise QuadratureFailure("non-finite I-integral")
    return OscValue(v, o, abs(v - o))


# -- decay audits -----------------------------------------------------------------

@dataclass(frozen=True)
class DecayAudit:
    ladder: tuple
    magnitudes: tuple
    exponent: float          # -slope of log|value| against log(ladder)
    step_ratios: tuple       # |value(2N)| / |value(N)|
    required: float
    cross_check: Optional[float] = None

    @property
    def passed(self) -> bool:
        return self.exponent >= self.required


def _fit_exponent(xs, ys) -> float:
    lx, ly = np.log(np.asarray(xs, float)), np.log(np.asarray(ys, float))
    slope = np.polyfit(lx, ly, 1)[0]
    return float(-slope)


def _ladder_audit(ladder, mags, required, floor: float = 1e-13, cross=None) -> DecayAudit:
    keep = [0]
    for i in range(1, len(mags)):
        if mags[i] < floor * mags[0]:
            break
        keep.append(i)
    if len(keep) < 3:
        keep = list(range(min(3, len(mags))))
    xs = [ladder[i] for i in keep]
    ys = [max(mags[i], 1e-300) for i in keep]
    ratios = tuple(ys[i + 1] / ys[i] for i in range(len(ys) - 1))
    return DecayAudit(tuple(ladder), tuple(mags), _fit_exponent(xs, ys), ratios, required, cross)


def n_decay_audit(x: float, y: float, params: dict, F_M: TestFunction, V: TestFunction, W: TestFunction,
                  n0: Optional[float] = None, doublings: int = 5, required: float = 2.0) -> DecayAudit:
    """|I(n, x, y)| over a dyadic n-ladder beyond the oscillation threshold, with a power-law fit.

    The ladder starts at ``n0`` (default: where the phase t n/(x y) turns
    through a few periods across the support of F_M).
    """
    lo, hi = F_M.support
    if n0 is None:
        n0 = 4 * x * y / (hi - max(lo, 0.0))
    ladder = [n0 * 2**j for j in range(doublings + 1)]
    mags = [abs(oscillatory_I(n, x, y, params, F_M, V, W).value) for n in ladder]
    return _ladder_audit(ladder, mags, required)


def m_decay_audit(x: float, y: float, geom: dict, w: complex, m0: Optional[float] = None,
                  doublings: int = 5, required: float = 2.0) -> DecayAudit:
    """|int e(-m/h) e(alpha/h + B h) h^(w-1) dh| over a dyadic m-ladder.

    With A = alpha - m < 0 the integral is the K-Bessel closed form; the first
    rung is cross-checked by regularized quadrature.
    """
    from .hintegral import geometry_AB

    A0, B = geometry_AB(x, y, dict(geom, m=0))
    if m0 is None:
        m0 = 2 * max(A0, 1.0)
    ladder = [m0 * 2**j for j in range(doublings + 1)]
    vals = [h_integral(A0 - m, B, w) for m in ladder]
    quad, _ = h_integral_quad(A0 - ladder[0], B, w)
    cross = abs(quad - vals[0])
    return _ladder_audit(ladder, [abs(v) for v in vals], required, cross=cross)
