"""Vertical-line integrals: the Mellin-Barnes splitting of (1 + x)^-s and Gamma-ratio decay."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.special import loggamma

from ..errors import ContourOutOfStrip, PoleHit


@dataclass(frozen=True)
class ContourSpec:
    """Line ``Re w = c`` (None: middle of the strip), height cap and trapezoid step (None: automatic)."""

    c: Optional[float] = None
    T_max: float = 200.0
    step: Optional[float] = None


@dataclass(frozen=True)
class MellinBarnesReport:
    x: float
    s: complex
    c: float
    value: complex
    direct: complex
    residual: float
    step: float
    nodes: int
    tail: float


def _mb_integrand(x: float, s: complex, w):
    return np.exp(loggamma(w) + loggamma(s - w) - loggamma(s) - w * math.log(x))


def mellin_barnes_check(x: float, s: complex, spec: ContourSpec = ContourSpec()) -> MellinBarnesReport:
    """(1 + x)^-s against (1/2 pi i) int_(c) Gamma(w) Gamma(s - w) / Gamma(s) x^-w dw.

    The line integral is a trapezoid sum.  The integrand is analytic in the
    strip 0 < Re w < Re s, so the step is tied to the distance d from the line
    to the nearest pole: the discretization error is about exp(-2 pi d / step).
    """
    s = complex(s)
    if x <= 0:
        raise ValueError("x must be positive")
    c = spec.c if spec.c is not None else s.real / 2
    if not 0 < c < s.real:
        raise ContourOutOfStrip(f"line Re w = {c} is outside the strip (0, {s.real})")
    d = min(c, s.real - c)
    h = spec.step if spec.step else d / 6
    lo = min(0.0, s.imag) - spec.T_max
    hi = max(0.0, s.imag) + spec.T_max
    n = int(math.ceil((hi - lo) / h))
    t = lo + h * np.arange(n + 1)
    vals = _mb_integrand(x, s, c + 1j * t)
    value = complex(h * np.sum(vals) / (2 * math.pi))
    direct = complex((1 + x) ** (-s))
    tail = float(max(abs(vals[0]), abs(vals[-1])))
    return MellinBarnesReport(float(x), s, c, value, direct, abs(value - direct), h, n + 1, tail)


@dataclass(frozen=True)
class GammaRatioReport:
    alpha_line: float
    s2: complex
    t: tuple
    ratio: tuple
    bound: tuple
    quotient: tuple
    max_quotient: float
    growth: bool


def _is_pole(z: complex) -> bool:
    return abs(z.imag) < 1e-14 and z.real <= 0 and abs(z.real - round(z.real)) < 1e-14


def gamma_ratio_decay(alpha_line: float, s2: complex, t_samples) -> GammaRatioReport:
    """|Gamma(a) Gamma(s2 - a) / Gamma(s2)| on a = alpha_line + i t against |1 + t2 - t|^-1/2.

    ``growth`` flags a quotient ratio/bound at the largest |t| more than ten
    times the one at the smallest.
    """
    s2 = complex(s2)
    if _is_pole(s2):
        raise PoleHit(f"Gamma(s2) has a pole at s2 = {s2}")
    ts, ratios, bounds = [], [], []
    for t in t_samples:
        a = complex(alpha_line, t)
        if _is_pole(a) or _is_pole(s2 - a):
            raise PoleHit(f"Gamma pole at alpha = {a}")
        r = math.exp((loggamma(a) + loggamma(s2 - a) - loggamma(s2)).real)
        ts.append(float(t))
        ratios.append(r)
        bounds.append(abs(1 + s2.imag - t) ** -0.5 if abs(1 + s2.imag - t) > 0 else math.inf)
    quot = [r / b for r, b in zip(ratios, bounds)]
    order = np.argsort(np.abs(ts))
    growth = len(quot) > 1 and quot[order[-1]] > 10 * quot[order[0]]
    return GammaRatioReport(alpha_line, s2, tuple(ts), tuple(ratios), tuple(bounds), tuple(quot),
                            max(quot), bool(growth))
