"""The oscillatory h-integral int_0^inf e(A/h + B h) h^(w-1) dh and the D-factor built from it.

Closed forms (B > 0, X = 4 pi sqrt(|A| B)):

* A > 0:  i pi e^{i pi w/2} H^(1)_w(X) (A/B)^{w/2}
* A < 0:  2 e^{i pi w/2} K_w(X) (|A|/B)^{w/2}
* A = 0:  Gamma(w) (2 pi B)^{-w} e^{i pi w/2}

The A > 0 form is also the bracket
pi (A/B)^{w/2} [-(J_w - J_-w) / (2 sin(pi w/2)) + i (J_w + J_-w) / (2 cos(pi w/2))]
whose w -> 0 limit is pi (-Y_0 + i J_0).  The ``literal`` variants evaluate
-pi (A/B)^{w/2} [(J_w - J_-w) / (2 sin(pi w/2)) + (J_w + J_-w) / (2 cos(pi w/2))]
at 4 pi sqrt(A/B); they are reported next to the verified forms, never asserted.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.special import loggamma

from ..errors import Degenerate, Divergent, QuadratureFailure
from .bessel import bessel_J, bessel_Y0, hankel1
from .testfunc import TestFunction, _leggauss, integrate_panels, smooth_cutoff


def bessel_K(w: complex, x: float) -> complex:
    """K_w(x) = int_0^inf exp(-x cosh t) cosh(w t) dt by the trapezoid rule.

    The integrand is entire and decays double-exponentially, so the trapezoid
    sum converges geometrically in 1/step.
    """
    if x <= 0:
        raise ValueError("x must be positive")
    w = complex(w)
    t_max = math.acosh(max(760.0 / x, 1.0)) + 1.0
    step = min(0.1, 0.5 / (1 + abs(w.imag)))
    t = np.arange(0.0, t_max + step, step)
    f = np.exp(-x * np.cosh(t)) * np.cosh(w * t)
    return complex(step * (np.sum(f) - f[0] / 2))


def h_integral(A: float, B: float, w: complex) -> complex:
    """Closed form of int_0^inf e(A/h + B h) h^(w-1) dh for B > 0 (analytic continuation in w)."""
    if B <= 0:
        raise ValueError("B must be positive")
    w = complex(w)
    rot = cmath.exp(1j * math.pi * w / 2)
    if A == 0:
        if w == 0:
            raise Degenerate("A = 0 and w = 0: the integral diverges")
        return complex(np.exp(loggamma(w)) * (2 * math.pi * B) ** (-w) * rot)
    X = 4 * math.pi * math.sqrt(abs(A) * B)
    scale = (abs(A) / B) ** (w / 2)
    if A > 0:
        return 1j * math.pi * rot * hankel1(w, X) * scale
    return 2 * rot * bessel_K(w, X) * scale


def bracket(w: complex, z: float, literal: bool = False) -> complex:
    """(J_w - J_-w)/(2 sin(pi w/2)) combined with (J_w + J_-w)/(2 cos(pi w/2)) at z.

    ``literal=False``: -first + i second (the verified h-integral bracket);
    ``literal=True``: first + second.
    """
    w = complex(w)
    jp, jm = bessel_J(w, z), bessel_J(-w, z)
    first = (jp - jm) / (2 * cmath.sin(math.pi * w / 2))
    second = (jp + jm) / (2 * cmath.cos(math.pi * w / 2))
    return first + second if literal else -first + 1j * second


def h_integral_literal(A: float, B: float, w: complex) -> complex:
    """-pi (A/B)^{w/2} [literal bracket] at 4 pi sqrt(A/B); only defined for A > 0."""
    if A <= 0:
        raise Degenerate("the literal Bessel form needs A > 0")
    w = complex(w)
    z = 4 * math.pi * math.sqrt(A / B)
    if w == 0:
        return -math.pi * (bessel_Y0(z) / 2 + bessel_J(0, z))
    return -math.pi * (A / B) ** (w / 2) * bracket(w, z, literal=True)


# -- regularized quadrature ------------------------------------------------------

DEFAULT_LADDER = 5


def _cutoff_integral(X: float, g, lo: float, U: float, order: int = 20) -> complex:
    """int_lo^{2U} e^{i X u} g(u) chi(u/U) du, chi a smooth cutoff (1 below U, 0 above 2U)."""
    panel = min(2 * math.pi / X, 0.5)
    panels = max(4, int(math.ceil((2 * U - lo) / panel)))
    f = lambda u: np.exp(1j * X * u) * g(u) * smooth_cutoff(np.abs(u) / U)
    return integrate_panels(f, lo, 2 * U, panels, order)


def h_integral_quad(A: float, B: float, w: complex, ladder: int = DEFAULT_LADDER):
    """Regularized quadrature of the h-integral; returns (value, [(U, value), ...]).

    Substituting h = sqrt(|A|/B) e^t turns the integral into
    int e^{i X cosh t} e^{w t} dt (A > 0) or int e^{i X sinh t} e^{w t} dt (A < 0)
    over the real line.  The t-integral is taken directly near t = 0 and in the
    variable u = cosh t (sinh t) beyond, with a smooth cutoff at u ~ U.  U
    runs over a dyadic ladder so non-convergence shows up as drift.
    """
    w = complex(w)
    if B <= 0:
        raise ValueError("B must be positive")
    if A == 0:
        raise Degenerate("A = 0 has no oscillation in 1/h; use the closed form")
    if abs(w.real) >= 1:
        raise Divergent("|Re w| must be below 1")
    X = 4 * math.pi * math.sqrt(abs(A) * B)
    scale = (abs(A) / B) ** (w / 2)
    U0 = max(8.0, 60.0 / X)
    values = []
    if A > 0:
        t0 = math.acosh(2.0)
        near = integrate_panels(lambda t: np.exp(1j * X * np.cosh(t)) * 2 * np.cosh(w * t), 0.0, t0, 8, 20)
        g = lambda u: 2 * np.cosh(w * np.arccosh(u)) / np.sqrt(u * u - 1)
        for j in range(ladder):
            U = U0 * 2**j
            values.append((U, scale * (near + _cutoff_integral(X, g, 2.0, U))))
    else:
        g = lambda u: np.exp(w * np.arcsinh(u)) / np.sqrt(1 + u * u)
        for j in range(ladder):
            U = U0 * 2**j
            values.append((U, scale * _cutoff_integral(X, g, -2 * U, U)))
    return values[-1][1], values


@dataclass(frozen=True)
class PairIntegralReport:
    A: float
    B: float
    w: complex
    quadrature: complex
    closed_form: Optional[complex]
    closed_form_asserted: bool
    residual: Optional[float]
    ladder_drift: float
    literal: Optional[complex]
    literal_residual: Optional[float]

    @property
    def passed(self) -> bool:
        ok = math.isfinite(abs(self.quadrature)) and self.ladder_drift < 1e-7
        if self.closed_form_asserted:
            ok = ok and self.residual is not None and self.residual < 1e-6
        return ok


def bessel_pair_integral(A: float, B: float, w: complex, ladder: int = DEFAULT_LADDER) -> PairIntegralReport:
    """Regularized quadrature of the h-integral against its Bessel closed form.

    The closed form is asserted for A > 0 only.  For A < 0 the K-Bessel form is
    reported alongside the quadrature without being asserted.
    """
    w = complex(w)
    quad, values = h_integral_quad(A, B, w, ladder)
    drift = abs(values[-1][1] - values[-2][1]) if len(values) > 1 else math.inf
    closed = h_integral(A, B, w)
    lit = lit_res = None
    if A > 0:
        lit = h_integral_literal(A, B, w)
        lit_res = abs(quad - lit)
    return PairIntegralReport(A, B, w, quad, closed, A > 0, abs(quad - closed), drift, lit, lit_res)


@dataclass(frozen=True)
class LimitReport:
    z: float
    w: complex
    bracket: complex
    limit: complex
    continuity: float
    literal_bracket: complex
    literal_limit: float
    literal_gap: float


def w0_limit_check(z: float, w: complex = 1e-6) -> LimitReport:
    """Bracket at small w against its w -> 0 limit.

    The verified bracket tends to -Y_0 + i J_0; the literal one to Y_0 + J_0,
    which is compared with the value Y_0/2 + J_0 as well (``literal_gap``).
    """
    w = complex(w)
    y0, j0 = bessel_Y0(z), bessel_J(0, z).real
    b = bracket(w, z)
    lb = bracket(w, z, literal=True)
    lim = complex(-y0, j0)
    lit_lim = y0 / 2 + j0
    return LimitReport(z, w, b, lim, abs(b - lim), lb, lit_lim, abs(lb - lit_lim))


# -- D-factor -------------------------------------------------------------------

def geometry_AB(x, y, geom: dict):
    """A(x, y) and B(x, y) for geometry {d0, k, l1, l2, m}."""
    d0, k, l1, l2, m = (geom[key] for key in ("d0", "k", "l1", "l2", "m"))
    r = math.sqrt(l1 * l2)
    A = x * d0**2 * k / (r * y) + y * r**3 / (d0**2 * k**3 * x) - m
    B = k / (r * x * y)
    return A, B


def _support_nodes(f: TestFunction, nodes: int):
    """Nodes in x for V(4 pi / x): the x-range is 4 pi / support(V)."""
    lo, hi = f.support
    if lo <= 0:
        raise ValueError("test function support must lie in (0, inf)")
    a, b = 4 * math.pi / hi, 4 * math.pi / lo
    xi, wi = _leggauss(nodes)
    h = (b - a) / 2
    return a + h * (xi + 1), h * wi


@dataclass(frozen=True)
class HGrid:
    """h-integral values on a tensor grid of (x, y) quadrature nodes."""

    x: np.ndarray
    wx: np.ndarray
    y: np.ndarray
    wy: np.ndarray
    weight: np.ndarray  # V(4 pi/x) W(4 pi/y) h(A, B, w)
    ratio_max: float    # max |A|/B over the grid
    sign_change: bool   # A changes sign inside the box


def h_grid(V: TestFunction, W: TestFunction, geom: dict, w: complex, nodes: int = 24,
           form: str = "verified") -> HGrid:
    if form not in ("verified", "literal"):
        raise ValueError("form must be 'verified' or 'literal'")
    x, wx = _support_nodes(V, nodes)
    y, wy = _support_nodes(W, nodes)
    vx = V(4 * math.pi / x)
    wy_ = W(4 * math.pi / y)
    vals = np.zeros((nodes, nodes), dtype=complex)
    ratio = 0.0
    signs = set()
    for i, xv in enumerate(x):
        for j, yv in enumerate(y):
            A, B = geometry_AB(xv, yv, geom)
            ratio = max(ratio, abs(A) / B)
            signs.add(A > 0)
            if vx[i] == 0 or wy_[j] == 0:
                continue
            if form == "literal":
                hv = h_integral_literal(A, B, w) if A > 0 else 0j
            else:
                hv = h_integral(A, B, w)
            if not cmath.isfinite(hv):
                raise QuadratureFailure(f"non-finite h-integral at x={xv}, y={yv}")
            vals[i, j] = vx[i] * wy_[j] * hv
    return HGrid(x, wx, y, wy, vals, ratio, len(signs) > 1)


def d_from_grid(grid: HGrid, s1: complex, s2: complex) -> complex:
    px = grid.wx * grid.x ** (complex(s1) - 1)
    py = grid.wy * grid.y ** (complex(s2) - 1)
    return complex(px @ grid.weight @ py)


@dataclass(frozen=True)
class DFactorReport:
    value: complex
    oracle: Optional[complex]
    residual: Optional[float]
    ratio_max: float
    sign_change: bool
    nodes: int


def d_factor(s1: complex, s2: complex, w: complex, V: TestFunction, W: TestFunction, geom: dict,
             nodes: int = 24, oracle: bool = True, form: str = "verified") -> DFactorReport:
    """D(s1, s2, w) = int int V(4 pi/x) W(4 pi/y) h(A, B, w) x^(s1-1) y^(s2-1) dx dy.

    h is the h-integral closed form for A(x, y), B(x, y) of ``geom``
    ({d0, k, l1, l2, m}), so regions with A < 0 use the K-Bessel form.  With
    ``oracle`` the rule is repeated at twice the nodes per axis.
    ``form='literal'`` uses the literal Bessel bracket and drops A <= 0.
    """
    g = h_grid(V, W, geom, w, nodes, form)
    val = d_from_grid(g, s1, s2)
    orc = res = None
    if oracle:
        orc = d_from_grid(h_grid(V, W, geom, w, 2 * nodes, form), s1, s2)
        res = abs(val - orc)
    return DFactorReport(val, orc, res, g.ratio_max, g.sign_change, nodes)


@dataclass(frozen=True)
class DBoundReport:
    eps: float
    rows: tuple          # (t1, t2, gamma, |D|, scale, quotient)
    constant: float      # max quotient

    @property
    def passed(self) -> bool:
        return all(math.isfinite(r[3]) for r in self.rows)


def d_factor_bound_check(t1s, t2s, gammas, V: TestFunction, W: TestFunction, geom: dict,
                         eps: float = 0.1, nodes: int = 24) -> DBoundReport:
    """|D(1/2 + i t1, 1/2 + i t2, i gamma)| against (|t1 t2 gamma| max|A|/B)^eps; the constant is reported."""
    rows = []
    for gamma in gammas:
        g = h_grid(V, W, geom, 1j * gamma, nodes)
        for t1 in t1s:
            for t2 in t2s:
                D = abs(d_from_grid(g, 0.5 + 1j * t1, 0.5 + 1j * t2))
                scale = (abs(t1 * t2 * gamma) * g.ratio_max) ** eps
                rows.append((t1, t2, gamma, D, scale, D / scale))
    return DBoundReport(eps, tuple(rows), max(r[5] for r in rows))
