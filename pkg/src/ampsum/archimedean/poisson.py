"""Poisson summation twisted by a weight periodic modulo c.

For w periodic mod c and F smooth with compact support,

    sum_m w(m) F(m) = (1/c) sum_h what(h) Fhat(h/c),

with what(h) = sum_{a mod c} w(a) e(a h / c) and Fhat(xi) = int F(x) e(-x xi) dx.
The dual weights of the named weight families have closed forms; they are
compared with the finite Fourier transform as a side check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..arith import DirichletCharacter, gauss_sum
from ..errors import NotCoprime
from ..expsums import kloosterman, roots_of_unity
from ..quadcount import nu_brute
from .testfunc import TestFunction, _leggauss

WEIGHT_KINDS = ("constant", "quadratic_root", "kloosterman", "character", "table")


@dataclass(frozen=True)
class PoissonWeight:
    kind: str
    c: int
    values: np.ndarray           # w(a), 0 <= a < c
    dual: Optional[np.ndarray]   # closed-form what(h), 0 <= h < c; None when no closed form applies

    def dft(self) -> np.ndarray:
        """what(h) = sum_a w(a) e(a h / c) computed directly."""
        e = roots_of_unity(self.c)
        a = np.arange(self.c)
        return np.array([np.sum(self.values * e[(a * h) % self.c]) for h in range(self.c)])


def constant_weight(c: int) -> PoissonWeight:
    dual = np.zeros(c, dtype=complex)
    dual[0] = c
    return PoissonWeight("constant", c, np.ones(c, dtype=complex), dual)


def quadratic_root_weight(c: int, alpha: int, beta: int) -> PoissonWeight:
    """w(a) = #{x mod c : alpha x^2 - a x + beta = 0 mod c}; dual what(h) = S(alpha h, beta h; c)."""
    if math.gcd(beta, c) != 1:
        raise NotCoprime("beta must be coprime to c so that every root is a unit")
    vals = np.array([nu_brute(c, a, alpha, beta) for a in range(c)], dtype=complex)
    dual = np.array([kloosterman(None, alpha * h, beta * h, c).value for h in range(c)])
    return PoissonWeight("quadratic_root", c, vals, dual)


def kloosterman_weight(c: int, alpha: int, beta: int) -> PoissonWeight:
    """w(a) = S(alpha a, beta a; c); dual what(h) = c #{x : alpha x^2 + h x + beta = 0 mod c}."""
    if math.gcd(beta, c) != 1:
        raise NotCoprime("beta must be coprime to c so that every root is a unit")
    vals = np.array([kloosterman(None, alpha * a, beta * a, c).value for a in range(c)])
    dual = np.array([c * nu_brute(c, -h, alpha, beta) for h in range(c)], dtype=complex)
    return PoissonWeight("kloosterman", c, vals, dual)


def character_weight(chi: DirichletCharacter) -> PoissonWeight:
    """w(a) = chi(a); for primitive chi the dual is conj(chi(h)) tau(chi)."""
    c = chi.modulus
    vals = chi.values_at(np.arange(c))
    dual = None
    if chi.is_primitive:
        dual = np.conj(chi.values_at(np.arange(c))) * gauss_sum(chi)
    return PoissonWeight("character", c, vals, dual)


def table_weight(values) -> PoissonWeight:
    v = np.asarray(values, dtype=complex)
    return PoissonWeight("table", len(v), v, None)


def fourier_transform(F: TestFunction, xi, panels: int, order: int = 16) -> np.ndarray:
    """Fhat(xi) = int F(x) e(-x xi) dx by composite Gauss-Legendre."""
    lo, hi = F.support
    xg, wg = _leggauss(order)
    edges = np.linspace(lo, hi, panels + 1)
    h = np.diff(edges)[:, None] / 2
    x = (edges[:-1, None] + h * (xg[None, :] + 1)).ravel()
    wts = (h * wg[None, :]).ravel() * F(x)
    xi = np.atleast_1d(np.asarray(xi, dtype=float))
    return np.exp(-2j * math.pi * np.outer(xi, x)) @ wts


@dataclass(frozen=True)
class PoissonReport:
    kind: str
    c: int
    primal: complex
    dual: complex
    residual: float
    h_max: int
    oracle_residual: float
    dual_formula_residual: Optional[float]

    @property
    def passed(self) -> bool:
        ok = self.residual < 1e-9
        if self.dual_formula_residual is not None:
            ok = ok and self.dual_formula_residual < 1e-9
        return ok


def _dual_sum(F: TestFunction, what: np.ndarray, c: int, density: int, floor: float) -> tuple[complex, int]:
    lo, hi = F.support
    width = hi - lo
    mass = fourier_transform(F, [0.0], 64 * density)[0]
    total = what[0] * mass
    stop = floor * abs(mass)
    k = 0
    while True:
        hs = np.arange(k * c + 1, (k + 1) * c + 1)
        xi = hs / c
        panels = density * max(64, int(math.ceil(2 * width * xi[-1])))
        Fh = fourier_transform(F, xi, panels)
        # F real: Fhat(-xi) = conj(Fhat(xi)); what(-h) = what(c - h)
        plus = what[hs % c] * Fh
        minus = what[(-hs) % c] * np.conj(Fh)
        total += np.sum(plus) + np.sum(minus)
        k += 1
        if np.max(np.abs(Fh)) < stop or k > 200:
            return total / c, int(hs[-1])


def poisson_twisted_check(F: TestFunction, c: int, weight: PoissonWeight | None = None,
                          floor: float = 1e-13) -> PoissonReport:
    """Both sides of the twisted Poisson formula for weight mod c (default: constant).

    The dual sum runs over blocks of c frequencies until |Fhat| falls below
    ``floor`` times int F; the oracle repeats it with four times the nodes.
    """
    if c <= 0:
        raise ValueError("c must be positive")
    weight = weight if weight is not None else constant_weight(c)
    if weight.c != c:
        raise ValueError(f"weight is periodic mod {weight.c}, not {c}")
    lo, hi = F.support
    ms = np.arange(math.ceil(lo), math.floor(hi) + 1)
    primal = complex(np.sum(weight.values[ms % c] * F(ms.astype(float))))
    dft = weight.dft()
    what = weight.dual if weight.dual is not None else dft
    dual, hmax = _dual_sum(F, what, c, 1, floor)
    dual4, _ = _dual_sum(F, what, c, 4, floor)
    formula_res = None if weight.dual is None else float(np.max(np.abs(weight.dual - dft)))
    return PoissonReport(weight.kind, c, primal, complex(dual), abs(primal - dual), hmax,
                         abs(dual - dual4), formula_res)
