"""Compactly supported smooth test functions, quadrature rules and Mellin transforms."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numpy.polynomial import polynomial as P
from scipy import integrate


@lru_cache(maxsize=64)
def _bump_polys(k: int) -> tuple:
    """Numerators P_j with d^j/du^j exp(-1/(1-u^2)) = P_j(u) (1-u^2)^(-2j) exp(-1/(1-u^2))."""
    polys = [np.array([1.0])]
    D = np.array([1.0, 0.0, -1.0])
    D2 = P.polymul(D, D)
    two_u = np.array([0.0, 2.0])
    for j in range(k):
        pj = polys[-1]
        nxt = P.polysub(P.polyadd(P.polymul(P.polyder(pj) if pj.size > 1 else np.array([0.0]), D2),
                                  P.polymul(P.polymul(4 * j * np.array([0.0, 1.0]), pj), D)),
                        P.polymul(two_u, pj))
        polys.append(nxt)
    return tuple(polys)


class TestFunction:
    """Base class: a smooth function with compact support ``[lo, hi]``."""

    __test__ = False  # keep pytest from collecting this class
    family = "abstract"
    support: tuple[float, float]

    def __call__(self, x):
        return self.derivative(x, 0)

    def derivative(self, x, k: int):
        raise NotImplementedError


class Bump(TestFunction):
    """``amplitude * e * exp(-1/(1-u^2))`` with ``u = (x - center)/width``; peak value ``amplitude``."""

    family = "bump"

    def __init__(self, center: float, width: float, amplitude: float = 1.0):
        if width <= 0:
            raise ValueError("width must be positive")
        self.center = float(center)
        self.width = float(width)
        self.amplitude = float(amplitude)
        self.support = (self.center - self.width, self.center + self.width)

    def __repr__(self) -> str:
        return f"Bump(center={self.center}, width={self.width}, amplitude={self.amplitude})"

    def derivative(self, x, k: int = 0):
        x = np.asarray(x, dtype=float)
        u = (x - self.center) / self.width
        out = np.zeros(np.shape(u))
        inside = np.abs(u) < 1
        if np.any(inside):
            ui = u[inside]
            D = 1.0 - ui * ui
            val = np.exp(1.0 - 1.0 / D)
            if k:
                val = val * P.polyval(ui, _bump_polys(k)[k]) / D ** (2 * k)
            out[inside] = self.amplitude * val / self.width**k
        return out if out.ndim else float(out)

    def dilate(self, a: float) -> "Bump":
        """x -> f(a x)."""
        return Bump(self.center / a, self.width / a, self.amplitude)


class SmoothStep(TestFunction):
    """0 for x <= lo, 1 for x >= hi, the normalized integral of a bump in between."""

    family = "step"

    def __init__(self, lo: float = 0.5, hi: float = 1.0, nodes: int = 96):
        self.lo, self.hi = float(lo), float(hi)
        self.support = (self.lo, math.inf)
        self._bump = Bump((lo + hi) / 2, (hi - lo) / 2)
        self._xi, self._wi = np.polynomial.legendre.leggauss(nodes)
        self._Z = self._partial(np.array([self.hi]))[0]

    def _partial(self, x):
        h = (x - self.lo) / 2
        t = self.lo + h[:, None] * (self._xi[None, :] + 1)
        return h * (self._bump(t) @ self._wi)

    def derivative(self, x, k: int = 0):
        x = np.asarray(x, dtype=float)
        flat = np.atleast_1d(x).ravel()
        if k:
            out = self._bump.derivative(flat, k - 1) / self._Z
        else:
            out = np.where(flat >= self.hi, 1.0, 0.0)
            mid = (flat > self.lo) & (flat < self.hi)
            if np.any(mid):
                out[mid] = self._partial(flat[mid]) / self._Z
        out = np.asarray(out).reshape(np.shape(x))
        return out if out.ndim else float(out)


_STEP = None


def _step() -> SmoothStep:
    global _STEP
    if _STEP is None:
        _STEP = SmoothStep()
    return _STEP


class DyadicBlock(TestFunction):
    """eta_M(x) = phi(x/M) - phi(x/(2M)) with phi the smooth step on [1/2, 1]; support [M/2, 2M]."""

    family = "dyadic"

    def __init__(self, M: float):
        self.M = float(M)
        self.support = (self.M / 2, 2 * self.M)

    def __repr__(self) -> str:
        return f"DyadicBlock(M={self.M})"

    def derivative(self, x, k: int = 0):
        x = np.asarray(x, dtype=float)
        s = _step()
        M = self.M
        return s.derivative(x / M, k) / M**k - s.derivative(x / (2 * M), k) / (2 * M) ** k


@dataclass(frozen=True)
class PartitionSpec:
    M_list: tuple[float, ...]
    blocks: tuple[DyadicBlock, ...]
    X_cap: float

    def eta(self, x):
        """The function the blocks sum to: 0 below 1/2, 1 on [1, X_cap]."""
        return _step()(x)

    def total(self, x):
        x = np.asarray(x, dtype=float)
        return sum(b(x) for b in self.blocks)

    def residual(self, x) -> float:
        return float(np.max(np.abs(self.total(x) - self.eta(x))))

    def derivative_constants(self, order: int = 3, grid: int = 4001) -> list[float]:
        """max over blocks and x of |x^i eta_M^(i)(x)| for i <= order."""
        out = []
        for i in range(order + 1):
            worst = 0.0
            for b in self.blocks:
                x = np.linspace(b.support[0], b.support[1], grid)
                worst = max(worst, float(np.max(np.abs(x**i * b.derivative(x, i)))))
            out.append(worst)
        return out


def partition_unity(X_cap: float) -> PartitionSpec:
    """Dyadic blocks M = 1, 2, 4, ..., 2^J (2^J >= X_cap) summing to eta on (0, X_cap]."""
    if X_cap < 1:
        raise ValueError("X_cap must be at least 1")
    J = max(0, math.ceil(math.log2(X_cap) - 1e-12))
    Ms = tuple(float(2**j) for j in range(J + 1))
    return PartitionSpec(Ms, tuple(DyadicBlock(M) for M in Ms), float(X_cap))


# -- quadrature -----------------------------------------------------------------

@dataclass(frozen=True)
class QuadratureSpec:
    """``rule`` is 'gauss' (fixed Gauss-Legendre nodes) or 'adaptive' (QUADPACK)."""

    rule: str = "gauss"
    nodes: int = 400
    tol: float = 1e-12

    def denser(self, factor: int = 4) -> "QuadratureSpec":
        return QuadratureSpec(self.rule, self.nodes * factor, self.tol)


@lru_cache(maxsize=64)
def _leggauss(n: int):
    return np.polynomial.legendre.leggauss(n)


def integrate_fn(f, lo: float, hi: float, spec: QuadratureSpec = QuadratureSpec()) -> complex:
    """Integral of a (vectorized, possibly complex) f over [lo, hi]."""
    if spec.rule == "gauss":
        xi, wi = _leggauss(spec.nodes)
        h = (hi - lo) / 2
        x = lo + h * (xi + 1)
        return complex(h * np.dot(wi, f(x)))
    if spec.rule == "adaptive":
        re = integrate.quad(lambda t: complex(f(np.array([t]))[0]).real, lo, hi,
                            epsabs=spec.tol, epsrel=spec.tol, limit=400)[0]
        im = integrate.quad(lambda t: complex(f(np.array([t]))[0]).imag, lo, hi,
                            epsabs=spec.tol, epsrel=spec.tol, limit=400)[0]
        return complex(re, im)
    raise ValueError(f"unknown quadrature rule {spec.rule!r}")


@dataclass(frozen=True)
class MellinValue:
    value: complex
    oracle: complex
    residual: float


def mellin(f: TestFunction, s: complex, spec: QuadratureSpec = QuadratureSpec()) -> MellinValue:
    """Integral of f(x) x^(s-1) over the support, with a 4x-denser rule as oracle."""
    lo, hi = f.support
    if lo <= 0:
        raise ValueError("Mellin transform needs support inside (0, inf)")
    g = lambda x: f(x) * np.exp((s - 1) * np.log(x))
    v = integrate_fn(g, lo, hi, spec)
    o = integrate_fn(g, lo, hi, spec.denser(4) if spec.rule == "gauss" else QuadratureSpec("gauss", 1600))
    return MellinValue(v, o, abs(v - o))


def integrate_panels(f, lo: float, hi: float, panels: int, order: int = 16) -> complex:
    """Composite Gauss-Legendre rule: ``panels`` equal panels of ``order`` nodes each."""
    xi, wi = _leggauss(order)
    edges = np.linspace(lo, hi, panels + 1)
    h = np.diff(edges)[:, None] / 2
    x = edges[:-1, None] + h * (xi[None, :] + 1)
    return complex(np.sum(h * wi[None, :] * f(x)))


def smooth_cutoff(v):
    """C-infinity function equal to 1 for v <= 1, 0 for v >= 2 (closed form, no quadrature)."""
    v = np.asarray(v, dtype=float)
    s = np.clip(v - 1.0, 0.0, 1.0)
    with np.errstate(divide="ignore", over="ignore"):
        a = np.where(s < 1, np.exp(-1.0 / np.maximum(1 - s, 1e-300)), 0.0)
        b = np.where(s > 0, np.exp(-1.0 / np.maximum(s, 1e-300)), 0.0)
    return a / (a + b)
