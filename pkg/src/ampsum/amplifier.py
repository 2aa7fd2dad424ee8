"""Amplifiers built from synthetic Hecke eigenvalues.

Eigenvalues are stored exactly as ``r * e(turn)`` with rational ``r`` and a
rational turn, so the Hecke recursion and the collapse of the KMV amplifier
hold with zero residual, not merely to rounding.  For the trivial character
every turn is 0 and all sums are exact rationals.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Union

import numpy as np

from .arith import DirichletCharacter, factorize, primes_upto
from .errors import NontrivialCharacter

Number = Union[int, Fraction, float, complex]


@dataclass(frozen=True)
class Phased:
    """The exact number ``r * exp(2 pi i turn)``; ``turn`` is kept in [0, 1)."""

    r: Fraction
    turn: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "r", Fraction(self.r))
        object.__setattr__(self, "turn", Fraction(self.turn) % 1 if self.r else Fraction(0))

    def __mul__(self, other: "Phased") -> "Phased":
        return Phased(self.r * other.r, self.turn + other.turn)

    def __pow__(self, k: int) -> "Phased":
        return Phased(self.r**k, self.turn * k)

    def __neg__(self) -> "Phased":
        return Phased(-self.r, self.turn)

    def conj(self) -> "Phased":
        return Phased(self.r, -self.turn)

    @property
    def is_real(self) -> bool:
        return self.turn in (0, Fraction(1, 2))

    def real_value(self) -> Fraction:
        if not self.is_real:
            raise ValueError("not a real number")
        return self.r if self.turn == 0 else -self.r

    def abs2(self) -> Fraction:
        return self.r * self.r

    def __complex__(self) -> complex:
        return float(self.r) * cmath.exp(2j * math.pi * float(self.turn))


def exact_sum(terms) -> Union[Fraction, complex]:
    """Sum of Phased/rational terms: an exact Fraction when every term is real, else a complex float."""
    terms = list(terms)
    if all(isinstance(t, (int, Fraction)) or (isinstance(t, Phased) and t.is_real) for t in terms):
        return sum((t.real_value() if isinstance(t, Phased) else Fraction(t) for t in terms), Fraction(0))
    return complex(sum(complex(t) for t in terms))


def _same_phase_sum(a: Phased, b: Phased) -> Phased:
    """Exact a + b when both share a phase up to sign (or one vanishes)."""
    if a.r == 0:
        return b
    if b.r == 0:
        return a
    d = (a.turn - b.turn) % 1
    if d == 0:
        return Phased(a.r + b.r, a.turn)
    if d == Fraction(1, 2):
        return Phased(a.r - b.r, a.turn)
    raise ValueError("terms with different phases have no exact Phased sum")


def _chi_phased(chi: Optional[DirichletCharacter], n: int) -> Phased:
    if chi is None or chi.modulus == 1:
        return Phased(1)
    ph = chi.phase_of(n)
    if ph < 0:
        return Phased(0)
    return Phased(1, Fraction(ph, chi.denom))


# -- Hecke sequences ----------------------------------------------------------------

@dataclass(frozen=True)
class PrimeData:
    """Local data at a prime: lambda(l^j) = e(j * half_turn) * U_j (U_j = U_1^j at ramified l)."""

    u1: Fraction
    half_turn: Fraction
    ramified: bool


@dataclass(frozen=True, eq=False)
class HeckeSequence:
    character: Optional[DirichletCharacter]
    provenance: str
    primes: dict = field(repr=False)   # prime -> PrimeData
    ramanujan: bool = True
    _memo: dict = field(default_factory=dict, repr=False)

    @property
    def prime_cap(self) -> int:
        return max(self.primes) if self.primes else 1

    @property
    def trivial_character(self) -> bool:
        return self.character is None or self.character.is_principal

    def chi(self, n: int) -> Phased:
        return _chi_phased(self.character, n)

    def prime_power(self, ell: int, j: int) -> Phased:
        if ell not in self.primes:
            raise ValueError(f"prime {ell} is beyond the sequence's prime cap {self.prime_cap}")
        d = self.primes[ell]
        if d.ramified:
            return Phased(d.u1**j)
        return Phased(_chebyshev(d.u1, j), d.half_turn * j)

    def __call__(self, n: int) -> Phased:
        return self.exact(n)

    def exact(self, n: int) -> Phased:
        if n < 1:
            raise ValueError("lambda is defined on positive integers")
        hit = self._memo.get(n)
        if hit is None:
            hit = Phased(1)
            for p, k in factorize(n) if n > 1 else ():
                hit = hit * self.prime_power(p, k)
            self._memo[n] = hit
        return hit

    def value(self, n: int) -> complex:
        return complex(self.exact(n))


@lru_cache(maxsize=100_000)
def _chebyshev(u1: Fraction, j: int) -> Fraction:
    """U_j with U_0 = 1, U_1 = u1, U_{j+1} = u1 U_j - U_{j-1}."""
    a, b = Fraction(1), u1
    if j == 0:
        return a
    for _ in range(j - 1):
        a, b = b, u1 * b - a
    return b


def satake_sequence(seed: int, prime_cap: int, character: Optional[DirichletCharacter] = None,
                    angles: Optional[dict] = None) -> HeckeSequence:
    """Synthetic eigenvalues from Satake angles theta_l drawn uniformly on [0, pi].

    lambda(l) = e(phi_l) * 2 cos(theta_l) with e(2 phi_l) = chi(l); the cosine is
    rounded to a rational with denominator at most 10^6 so all later arithmetic
    is exact.  ``angles`` overrides the draw at chosen primes.  At primes
    dividing the modulus of chi, lambda(l^j) = lambda(l)^j.
    """
    if prime_cap < 2:
        raise ValueError("prime_cap must be at least 2")
    rng = np.random.default_rng(seed)
    angles = angles or {}
    q = character.modulus if character is not None else 1
    data = {}
    for ell in primes_upto(prime_cap):
        ell = int(ell)
        theta = float(rng.uniform(0.0, math.pi))
        theta = angles.get(ell, theta)
        u1 = Fraction(2 * math.cos(theta)).limit_denominator(10**6)
        if q % ell == 0:
            data[ell] = PrimeData(u1, Fraction(0), True)
        else:
            data[ell] = PrimeData(u1, _chi_phased(character, ell).turn / 2, False)
    ram = all(abs(d.u1) <= 2 for d in data.values())
    return HeckeSequence(character, "synthetic_satake", data, ram)


def user_sequence(values: dict, character: Optional[DirichletCharacter] = None) -> HeckeSequence:
    """Sequence from given lambda(l) at primes; real rational values, trivial character only."""
    if character is not None and not character.is_principal:
        raise NontrivialCharacter("user sequences take the trivial character")
    data = {}
    for ell, v in values.items():
        if isinstance(v, complex):
            raise ValueError("user eigenvalues must be real")
        u1 = Fraction(v) if isinstance(v, (int, Fraction)) else Fraction(float(v))
        ram = character is not None and character.modulus % ell == 0
        data[int(ell)] = PrimeData(u1, Fraction(0), ram)
    return HeckeSequence(character, "user", data, all(abs(d.u1) <= 2 for d in data.values()))


@dataclass(frozen=True)
class RecursionAudit:
    checked: int
    max_residual: float
    exact_zero: bool
    multiplicative: bool


def recursion_audit(seq: HeckeSequence, ell_max: int = 50, j_max: int = 4) -> RecursionAudit:
    """lambda(l) lambda(l^j) = lambda(l^{j+1}) + chi(l) lambda(l^{j-1}) at unramified l <= ell_max, 1 <= j <= j_max,
    plus lambda(mn) = lambda(m) lambda(n) on coprime pairs below 60."""
    worst = 0.0
    exact = True
    checked = 0
    for ell in primes_upto(min(ell_max, seq.prime_cap)):
        ell = int(ell)
        if seq.primes[ell].ramified:
            continue
        for j in range(1, j_max + 1):
            lhs = seq.prime_power(ell, 1) * seq.prime_power(ell, j)
            rhs = _same_phase_sum(seq.prime_power(ell, j + 1), seq.chi(ell) * seq.prime_power(ell, j - 1))
            diff = _same_phase_sum(lhs, -rhs)
            checked += 1
            if diff.r != 0:
                exact = False
                worst = max(worst, abs(float(diff.r)))
    mult = True
    for m in range(2, 60):
        for n in range(m + 1, 60):
            if math.gcd(m, n) == 1 and max(p for p, _ in factorize(m * n)) <= seq.prime_cap:
                if seq.exact(m * n) != seq.exact(m) * seq.exact(n):
                    mult = False
    return RecursionAudit(checked, worst, exact, mult)


# -- amplifier vectors ----------------------------------------------------------------

@dataclass(frozen=True)
class AmplifierVector:
    L: int
    x: dict   # l -> Phased or a number

    def norm2(self) -> Union[Fraction, float]:
        vals = list(self.x.values())
        if all(isinstance(v, (Phased, int, Fraction)) for v in vals):
            return sum((v.abs2() if isinstance(v, Phased) else Fraction(v) ** 2 for v in vals), Fraction(0))
        return float(sum(abs(complex(v)) ** 2 for v in vals))


def _times(a, b):
    """Exact product when both factors are exact, else complex."""
    if isinstance(a, (int, Fraction)):
        a = Phased(a)
    if isinstance(b, (int, Fraction)):
        b = Phased(b)
    if isinstance(a, Phased) and isinstance(b, Phased):
        return a * b
    return complex(a) * complex(b)


def _conj(a):
    if isinstance(a, Phased):
        return a.conj()
    if isinstance(a, (int, Fraction)):
        return a
    return complex(a).conjugate()


def _total(terms):
    terms = list(terms)
    if all(isinstance(t, (Phased, int, Fraction)) for t in terms):
        return exact_sum(terms)
    return complex(sum(complex(t) for t in terms))


def prime_count(n: float) -> int:
    return int(primes_upto(int(n)).size) if n >= 2 else 0


@dataclass(frozen=True)
class KMVResult:
    vector: AmplifierVector
    amplified_sum: Union[Fraction, complex]
    norm2: Union[Fraction, float]
    norm_bound: Union[Fraction, float]
    primes_used: tuple


def kmv_coefficients(seq: HeckeSequence, L: int) -> KMVResult:
    """x_l = lambda(l) at primes l <= sqrt(L), x_{l^2} = -1, zero elsewhere."""
    if L < 1:
        raise ValueError("L must be a positive integer")
    root = math.isqrt(L)
    ells = tuple(int(p) for p in primes_upto(root)) if root >= 2 else ()
    x = {}
    for ell in ells:
        x[ell] = seq.prime_power(ell, 1)
        x[ell * ell] = Phased(-1)
    vec = AmplifierVector(L, x)
    S = _total(_times(v, seq.exact(l)) for l, v in x.items())
    bound = _total([seq.prime_power(ell, 1).abs2() + 1 for ell in ells])
    return KMVResult(vec, S, vec.norm2(), bound, ells)


# -- the squared amplifier ----------------------------------------------------------------

@dataclass(frozen=True)
class SquareExpansion:
    lhs: Union[Fraction, float]
    rhs: Union[Fraction, complex]
    residual: float
    asserted: bool
    twisted_residual: Optional[float] = None   # bilinear form with chi(k) weights (diagnostic)

    @property
    def passed(self) -> bool:
        return self.residual < 1e-10 if self.asserted else True


def hecke_square_expand(x: AmplifierVector, seq: HeckeSequence, report_only: bool = False) -> SquareExpansion:
    """|sum x_l lambda(l)|^2 against sum_{l1, l2} x_{l1} conj(x_{l2}) sum_{k | (l1, l2)} lambda(l1 l2 / k^2).

    The identity is asserted for the trivial character only; otherwise
    NontrivialCharacter is raised unless ``report_only`` is set, in which case
    both sides are returned together with the residual of the chi(k)-twisted
    bilinear form sum x_{l1} x_{l2} lambda(l1) lambda(l2) = sum x_{l1} x_{l2} sum_k chi(k) lambda(l1 l2/k^2).
    """
    trivial = seq.trivial_character
    if not trivial and not report_only:
        raise NontrivialCharacter("the square expansion is asserted for the trivial character only")
    items = [(l, v) for l, v in x.x.items() if not (isinstance(v, Phased) and v.r == 0)]
    S = _total(_times(v, seq.exact(l)) for l, v in items)
    lhs = S * S if isinstance(S, Fraction) else abs(S) ** 2
    terms = []
    for l1, v1 in items:
        for l2, v2 in items:
            w = _times(v1, _conj(v2))
            g = math.gcd(l1, l2)
            for k in range(1, g + 1):
                if g % k == 0:
                    terms.append(_times(w, seq.exact(l1 * l2 // (k * k))))
    rhs = _total(terms)
    if isinstance(lhs, Fraction) and isinstance(rhs, Fraction):
        residual = float(abs(lhs - rhs))
    else:
        residual = abs(complex(lhs) - complex(rhs))
    twisted = None
    if not trivial:
        bl = complex(sum(complex(_times(_times(v1, v2), seq.exact(l1) * seq.exact(l2)))
                         for l1, v1 in items for l2, v2 in items))
        br = 0j
        for l1, v1 in items:
            for l2, v2 in items:
                g = math.gcd(l1, l2)
                for k in range(1, g + 1):
                    if g % k == 0:
                        br += complex(_times(_times(v1, v2), seq.chi(k) * seq.exact(l1 * l2 // (k * k))))
        twisted = abs(bl - br)
    return SquareExpansion(lhs, rhs, residual, trivial, twisted)


def random_vector(rng: np.random.Generator, support: int, L: Optional[int] = None, complex_entries: bool = True) -> AmplifierVector:
    """Standard Gaussian entries on 1..support."""
    x = {}
    for l in range(1, support + 1):
        re, im = rng.standard_normal(2)
        x[l] = complex(re, im) if complex_entries else float(re)
    return AmplifierVector(L or support, x)


# -- lower bound ----------------------------------------------------------------------------

@dataclass(frozen=True)
class LowerBoundRow:
    L: int
    square: Fraction
    expected: int
    ratio: float
    floor: float

    @property
    def exact(self) -> bool:
        return self.square == self.expected

    @property
    def passed(self) -> bool:
        return self.exact and self.ratio >= self.floor


@dataclass(frozen=True)
class LowerBoundReport:
    rows: tuple

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.rows)


def amplifier_lower_bound_check(seq: HeckeSequence, L_ladder) -> LowerBoundReport:
    """|sum x_l lambda(l)|^2 / L for each L, against the floor 0.1 (pi(sqrt L)/sqrt L)^2.

    For trivial-character sequences the amplified sum collapses to pi(sqrt L)
    exactly, so the square must equal pi(sqrt L)^2.
    """
    if not seq.trivial_character:
        raise NontrivialCharacter("the lower-bound check takes trivial-character sequences")
    rows = []
    for L in L_ladder:
        L = int(L)
        res = kmv_coefficients(seq, L)
        S = res.amplified_sum
        sq = S * S
        pi = prime_count(math.isqrt(L))
        floor = 0.1 * (pi / math.sqrt(L)) ** 2
        rows.append(LowerBoundRow(L, sq, pi * pi, float(sq) / L, floor))
    return LowerBoundReport(tuple(rows))
