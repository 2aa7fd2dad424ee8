"""Elementary arithmetic: residues, symbols, Möbius, Dirichlet characters, Gauss sums.

Characters are stored as exact phase tables: ``chi(n) = e(phase[n] / denom)``
with ``phase[n] = -1`` on non-units.  Complex value tables are derived from
the phases, so equality tests between characters never depend on rounding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

from .errors import EvenModulus, NonInvertible, Overflow

TABLE_LIMIT = 10**5
SYMBOL_LIMIT = 10**6


class Residue(int):
    """An integer reduced into ``[0, modulus)``; behaves as a plain int."""

    modulus: int

    def __new__(cls, value: int, modulus: int):
        if modulus <= 0:
            raise ValueError("modulus must be positive")
        obj = super().__new__(cls, value % modulus)
        obj.modulus = modulus
        return obj

    def __repr__(self) -> str:
        return f"Residue({int(self)}, {self.modulus})"


def mod_inverse(a: int, c: int) -> Residue:
    if c <= 0:
        raise ValueError("modulus must be positive")
    if math.gcd(a, c) != 1:
        raise NonInvertible(f"{a} is not invertible mod {c}")
    if c == 1:
        return Residue(0, 1)
    return Residue(pow(a, -1, c), c)


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a/n) for odd positive n."""
    if n <= 0 or n % 2 == 0:
        raise EvenModulus(f"Jacobi symbol needs an odd positive modulus, got {n}")
    if n > SYMBOL_LIMIT and a.bit_length() > 64:
        raise Overflow("argument outside supported range")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n) for n >= 1."""
    if n <= 0:
        raise ValueError("kronecker symbol implemented for n >= 1 only")
    result = 1
    while n % 2 == 0:
        n //= 2
        if a % 2 == 0:
            return 0
        if a % 8 in (3, 5):
            result = -result
    if n == 1:
        return result
    return result * jacobi(a, n)


# -- factorization and multiplicative functions ------------------------------

@lru_cache(maxsize=None)
def _small_primes(limit: int) -> tuple[int, ...]:
    return tuple(int(p) for p in primes_upto(limit))


def primes_upto(n: int) -> np.ndarray:
    """All primes <= n (sieve of Eratosthenes)."""
    if n < 2:
        return np.zeros(0, dtype=np.int64)
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, math.isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    return np.flatnonzero(sieve).astype(np.int64)


@lru_cache(maxsize=1 << 16)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of |n| as ((p, k), ...), increasing p."""
    n = abs(n)
    if n == 0:
        raise ValueError("cannot factor 0")
    out = []
    for p in _small_primes(1000):
        if p * p > n:
            break
        if n % p == 0:
            k = 0
            while n % p == 0:
                n //= p
                k += 1
            out.append((p, k))
    else:
        p = 1001
        while p * p <= n:
            if n % p == 0:
                k = 0
                while n % p == 0:
                    n //= p
                    k += 1
                out.append((p, k))
            p += 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def divisors(n: int) -> list[int]:
    divs = [1]
    for p, k in factorize(n):
        divs = [d * p**j for d in divs for j in range(k + 1)]
    return sorted(divs)


def euler_phi(n: int) -> int:
    out = n
    for p, _ in factorize(n):
        out -= out // p
    return out


def mobius(n: int) -> int:
    if n <= 0:
        raise ValueError("mobius defined for positive integers")
    fac = factorize(n)
    if any(k > 1 for _, k in fac):
        return 0
    return -1 if len(fac) % 2 else 1


def mobius_sieve(n: int) -> np.ndarray:
    """Array ``mu`` with ``mu[k]`` the Möbius function for 0 <= k <= n (mu[0] = 0)."""
    mu = np.ones(n + 1, dtype=np.int64)
    mu[0] = 0
    for p in primes_upto(n):
        mu[p::p] *= -1
        mu[p * p :: p * p] = 0
    return mu


def ramanujan_f(n: int, m: int) -> int:
    """``f_n(m) = sum over b | (m, n) of mu(n/b) * b`` (the Ramanujan sum c_n(m))."""
    if n <= 0:
        raise ValueError("n must be positive")
    g = math.gcd(m, n)
    return sum(mobius(n // b) * b for b in divisors(g))


# -- Dirichlet characters -----------------------------------------------------

def _is_primitive_root(g: int, pk: int, p: int) -> bool:
    phi = pk // p * (p - 1)
    return all(pow(g, phi // r, pk) != 1 for r, _ in factorize(phi))


@lru_cache(maxsize=4096)
def _components(q: int):
    """Cyclic decomposition of (Z/q)^*: list of (prime power, generator mod q, order, dlog table)."""
    comps = []
    for p, k in factorize(q) if q > 1 else ():
        pk = p**k
        rest = q // pk
        # lift a generator mod p^k to mod q, trivial on the other factors
        def lift(g):
            if rest == 1:
                return g % q
            return (g * rest * pow(rest, -1, pk) + pk * pow(pk, -1, rest)) % q

        if p == 2:
            if k == 1:
                continue
            # -1 component
            dl_sign = np.full(pk, -1, dtype=np.int64)
            dl_five = np.full(pk, -1, dtype=np.int64)
            order5 = pk // 4 if k >= 3 else 1
            x = 1
            for b in range(order5):
                dl_sign[x] = 0
                dl_five[x] = b
                dl_sign[(-x) % pk] = 1
                dl_five[(-x) % pk] = b
                x = x * 5 % pk
            comps.append((pk, lift(pk - 1), 2, dl_sign))
            if k >= 3:
                comps.append((pk, lift(5), order5, dl_five))
        else:
            g = 2
            while not _is_primitive_root(g, pk, p):
                g += 1
            order = pk // p * (p - 1)
            dl = np.full(pk, -1, dtype=np.int64)
            x = 1
            for e in range(order):
                dl[x] = e
                x = x * g % pk
            comps.append((pk, lift(g), order, dl))
    return tuple(comps)


@dataclass(frozen=True, eq=False)
class DirichletCharacter:
    """A Dirichlet character mod ``modulus`` labelled by exponents on fixed generators.

    ``phase`` holds exact phases: ``chi(n) = exp(2 pi i phase[n] / denom)``,
    and ``phase[n] = -1`` where ``gcd(n, modulus) > 1``.
    """

    modulus: int
    index: int
    exponents: tuple[int, ...]
    phase: np.ndarray = field(repr=False)
    denom: int = field(repr=False)
    value_table: np.ndarray = field(repr=False)

    def __call__(self, n: int) -> complex:
        return complex(self.value_table[n % self.modulus])

    def __eq__(self, other) -> bool:
        if not isinstance(other, DirichletCharacter):
            return NotImplemented
        return self.modulus == other.modulus and self.exponents == other.exponents

    def __hash__(self) -> int:
        return hash((self.modulus, self.exponents))

    @property
    def label(self) -> tuple[int, int]:
        return (self.modulus, self.index)

    @property
    def order(self) -> int:
        units = self.phase[self.phase >= 0]
        g = math.gcd(self.denom, *(int(v) for v in np.unique(units))) if units.size else self.denom
        return self.denom // g

    @property
    def is_principal(self) -> bool:
        return not any(self.exponents)

    @property
    def parity(self) -> int:
        """0 for even characters, 1 for odd ones."""
        if self.modulus <= 2:
            return 0
        return 0 if self(-1).real > 0 else 1

    @property
    def conductor(self) -> int:
        return _conductor(self)

    @property
    def is_primitive(self) -> bool:
        return self.conductor == self.modulus

    @property
    def is_real(self) -> bool:
        return self.order <= 2

    def phase_of(self, n: int) -> int:
        """Exact phase numerator of chi(n) over ``denom``; -1 on non-units."""
        return int(self.phase[n % self.modulus])

    def conj(self) -> "DirichletCharacter":
        ph = np.where(self.phase >= 0, (-self.phase) % self.denom, -1)
        return from_phase(self.modulus, ph, self.denom)

    def __mul__(self, other: "DirichletCharacter") -> "DirichletCharacter":
        return product(self, other)

    def primitive(self) -> "DirichletCharacter":
        """The primitive character inducing this one."""
        f = self.conductor
        if f == self.modulus:
            return self
        ph = np.full(f, -1, dtype=np.int64)
        for r in range(f):
            if math.gcd(r, f) != 1:
                continue
            m = r
            while math.gcd(m, self.modulus) != 1:
                m += f
            ph[r] = self.phase[m % self.modulus]
        return from_phase(f, ph, self.denom)

    def values_at(self, n: np.ndarray) -> np.ndarray:
        return self.value_table[np.mod(n, self.modulus)]


def _phases_to_values(phase: np.ndarray, denom: int) -> np.ndarray:
    out = np.zeros(phase.shape, dtype=np.complex128)
    ok = phase >= 0
    out[ok] = _unit_roots(denom)[phase[ok]]
    return out


@lru_cache(maxsize=256)
def _unit_roots(n: int) -> np.ndarray:
    """exp(2 pi i k / n) for 0 <= k < n, symmetric-exact at quarter turns."""
    k = np.arange(n)
    vals = np.exp(2j * np.pi * k / n)
    if n % 4 == 0:
        vals[0], vals[n // 4], vals[n // 2], vals[3 * n // 4] = 1, 1j, -1, -1j
    elif n % 2 == 0:
        vals[0], vals[n // 2] = 1, -1
    vals[0] = 1
    vals.setflags(write=False)
    return vals


def _conductor(chi: DirichletCharacter) -> int:
    q = chi.modulus
    for d in divisors(q):
        n = 1 + d * np.arange(q // d)
        ph = chi.phase[n % q]
        if np.all(ph[ph >= 0] == 0):
            return d
    return q  # pragma: no cover


@dataclass(frozen=True)
class CharacterGroup(Sequence):
    """The group of Dirichlet characters mod ``modulus``; items built on demand."""

    modulus: int

    def __post_init__(self):
        if self.modulus <= 0:
            raise ValueError("modulus must be positive")
        if self.modulus > TABLE_LIMIT:
            raise Overflow(f"modulus {self.modulus} exceeds table limit {TABLE_LIMIT}")

    @property
    def orders(self) -> tuple[int, ...]:
        return tuple(c[2] for c in _components(self.modulus))

    def __len__(self) -> int:
        return math.prod(self.orders)

    def __getitem__(self, index):
        if isinstance(index, slice):
            return [self[i] for i in range(*index.indices(len(self)))]
        n = len(self)
        if not -n <= index < n:
            raise IndexError(index)
        index %= n
        exps = []
        rem = index
        for o in reversed(self.orders):
            exps.append(rem % o)
            rem //= o
        return character_from_exponents(self.modulus, tuple(reversed(exps)))

    def __iter__(self) -> Iterator[DirichletCharacter]:
        for i in range(len(self)):
            yield self[i]

    def principal(self) -> DirichletCharacter:
        return self[0]


def char_group(q: int) -> CharacterGroup:
    """All phi(q) characters mod q, indexed lexicographically by generator exponents."""
    return CharacterGroup(q)


@lru_cache(maxsize=2048)
def _dlog_matrix(q: int):
    """Per-component discrete logs of every residue mod q (rows), plus orders."""
    comps = _components(q)
    n = np.arange(q)
    units = np.array([math.gcd(int(x), q) == 1 for x in n]) if q > 1 else np.ones(1, bool)
    logs = np.zeros((len(comps), q), dtype=np.int64)
    for i, (pk, _, _, dl) in enumerate(comps):
        logs[i] = dl[n % pk]
    orders = tuple(c[2] for c in comps)
    return logs, units, orders


def character_from_exponents(q: int, exps: tuple[int, ...]) -> DirichletCharacter:
    if q > TABLE_LIMIT:
        raise Overflow(f"modulus {q} exceeds table limit {TABLE_LIMIT}")
    logs, units, orders = _dlog_matrix(q)
    if len(exps) != len(orders):
        raise ValueError("exponent vector has wrong length")
    denom = math.lcm(*orders) if orders else 1
    phase = np.zeros(q, dtype=np.int64)
    for a, o, row in zip(exps, orders, logs):
        phase = (phase + (a % o) * (denom // o) * row) % denom
    phase = np.where(units, phase, -1)
    index = 0
    for a, o in zip(exps, orders):
        index = index * o + (a % o)
    phase.setflags(write=False)
    return DirichletCharacter(q, index, tuple(a % o for a, o in zip(exps, orders)), phase, denom,
                              _phases_to_values(phase, denom))


def from_phase(q: int, phase: np.ndarray, denom: int) -> DirichletCharacter:
    """Label a character given as a phase table (values e(phase/denom))."""
    comps = _components(q)
    exps = []
    for pk, g, o, _ in comps:
        ph = int(phase[g % q])
        # chi(g) = e(ph/denom) must be an o-th root of unity
        num = ph * o
        if num % denom:
            raise ValueError("phase table is not a character")
        exps.append((num // denom) % o)
    chi = character_from_exponents(q, tuple(exps))
    units = phase >= 0
    mine = chi.phase * (denom // math.gcd(denom, chi.denom))
    theirs = np.asarray(phase) * (chi.denom // math.gcd(denom, chi.denom))
    big = math.lcm(denom, chi.denom)
    if not np.array_equal(units, chi.phase >= 0) or not np.all((mine[units] - theirs[units]) % big == 0):
        raise ValueError("phase table is not a character")
    return chi


def product(chi: DirichletCharacter, psi: DirichletCharacter) -> DirichletCharacter:
    """The character n -> chi(n) psi(n) modulo lcm of the moduli."""
    q = math.lcm(chi.modulus, psi.modulus)
    if q > TABLE_LIMIT:
        raise Overflow(f"modulus {q} exceeds table limit {TABLE_LIMIT}")
    d = math.lcm(chi.denom, psi.denom)
    n = np.arange(q)
    a = chi.phase[n % chi.modulus]
    b = psi.phase[n % psi.modulus]
    ph = np.where((a >= 0) & (b >= 0), (a * (d // chi.denom) + b * (d // psi.denom)) % d, -1)
    return from_phase(q, ph, d)


def principal_character(q: int) -> DirichletCharacter:
    return character_from_exponents(q, (0,) * len(_components(q)))


def kronecker_character(D: int) -> DirichletCharacter:
    """The character n -> (D/n) for a discriminant D (D = 0 or 1 mod 4, D != 0)."""
    if D == 0 or D % 4 not in (0, 1):
        raise ValueError(f"{D} is not a nonzero discriminant")
    q = abs(D)
    ph = np.full(q, -1, dtype=np.int64)
    for n in range(q):
        k = kronecker(D, n) if n else (1 if q == 1 else 0)
        if k:
            ph[n] = 0 if k == 1 else 1
    return from_phase(q, ph, 2)


def gauss_sum(chi: DirichletCharacter) -> complex:
    """tau(chi) = sum over x mod q of chi(x) e(x/q)."""
    q = chi.modulus
    e = _exp_table(q)
    return complex(np.dot(chi.value_table, e))


@lru_cache(maxsize=256)
def _exp_table(q: int) -> np.ndarray:
    return _unit_roots(q).copy()


def root_number(chi: DirichletCharacter) -> complex:
    """epsilon(chi) = tau(chi) / (i^a sqrt(q)) for primitive chi."""
    return gauss_sum(chi) / ((1j) ** chi.parity * math.sqrt(chi.modulus))
