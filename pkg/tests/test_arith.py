import cmath
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ampsum.arith import (char_group, divisors, euler_phi, factorize, gauss_sum, jacobi, kronecker,
                          kronecker_character, mobius, mobius_sieve, mod_inverse, primes_upto,
                          principal_character, ramanujan_f, root_number)
from ampsum.errors import EvenModulus, NonInvertible

odd = st.integers(1, 2001).map(lambda k: 2 * k + 1)


def legendre_euler(a, p):
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


@given(st.integers(-10**6, 10**6), odd)
def test_jacobi_is_multiplicative_in_modulus(a, n):
    expected = 1
    for p, k in factorize(n):
        expected *= legendre_euler(a, p) ** k
    assert jacobi(a, n) == expected


def test_jacobi_rejects_even_modulus():
    with pytest.raises(EvenModulus):
        jacobi(3, 10)


@given(st.integers(-500, 500), st.integers(1, 500))
def test_kronecker_agrees_with_jacobi_on_odd(a, n):
    if n % 2:
        assert kronecker(a, n) == jacobi(a, n)


@given(st.integers(2, 10**7))
def test_factorize_roundtrip(n):
    fs = factorize(n)
    assert math.prod(p**k for p, k in fs) == n
    assert all(all(p % q for q in range(2, math.isqrt(p) + 1)) for p, _ in fs if p < 10**5)


def test_small_tables():
    assert list(primes_upto(30)) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    assert [euler_phi(n) for n in (1, 9, 10, 36)] == [1, 6, 4, 12]
    assert [mobius(n) for n in range(1, 11)] == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1]
    assert list(mobius_sieve(10)[1:]) == [mobius(n) for n in range(1, 11)]


@given(st.integers(1, 300))
def test_euler_phi_counts_units(n):
    assert euler_phi(n) == sum(math.gcd(k, n) == 1 for k in range(n))


@given(st.integers(1, 60), st.integers(1, 60))
def test_ramanujan_sum_matches_definition(n, m):
    direct = sum(cmath.exp(2j * math.pi * k * n / m) for k in range(m) if math.gcd(k, m) == 1)
    assert abs(ramanujan_f(m, n) - direct) < 1e-9


def test_mod_inverse():
    assert int(mod_inverse(3, 7)) * 3 % 7 == 1
    with pytest.raises(NonInvertible):
        mod_inverse(4, 8)


@pytest.mark.parametrize("q", [1, 2, 3, 4, 8, 9, 12, 15, 16, 21, 35])
def test_character_group_orthogonality(q):
    G = char_group(q)
    assert len(G) == euler_phi(q)
    M = np.array([[chi(n) for n in range(q)] for chi in G])
    gram = M @ M.conj().T
    assert np.allclose(gram, euler_phi(q) * np.eye(len(G)))


@pytest.mark.parametrize("q", [3, 5, 7, 8, 12, 13, 25])
def test_gauss_sum_modulus_and_root_number(q):
    for chi in char_group(q):
        if chi.is_primitive and not chi.is_principal:
            assert abs(abs(gauss_sum(chi)) - math.sqrt(q)) < 1e-9
            assert abs(abs(root_number(chi)) - 1) < 1e-9


@given(st.integers(1, 40), st.integers(0, 100), st.integers(0, 100))
def test_characters_are_completely_multiplicative(q, a, b):
    for chi in char_group(q):
        assert abs(chi(a * b) - chi(a) * chi(b)) < 1e-12


def test_kronecker_character_values():
    chi = kronecker_character(-4)
    assert [round(chi(n).real) for n in range(4)] == [0, 1, 0, -1]
    assert principal_character(6)(5) == 1 and principal_character(6)(3) == 0
    assert kronecker_character(5).is_real and kronecker_character(5).is_primitive


def test_conjugate_and_product():
    G = char_group(7)
    for chi in G:
        assert (chi * chi.conj()).is_principal
