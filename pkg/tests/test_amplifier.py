import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ampsum.amplifier import (Phased, amplifier_lower_bound_check, exact_sum, hecke_square_expand,
                              kmv_coefficients, prime_count, random_vector, recursion_audit, satake_sequence,
                              user_sequence)
from ampsum.arith import char_group, factorize, primes_upto
from ampsum.errors import NontrivialCharacter

seeds = st.integers(0, 10**6)


def chebyshev_u(j, x):
    # second-kind Chebyshev polynomial by its three-term recursion, in floats
    a, b = 1.0, 2 * x
    if j == 0:
        return a
    for _ in range(j - 1):
        a, b = b, 2 * x * b - a
    return b


@given(seeds, st.integers(1, 3000))
def test_eigenvalues_match_chebyshev(seed, n):
    seq = satake_sequence(seed, 60)
    if all(p <= 60 for p, _ in factorize(n)) or n == 1:
        expect = math.prod(chebyshev_u(k, float(seq.primes[p].u1) / 2) for p, k in factorize(n)) if n > 1 else 1.0
        assert abs(float(seq.exact(n).real_value()) - expect) < 1e-8 * max(1, abs(expect))


def test_phased_arithmetic():
    a = Phased(Fraction(2), Fraction(1, 3))
    assert (a * a.conj()).is_real and (a * a.conj()).real_value() == 4
    assert (a**3).is_real and (a**3).real_value() == 8
    assert exact_sum([Phased(1), Phased(Fraction(1, 2), Fraction(1, 2))]) == Fraction(1, 2)
    assert abs(complex(a) - 2 * np.exp(2j * np.pi / 3)) < 1e-12


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_recursion_exact(seed):
    a = recursion_audit(satake_sequence(seed, 100))
    assert a.exact_zero and a.multiplicative and a.max_residual == 0


def test_recursion_with_character_exact():
    chi = max(char_group(7), key=lambda c: c.order)
    a = recursion_audit(satake_sequence(3, 60, chi))
    assert a.exact_zero


@given(seeds, st.integers(1, 10**4))
def test_kmv_collapse_is_exact(seed, L):
    r = kmv_coefficients(satake_sequence(seed, 100), L)
    assert r.amplified_sum == prime_count(math.isqrt(L))
    assert r.norm2 <= r.norm_bound


def test_kmv_example():
    r = kmv_coefficients(satake_sequence(11, 100), 100)
    assert r.amplified_sum == 4 and r.amplified_sum**2 == 16
    assert tuple(r.primes_used) == (2, 3, 5, 7)


def test_kmv_rejects_bad_length():
    with pytest.raises(ValueError):
        kmv_coefficients(satake_sequence(0, 10), 0)
    assert kmv_coefficients(satake_sequence(0, 10), 1).amplified_sum == 0


def test_prime_count():
    assert [prime_count(n) for n in (1, 2, 10, 100, 1000)] == [0, 1, 4, 25, 168]
    assert prime_count(1000) == len(primes_upto(1000))


@given(seeds, st.booleans())
def test_square_expansion(seed, complex_entries):
    seq = satake_sequence(seed, 100)
    x = random_vector(np.random.default_rng(seed), 30, complex_entries=complex_entries)
    r = hecke_square_expand(x, seq)
    assert r.residual < 1e-10 and r.passed


def test_square_expansion_nontrivial_character():
    chi = max(char_group(7), key=lambda c: c.order)
    seq = satake_sequence(1, 60, chi)
    x = random_vector(np.random.default_rng(1), 20)
    with pytest.raises(NontrivialCharacter):
        hecke_square_expand(x, seq)
    r = hecke_square_expand(x, seq, report_only=True)
    assert not r.asserted and r.twisted_residual < 1e-10


def test_lower_bound_ladder():
    rep = amplifier_lower_bound_check(satake_sequence(5, 100), [4, 16, 100, 1000, 10000])
    assert rep.passed and all(row.exact for row in rep.rows)


def test_user_sequence():
    seq = user_sequence({2: 1, 3: Fraction(-1, 2), 5: 0})
    assert seq.exact(4).real_value() == 0          # U_2(1/2) = 4/4 - 1
    assert seq.exact(6).real_value() == Fraction(-1, 2)
    with pytest.raises(NontrivialCharacter):
        user_sequence({2: 1}, char_group(5)[1])
