import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ampsum.arith import char_group, primes_upto
from ampsum.errors import BadTwist, NotCoprime
from ampsum.expsums import gauss_reduction_check, kloosterman, kloosterman_crt_residual, weil_check

# S(1, 1; c), brute-forced with cmath and frozen
FROZEN_S11 = {5: 0.3819660112501049, 7: 2.0489173395223053, 13: 5.25953404790501,
              16: 5.65685424949238, 30: -0.3819660112501042}


@pytest.mark.parametrize("c,val", sorted(FROZEN_S11.items()))
def test_untwisted_frozen_values(c, val):
    v = kloosterman(None, 1, 1, c).value
    assert abs(v - val) < 1e-10


@given(st.integers(1, 80), st.integers(-50, 50), st.integers(-50, 50))
def test_untwisted_sum_is_real_and_symmetric(c, l, n):
    v = kloosterman(None, l, n, c).value
    assert abs(v.imag) < 1e-9
    assert abs(v - kloosterman(None, n, l, c).value) < 1e-9


@given(st.sampled_from([int(p) for p in primes_upto(400)][1:]), st.integers(1, 10**4), st.integers(1, 10**4))
def test_weil_bound(p, l, n):
    if l % p or n % p:
        assert weil_check(l, n, p).holds


def test_twist_must_divide_modulus():
    with pytest.raises(BadTwist):
        kloosterman(char_group(5)[1], 1, 1, 12)


@pytest.mark.parametrize("c1,c2", [(3, 4), (4, 5), (5, 9), (7, 8)])
def test_twisted_crt(c1, c2):
    for chi1 in list(char_group(c1))[:3]:
        for chi2 in list(char_group(c2))[:3]:
            assert kloosterman_crt_residual(chi1, chi2, 3, 7) < 1e-9


def test_crt_needs_coprime():
    with pytest.raises(NotCoprime):
        kloosterman_crt_residual(char_group(3)[0], char_group(6)[0], 1, 1)


@pytest.mark.parametrize("p,q,r", [(3, 5, 1), (5, 7, 2), (7, 3, 4), (11, 13, 1)])
def test_gauss_reduction(p, q, r):
    chi = char_group(p)[-1]
    psi = char_group(q)[-1]
    for arg in range(1, 40):
        g = gauss_reduction_check(chi, psi, r, arg)
        assert g.crt_residual < 1e-10
        if math.gcd(arg, p * q) == 1:
            assert g.closed_residual < 1e-10
        else:
            assert g.vanishes and abs(g.value) < 1e-10


def test_gauss_reduction_literal_form_differs():
    g = gauss_reduction_check(char_group(5)[1], char_group(7)[1], 2, 3)
    assert g.closed_residual < 1e-10
    assert g.literal_closed_residual > 1e-3
