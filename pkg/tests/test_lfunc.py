import math

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ampsum.arith import char_group, kronecker_character, principal_character, product
from ampsum.errors import NotPrimitive, PoleAt1
from ampsum.lfunc import (CFactorInput, c_factor, convexity_scan, dirichlet_L, max_abs_critical,
                          prime_modulus_values, reflection_check, zeta, zeta_relation_check)
from ampsum.quadcount import euler_product_eval

# well-known values, cross-checked with mpmath and frozen
ZETA_HALF = -1.4603545088095868
ZETA_2_PLUS_I = complex(1.1503557032549, -0.437530865919608)
BETA_HALF = 0.667691457189609     # L(1/2, chi_-4)
L_HALF_CHI5 = 0.231750947504016   # L(1/2, (5/.))
L_HALF_CHI3 = 0.480867557696829   # L(1/2, (-3/.))


def test_frozen_values():
    assert abs(zeta(0.5).value - ZETA_HALF) < 1e-10
    assert abs(zeta(2 + 1j).value - ZETA_2_PLUS_I) < 1e-10
    assert abs(zeta(2).value - math.pi**2 / 6) < 1e-12
    for D, v in ((-4, BETA_HALF), (5, L_HALF_CHI5), (-3, L_HALF_CHI3)):
        chi = kronecker_character(D)
        for method in ("smoothed_sum", "functional_equation"):
            L = dirichlet_L(chi, 0.5, method)
            assert abs(L.value - v) < max(1e-10, L.error_bound)


def test_value_at_one():
    assert abs(dirichlet_L(kronecker_character(-4), 1).value - math.pi / 4) < 1e-10
    assert abs(dirichlet_L(kronecker_character(-3), 1).value - math.pi / (3 * math.sqrt(3))) < 1e-10
    with pytest.raises(PoleAt1):
        dirichlet_L(principal_character(5), 1)


@pytest.mark.parametrize("q", [5, 7, 8, 12, 13, 21])
def test_dual_methods_within_bounds(q):
    for chi in char_group(q):
        if chi.is_primitive and not chi.is_principal:
            for s in (0.5, 0.5 + 4j, 0.8 - 1j):
                a = dirichlet_L(chi, s)
                b = dirichlet_L(chi, s, "functional_equation")
                assert abs(a.value - b.value) <= a.error_bound + b.error_bound


@pytest.mark.parametrize("q", [7, 11])
def test_against_mpmath_oracle(q):
    for chi in char_group(q)[1:]:
        table = [chi(n) for n in range(q)]
        for s in (0.5 + 2j, 1.5):
            ref = complex(mpmath.dirichlet(s, table))
            assert abs(dirichlet_L(chi, s).value - ref) < 1e-9


@given(st.integers(1, 60), st.floats(1.1, 3.0), st.floats(-5, 5))
def test_zeta_relation(q, re, im):
    assert zeta_relation_check(q, complex(re, im)).passed


def test_reflection():
    for chi in char_group(11):
        if chi.is_primitive:
            assert reflection_check(chi, 0.3 + 2j).passed
    with pytest.raises(NotPrimitive):
        reflection_check(principal_character(9), 0.5)


def test_c_factor_against_oracle_values():
    chi = max(char_group(7), key=lambda c: c.order)
    psi = char_group(5)[2]
    inp = CFactorInput(1.6, 1.7, 0.2, chi, psi, (3, 2, 5))
    C = c_factor(inp)

    def L(ch, s):
        return complex(mpmath.dirichlet(s, [ch(n) for n in range(ch.modulus)]))

    kr = kronecker_character(inp.delta)
    s1, s2, w = 1.6, 1.7, 0.2
    e, n = s1 + 2 * s2 + 1 + w, s2 + 1 + w
    B = euler_product_eval("b_sum", (s1, s2, w), (3, 2, 5), chi=chi, psi=psi, trunc=4000).product
    ref = (L(chi, s2) * L(psi, s1) / L(product(chi, psi), s1 + s2) * L(product(kr, chi), e) / L(chi, e)
           * L(psi.conj(), n) / L(product(kr, psi.conj()), n) * B)
    assert abs(C.value - ref) <= C.error_bound + 1e-10


def test_prime_modulus_values_match_single_calls():
    vals = prime_modulus_values(11, 0.5 + 1j)[1:]
    single = sorted(abs(dirichlet_L(c, 0.5 + 1j).value) for c in char_group(11)[1:])
    assert np.allclose(sorted(np.abs(vals)), single, atol=1e-8)


def test_convexity_scan_small():
    sc = convexity_scan(100)
    assert all(p > 2 for p in sc.moduli)
    assert 0 < sc.exponent < 0.5
    assert abs(sc.max_abs[sc.moduli.index(5)] - max_abs_critical(5, sc.t_grid)) < 1e-10
