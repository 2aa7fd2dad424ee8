import math

import mpmath
import numpy as np
import pytest
import scipy.special as sp
from hypothesis import given
from hypothesis import strategies as st

from ampsum.archimedean import (Bump, ContourSpec, DyadicBlock, bessel_J, bessel_J_info, bessel_K, bessel_pair_integral,
                                bessel_Y0, boundary_points, character_weight, constant_weight, d_factor,
                                fourier_transform, gamma_ratio_decay, h_integral, hankel1, m_decay_audit, mellin,
                                mellin_barnes_check, n_decay_audit, partition_unity, poisson_twisted_check,
                                quadratic_root_weight, regime_crosscheck, w0_limit_check)
from ampsum.arith import char_group
from ampsum.errors import PoleHit


@given(st.floats(0, 6), st.floats(0.05, 60))
def test_bessel_real_order_vs_scipy(nu, x):
    ref = sp.jv(nu, x)
    assert abs(bessel_J(nu, x) - ref) < 1e-8 * max(1.0, abs(ref))


@pytest.mark.parametrize("nu,x", [(0.5j, 3.0), (1 + 2j, 7.5), (0.3 - 1j, 25.0), (2j, 0.4), (5j, 40.0)])
def test_bessel_complex_order_vs_mpmath(nu, x):
    ref = complex(mpmath.besselj(nu, x))
    assert abs(bessel_J(nu, x) - ref) < 1e-8 * max(1.0, abs(ref))


@given(st.floats(0.05, 80))
def test_y0_vs_scipy(x):
    assert abs(bessel_Y0(x) - sp.y0(x)) < 1e-9 * max(1.0, abs(sp.y0(x)))


@pytest.mark.parametrize("w,x", [(0.3, 1.0), (0.2j, 4.0), (1.5, 0.7)])
def test_hankel_and_k(w, x):
    assert abs(hankel1(w, x) - complex(mpmath.hankel1(w, x))) < 1e-8
    assert abs(bessel_K(w, x) - complex(mpmath.besselk(w, x))) < 1e-8


def test_regime_crosscheck_boundary_points():
    pts = boundary_points()
    assert len(pts) >= 20
    assert all(r.relative_gap < 1e-3 for r in regime_crosscheck(pts))


def test_bessel_info_reports_regime():
    info = bessel_J_info(0.5, 3.0)
    assert info.regime and info.error >= 0
    assert abs(info.value - bessel_J(0.5, 3.0)) < 1e-14


@pytest.mark.parametrize("A,B,w", [(1, 1, 0.3j), (2, 0.5, 0.2 + 0.1j), (0.5, 2, -0.4j)])
def test_pair_integral(A, B, w):
    r = bessel_pair_integral(A, B, w)
    assert r.passed and r.residual < 1e-6


def test_pair_integral_negative_A_is_not_asserted():
    r = bessel_pair_integral(-1.0, 1.0, 0.3j)
    assert not r.closed_form_asserted and r.passed


def test_h_integral_A_zero():
    w = 0.4 + 0.2j
    expected = complex(mpmath.gamma(w)) * (2 * math.pi * 1.5) ** (-w) * np.exp(1j * math.pi * w / 2)
    assert abs(h_integral(0.0, 1.5, w) - expected) < 1e-12


@pytest.mark.parametrize("z", [0.5, 1, 3, 10, 30])
def test_w0_limit(z):
    assert w0_limit_check(z).continuity < 1e-5


@pytest.mark.parametrize("x", [0.1, 1, 3])
@pytest.mark.parametrize("s", [2, 1, 0.5 + 3j])
def test_mellin_barnes(x, s):
    assert mellin_barnes_check(x, s, ContourSpec()).residual < 1e-8


def test_gamma_ratio_pole_and_decay():
    with pytest.raises(PoleHit):
        gamma_ratio_decay(0.5, 0.5 + 20j, [20])
    assert not gamma_ratio_decay(0.25, 0.5 + 20j, [0, 10, 40, 80]).growth


def test_mellin_oracle_and_scaling():
    f = Bump(1.5, 0.7)
    m = mellin(f, 0.5 + 4j)
    assert m.residual < 1e-10
    assert abs(mellin(f.dilate(2.0), 0.5 + 4j).value - 2 ** (-(0.5 + 4j)) * m.value) < 1e-10


@pytest.mark.parametrize("X", [1, 10, 1024, 1e5])
def test_partition_of_unity(X):
    spec = partition_unity(X)
    xs = np.linspace(0.5, X, 2000)
    assert spec.residual(xs) < 1e-12
    assert len(spec.M_list) <= 2 + math.log2(X)


def test_dyadic_block_support():
    b = DyadicBlock(4.0)
    assert b(1.0) == 0 and b(9.0) == 0 and b(4.5) > 0


def test_d_factor_oracle():
    V = Bump(1.5, 0.5)
    r = d_factor(0.5 + 1j, 0.5 + 3j, 1j, V, V, {"d0": 1, "k": 1, "l1": 2, "l2": 3, "m": 1}, nodes=24)
    assert r.residual < 1e-5


def test_decay_exponents():
    V = Bump(1.1, 0.6)
    x = 4 * math.pi
    n = n_decay_audit(x, x, {"d0": 1, "m": 15, "l1": 1, "l2": 1, "k": 1, "p": 3, "q": 5}, DyadicBlock(1.0), V, V)
    m = m_decay_audit(x, x, {"d0": 1, "k": 1, "l1": 2, "l2": 3, "m": 1}, 0.3j)
    assert n.exponent >= 2 and m.exponent >= 2


def test_fourier_transform_of_bump():
    F = Bump(0.0, 1.0)
    xi = np.array([0.0, 0.7])
    grid = np.linspace(-1, 1, 200001)
    direct = [np.trapezoid(F(grid) * np.exp(-2j * np.pi * v * grid), grid) for v in xi]
    assert np.allclose(fourier_transform(F, xi, 64), direct, atol=1e-8)


@pytest.mark.parametrize("c", [1, 2, 7, 12, 30])
def test_poisson(c):
    F = Bump(9.3, 8.1)
    for w in (quadratic_root_weight(c, 1, 1), character_weight(char_group(c)[-1]), constant_weight(c)):
        r = poisson_twisted_check(F, c, w)
        assert r.residual < 1e-9
