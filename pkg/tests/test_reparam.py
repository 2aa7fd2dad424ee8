import math

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from ampsum.arith import char_group
from ampsum.errors import DNotDividesN, MismatchedClasses, TruncationMismatch
from ampsum.harness.suites import reindex_kernel
from ampsum.reparam import (ReindexCaps, bijection_check, bijection_scan, enumerate_X, enumerate_X_brute,
                            enumerate_Y, from_r, phase_identity_check, reindex_sum_check, to_r,
                            zero_n_check, zero_n_classify)

mod = st.integers(1, 40)
nonzero = st.integers(-80, 80).filter(bool)


@given(mod, mod, st.integers(-80, 80))
def test_enumerate_X_matches_brute(c1, c2, n):
    assert enumerate_X(c1, c2, n) == sorted(enumerate_X_brute(c1, c2, n))


@given(mod, mod, nonzero)
def test_bijection_and_inverse(c1, c2, n):
    assume(n % math.gcd(c1, c2) == 0)
    rep = bijection_check(c1, c2, n)
    assert rep.passed
    assert rep.size_X == rep.size_Y


@given(mod, mod, nonzero, st.integers(-30, 30), st.integers(-30, 30), st.data())
def test_phase_identity_exact(c1, c2, n, l, lp, data):
    X = enumerate_X(c1, c2, n)
    assume(X)
    pair = data.draw(st.sampled_from(X))
    assert phase_identity_check(c1, c2, n, l, lp, pair) == 0


def test_scan_small():
    scan = bijection_scan(12, 24, ((1, 1), (2, -3)))
    assert scan.passed and scan.triples > 0


def test_Y_needs_divisibility():
    with pytest.raises(DNotDividesN):
        enumerate_Y(4, 6, 3)


def test_from_r_rejects_bad_residue():
    with pytest.raises(MismatchedClasses):
        from_r(3, 5, 7, 1)
    pair = enumerate_X(3, 5, 7)[0]
    r, _ = to_r(3, 5, 7, pair)
    assert from_r(3, 5, 7, int(r)) == pair


@pytest.mark.parametrize("c", range(1, 51))
def test_zero_n(c):
    assert zero_n_check(c)
    assert all(not zero_n_classify(c, c2) for c2 in range(1, 51) if c2 != c)


def _setup():
    chi = max(char_group(3), key=lambda c: c.order)
    psi = max(char_group(5), key=lambda c: c.order)
    return chi, psi


@pytest.mark.parametrize("caps", [(12, 15, 10), (18, 25, 16)])
def test_reindex(caps):
    chi, psi = _setup()
    K = reindex_kernel(*caps, theta=0.17)
    r = reindex_sum_check(chi, psi, K.support, K, l=2, lp=3)
    assert r.residual < 1e-9 and r.boundary_max == 0.0
    assert abs(r.source) > 1e-3


def test_reindex_rejects_short_caps():
    chi, psi = _setup()
    K = reindex_kernel(12, 15, 10, theta=0.0)
    with pytest.raises(TruncationMismatch):
        reindex_sum_check(chi, psi, ReindexCaps(6, 15, 10), K)
