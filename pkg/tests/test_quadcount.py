from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ampsum.arith import char_group, factorize, jacobi, primes_upto
from ampsum.errors import Divergent
from ampsum.quadcount import (ad_cancel_unweighted, discriminant, euler_product_eval, local_factor_check,
                              local_factor_exact, nu_brute, nu_fast, nu_table)

quad = st.tuples(st.integers(-30, 30), st.integers(1, 15), st.integers(-30, 30))

# roots of 2x^2 - 3x + 5 modulo n, brute-forced and frozen
FROZEN_NU = {3: 0, 5: 2, 7: 2, 9: 0, 11: 0, 13: 0, 15: 0, 25: 2, 27: 0, 45: 0, 49: 2, 77: 0}


@pytest.mark.parametrize("n,v", sorted(FROZEN_NU.items()))
def test_frozen_counts(n, v):
    assert nu_brute(n, 3, 2, 5) == v
    assert nu_fast(n, 3, 2, 5) == v


@given(quad, st.integers(1, 400))
def test_fast_matches_brute(q, n):
    assert nu_fast(n, *q) == nu_brute(n, *q)


@given(quad, st.sampled_from([int(p) for p in primes_upto(50)][1:]), st.integers(1, 4))
def test_hensel_stability(q, p, k):
    m, a, b = q
    d = discriminant(m, a, b)
    if (a * d) % p:
        assert nu_brute(p**k, m, a, b) == 1 + jacobi(d, p)


@given(quad, st.integers(2, 1000))
def test_multiplicative(q, n):
    prod = 1
    for p, k in factorize(n):
        prod *= nu_brute(p**k, *q)
    assert nu_brute(n, *q) == prod


def test_table_matches_pointwise():
    t = nu_table(300, 7, 3, -2)
    assert all(t[n] == nu_brute(n, 7, 3, -2) for n in range(1, 301))


def test_provenance_tags():
    assert nu_fast(35, 3, 2, 5).provenance == "formula"
    assert nu_fast(8, 3, 2, 5).provenance == "brute"


@pytest.mark.parametrize("p", [3, 5, 7, 11])
@pytest.mark.parametrize("psi", [-1, 0, 1])
@pytest.mark.parametrize("leg", [-1, 0, 1])
def test_local_factor_exact(p, psi, leg):
    for r in (1, 2, 3):
        rep = local_factor_check(p, psi, leg, r)
        assert rep.exact is True
        assert abs(rep.closed_form - complex(local_factor_exact(p, psi, leg, r))) < 1e-14
        assert isinstance(local_factor_exact(p, psi, leg, r), Fraction)


def test_local_factor_divergent():
    with pytest.raises(Divergent):
        local_factor_check(3, 1, 1, 0)


@pytest.mark.parametrize("kind", ["e_sum", "n_sum", "b_sum"])
def test_euler_products(kind):
    chi = max(char_group(7), key=lambda c: c.order)
    psi = max(char_group(5), key=lambda c: c.order)
    r = euler_product_eval(kind, (3, 2, 0.5), (3, 2, 5), chi=chi, psi=psi, trunc=5000)
    assert r.residual < 1e-8


def test_unweighted_cancellation_holds():
    assert ad_cancel_unweighted(1000)


@pytest.mark.parametrize("q", [(1, 1, 1), (3, 2, 5)])
def test_weighted_cancellation_fails_exactly_at_split_primes(q):
    # the root-count weighted a.d product is not 1 at primes where Delta is a nonzero square
    r = euler_product_eval("ad_cancel", (2, 1, 0), q, prime_cap=300)
    d = discriminant(*q)
    split = [int(p) for p in primes_upto(300) if p > 2 and d % p and jacobi(d, int(p)) == 1]
    assert r.failing_primes == split


def test_worked_examples():
    assert local_factor_exact(7, 1, 1, 2) == Fraction(25, 24)
    assert local_factor_exact(7, 1, -1, 2) == 1
    assert nu_fast(7**3, 1, 1, 1) == nu_fast(7, 1, 1, 1) == 2
    assert nu_brute(15, 0, 1, 1) == nu_brute(3, 0, 1, 1) * nu_brute(5, 0, 1, 1) == 0


def test_series_residual_shrinks_with_truncation():
    chi = max(char_group(5), key=lambda c: c.order)
    res = [euler_product_eval("e_sum", (1.2, 0.6, 0.2), (1, 1, 1), chi=chi, psi=chi, trunc=t).residual
           for t in (500, 1000, 2000, 4000)]
    assert all(b < 10 * a for a, b in zip(res, res[1:]))
    assert res[-1] < res[0]
