"""Hot loops, each in two forms: an explicit loop (numba-compiled when
available) and a vectorized numpy version.  ``AMPSUM_NUMBA=0`` selects the
numpy versions; both are always importable so tests can compare them.
"""

import numpy as np

from ._accel import USE_NUMBA, jit


def _gcd_py(a, b):
    a = abs(a)
    b = abs(b)
    while b:
        a, b = b, a % b
    return a


def _inv_py(a, m):
    # inverse of a modulo m (gcd(a, m) = 1 assumed); 0 when m == 1
    if m == 1:
        return 0
    r0, r1 = m, a % m
    s0, s1 = 0, 1
    while r1:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    return s0 % m


_gcd = jit(_gcd_py)
_inv = jit(_inv_py)


# -- twisted Kloosterman sums -------------------------------------------------

def _kloosterman_loop(chi_vals, q, l, n, c, roots):
    total = 0j
    for x in range(c):
        if _gcd(x, c) != 1:
            continue
        xb = _inv(x, c)
        k = (l * x + n * xb) % c
        total += chi_vals[x % q] * roots[k]
    return total


def _kloosterman_vec(chi_vals, q, l, n, c, roots):
    x = np.arange(c, dtype=np.int64)
    units = np.gcd(x, c) == 1
    x = x[units]
    xb = np.array([pow(int(v), -1, c) if c > 1 else 0 for v in x], dtype=np.int64)
    k = (l * x + n * xb) % c
    return complex(np.sum(chi_vals[x % q] * roots[k]))


kloosterman_loop = jit(_kloosterman_loop)


def kloosterman_sum(chi_vals, q, l, n, c, roots):
    """sum over units x mod c of chi(x) e((l x + n xbar)/c); ``roots[k] = e(k/c)``."""
    if USE_NUMBA:
        return kloosterman_loop(chi_vals, q, l % c, n % c, c, roots)
    return _kloosterman_vec(chi_vals, q, l % c, n % c, c, roots)


# -- quadratic congruence counts ----------------------------------------------

def _nu_counts_loop(n, ms, as_, bs):
    out = np.zeros(ms.shape[0], dtype=np.int64)
    for i in range(ms.shape[0]):
        a = as_[i] % n
        m = ms[i] % n
        b = bs[i] % n
        cnt = 0
        for x in range(n):
            if (a * (x * x % n) - m * x + b) % n == 0:
                cnt += 1
        out[i] = cnt
    return out


def _nu_counts_vec(n, ms, as_, bs):
    x = np.arange(n, dtype=np.int64)
    x2 = x * x % n
    a = (as_ % n)[:, None]
    m = (ms % n)[:, None]
    b = (bs % n)[:, None]
    vals = (a * x2[None, :] - m * x[None, :] + b) % n
    return np.count_nonzero(vals == 0, axis=1).astype(np.int64)


nu_counts_loop = jit(_nu_counts_loop)


def nu_counts(n, ms, as_, bs):
    """#{x mod n : a x^2 - m x + b = 0 mod n} for each (m, a, b) row."""
    ms = np.asarray(ms, dtype=np.int64)
    as_ = np.asarray(as_, dtype=np.int64)
    bs = np.asarray(bs, dtype=np.int64)
    if USE_NUMBA:
        return nu_counts_loop(n, ms, as_, bs)
    return _nu_counts_vec(n, ms, as_, bs)


# -- reparametrization of pair classes ----------------------------------------

def _x_count_brute_loop(c1, c2, n):
    cnt = 0
    mod = c1 * c2
    for x in range(c1):
        if _gcd(x, c1) != 1:
            continue
        for y in range(c2):
            if _gcd(y, c2) != 1:
                continue
            if (c2 * x + c1 * y - n) % mod == 0:
                cnt += 1
    return cnt


def _x_count_brute_vec(c1, c2, n):
    x = np.arange(c1, dtype=np.int64)
    y = np.arange(c2, dtype=np.int64)
    x = x[np.gcd(x, c1) == 1]
    y = y[np.gcd(y, c2) == 1]
    s = c2 * x[:, None] + c1 * y[None, :] - n
    return int(np.count_nonzero(s % (c1 * c2) == 0))


x_count_brute_loop = jit(_x_count_brute_loop)


def x_count_brute(c1, c2, n):
    """Exhaustive count of unit pairs (x mod c1, y mod c2) with c2 x + c1 y = n mod c1 c2."""
    if USE_NUMBA:
        return x_count_brute_loop(c1, c2, n)
    return _x_count_brute_vec(c1, c2, n)


def _in_y(c1, c2, n, d, r):
    N = abs(n)
    if _gcd(r, N) != 1:
        return False
    u = (c1 // d) * r + c2 // d
    if u % (N // d) != 0:
        return False
    for dp in range(1, d):
        if d % dp == 0 and u % (N // dp) == 0:
            return False
    return True


_in_y_j = jit(_in_y)


def _bijection_triple_loop(c1, c2, n, ls, lps):
    """Returns (|X|, |Y|, failures) for one triple with n != 0 and gcd(c1, c2) | n."""
    N = abs(n)
    d = _gcd(c1, c2)
    nX = 0
    bad = 0
    seen = np.zeros(N, dtype=np.int64)
    for x in range(c1):
        if _gcd(x, c1) != 1:
            continue
        t = n - c2 * x
        if t % c1 != 0:
            continue
        y = (t // c1) % c2
        if _gcd(y, c2) != 1:
            continue
        nX += 1
        xb = _inv(x, c1)
        yb = _inv(y, c2)
        r1 = ((n * xb - c2) // c1) % N
        r2 = ((n * yb - c1) // c2) % N
        # r1 must be a class of Y, hit once, with inverse r2
        if not _in_y_j(c1, c2, n, d, r1):
            bad += 1
            continue
        if seen[r1] != 0:
            bad += 1
        seen[r1] += 1
        if (r1 * r2 - 1) % N != 0:
            bad += 1
        # inverse formulas on reduced representatives
        v = c2 + c1 * r1
        w = c1 + c2 * r2
        if v % n != 0 or w % n != 0:
            bad += 1
            continue
        if (v // n - xb) % c1 != 0 or (w // n - yb) % c2 != 0:
            bad += 1
        # exact phase identity on the common denominator n c1 c2
        D = abs(n * c1 * c2)
        for j in range(ls.shape[0]):
            l = ls[j]
            lp = lps[j]
            lhs = l * xb * n * c2 + lp * yb * n * c1
            rhs = (l * r1 + lp * r2) * c1 * c2 + l * c2 * c2 + lp * c1 * c1
            if (lhs - rhs) % D != 0:
                bad += 1
    nY = 0
    for r in range(N):
        if _in_y_j(c1, c2, n, d, r):
            nY += 1
            # reverse map lands in X
            v = c2 + c1 * r
            xb = (v // n) % c1
            if _gcd(xb, c1) != 1:
                bad += 1
                continue
            x = _inv(xb, c1)
            t = n - c2 * x
            if t % c1 != 0 or _gcd((t // c1) % c2, c2) != 1:
                bad += 1
    return nX, nY, bad


bijection_triple_loop = jit(_bijection_triple_loop)


def _bijection_triple_vec(c1, c2, n, ls, lps):
    N = abs(n)
    d = int(np.gcd(c1, c2))
    x = np.arange(c1, dtype=np.int64)
    x = x[np.gcd(x, c1) == 1]
    t = n - c2 * x
    x = x[t % c1 == 0]
    y = ((n - c2 * x) // c1) % c2
    keep = np.gcd(y, c2) == 1
    x, y = x[keep], y[keep]
    nX = int(x.size)
    bad = 0

    r_all = np.arange(N, dtype=np.int64)
    u = (c1 // d) * r_all + c2 // d
    iny = (np.gcd(r_all, N) == 1) & (u % (N // d) == 0)
    for dp in range(1, d):
        if d % dp == 0:
            iny &= u % (N // dp) != 0
    nY = int(np.count_nonzero(iny))

    if nX:
        xb = np.array([pow(int(v), -1, c1) if c1 > 1 else 0 for v in x], dtype=np.int64)
        yb = np.array([pow(int(v), -1, c2) if c2 > 1 else 0 for v in y], dtype=np.int64)
        r1 = ((n * xb - c2) // c1) % N
        r2 = ((n * yb - c1) // c2) % N
        ok = iny[r1]
        bad += int(np.count_nonzero(~ok))
        r1, r2, xb, yb = r1[ok], r2[ok], xb[ok], yb[ok]
        counts = np.bincount(r1, minlength=N)
        bad += int(np.sum(counts[counts > 1]))
        bad += int(np.count_nonzero((r1 * r2 - 1) % N))
        v = c2 + c1 * r1
        w = c1 + c2 * r2
        div = (v % n == 0) & (w % n == 0)
        bad += int(np.count_nonzero(~div))
        v, w, xb2, yb2, r1, r2 = v[div], w[div], xb[div], yb[div], r1[div], r2[div]
        bad += int(np.count_nonzero(((v // n - xb2) % c1 != 0) | ((w // n - yb2) % c2 != 0)))
        D = abs(n * c1 * c2)
        for l, lp in zip(ls, lps):
            lhs = l * xb2 * n * c2 + lp * yb2 * n * c1
            rhs = (l * r1 + lp * r2) * c1 * c2 + l * c2 * c2 + lp * c1 * c1
            bad += int(np.count_nonzero((lhs - rhs) % D))

    rs = r_all[iny]
    if rs.size:
        xb = ((c2 + c1 * rs) // n) % c1
        unit = np.gcd(xb, c1) == 1
        bad += int(np.count_nonzero(~unit))
        xs = np.array([pow(int(v), -1, c1) if c1 > 1 else 0 for v in xb[unit]], dtype=np.int64)
        t = n - c2 * xs
        good = (t % c1 == 0)
        good[good] &= np.gcd((t[good] // c1) % c2, c2) == 1
        bad += int(np.count_nonzero(~good))
    return nX, nY, bad


def bijection_triple(c1, c2, n, ls, lps):
    ls = np.asarray(ls, dtype=np.int64)
    lps = np.asarray(lps, dtype=np.int64)
    if USE_NUMBA:
        return bijection_triple_loop(c1, c2, n, ls, lps)
    return _bijection_triple_vec(c1, c2, n, ls, lps)
