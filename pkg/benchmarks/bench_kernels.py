"""Time the numba loop kernels against their numpy counterparts.

    python benchmarks/bench_kernels.py [--repeat N]

Both forms run in one process.  The loop forms are compiled only when numba
is enabled (the default); with AMPSUM_NUMBA=0 the comparison is plain python
against numpy.  Each row also confirms the two forms agree.
"""

import argparse
import cmath
import time

import numpy as np

from ampsum import kernels
from ampsum._accel import backend
from ampsum.arith import char_group


def best_of(fn, repeat):
    fn()  # warm-up, triggers compilation
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def cases():
    chi = char_group(7)[3]
    chi_vals = np.array([chi(x) for x in range(7)], dtype=np.complex128)
    for c in (7 * 101, 7 * 1009, 7 * 10007):
        roots = np.exp(2j * np.pi * np.arange(c) / c)
        args = (chi_vals, 7, 3, 5, c, roots)
        yield f"kloosterman c={c}", lambda a=args: kernels.kloosterman_loop(*a), \
            lambda a=args: kernels._kloosterman_vec(*a)

    rows = np.array([[1, 1, 1], [3, 2, 5], [7, 3, -2], [5, 1, 6]] * 8, dtype=np.int64)
    for n in (1001, 20001):
        args = (n, rows[:, 0].copy(), rows[:, 1].copy(), rows[:, 2].copy())
        yield f"nu_counts n={n} rows={len(rows)}", lambda a=args: kernels.nu_counts_loop(*a), \
            lambda a=args: kernels._nu_counts_vec(*a)

    for c1, c2 in ((60, 84), (210, 330)):
        args = (c1, c2, 12)
        yield f"x_count c1={c1} c2={c2}", lambda a=args: kernels.x_count_brute_loop(*a), \
            lambda a=args: kernels._x_count_brute_vec(*a)

    ls = np.arange(-5, 6, dtype=np.int64)
    for c1, c2, n in ((12, 18, 6), (30, 42, 12)):
        args = (c1, c2, n, ls, ls)
        yield f"bijection c1={c1} c2={c2} n={n}", lambda a=args: kernels.bijection_triple_loop(*a), \
            lambda a=args: kernels._bijection_triple_vec(*a)


def same(a, b):
    if isinstance(a, tuple):
        return all(same(x, y) for x, y in zip(a, b))
    if isinstance(a, complex) or isinstance(b, complex):
        return cmath.isclose(complex(a), complex(b), rel_tol=1e-9, abs_tol=1e-9)
    return np.array_equal(np.asarray(a), np.asarray(b))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    print(f"loop backend: {backend()}")
    print(f"{'kernel':<34}{'loop ms':>10}{'numpy ms':>10}{'speedup':>9}  agree")
    for name, loop, vec in cases():
        t_loop, a = best_of(loop, args.repeat)
        t_vec, b = best_of(vec, args.repeat)
        print(f"{name:<34}{1e3 * t_loop:>10.3f}{1e3 * t_vec:>10.3f}{t_vec / t_loop:>9.1f}  {same(a, b)}")


if __name__ == "__main__":
    main()
