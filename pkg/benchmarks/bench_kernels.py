"""Time the numba loops against the numpy fallbacks.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Each kernel is called once untimed (this triggers or loads the numba
compilation), then timed as the best of ``--repeat`` runs. The two results are
compared so a speed-up never hides a disagreement.
"""

import argparse
import time

import numpy as np

from gamma_zoo import kernels
from gamma_zoo._jit import USE_NUMBA


def best_of(fn, repeat):
    fn()
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def first(x):
    return x[0] if isinstance(x, tuple) else x


CASES = [
    ("log1p_sum(s=0.5+1j, n=4096)", "log1p_sum", (0.5 + 1j, 4096)),
    ("log1p_minus_sum(s=2.5, n=10^6)", "log1p_minus_sum", (2.5 + 0j, 10**6)),
    ("harmonic_sum(n=10^6)", "harmonic_sum", (10**6,)),
    ("kummer_sum(x=0.25, K=10^5)", "kummer_sum", (0.25, 10**5)),
    ("stern_series(s=0.1, tol=1e-8)", "stern_series", (0.1 + 0j, 1e-8, 10**7, 10)),
    ("newton_coefficients(n=4096)", "newton_coefficients", (4096,)),
    ("hurwitz_direct_sums(s=-3, x=0.5, N=10^5)", "hurwitz_direct_sums", (-3.0 + 0j, 0.5, 10**5)),
]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    coeffs = kernels.newton_coefficients_numpy(4096)
    cases = CASES + [("newton_series(s=0.25, 4096 coeffs)", "newton_series", (0.25 + 0j, coeffs, 1e-12, 10))]

    print(f"numba active: {USE_NUMBA}")
    print(f"{'kernel':44s} {'loop [ms]':>11s} {'numpy [ms]':>11s} {'speed-up':>9s} {'max rel diff':>12s}")
    for label, name, fargs in cases:
        loop = getattr(kernels, name + "_loop")
        vec = getattr(kernels, name + "_numpy")
        t_loop, r_loop = best_of(lambda: loop(*fargs), args.repeat)
        t_vec, r_vec = best_of(lambda: vec(*fargs), args.repeat)
        a, b = np.asarray(first(r_loop)), np.asarray(first(r_vec))
        diff = float(np.max(np.abs(a - b) / np.maximum(np.abs(b), 1e-300)))
        print(f"{label:44s} {1e3 * t_loop:11.3f} {1e3 * t_vec:11.3f} {t_vec / t_loop:9.2f} {diff:12.2e}")


if __name__ == "__main__":
    main()
