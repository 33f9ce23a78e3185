"""The numba loops and the numpy fallbacks must agree."""

import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gamma_zoo import kernels

S = st.complex_numbers(max_magnitude=6, allow_nan=False, allow_infinity=False).filter(lambda z: z.real > -0.9)
# near Re s = -1 the Stern series needs ~1e7 terms; keep the property test quick
S_STERN = st.complex_numbers(max_magnitude=4, allow_nan=False, allow_infinity=False).filter(lambda z: z.real > 0.3)


def close(a, b, rel=1e-12):
    a, b = np.asarray(a, dtype=complex), np.asarray(b, dtype=complex)
    return np.all(np.abs(a - b) <= rel * np.maximum(np.abs(b), 1.0))


@settings(max_examples=40, deadline=None)
@given(st.complex_numbers(max_magnitude=50, allow_nan=False, allow_infinity=False), st.integers(1, 5000))
def test_log1p_sums(s, n):
    if any(abs(s + k) < 1e-3 for k in range(1, n + 1)):
        return
    assert close(kernels.log1p_sum_loop(s, n), kernels.log1p_sum_numpy(s, n), 1e-11)
    assert close(kernels.log1p_minus_sum_loop(s, n), kernels.log1p_minus_sum_numpy(s, n), 1e-11)


@pytest.mark.parametrize("n", [1, 10, 10**5, 10**6 + 3])
def test_harmonic_sum(n):
    a, b = kernels.harmonic_sum_loop(n), kernels.harmonic_sum_numpy(n)
    assert abs(a - b) < 1e-13


@settings(max_examples=30, deadline=None)
@given(st.floats(0.01, 0.99), st.integers(1, 20000))
def test_kummer_sum(x, K):
    (ta, la), (tb, lb) = kernels.kummer_sum_loop(x, K), kernels.kummer_sum_numpy(x, K)
    assert abs(ta - tb) < 1e-11 and abs(la - lb) < 1e-15


@settings(max_examples=25, deadline=None)
@given(S_STERN)
def test_stern_series(s):
    a = kernels.stern_series_loop(s, 1e-8, 10**7, 10 + int(2 * abs(s)))
    b = kernels.stern_series_numpy(s, 1e-8, 10**7, 10 + int(2 * abs(s)))
    assert abs(a[0] - b[0]) < 1e-10
    assert a[1] == b[1]


def test_newton_coefficients():
    assert close(kernels.newton_coefficients_loop(2048), kernels.newton_coefficients_numpy(2048), 1e-12)


@settings(max_examples=25, deadline=None)
@given(S)
def test_newton_series(s):
    c = kernels.newton_coefficients_numpy(4096)
    a = kernels.newton_series_loop(s, c, 1e-10, 10)
    b = kernels.newton_series_numpy(s, c, 1e-10, 10)
    assert abs(a[0] - b[0]) < 1e-10 * max(1, abs(a[0]))
    assert a[1] == b[1]


@settings(max_examples=30, deadline=None)
@given(st.floats(-8, 4), st.floats(-3, 3), st.floats(0.1, 5), st.integers(0, 2000))
def test_hurwitz_direct_sums(sr, si, x, count):
    a = kernels.hurwitz_direct_sums_loop(complex(sr, si), x, count)
    b = kernels.hurwitz_direct_sums_numpy(complex(sr, si), x, count)
    assert close(a, b, 1e-11)


def test_public_names_follow_flag():
    from gamma_zoo._jit import USE_NUMBA

    suffix = "_loop" if USE_NUMBA else "_numpy"
    for name in ("log1p_sum", "harmonic_sum", "stern_series", "hurwitz_direct_sums"):
        assert getattr(kernels, name) is getattr(kernels, name + suffix)


def test_no_jit_flag_switches_path():
    code = "from gamma_zoo import kernels, _jit; print(_jit.USE_NUMBA, kernels.harmonic_sum is kernels.harmonic_sum_numpy)"
    env = dict(os.environ, GAMMA_ZOO_NO_JIT="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, timeout=120)
    assert out.stdout.split() == ["False", "True"]


def test_no_jit_results_match():
    code = (
        "from gamma_zoo import gamma_euler_integral, gamma_weierstrass_product, digamma_stern, loggamma_hermite;"
        "print(repr(complex(gamma_weierstrass_product(0.3+1j).value)), repr(complex(digamma_stern(0.4).value)),"
        " repr(complex(loggamma_hermite(1.3).value)))"
    )
    results = []
    for flag in ("1", "0"):
        env = dict(os.environ, GAMMA_ZOO_NO_JIT=flag)
        out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, timeout=300)
        assert out.returncode == 0, out.stderr
        results.append([complex(v) for v in out.stdout.split()])
    for a, b in zip(*results):
        assert abs(a - b) <= 1e-10 * max(1, abs(a))
