"""Hot inner loops.

Each kernel exists twice: an explicit loop (``*_loop``, compiled with numba
when available) and a vectorised numpy version (``*_numpy``). The public names
bind to one of them depending on :data:`gamma_zoo._jit.USE_NUMBA`; both stay
importable so tests and ``benchmarks/`` can compare them.

Arguments are plain scalars/arrays; ``s`` is always passed as ``complex``.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

from ._jit import USE_NUMBA, njit

__all__ = [
    "log1p_sum",
    "log1p_minus_sum",
    "harmonic_sum",
    "kummer_sum",
    "stern_series",
    "newton_series",
    "newton_coefficients",
    "hurwitz_direct_sums",
    "NEWTON_NODE_STEP",
]

# Below this |z| the log1p(z) - z series is used; 14 terms reach 1e-19.
_SERIES_RADIUS = 0.05
_SERIES_TERMS = 14

_CHUNK = 1 << 18

# Trapezoid grid (in x = log t) for the Newton coefficients. Binary step keeps
# the node positions exact.
NEWTON_NODE_STEP = 1.0 / 32.0
_NEWTON_X_LO = -40.0
_NEWTON_X_HI = 4.5


# ---------------------------------------------------------------------------
# log(1 + z) and log(1 + z) - z


@njit
def _log1p_minus_z(z):
    if abs(z) < _SERIES_RADIUS:
        acc = 0j
        for m in range(_SERIES_TERMS, 1, -1):
            coef = 1.0 / m if m % 2 == 1 else -1.0 / m
            acc = acc * z + coef
        return acc * z * z
    return cmath.log(1.0 + z) - z


@njit
def _log1p(z):
    return _log1p_minus_z(z) + z


def _log1p_minus_z_numpy(z: np.ndarray) -> np.ndarray:
    out = np.empty_like(z)
    small = np.abs(z) < _SERIES_RADIUS
    zs = z[small]
    acc = np.zeros_like(zs)
    for m in range(_SERIES_TERMS, 1, -1):
        coef = 1.0 / m if m % 2 == 1 else -1.0 / m
        acc = acc * zs + coef
    out[small] = acc * zs * zs
    zb = z[~small]
    out[~small] = np.log(1.0 + zb) - zb
    return out


@njit
def log1p_sum_loop(s, n):
    """Kahan-summed sum_{k=1}^{n} log(1 + s/k)."""
    total = 0j
    comp = 0j
    for k in range(n, 0, -1):
        y = _log1p(s / k) - comp
        t = total + y
        comp = (t - total) - y
        total = t
    return total


def log1p_sum_numpy(s, n):
    total = 0j
    for start in range(1, n + 1, _CHUNK):
        k = np.arange(start, min(n, start + _CHUNK - 1) + 1, dtype=np.float64)
        z = complex(s) / k
        total += np.sum(_log1p_minus_z_numpy(z) + z)
    return complex(total)


@njit
def log1p_minus_sum_loop(s, n):
    """Kahan-summed sum_{k=1}^{n} [log(1 + s/k) - s/k]."""
    total = 0j
    comp = 0j
    for k in range(n, 0, -1):
        y = _log1p_minus_z(s / k) - comp
        t = total + y
        comp = (t - total) - y
        total = t
    return total


def log1p_minus_sum_numpy(s, n):
    total = 0j
    for start in range(1, n + 1, _CHUNK):
        k = np.arange(start, min(n, start + _CHUNK - 1) + 1, dtype=np.float64)
        total += np.sum(_log1p_minus_z_numpy(complex(s) / k))
    return complex(total)


# ---------------------------------------------------------------------------
# harmonic numbers


@njit
def harmonic_sum_loop(n):
    total = 0.0
    comp = 0.0
    for k in range(n, 0, -1):
        y = 1.0 / k - comp
        t = total + y
        comp = (t - total) - y
        total = t
    return total


def harmonic_sum_numpy(n):
    total = 0.0
    for start in range(1, n + 1, _CHUNK):
        k = np.arange(start, min(n, start + _CHUNK - 1) + 1, dtype=np.float64)
        total += np.sum(1.0 / k[::-1])
    return float(total)


# ---------------------------------------------------------------------------
# Kummer's Fourier series


@njit
def kummer_sum_loop(x, terms):
    """sum_{k=1}^{terms} log(k)/k * sin(2 pi k x); also returns the last term."""
    total = 0.0
    comp = 0.0
    last = 0.0
    for k in range(1, terms + 1):
        frac = (k * x) % 1.0
        last = math.log(k) / k * math.sin(2.0 * math.pi * frac)
        y = last - comp
        t = total + y
        comp = (t - total) - y
        total = t
    return total, last


def kummer_sum_numpy(x, terms):
    k = np.arange(1, terms + 1, dtype=np.float64)
    vals = np.log(k) / k * np.sin(2.0 * np.pi * np.mod(k * x, 1.0))
    return float(np.sum(vals)), float(vals[-1])


# ---------------------------------------------------------------------------
# Binomial (Newton) series sum_k binom(s, k) * w_k with a power-law tail
# estimate |t_k| * k / (Re s + 1).


@njit
def stern_series_loop(s, tol, max_terms, kmin):
    """sum_{k>=1} (-1)^(k+1) binom(s, k) / k.

    Returns (sum, terms used, tail estimate).
    """
    decay = s.real + 1.0
    b = 1.0 + 0j
    total = 0j
    comp = 0j
    tail = math.inf
    k = 0
    for k in range(1, max_terms + 1):
        b = b * (s - (k - 1)) / k
        term = b / k if k % 2 == 1 else -b / k
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
        tail = abs(term) * k / decay
        if k >= kmin and tail < tol:
            break
    return total, k, tail


def stern_series_numpy(s, tol, max_terms, kmin):
    s = complex(s)
    decay = s.real + 1.0
    b_prev = 1.0 + 0j
    total = 0j
    start = 1
    block = 1024
    tail = math.inf
    while start <= max_terms:
        stop = min(max_terms, start + block - 1)
        k = np.arange(start, stop + 1, dtype=np.float64)
        b = b_prev * np.cumprod((s - (k - 1.0)) / k)
        sign = np.where(k % 2 == 1, 1.0, -1.0)
        terms = sign * b / k
        tails = np.abs(terms) * k / decay
        hit = np.nonzero((k >= kmin) & (tails < tol))[0]
        if hit.size:
            i = hit[0]
            return complex(total + np.sum(terms[: i + 1])), int(k[i]), float(tails[i])
        total += np.sum(terms)
        tail = float(tails[-1])
        b_prev = b[-1]
        start = stop + 1
        block *= 2
    return complex(total), max_terms, tail


@njit
def newton_series_loop(s, coeffs, tol, kmin):
    """sum_{n>=2} binom(s, n) * coeffs[n] over the available coefficients.

    Returns (sum, last index used, tail estimate).
    """
    decay = s.real + 1.0
    b = s  # binom(s, 1)
    total = 0j
    comp = 0j
    tail = math.inf
    n = 1
    for n in range(2, coeffs.shape[0]):
        b = b * (s - (n - 1)) / n
        term = b * coeffs[n]
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
        tail = abs(term) * n / decay
        if n >= kmin and tail < tol:
            break
    return total, n, tail


def newton_series_numpy(s, coeffs, tol, kmin):
    s = complex(s)
    decay = s.real + 1.0
    size = coeffs.shape[0]
    b_prev = s
    total = 0j
    start = 2
    block = 1024
    tail = math.inf
    last = 1
    while start < size:
        stop = min(size - 1, start + block - 1)
        n = np.arange(start, stop + 1, dtype=np.float64)
        b = b_prev * np.cumprod((s - (n - 1.0)) / n)
        terms = b * coeffs[start : stop + 1]
        tails = np.abs(terms) * n / decay
        hit = np.nonzero((n >= kmin) & (tails < tol))[0]
        if hit.size:
            i = hit[0]
            return complex(total + np.sum(terms[: i + 1])), int(n[i]), float(tails[i])
        total += np.sum(terms)
        tail = float(tails[-1])
        last = stop
        b_prev = b[-1]
        start = stop + 1
        block *= 2
    return complex(total), last, tail


# ---------------------------------------------------------------------------
# Newton coefficients c_n = Delta^n log(m!) at m = 0, via
#   c_n = (-1)^n * int_R exp(-e^x) (1 - exp(-e^x))^(n-1) dx   (n >= 2)
# evaluated by the trapezoid rule, which converges geometrically here.


def _newton_nodes():
    count = int(round((_NEWTON_X_HI - _NEWTON_X_LO) / NEWTON_NODE_STEP))
    x = _NEWTON_X_LO + NEWTON_NODE_STEP * np.arange(count + 1, dtype=np.float64)
    t = np.exp(x)
    return np.exp(-t), -np.expm1(-t)


@njit
def _newton_coefficients_kernel(nmax, weight, ratio, h):
    out = np.zeros(nmax + 1)
    w = weight.copy()
    m = w.shape[0]
    for n in range(2, nmax + 1):
        total = 0.0
        comp = 0.0
        for i in range(m):
            w[i] *= ratio[i]
            y = w[i] - comp
            t = total + y
            comp = (t - total) - y
            total = t
        out[n] = h * total if n % 2 == 0 else -h * total
    return out


def newton_coefficients_loop(nmax):
    weight, ratio = _newton_nodes()
    return _newton_coefficients_kernel(int(nmax), weight, ratio, NEWTON_NODE_STEP)


def newton_coefficients_numpy(nmax):
    w, ratio = _newton_nodes()
    out = np.zeros(int(nmax) + 1)
    for n in range(2, int(nmax) + 1):
        w = w * ratio
        out[n] = NEWTON_NODE_STEP * np.sum(w) * (1.0 if n % 2 == 0 else -1.0)
    return out


# ---------------------------------------------------------------------------
# Hurwitz zeta head sums


@njit
def hurwitz_direct_sums_loop(s, x, count):
    """(sum_{n<count} (x+n)^-s, sum_{n<count} -log(x+n) (x+n)^-s)."""
    z = 0j
    dz = 0j
    for n in range(count):
        lg = math.log(x + n)
        p = cmath.exp(-s * lg)
        z += p
        dz -= lg * p
    return z, dz


def hurwitz_direct_sums_numpy(s, x, count):
    if count == 0:
        return 0j, 0j
    lg = np.log(x + np.arange(count, dtype=np.float64))
    p = np.exp(-complex(s) * lg)
    return complex(np.sum(p)), complex(-np.sum(lg * p))


if USE_NUMBA:
    log1p_sum = log1p_sum_loop
    log1p_minus_sum = log1p_minus_sum_loop
    harmonic_sum = harmonic_sum_loop
    kummer_sum = kummer_sum_loop
    stern_series = stern_series_loop
    newton_series = newton_series_loop
    newton_coefficients = newton_coefficients_loop
    hurwitz_direct_sums = hurwitz_direct_sums_loop
else:
    log1p_sum = log1p_sum_numpy
    log1p_minus_sum = log1p_minus_sum_numpy
    harmonic_sum = harmonic_sum_numpy
    kummer_sum = kummer_sum_numpy
    stern_series = stern_series_numpy
    newton_series = newton_series_numpy
    newton_coefficients = newton_coefficients_numpy
    hurwitz_direct_sums = hurwitz_direct_sums_numpy
