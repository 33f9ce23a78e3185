"""Shared numerical machinery.

Double-exponential (tanh-sinh) quadrature on finite intervals and the half
line, Neville-Richardson extrapolation in ``1/n``, generalized binomial
coefficients and forward differences, the Hurwitz zeta function together with
its analytic ``s``-derivative, and argument-principle zero counting.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

from . import kernels
from .errors import (
    ArgumentError,
    BudgetExceededError,
    ContourError,
    DomainError,
    PoleError,
    UnreliableCountError,
)

__all__ = [
    "EvalResult",
    "SeriesConfig",
    "QuadratureConfig",
    "Rectangle",
    "ZeroCount",
    "expm1",
    "integrate_adaptive",
    "integrate_halfline",
    "binomial_general",
    "forward_differences",
    "richardson_extrapolate",
    "hurwitz_zeta_with_derivative",
    "zero_count_argument_principle",
    "sinpi",
    "cospi",
    "is_nonpositive_integer",
]

EPS = np.finfo(float).eps


@dataclass(frozen=True)
class EvalResult:
    """A computed value with an absolute error estimate and a work counter."""

    value: complex
    err_estimate: float
    work: int

    def __post_init__(self):
        if not cmath.isfinite(complex(self.value)):
            raise DomainError(f"non-finite result {self.value!r}")
        if not (self.err_estimate >= 0.0):
            raise ArgumentError(f"err_estimate must be >= 0, got {self.err_estimate!r}")
        if self.work < 0:
            raise ArgumentError(f"work must be >= 0, got {self.work!r}")

    @property
    def real(self) -> float:
        return complex(self.value).real

    def as_dict(self) -> dict:
        v = complex(self.value)
        return {
            "value": {"re": v.real, "im": v.imag},
            "err_estimate": float(self.err_estimate),
            "work": int(self.work),
        }


@dataclass(frozen=True)
class SeriesConfig:
    max_terms: int = 10**6
    abs_tol: float = 1e-12
    rel_tol: float = 1e-12

    def __post_init__(self):
        if int(self.max_terms) < 1:
            raise ArgumentError("max_terms must be >= 1")
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise ArgumentError("tolerances must be positive")


@dataclass(frozen=True)
class QuadratureConfig:
    max_subdivisions: int = 64
    abs_tol: float = 1e-14
    rel_tol: float = 1e-12

    def __post_init__(self):
        if int(self.max_subdivisions) < 1:
            raise ArgumentError("max_subdivisions must be >= 1")
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise ArgumentError("tolerances must be positive")


@dataclass(frozen=True)
class Rectangle:
    """Axis-aligned rectangle in the complex plane."""

    re_min: float
    re_max: float
    im_min: float
    im_max: float

    def __post_init__(self):
        if not (self.re_min < self.re_max and self.im_min < self.im_max):
            raise ArgumentError(f"degenerate rectangle {self}")

    @property
    def corners(self) -> tuple[complex, complex, complex, complex]:
        """Counter-clockwise, starting bottom-left."""
        return (
            complex(self.re_min, self.im_min),
            complex(self.re_max, self.im_min),
            complex(self.re_max, self.im_max),
            complex(self.re_min, self.im_max),
        )

    def contains(self, z: complex) -> bool:
        return self.re_min < z.real < self.re_max and self.im_min < z.imag < self.im_max

    def boundary_distance(self, z: complex) -> float:
        """Distance from ``z`` to the boundary curve."""
        x, y = z.real, z.imag
        dx = max(self.re_min - x, 0.0, x - self.re_max)
        dy = max(self.im_min - y, 0.0, y - self.im_max)
        if dx == 0.0 and dy == 0.0:
            return min(x - self.re_min, self.re_max - x, y - self.im_min, self.im_max - y)
        return math.hypot(dx, dy)

    def split(self) -> tuple["Rectangle", "Rectangle"]:
        """Halve across the longer side."""
        if self.re_max - self.re_min >= self.im_max - self.im_min:
            mid = 0.5 * (self.re_min + self.re_max)
            return (
                Rectangle(self.re_min, mid, self.im_min, self.im_max),
                Rectangle(mid, self.re_max, self.im_min, self.im_max),
            )
        mid = 0.5 * (self.im_min + self.im_max)
        return (
            Rectangle(self.re_min, self.re_max, self.im_min, mid),
            Rectangle(self.re_min, self.re_max, mid, self.im_max),
        )

    def as_dict(self) -> dict:
        return {"re_min": self.re_min, "re_max": self.re_max, "im_min": self.im_min, "im_max": self.im_max}


# ---------------------------------------------------------------------------
# small helpers


def is_nonpositive_integer(s) -> bool:
    s = complex(s)
    return s.imag == 0.0 and s.real <= 0.0 and s.real == math.floor(s.real)


def sinpi(z):
    """sin(pi z) with exact argument reduction on the real part."""
    z = complex(z)
    n = round(z.real)
    r = complex(z.real - n, z.imag)
    v = cmath.sin(math.pi * r)
    return -v if n % 2 else v


def cospi(z):
    z = complex(z)
    n = round(z.real)
    r = complex(z.real - n, z.imag)
    v = cmath.cos(math.pi * r)
    return -v if n % 2 else v


def expm1(z):
    """``exp(z) - 1`` for real or complex ``z`` (scalar or array), accurate near 0."""
    arr = np.asarray(z)
    if not np.iscomplexobj(arr):
        return np.expm1(z)
    # exp(x+iy) - 1 = expm1(x) cos y - 2 sin^2(y/2) + i e^x sin y
    x = arr.real
    y = arr.imag
    em = np.expm1(x)
    half = np.sin(0.5 * y)
    out = (em * np.cos(y) - 2.0 * half * half) + 1j * (np.exp(x) * np.sin(y))
    return out if out.ndim else complex(out)


def _vectorized(f: Callable) -> Callable[[np.ndarray], np.ndarray]:
    """Wrap ``f`` so it maps arrays to arrays, whether or not it is a ufunc."""
    state: dict = {}

    def g(x: np.ndarray) -> np.ndarray:
        if state.get("vector", True):
            try:
                y = np.asarray(f(x))
                if y.shape == x.shape:
                    state["vector"] = True
                    return y
            except (TypeError, ValueError):
                pass
            state["vector"] = False
        return np.asarray([f(float(xi)) for xi in x])

    return g


# ---------------------------------------------------------------------------
# tanh-sinh quadrature

_TS_TMAX = 6.5
_TS_MAX_LEVEL = 8
_TS_MIN_LEVEL = 3
_TS_TINY = 1e-290


@lru_cache(maxsize=None)
def _ts_level(level: int) -> tuple[np.ndarray, np.ndarray]:
    """Parameters t > 0 new at ``level`` with endpoint offsets and weights.

    Offsets are ``1 - tanh(pi/2 sinh t)`` computed without cancellation;
    weights are the Jacobian ``pi/2 cosh t / cosh^2(pi/2 sinh t)``.
    """
    h = 2.0**-level
    if level == 0:
        t = np.arange(1, int(_TS_TMAX) + 1, dtype=float)
    else:
        t = h * np.arange(1, int(_TS_TMAX / h) + 1, 2, dtype=float)
    u = 0.5 * math.pi * np.sinh(t)
    e = np.exp(-2.0 * u)
    offset = 2.0 * e / (1.0 + e)
    weight = 0.5 * math.pi * np.cosh(t) * 4.0 * e / (1.0 + e) ** 2
    keep = offset > 0.0
    return offset[keep], weight[keep]


def _ts_sum(g, a: float, b: float, level: int) -> tuple[complex, float, int]:
    """Weighted sum over the nodes new at ``level`` (no h factor)."""
    half = 0.5 * (b - a)
    offset, weight = _ts_level(level)
    left = a + half * offset
    right = b - half * offset
    # nodes closer than _TS_TINY to an endpoint are dropped (1/t overflows there)
    ok_l = (left - a > _TS_TINY) & (left < b)
    ok_r = (b - right > _TS_TINY) & (right > a)
    xs = np.concatenate([left[ok_l], right[ok_r]])
    ws = np.concatenate([weight[ok_l], weight[ok_r]])
    if level == 0:
        xs = np.concatenate([[0.5 * (a + b)], xs])
        ws = np.concatenate([[0.5 * math.pi], ws])
    if xs.size == 0:
        return 0j, 0.0, 0
    ys = g(xs)
    if not np.all(np.isfinite(ys)):
        bad = xs[~np.isfinite(ys)][0]
        raise DomainError(f"integrand is not finite at t={bad!r}")
    total = half * np.sum(ws * ys)
    l1 = half * np.sum(ws * np.abs(ys))
    return complex(total), float(l1), int(xs.size)


def _ts_interval(g, a, b, abs_tol, rel_tol):
    """Level-refined tanh-sinh on one interval. Returns (value, err, work, converged)."""
    s, l1, work = _ts_sum(g, a, b, 0)
    prev = s
    err = math.inf
    for level in range(1, _TS_MAX_LEVEL + 1):
        ds, dl1, dw = _ts_sum(g, a, b, level)
        s += ds
        l1 += dl1
        work += dw
        h = 2.0**-level
        cur = h * s
        err = abs(cur - prev)
        noise = 64.0 * EPS * h * l1
        prev = cur
        if level >= _TS_MIN_LEVEL and err <= max(abs_tol, rel_tol * abs(cur), noise):
            return cur, max(err, noise), work, True
    return prev, err, work, False


def integrate_adaptive(
    f: Callable,
    a: float,
    b: float,
    cfg: QuadratureConfig | None = None,
) -> EvalResult:
    """Integrate ``f`` over ``(a, b)`` without evaluating the endpoints.

    Each interval is handled by tanh-sinh quadrature refined level by level
    (the error estimate is the change between successive levels); intervals
    that do not settle are bisected, up to ``cfg.max_subdivisions`` times.
    Integrable power or log singularities at the endpoints are fine as long as
    the singular endpoint is representable near the singularity (singularities
    at ``0`` are ideal).

    ``f`` may be scalar or vectorised, real or complex valued.
    """
    cfg = cfg or QuadratureConfig()
    a = float(a)
    b = float(b)
    if not a < b:
        raise ArgumentError(f"need a < b, got a={a}, b={b}")
    g = _vectorized(f)
    width = b - a
    pending = [(a, b)]
    total = 0j
    err = 0.0
    work = 0
    splits = 0
    while pending:
        lo, hi = pending.pop()
        share = (hi - lo) / width
        val, e, w, ok = _ts_interval(g, lo, hi, cfg.abs_tol * share, cfg.rel_tol)
        work += w
        if ok:
            total += val
            err += e
            continue
        if splits >= cfg.max_subdivisions:
            best = total + val + sum(_ts_interval(g, p, q, cfg.abs_tol, cfg.rel_tol)[0] for p, q in pending)
            raise BudgetExceededError(
                f"quadrature on ({a}, {b}) did not converge within {cfg.max_subdivisions} subdivisions",
                best_estimate=best,
                err_estimate=err + e,
            )
        splits += 1
        mid = 0.5 * (lo + hi)
        pending.append((mid, hi))
        pending.append((lo, mid))
    value = total.real if total.imag == 0.0 else total
    return EvalResult(value, err, work)


def integrate_halfline(
    f: Callable,
    cfg: QuadratureConfig | None = None,
    lower: float = 0.0,
) -> EvalResult:
    """Integrate ``f`` over ``(lower, inf)``; ``f`` should decay exponentially.

    ``(lower, lower + 1)`` is integrated directly, so a singularity at
    ``lower`` keeps full resolution; the tail uses ``t = lower + 1 - log u``,
    ``u`` in ``(0, 1)``, which is exact for a pure ``e^{-t}`` factor.
    """
    cfg = cfg or QuadratureConfig()
    g = _vectorized(f)
    probe = lower + 2.0 ** np.arange(3, 11)
    mags = np.abs(g(probe))
    if np.any(~np.isfinite(mags)):
        raise DomainError("integrand is not finite on the tail")
    if mags[-1] > 1e-300 and mags[-1] >= np.max(mags[:-1]):
        raise DomainError("integrand does not decay on the half line")

    head = integrate_adaptive(g, lower, lower + 1.0, cfg)
    start = lower + 1.0

    def mapped(u):
        return g(start - np.log(u)) / u

    tail = integrate_adaptive(mapped, 0.0, 1.0, cfg)
    return EvalResult(head.value + tail.value, head.err_estimate + tail.err_estimate, head.work + tail.work)


# ---------------------------------------------------------------------------
# combinatorics and extrapolation


def binomial_general(s, k: int) -> complex:
    """Generalized binomial coefficient s(s-1)...(s-k+1)/k! for complex ``s``."""
    if k < 0:
        raise ArgumentError("k must be non-negative")
    out = 1.0 + 0j if isinstance(s, complex) else 1.0
    for j in range(k):
        out = out * (s - j) / (j + 1)
    return out


def forward_differences(values: Sequence[float]) -> np.ndarray:
    """Leading forward differences ``[v0, Dv0, D^2 v0, ...]``."""
    v = np.asarray(values, dtype=float)
    if v.size == 0:
        raise ArgumentError("forward_differences needs at least one value")
    out = np.empty(v.size)
    for n in range(v.size):
        out[n] = v[0]
        v = np.diff(v)
    return out


def richardson_extrapolate(seq: Sequence[tuple[int, complex]]) -> EvalResult:
    """Extrapolate ``value(n) ~ L + c1/n + c2/n^2 + ...`` to ``n -> inf``.

    Neville's scheme in ``h = 1/n``. Columns are accepted while the change
    along the last row keeps shrinking; the error estimate is the last
    accepted change.
    """
    pts = [(int(n), v) for n, v in seq]
    if len(pts) < 2:
        raise ArgumentError("richardson_extrapolate needs at least two entries")
    ns = [n for n, _ in pts]
    if any(b <= a for a, b in zip(ns, ns[1:])):
        raise ArgumentError("n must be strictly increasing")
    row = [v for _, v in pts]
    m = len(row)
    best = row[-1]
    best_err = math.inf
    last_change = math.inf
    col = row
    for j in range(1, m):
        # col[i] holds the column-(j-1) entry for point i + j - 1
        col = [
            col[i] + (col[i] - col[i - 1]) * ns[i - 1] / (ns[i + j - 1] - ns[i - 1])
            for i in range(1, len(col))
        ]
        cand = col[-1]
        change = abs(cand - best)
        if j > 1 and change >= last_change:
            break
        best, best_err, last_change = cand, change, change
    return EvalResult(best, float(best_err), m)


# ---------------------------------------------------------------------------
# Hurwitz zeta via Euler-Maclaurin

# B_2 .. B_18 as exact fractions; the last one only feeds the error estimate.
_BERNOULLI = [
    Fraction(1, 6),
    Fraction(-1, 30),
    Fraction(1, 42),
    Fraction(-1, 30),
    Fraction(5, 66),
    Fraction(-691, 2730),
    Fraction(7, 6),
    Fraction(-3617, 510),
    Fraction(43867, 798),
]
_EM_ORDER = 8
_EM_COEF = [float(b / math.factorial(2 * j)) for j, b in enumerate(_BERNOULLI, start=1)]


def hurwitz_zeta_with_derivative(
    s,
    x: float,
    cfg: SeriesConfig | None = None,
) -> tuple[EvalResult, EvalResult]:
    """Return ``zeta(s, x)`` and ``d/ds zeta(s, x)``.

    Euler-Maclaurin after shifting to ``a = x + N >= max(10, |s|)``, with
    Bernoulli corrections through B_16. Every term is differentiated in ``s``
    analytically.
    """
    cfg = cfg or SeriesConfig()
    s = complex(s)
    x = float(x)
    if not x > 0.0:
        raise DomainError(f"Hurwitz zeta needs x > 0, got {x}")
    if s == 1.0:
        raise PoleError("zeta(s, x) has a pole at s = 1")
    shift = max(0, math.ceil(max(10.0, abs(s)) - x))
    if shift > cfg.max_terms:
        raise BudgetExceededError(f"Euler-Maclaurin shift {shift} exceeds max_terms={cfg.max_terms}")
    z, dz = kernels.hurwitz_direct_sums(s, x, shift)
    a = x + shift
    la = math.log(a)
    a_s = cmath.exp(-s * la)  # a^-s
    sm1 = s - 1.0
    z += a * a_s / sm1 + 0.5 * a_s
    dz += -la * a * a_s / sm1 - a * a_s / (sm1 * sm1) - 0.5 * la * a_s

    # p = s (s+1) ... (s+2j-2), dp its s-derivative; power = a^(-s-2j+1)
    p = s
    dp = 1.0 + 0j
    power = a_s / a
    z_err = dz_err = 0.0
    for j in range(1, _EM_ORDER + 2):
        if j > 1:
            for i in (2 * j - 3, 2 * j - 2):
                dp = dp * (s + i) + p
                p = p * (s + i)
            power /= a * a
        tz = _EM_COEF[j - 1] * p * power
        tdz = _EM_COEF[j - 1] * (dp - la * p) * power
        if j <= _EM_ORDER:
            z += tz
            dz += tdz
        else:
            z_err, dz_err = abs(tz), abs(tdz)
    # rounding: for Re s < 0 the pieces grow like a^(1-s) and cancel heavily
    big = abs(a * a_s / sm1) + abs(z) + 1.0
    z_err += 8 * EPS * big
    dz_err += 8 * EPS * (big * (1.0 + la) + abs(dz))
    work = shift + _EM_ORDER
    return EvalResult(z, z_err, work), EvalResult(dz, dz_err, work)


# ---------------------------------------------------------------------------
# argument principle


@dataclass(frozen=True)
class ZeroCount:
    """Outcome of a contour count: zeros minus poles inside."""

    count: int
    integral: complex
    diagnostic: float
    evaluations: int
    details: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "count": self.count,
            "integral": {"re": self.integral.real, "im": self.integral.imag},
            "diagnostic": self.diagnostic,
            "evaluations": self.evaluations,
        }


_GL_PANEL = 16
_CONTOUR_ZERO_RTOL = 1e-12
_MAX_DIAGNOSTIC = 0.25


def zero_count_argument_principle(
    f: Callable[[complex], complex],
    rect: Rectangle,
    nodes: int = 128,
) -> ZeroCount:
    """Count zeros minus poles of ``f`` inside ``rect``.

    ``(1/2 pi i) \\oint f'/f`` over the boundary with composite Gauss-Legendre
    panels (``nodes`` points per edge); ``f'`` is a central difference along
    the edge with a step proportional to the panel length.
    """
    if nodes < 1:
        raise ArgumentError("nodes must be positive")
    panels = max(1, math.ceil(nodes / _GL_PANEL))
    gx, gw = np.polynomial.legendre.leggauss(_GL_PANEL)
    corners = rect.corners
    total = 0j
    evaluations = 0
    fmax = 0.0
    fmin = math.inf
    for k in range(4):
        z0, z1 = corners[k], corners[(k + 1) % 4]
        edge = z1 - z0
        direction = edge / abs(edge)
        plen = abs(edge) / panels
        h = 1e-3 * plen
        for p in range(panels):
            c0 = z0 + edge * (p / panels)
            for xi, wi in zip(gx, gw):
                z = c0 + direction * plen * 0.5 * (xi + 1.0)
                fz = complex(f(z))
                fp = complex(f(z + h * direction))
                fm = complex(f(z - h * direction))
                evaluations += 3
                mag = abs(fz)
                if not cmath.isfinite(fz) or not cmath.isfinite(fp) or not cmath.isfinite(fm):
                    raise ContourError(f"f is not finite on the contour near {z}")
                fmax = max(fmax, mag)
                fmin = min(fmin, mag)
                if mag == 0.0:
                    raise ContourError(f"contour passes through a zero at {z}")
                deriv = (fp - fm) / (2.0 * h * direction)
                total += wi * 0.5 * plen * direction * deriv / fz
    if fmin < _CONTOUR_ZERO_RTOL * fmax:
        raise ContourError(f"|f| drops to {fmin:.3g} on the contour (max {fmax:.3g}); move the rectangle")
    integral = total / (2j * math.pi)
    count = int(round(integral.real))
    diagnostic = abs(integral - count)
    if diagnostic > _MAX_DIAGNOSTIC:
        raise UnreliableCountError(
            f"argument-principle integral {integral:.6g} is not close to an integer",
            integral=integral,
            diagnostic=diagnostic,
        )
    return ZeroCount(count, complex(integral), float(diagnostic), evaluations)
