"""Independent constructions of the Gamma function.

Four classical definitions (Euler's two integrals, the Gauss limit product and
the Weierstrass product) plus a Spouge-type reference oracle that none of them
share any code with. Real arguments give real results; complex arguments give
complex results.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass, field
from typing import Callable, Union

import numpy as np

from . import kernels
from .errors import ArgumentError, BudgetExceededError, DomainError, PoleError
from .numerics import (
    EvalResult,
    QuadratureConfig,
    SeriesConfig,
    cospi,
    expm1,
    integrate_adaptive,
    integrate_halfline,
    is_nonpositive_integer,
    richardson_extrapolate,
    sinpi,
)

__all__ = [
    "GammaKind",
    "GammaConstruction",
    "GammaValue",
    "gamma_euler_log_integral",
    "gamma_euler_integral",
    "gamma_gauss_product",
    "gamma_gauss_log_product",
    "gamma_gauss_extrapolated",
    "gamma_weierstrass_product",
    "gamma_reference",
    "loggamma_reference",
    "digamma_reference",
    "rgamma_reference",
    "extend_by_recursion",
    "weierstrass_limit_check",
    "GAUSS_LADDER",
]

Number = Union[int, float, complex]

# Largest real part the integral constructions accept (Gamma overflows past 171).
_MAX_INTEGRAL_RE = 170.0

GAUSS_LADDER = tuple(2**e for e in range(6, 13))


def _is_real(s) -> bool:
    return isinstance(s, (int, float, np.integer, np.floating)) and not isinstance(s, bool)


def _shape(s, value):
    """Drop the imaginary part when the caller passed a real argument."""
    return complex(value).real if _is_real(s) else complex(value)


def _check_pole(s) -> None:
    if is_nonpositive_integer(s):
        raise PoleError(f"Gamma has a pole at s = {complex(s).real:g}")


# ---------------------------------------------------------------------------
# Reference oracle: Spouge's approximation with a = 11 (about 2e-13 relative
# for |s| <= 10, 2e-12 out to |s| = 50), reflection for Re s < 1/2.

_SPOUGE_A = 11
_SPOUGE_C = [math.sqrt(2.0 * math.pi)] + [
    (-1) ** (k - 1) / math.factorial(k - 1) * (_SPOUGE_A - k) ** (k - 0.5) * math.exp(_SPOUGE_A - k)
    for k in range(1, _SPOUGE_A)
]


def _spouge_log(s: complex) -> complex:
    z = s - 1.0
    total = _SPOUGE_C[0]
    for k in range(1, _SPOUGE_A):
        total += _SPOUGE_C[k] / (z + k)
    return (z + 0.5) * cmath.log(z + _SPOUGE_A) - (z + _SPOUGE_A) + cmath.log(total)


def _spouge_dlog(s: complex) -> complex:
    z = s - 1.0
    total = _SPOUGE_C[0]
    dtotal = 0j
    for k in range(1, _SPOUGE_A):
        total += _SPOUGE_C[k] / (z + k)
        dtotal -= _SPOUGE_C[k] / (z + k) ** 2
    za = z + _SPOUGE_A
    return cmath.log(za) + (z + 0.5) / za - 1.0 + dtotal / total


def loggamma_reference(s: Number) -> Number:
    """A logarithm of Gamma(s) (principal branch only for real s > 0)."""
    _check_pole(s)
    z = complex(s)
    if z.real >= 0.5:
        out = _spouge_log(z)
    else:
        out = math.log(math.pi) - cmath.log(sinpi(z)) - _spouge_log(1.0 - z)
    if _is_real(s) and z.real > 0:
        return out.real
    return out


def gamma_reference(s: Number) -> Number:
    """Gamma(s) from the Spouge oracle."""
    _check_pole(s)
    z = complex(s)
    try:
        if z.real >= 0.5:
            value = cmath.exp(_spouge_log(z))
        else:
            value = math.pi / (sinpi(z) * cmath.exp(_spouge_log(1.0 - z)))
    except OverflowError:
        raise DomainError(f"Gamma({s}) overflows double precision") from None
    if not cmath.isfinite(value):
        raise DomainError(f"Gamma({s}) overflows double precision")
    return _shape(s, value)


def rgamma_reference(s: Number) -> Number:
    """1/Gamma(s), entire: exactly zero at the non-positive integers."""
    if is_nonpositive_integer(s):
        return _shape(s, 0.0)
    z = complex(s)
    if z.real >= 0.5:
        value = cmath.exp(-_spouge_log(z))
    else:
        value = sinpi(z) * cmath.exp(_spouge_log(1.0 - z)) / math.pi
    return _shape(s, value)


def digamma_reference(s: Number) -> Number:
    """psi(s), the exact derivative of the oracle's log-Gamma."""
    _check_pole(s)
    z = complex(s)
    if z.real >= 0.5:
        value = _spouge_dlog(z)
    else:
        value = _spouge_dlog(1.0 - z) - math.pi * cospi(z) / sinpi(z)
    return _shape(s, value)


# ---------------------------------------------------------------------------
# Euler's integrals


def _integral_domain(s) -> complex:
    z = complex(s)
    if not z.real > 0.0:
        raise DomainError(f"integral representation needs Re s > 0, got s = {s}")
    if z.real > _MAX_INTEGRAL_RE:
        raise DomainError(f"Re s = {z.real} too large for a double-precision integral")
    return z


# Taylor coefficients of log(-log(1 - u) / u) - u/2, from u^2 to u^5
_LOGLOG_SERIES = (5.0 / 24.0, 1.0 / 8.0, 251.0 / 2880.0, 19.0 / 288.0)


def _loglog_excess(u: np.ndarray) -> np.ndarray:
    """log(-log(1 - u) / u) - u/2 for u in (0, 1)."""
    out = np.empty_like(u)
    small = u < 1e-3
    us = u[small]
    acc = np.zeros_like(us)
    for c in reversed(_LOGLOG_SERIES):
        acc = acc * us + c
    out[small] = acc * us * us
    ub = u[~small]
    out[~small] = np.log(-np.log1p(-ub) / ub) - 0.5 * ub
    return out


def _power(sm1, x):
    return np.exp(sm1 * np.log(x))


def gamma_euler_log_integral(s: Number, cfg: QuadratureConfig | None = None) -> EvalResult:
    """Gamma(s) = int_0^1 (log(1/t))^(s-1) dt.

    The interval is split at 1/2 and the right half is written in
    ``u = 1 - t``. There the integrand is u^(s-1) (1 + (s-1) u/2 + O(u^2));
    the two leading terms are integrated in closed form so the quadrature
    only sees a remainder that vanishes at u = 0, which keeps strongly
    oscillating cases (small Re s, large Im s) accurate.
    """
    z = _integral_domain(s)
    real = _is_real(s)
    sm1 = float(s) - 1.0 if real else z - 1.0

    def near_zero(t):
        return _power(sm1, -np.log(t))

    def near_one(u):
        excess = _loglog_excess(u)
        # g^(s-1) - 1 - (s-1)u/2 with g = -log(1-u)/u
        w = sm1 * (0.5 * u + excess)
        bracket = expm1(w) - 0.5 * sm1 * u
        return _power(sm1, u) * bracket

    left = integrate_adaptive(near_zero, 0.0, 0.5, cfg)
    right = integrate_adaptive(near_one, 0.0, 0.5, cfg)
    ss = float(s) if real else z
    closed = 0.5**ss / ss + 0.5 * sm1 * 0.5 ** (ss + 1.0) / (ss + 1.0)
    value = _shape(s, complex(left.value) + complex(right.value) + complex(closed))
    return EvalResult(value, left.err_estimate + right.err_estimate, left.work + right.work)


def gamma_euler_integral(s: Number, cfg: QuadratureConfig | None = None) -> EvalResult:
    """Gamma(s) = int_0^inf t^(s-1) e^(-t) dt.

    On (0, 1) the factor e^(-t) is replaced by e^(-t) - 1 + t and the
    subtracted part is integrated exactly (1/s - 1/(s+1)); the rest of the
    half line is integrated as is.
    """
    z = _integral_domain(s)
    real = _is_real(s)
    sm1 = float(s) - 1.0 if real else z - 1.0

    def head(t):
        return _power(sm1, t) * (np.expm1(-t) + t)

    def tail(t):
        return np.exp(sm1 * np.log(t) - t)

    near = integrate_adaptive(head, 0.0, 1.0, cfg)
    far = integrate_halfline(tail, cfg, lower=1.0)
    ss = float(s) if real else z
    closed = 1.0 / ss - 1.0 / (ss + 1.0)
    value = _shape(s, complex(near.value) + complex(far.value) + complex(closed))
    return EvalResult(value, near.err_estimate + far.err_estimate, near.work + far.work)


# ---------------------------------------------------------------------------
# Gauss product


def gamma_gauss_log_product(s: Number, n: int) -> complex:
    """log of n! n^s / (s (s+1) ... (s+n)), free of overflow."""
    n = int(n)
    if n < 1:
        raise ArgumentError("n must be a positive integer")
    z = complex(s)
    if z.imag == 0.0 and z.real <= 0.0 and z.real == math.floor(z.real) and -z.real <= n:
        raise PoleError(f"Gauss product has a zero factor at s = {z.real:g}")
    return z * math.log(n) - cmath.log(z) - kernels.log1p_sum(z, n)


def gamma_gauss_product(s: Number, n: int) -> Number:
    """The n-th Gauss partial product n! n^s / (s (s+1) ... (s+n))."""
    return _shape(s, cmath.exp(gamma_gauss_log_product(s, n)))


def gamma_gauss_extrapolated(s: Number, ladder=GAUSS_LADDER) -> EvalResult:
    """Richardson limit of the Gauss products along ``ladder``.

    The extrapolation acts on the logarithm, whose expansion in 1/n has the
    same structure and cannot overflow.
    """
    logs = [(n, gamma_gauss_log_product(s, n)) for n in ladder]
    lim = richardson_extrapolate(logs)
    value = cmath.exp(lim.value)
    return EvalResult(_shape(s, value), abs(value) * lim.err_estimate, sum(ladder))


# ---------------------------------------------------------------------------
# Weierstrass product

WEIERSTRASS_DEFAULT = SeriesConfig(max_terms=10**7, abs_tol=1e-12, rel_tol=1e-10)


def _weierstrass_log_reciprocal(s: complex, terms: int) -> complex:
    from .companions import euler_gamma_constant

    gamma = euler_gamma_constant().value
    return cmath.log(s) + gamma * s + kernels.log1p_minus_sum(s, terms) - s * s / (2.0 * terms)


def _weierstrass_terms(z: complex, cfg: SeriesConfig) -> tuple[int, float]:
    # after the -s^2/(2N) tail the leading error is (|s|^2/4 + |s|^3/6) / N^2
    coef = abs(z) ** 2 / 4.0 + abs(z) ** 3 / 6.0
    terms = max(1000, math.ceil(math.sqrt(coef / cfg.rel_tol)))
    return terms, coef


def gamma_weierstrass_product(
    s: Number,
    cfg: SeriesConfig | None = None,
    n_terms: int | None = None,
) -> EvalResult:
    """1/Gamma(s) = s e^(gamma s) prod_n (1 + s/n) e^(-s/n), summed in log space.

    ``n_terms`` fixes the truncation point; otherwise it is chosen from the
    O(1/N^2) remainder left by the analytic tail correction.
    """
    cfg = cfg or WEIERSTRASS_DEFAULT
    _check_pole(s)
    z = complex(s)
    if n_terms is None:
        terms, coef = _weierstrass_terms(z, cfg)
        if terms > cfg.max_terms:
            best = cmath.exp(-_weierstrass_log_reciprocal(z, cfg.max_terms))
            raise BudgetExceededError(
                f"Weierstrass product at s={s} needs {terms} terms (max_terms={cfg.max_terms})",
                best_estimate=best,
                err_estimate=abs(best) * coef / cfg.max_terms**2,
            )
    else:
        terms = int(n_terms)
        if terms < 1:
            raise ArgumentError("n_terms must be positive")
        coef = abs(z) ** 2 / 4.0 + abs(z) ** 3 / 6.0
    try:
        value = cmath.exp(-_weierstrass_log_reciprocal(z, terms))
    except OverflowError:
        raise DomainError(f"Gamma({s}) overflows double precision") from None
    err = abs(value) * (coef / terms**2 + 1e-15 * (abs(z) + 1.0))
    return EvalResult(_shape(s, value), err, terms)


def _weierstrass_log(s: Number, cfg: SeriesConfig | None = None) -> complex:
    cfg = cfg or WEIERSTRASS_DEFAULT
    _check_pole(s)
    z = complex(s)
    terms, _ = _weierstrass_terms(z, cfg)
    if terms > cfg.max_terms:
        raise BudgetExceededError(f"Weierstrass product at s={s} needs {terms} terms")
    return -_weierstrass_log_reciprocal(z, terms)


# ---------------------------------------------------------------------------
# construction registry


class GammaKind(str, enum.Enum):
    EULER_LOG_INTEGRAL = "euler-log-integral"
    EULER_INTEGRAL = "euler-integral"
    GAUSS_PRODUCT = "gauss-product"
    WEIERSTRASS_PRODUCT = "weierstrass-product"
    REFERENCE = "reference"


@dataclass(frozen=True)
class GammaValue:
    result: EvalResult
    construction: GammaKind
    argument: complex


@dataclass(frozen=True)
class GammaConstruction:
    """One way of computing Gamma, with its (immutable) configuration.

    Calling the object evaluates Gamma. The integral kinds only cover
    Re s > 0; wrap them in :func:`extend_by_recursion` for the rest.
    """

    kind: GammaKind
    cfg: SeriesConfig | QuadratureConfig | None = field(default=None)

    def __post_init__(self):
        object.__setattr__(self, "kind", GammaKind(self.kind))
        quad = self.kind in (GammaKind.EULER_LOG_INTEGRAL, GammaKind.EULER_INTEGRAL)
        if self.cfg is not None:
            if quad and not isinstance(self.cfg, QuadratureConfig):
                raise ArgumentError(f"{self.kind.value} needs a QuadratureConfig")
            if not quad and not isinstance(self.cfg, SeriesConfig):
                raise ArgumentError(f"{self.kind.value} needs a SeriesConfig")

    @property
    def name(self) -> str:
        return self.kind.value

    def evaluate(self, s: Number) -> GammaValue:
        k = self.kind
        if k is GammaKind.EULER_LOG_INTEGRAL:
            res = gamma_euler_log_integral(s, self.cfg)
        elif k is GammaKind.EULER_INTEGRAL:
            res = gamma_euler_integral(s, self.cfg)
        elif k is GammaKind.GAUSS_PRODUCT:
            res = gamma_gauss_extrapolated(s)
        elif k is GammaKind.WEIERSTRASS_PRODUCT:
            res = gamma_weierstrass_product(s, self.cfg)
        else:
            v = gamma_reference(s)
            res = EvalResult(v, 1e-12 * abs(v), 1)
        return GammaValue(res, k, complex(s))

    def __call__(self, s: Number) -> Number:
        return self.evaluate(s).result.value

    def log_value(self, s: Number) -> complex:
        """log Gamma(s) without forming Gamma(s) where the method allows it."""
        k = self.kind
        if k is GammaKind.REFERENCE:
            return complex(loggamma_reference(s))
        if k is GammaKind.GAUSS_PRODUCT:
            return complex(richardson_extrapolate([(n, gamma_gauss_log_product(s, n)) for n in GAUSS_LADDER]).value)
        if k is GammaKind.WEIERSTRASS_PRODUCT:
            return _weierstrass_log(s, self.cfg)
        return cmath.log(complex(self(s)))


def _as_callable(base) -> Callable[[Number], Number]:
    if isinstance(base, (str, GammaKind)):
        return GammaConstruction(GammaKind(base))
    return base


def extend_by_recursion(base, s: Number) -> Number:
    """Gamma(s) = Gamma(s+k) / (s (s+1) ... (s+k-1)), smallest k with Re s + k > 1."""
    _check_pole(s)
    f = _as_callable(base)
    z = complex(s)
    k = 0 if z.real > 1.0 else math.floor(1.0 - z.real) + 1
    shifted = (s + k) if _is_real(s) else z + k
    value = f(shifted)
    if isinstance(value, EvalResult):
        value = value.value
    denom = 1.0
    for j in range(k):
        denom *= z + j
    return _shape(s, complex(value) / denom)


def weierstrass_limit_check(impl, x: Number, n: int) -> complex:
    """Gamma(x+n) / ((n-1)! n^x), formed in log space; tends to 1."""
    n = int(n)
    if n < 2:
        raise ArgumentError("n must be >= 2")
    f = _as_callable(impl)
    z = complex(x) + n
    if isinstance(f, GammaConstruction):
        log_g = f.log_value(z)
    else:
        log_g = cmath.log(complex(f(z)))
    return cmath.exp(log_g - math.lgamma(n) - complex(x) * math.log(n))
