"""Functions that travel with Gamma.

Euler's constant, Weierstrass's factorielle, the Newton-type series of Stern
(for psi) and Hermite (for log Gamma), Prym's decomposition Gamma = P + Q,
Bourget's T, Hadamard's entire interpolation of the factorial and Davis's
pseudo-Gamma.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import kernels
from .constructions import (
    Number,
    _is_real,
    _shape,
    digamma_reference,
    rgamma_reference,
)
from .errors import ArgumentError, BudgetExceededError, DomainError, PoleError
from .numerics import (
    EPS,
    EvalResult,
    QuadratureConfig,
    SeriesConfig,
    forward_differences,
    integrate_adaptive,
    integrate_halfline,
    is_nonpositive_integer,
)

__all__ = [
    "GammaConstantMethod",
    "GammaConstant",
    "PrymPair",
    "euler_gamma_constant",
    "factorielle",
    "digamma_stern",
    "loggamma_hermite",
    "hermite_coefficients",
    "prym_P",
    "prym_P_ascending",
    "prym_Q",
    "prym_pair",
    "bourget_T",
    "hadamard_H",
    "davis_pseudo_gamma",
]


# ---------------------------------------------------------------------------
# Euler's constant


class GammaConstantMethod(str, enum.Enum):
    INTEGRAL = "integral"
    LIMIT = "limit"


@dataclass(frozen=True)
class GammaConstant:
    value: float
    method: GammaConstantMethod
    err_estimate: float

    def __post_init__(self):
        if not 0.57 < self.value < 0.58:
            raise DomainError(f"Euler's constant came out as {self.value}")


def _gamma_integrand_left(t):
    return 1.0 / np.log(t) + 1.0 / (1.0 - t)


def _gamma_integrand_right(u):
    # u = 1 - t; 1/log(1-u) + 1/u cancels to 1/2 + u/12 + ... as u -> 0
    u = np.asarray(u, dtype=float)
    out = np.empty_like(u)
    small = u < 1e-3
    us = u[small]
    out[small] = 0.5 + us * (1.0 / 12.0 + us * (1.0 / 24.0 + us * (19.0 / 720.0 + us * 3.0 / 160.0)))
    ub = u[~small]
    out[~small] = 1.0 / np.log1p(-ub) + 1.0 / ub
    return out


@lru_cache(maxsize=None)
def _gamma_constant(method: GammaConstantMethod, n: int, cfg: QuadratureConfig | None) -> GammaConstant:
    if method is GammaConstantMethod.LIMIT:
        h = kernels.harmonic_sum(n)
        value = h - math.log(n) - 1.0 / (2.0 * n) + 1.0 / (12.0 * n * n)
        err = 1.0 / (120.0 * float(n) ** 4) + 4.0 * EPS * h
        return GammaConstant(value, method, err)
    left = integrate_adaptive(_gamma_integrand_left, 0.0, 0.5, cfg)
    right = integrate_adaptive(_gamma_integrand_right, 0.0, 0.5, cfg)
    return GammaConstant(left.real + right.real, method, left.err_estimate + right.err_estimate)


def euler_gamma_constant(
    method: GammaConstantMethod | str = GammaConstantMethod.LIMIT,
    cfg: QuadratureConfig | None = None,
    n: int = 10**6,
) -> GammaConstant:
    """Euler's constant, either as int_0^1 (1/log t + 1/(1-t)) dt or as the
    limit of H_n - log n with the Euler-Maclaurin corrections
    -1/(2n) + 1/(12 n^2). Results are memoised.
    """
    method = GammaConstantMethod(method)
    if int(n) < 1:
        raise ArgumentError("n must be positive")
    return _gamma_constant(method, int(n), cfg)


# ---------------------------------------------------------------------------
# factorielle


def factorielle(u: Number) -> Number:
    """Fc(u) = 1/Gamma(1 + u); zero at u = -1, -2, ..."""
    return rgamma_reference(u + 1)


# ---------------------------------------------------------------------------
# Newton series

STERN_DEFAULT = SeriesConfig(max_terms=10**7, abs_tol=1e-8, rel_tol=1e-12)
HERMITE_DEFAULT = SeriesConfig(max_terms=2 * 10**5, abs_tol=1e-8, rel_tol=1e-12)


def _newton_domain(s) -> complex:
    z = complex(s)
    if not z.real > -1.0:
        raise DomainError(f"the series diverges for Re s <= -1 (s = {s})")
    return z


def digamma_stern(s: Number, cfg: SeriesConfig | None = None) -> EvalResult:
    """psi(1 + s) = -gamma + sum_{k>=1} (-1)^(k+1) binom(s, k) / k.

    The argument is shifted by one: this is the digamma function at 1 + s.
    Summation stops once the power-law tail estimate drops below
    ``cfg.abs_tol``.
    """
    cfg = cfg or STERN_DEFAULT
    z = _newton_domain(s)
    total, terms, tail = kernels.stern_series(z, cfg.abs_tol, int(cfg.max_terms), 10 + int(2 * abs(z)))
    value = total - euler_gamma_constant().value
    if not tail < cfg.abs_tol:
        raise BudgetExceededError(
            f"Stern series at s={s}: tail {tail:.3g} after {terms} terms",
            best_estimate=value,
            err_estimate=tail,
        )
    return EvalResult(_shape(s, value), float(tail), int(terms))


_HERMITE_EXACT = 8
_hermite_table: dict = {"coeffs": None}


def hermite_coefficients(nmax: int) -> np.ndarray:
    """c_n = n-th forward difference of log(m!) at m = 0, for n = 0..nmax.

    The first few come from finite differences of log(m + 1); the rest from a
    trapezoid rule for c_n = (-1)^n int exp(-e^x) (1 - exp(-e^x))^(n-1) dx.
    """
    nmax = int(nmax)
    cached = _hermite_table["coeffs"]
    if cached is None or cached.shape[0] <= nmax:
        size = max(nmax, 4096)
        table = kernels.newton_coefficients(size)
        diffs = forward_differences([math.log(m + 1) for m in range(_HERMITE_EXACT)])
        table[0] = table[1] = 0.0
        table[2 : _HERMITE_EXACT + 1] = diffs[1:_HERMITE_EXACT]
        _hermite_table["coeffs"] = table
        cached = table
    return cached[: nmax + 1]


def loggamma_hermite(s: Number, cfg: SeriesConfig | None = None) -> EvalResult:
    """log Gamma(1 + s) = sum_{n>=2} binom(s, n) c_n (Newton series)."""
    cfg = cfg or HERMITE_DEFAULT
    z = _newton_domain(s)
    kmin = 10 + int(2 * abs(z))
    size = min(4096, int(cfg.max_terms))
    while True:
        coeffs = hermite_coefficients(size)
        total, terms, tail = kernels.newton_series(z, coeffs, cfg.abs_tol, kmin)
        if tail < cfg.abs_tol:
            return EvalResult(_shape(s, total), float(tail), int(terms))
        if size >= cfg.max_terms:
            raise BudgetExceededError(
                f"Hermite series at s={s}: tail {tail:.3g} after {terms} terms",
                best_estimate=total,
                err_estimate=tail,
            )
        size = min(4 * size, int(cfg.max_terms))


# ---------------------------------------------------------------------------
# Prym / Bourget

PRYM_DEFAULT = SeriesConfig(max_terms=10**4, abs_tol=1e-16, rel_tol=1e-16)


@dataclass(frozen=True)
class PrymPair:
    P: complex
    Q: complex
    at: complex


def _check_prym_pole(s) -> None:
    if is_nonpositive_integer(s):
        raise PoleError(f"P has a pole at s = {complex(s).real:g}")


def prym_P(s: Number, cfg: SeriesConfig | None = None) -> EvalResult:
    """P(s) = sum_{n>=0} (-1)^n / (n! (s + n)), the polar part of Gamma."""
    cfg = cfg or PRYM_DEFAULT
    _check_prym_pole(s)
    z = complex(s)
    total = 0j
    mass = 0.0
    inv_fact = 1.0
    term = 0j
    for n in range(int(cfg.max_terms)):
        if n:
            inv_fact /= n
        term = (inv_fact if n % 2 == 0 else -inv_fact) / (z + n)
        total += term
        mass += abs(term)
        if n > abs(z) + 2 and abs(term) <= cfg.rel_tol * abs(total) + cfg.abs_tol:
            break
    else:
        raise BudgetExceededError(f"P({s}) did not converge in {cfg.max_terms} terms", best_estimate=total)
    return EvalResult(_shape(s, total), abs(term) + EPS * mass, n + 1)


def prym_P_ascending(s: Number, cfg: SeriesConfig | None = None) -> EvalResult:
    """P(s) = e^-1 sum_{n>=0} 1 / (s (s+1) ... (s+n))."""
    cfg = cfg or PRYM_DEFAULT
    _check_prym_pole(s)
    z = complex(s)
    total = 0j
    mass = 0.0
    term = 1.0 + 0j
    for n in range(int(cfg.max_terms)):
        term = term / (z + n)
        total += term
        mass += abs(term)
        if n > abs(z) + 2 and abs(term) <= cfg.rel_tol * abs(total) + cfg.abs_tol:
            break
    else:
        raise BudgetExceededError(f"ascending P({s}) did not converge in {cfg.max_terms} terms", best_estimate=total)
    value = total / math.e
    return EvalResult(_shape(s, value), (abs(term) + EPS * mass) / math.e, n + 1)


def prym_Q(s: Number, cfg: QuadratureConfig | None = None) -> EvalResult:
    """Q(s) = int_1^inf t^(s-1) e^(-t) dt = Gamma(s) - P(s); entire in s."""
    z = complex(s)
    if z.real > 170.0:
        raise DomainError(f"Re s = {z.real} too large for a double-precision integral")
    sm1 = float(s) - 1.0 if _is_real(s) else z - 1.0

    def integrand(t):
        return np.exp(sm1 * np.log(t) - t)

    res = integrate_halfline(integrand, cfg, lower=1.0)
    return EvalResult(_shape(s, res.value), res.err_estimate, res.work)


def prym_pair(s: Number) -> PrymPair:
    return PrymPair(complex(prym_P(s).value), complex(prym_Q(s).value), complex(s))


def bourget_T(s: Number) -> Number:
    """T(s) = e P(s) / Gamma(s); satisfies T(s+1) - T(s) = -1/Gamma(s+1)."""
    return _shape(s, math.e * complex(prym_P(s).value) * complex(rgamma_reference(s)))


# ---------------------------------------------------------------------------
# Hadamard

_HADAMARD_EPS = 1e-6


def _hadamard_direct(s: complex) -> complex:
    return 0.5 * complex(rgamma_reference(1.0 - s)) * (
        complex(digamma_reference(1.0 - 0.5 * s)) - complex(digamma_reference(0.5 * (1.0 - s)))
    )


def hadamard_H(s: Number) -> EvalResult:
    """Hadamard's entire factorial interpolation, H(n + 1) = n!.

    H(s) = psi(1 - s/2) - psi((1 - s)/2), divided by 2 Gamma(1 - s). At the
    positive integers the formula is 0 * inf; there the value is the average
    of the two neighbours at distance 1e-6.
    """
    z = complex(s)
    if z.imag == 0.0 and z.real >= 1.0 and z.real == math.floor(z.real):
        up = _hadamard_direct(z + _HADAMARD_EPS)
        down = _hadamard_direct(z - _HADAMARD_EPS)
        value = 0.5 * (up + down)
        err = _HADAMARD_EPS * abs(up - down) + 1e-9 * abs(value)
        return EvalResult(_shape(s, value), err, 2)
    value = _hadamard_direct(z)
    return EvalResult(_shape(s, value), 1e-12 * (abs(value) + 1.0), 1)


# ---------------------------------------------------------------------------
# Davis


def davis_pseudo_gamma(s: float) -> float:
    """Davis's Gamma_S: 1/s on (0, 1), (s-1)(s-2)...(s-k+1) on [k, k+1).

    Integer points take the (common) one-sided limit.
    """
    if isinstance(s, complex) or np.iscomplexobj(s):
        raise DomainError("Gamma_S is defined for real arguments only")
    s = float(s)
    if not s > 0.0:
        raise DomainError(f"Gamma_S needs s > 0, got {s}")
    if s < 1.0:
        return 1.0 / s
    k = math.floor(s)
    out = 1.0
    for j in range(1, k):
        out *= s - j
    return out
