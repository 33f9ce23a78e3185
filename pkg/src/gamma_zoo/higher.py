"""Generalized Gamma functions.

Mellin's solutions of F(s+1) = R(s) F(s) for rational R, built from Gamma
factors, and the hierarchy log Gamma_k(x) = d/ds zeta(s, x) - d/ds zeta(s, 1)
at s = -k (so that k = 0 is Lerch's formula for log Gamma).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

from .constructions import Number, _is_real, _shape, loggamma_reference
from .errors import ArgumentError, DomainError, PoleError
from .numerics import EvalResult, SeriesConfig, hurwitz_zeta_with_derivative, is_nonpositive_integer

__all__ = [
    "RationalFunctionSpec",
    "MellinGamma",
    "mellin_gamma_from_rational",
    "BenderskyLevel",
    "bendersky_log_gamma",
    "lerch_consistency",
    "MAX_BENDERSKY_LEVEL",
]


@dataclass(frozen=True)
class RationalFunctionSpec:
    """R(s) = leading * prod(s - zeros) / prod(s - poles); repeat entries for multiplicity."""

    leading: complex
    zeros: tuple = ()
    poles: tuple = ()

    def __post_init__(self):
        lead = complex(self.leading)
        if lead == 0 or not cmath.isfinite(lead):
            raise ArgumentError("leading coefficient must be finite and nonzero")
        object.__setattr__(self, "leading", lead)
        object.__setattr__(self, "zeros", tuple(complex(a) for a in self.zeros))
        object.__setattr__(self, "poles", tuple(complex(b) for b in self.poles))

    def evaluate(self, s: Number) -> complex:
        z = complex(s)
        num = self.leading
        for a in self.zeros:
            num *= z - a
        den = 1.0 + 0j
        for b in self.poles:
            den *= z - b
        if den == 0:
            raise PoleError(f"R has a pole at s = {z}")
        return num / den

    __call__ = evaluate

    def compose(self, other: "RationalFunctionSpec") -> "RationalFunctionSpec":
        """The product R * other."""
        return RationalFunctionSpec(self.leading * other.leading, self.zeros + other.zeros, self.poles + other.poles)

    @classmethod
    def from_dict(cls, data: dict) -> "RationalFunctionSpec":
        def num(v):
            if isinstance(v, dict):
                return complex(float(v.get("re", 0.0)), float(v.get("im", 0.0)))
            if isinstance(v, (list, tuple)):
                return complex(float(v[0]), float(v[1]))
            return complex(v)

        try:
            return cls(num(data["leading"]), tuple(num(v) for v in data.get("zeros", ())), tuple(num(v) for v in data.get("poles", ())))
        except (KeyError, TypeError, ValueError) as exc:
            raise ArgumentError(f"malformed rational function spec: {exc}") from None

    def as_dict(self) -> dict:
        def c(v):
            return {"re": v.real, "im": v.imag}

        return {"leading": c(self.leading), "zeros": [c(a) for a in self.zeros], "poles": [c(b) for b in self.poles]}


@dataclass(frozen=True)
class MellinGamma:
    """F(s) = c rho^s prod Gamma(s - a_i) / prod Gamma(s - b_j)."""

    spec: RationalFunctionSpec
    normalization: complex
    normalized: bool = field(default=False)

    def _log_unscaled(self, s: complex) -> complex | None:
        """log of F/c, or None where a denominator Gamma has a pole (F = 0)."""
        out = s * cmath.log(self.spec.leading)
        for a in self.spec.zeros:
            if is_nonpositive_integer(s - a):
                raise PoleError(f"F has a pole at s = {s}: factor Gamma(s - {a}) hits a pole")
            out += complex(loggamma_reference(s - a))
        for b in self.spec.poles:
            if is_nonpositive_integer(s - b):
                return None
            out -= complex(loggamma_reference(s - b))
        return out

    def __call__(self, s: Number) -> Number:
        z = complex(s)
        lg = self._log_unscaled(z)
        if lg is None:
            return _shape(s, 0.0)
        try:
            value = self.normalization * cmath.exp(lg)
        except OverflowError:
            raise DomainError(f"F({s}) overflows double precision") from None
        real = _is_real(s) and self.spec.leading.imag == 0 and self.spec.leading.real > 0 and value.imag == 0
        return value.real if real else value

    def residual(self, s: Number) -> float:
        """|F(s+1) - R(s) F(s)| / |F(s+1)|."""
        z = complex(s)
        up = complex(self(z + 1.0))
        rhs = self.spec.evaluate(z) * complex(self(z))
        scale = abs(up) if up != 0 else 1.0
        return abs(up - rhs) / scale


def mellin_gamma_from_rational(spec: RationalFunctionSpec) -> MellinGamma:
    """Build F with F(s+1) = R(s) F(s), normalized to F(1) = 1 when F(1) is finite and nonzero."""
    raw = MellinGamma(spec, 1.0 + 0j)
    try:
        lg = raw._log_unscaled(1.0 + 0j)
    except PoleError:
        lg = None
    if lg is None:
        return raw
    return MellinGamma(spec, cmath.exp(-lg), True)


MAX_BENDERSKY_LEVEL = 8


@dataclass(frozen=True)
class BenderskyLevel:
    k: int

    def __post_init__(self):
        if isinstance(self.k, bool) or int(self.k) != self.k or not 0 <= int(self.k) <= MAX_BENDERSKY_LEVEL:
            raise ArgumentError(f"level must be an integer in 0..{MAX_BENDERSKY_LEVEL}, got {self.k!r}")
        object.__setattr__(self, "k", int(self.k))


def bendersky_log_gamma(level: BenderskyLevel | int, x: float, cfg: SeriesConfig | None = None) -> EvalResult:
    """log Gamma_k(x) = d/ds zeta(s, x) - d/ds zeta(s, 1) at s = -k.

    Gamma_0 is Gamma; every level satisfies
    log Gamma_k(x+1) - log Gamma_k(x) = x^k log x and Gamma_k(1) = 1.
    """
    lvl = level if isinstance(level, BenderskyLevel) else BenderskyLevel(level)
    x = float(x)
    if not x > 0.0:
        raise DomainError(f"x must be positive, got {x}")
    s = -float(lvl.k)
    if x == 1.0:
        return EvalResult(0.0, 0.0, 1)
    _, dx = hurwitz_zeta_with_derivative(s, x, cfg)
    _, d1 = hurwitz_zeta_with_derivative(s, 1.0, cfg)
    value = complex(dx.value).real - complex(d1.value).real
    return EvalResult(value, dx.err_estimate + d1.err_estimate, dx.work + d1.work)


def lerch_consistency(x: float) -> float:
    """|d/ds zeta(0, x) - (log Gamma(x) - log(2 pi)/2)|."""
    x = float(x)
    if not x > 0.0:
        raise DomainError(f"x must be positive, got {x}")
    _, dz = hurwitz_zeta_with_derivative(0.0, x)
    return abs(complex(dz.value).real - (float(loggamma_reference(x)) - 0.5 * math.log(2.0 * math.pi)))
