"""Numerical checks of classical Gamma identities and characterizations.

Residuals for the reflection and multiplication formulas, Malmsten's and
Kummer's formulas for log Gamma, Frullani integrals, the Bohr-Mollerup and
Wielandt characterizations (as finite-sample audits), and a zero survey for
the two halves of Prym's decomposition.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from . import kernels
from .companions import euler_gamma_constant, prym_P, prym_Q
from .constructions import (
    GammaConstruction,
    GammaKind,
    Number,
    _as_callable,
    _is_real,
    _shape,
    extend_by_recursion,
    gamma_reference,
)
from .errors import ArgumentError, ContourError, DomainError, PoleError
from .numerics import (
    EvalResult,
    QuadratureConfig,
    Rectangle,
    expm1,
    integrate_halfline,
    is_nonpositive_integer,
    sinpi,
    zero_count_argument_principle,
)

__all__ = [
    "Criterion",
    "Verdict",
    "AuditReport",
    "ResidualGrid",
    "ZeroSurvey",
    "reflection_residual",
    "multiplication_residual",
    "malmsten_loggamma",
    "kummer_loggamma",
    "frullani_integral",
    "frullani_rhs",
    "bohr_mollerup_audit",
    "wielandt_audit",
    "zero_survey",
    "residual_grid",
    "gamma_sin_perturbed",
    "gamma_doubled",
    "gamma_exp_scaled",
    "DEFAULT_BM_GRID",
    "default_strip_samples",
]


def _gamma_everywhere(impl) -> Callable[[Number], complex]:
    """Gamma on the whole plane: integral kinds are extended by recursion."""
    f = _as_callable(impl)
    if isinstance(f, GammaConstruction) and f.kind in (GammaKind.EULER_LOG_INTEGRAL, GammaKind.EULER_INTEGRAL):
        return lambda s: complex(f(s)) if complex(s).real > 0.0 else complex(extend_by_recursion(f, s))
    return lambda s: complex(f(s))


def _log_gamma(impl) -> Callable[[complex], complex]:
    f = _as_callable(impl)
    if isinstance(f, GammaConstruction) and f.kind is not GammaKind.EULER_LOG_INTEGRAL and f.kind is not GammaKind.EULER_INTEGRAL:
        return f.log_value
    g = _gamma_everywhere(f)
    return lambda s: cmath.log(g(s))


def _wrap_phase(d: complex) -> complex:
    return complex(d.real, d.imag - 2.0 * math.pi * round(d.imag / (2.0 * math.pi)))


# ---------------------------------------------------------------------------
# reflection and multiplication


def reflection_residual(impl, s: Number) -> float:
    """|Gamma(s) Gamma(1-s) - pi/sin(pi s)| / |pi/sin(pi s)|."""
    z = complex(s)
    if z.imag == 0.0 and z.real == math.floor(z.real):
        raise PoleError(f"reflection formula is singular at integer s = {z.real:g}")
    g = _gamma_everywhere(impl)
    rhs = math.pi / sinpi(z)
    return abs(g(z) * g(1.0 - z) - rhs) / abs(rhs)


def multiplication_residual(impl, s: Number, n: int) -> float:
    """Relative residual of prod_k Gamma(s + k/n) = (2 pi)^((n-1)/2) n^(1/2 - n s) Gamma(n s).

    Both sides are compared as logarithms (modulo 2 pi i).
    """
    n = int(n)
    if n < 2:
        raise ArgumentError("n must be >= 2")
    z = complex(s)
    args = [z + k / n for k in range(n)] + [n * z]
    for a in args:
        if is_nonpositive_integer(a):
            raise PoleError(f"a Gamma factor sits on the pole s = {a.real:g}")
    lg = _log_gamma(impl)
    lhs = sum(lg(a) for a in args[:-1])
    rhs = 0.5 * (n - 1) * math.log(2.0 * math.pi) + (0.5 - n * z) * math.log(n) + lg(args[-1])
    return abs(expm1(_wrap_phase(lhs - rhs)))


# ---------------------------------------------------------------------------
# Malmsten


_MALMSTEN_TAYLOR_BELOW = 1e-4


def malmsten_loggamma(s: Number, cfg: QuadratureConfig | None = None) -> EvalResult:
    """log Gamma(s) = int_0^inf [(s-1) e^-t - (e^-t - e^-st)/(1 - e^-t)] dt/t, Re s > 0.

    For t <= 1 the bracket is rewritten as e^-t [(s-1) - expm1(-(s-1)t)/expm1(-t)]
    to avoid cancellation, and below t = 1e-4 it is replaced by its Taylor
    polynomial.
    """
    z = complex(s)
    if not z.real > 0.0:
        raise DomainError(f"Malmsten's integral needs Re s > 0, got s = {s}")
    real = _is_real(s)
    ss = float(s) if real else z
    sm1 = ss - 1.0
    c0 = (ss - 2.0) * sm1 / 2.0
    c1 = -(ss - 2.0) * sm1 * (2.0 * ss + 3.0) / 12.0
    c2 = (ss - 2.0) * sm1 * (ss * ss + ss + 2.0) / 24.0

    def integrand(t):
        t = np.asarray(t, dtype=float)
        out = np.empty(t.shape, dtype=complex)
        tiny = t < _MALMSTEN_TAYLOR_BELOW
        mid = ~tiny & (t <= 1.0)
        big = t > 1.0
        tt = t[tiny]
        out[tiny] = c0 + tt * (c1 + tt * c2)
        tm = t[mid]
        out[mid] = np.exp(-tm) * (sm1 - expm1(-sm1 * tm) / np.expm1(-tm)) / tm
        tb = t[big]
        eb = np.exp(-tb)
        out[big] = (sm1 * eb - (eb - np.exp(-ss * tb)) / (1.0 - eb)) / tb
        return out.real if real else out

    res = integrate_halfline(integrand, cfg)
    return EvalResult(_shape(s, res.value), res.err_estimate, res.work)


# ---------------------------------------------------------------------------
# Kummer


def kummer_loggamma(x: float, K: int) -> EvalResult:
    """Kummer's Fourier series for log Gamma on (0, 1), truncated after K sine terms.

    log Gamma(x) = 1/2 log(pi / sin pi x) + (gamma + log 2 pi)(1/2 - x)
                   + (1/pi) sum_k log(k)/k sin(2 pi k x)
    """
    x = float(x)
    if not 0.0 < x < 1.0:
        raise DomainError(f"Kummer's series needs 0 < x < 1, got {x}")
    K = int(K)
    if K < 1:
        raise ArgumentError("K must be positive")
    total, last = kernels.kummer_sum(x, K)
    gamma = euler_gamma_constant().value
    value = (
        0.5 * math.log(math.pi / math.sin(math.pi * x))
        + (gamma + math.log(2.0 * math.pi)) * (0.5 - x)
        + total / math.pi
    )
    err = max(abs(last), math.log(K) / K if K > 1 else 0.0) / math.pi
    return EvalResult(value, err, K)


# ---------------------------------------------------------------------------
# Frullani


def frullani_integral(f: Callable, a: float, b: float, cfg: QuadratureConfig | None = None) -> EvalResult:
    """int_0^inf (f(a t) - f(b t)) / t dt, by quadrature in x = log t.

    The substitution turns algebraic decay at both ends into exponential
    decay; the two half lines x < 0 and x > 0 are integrated separately.
    """
    a = float(a)
    b = float(b)
    if not (a > 0.0 and b > 0.0):
        raise DomainError("Frullani integral needs a, b > 0")
    if a == b:
        return EvalResult(0.0, 0.0, 1)

    def diff(t):
        with np.errstate(over="ignore", under="ignore", invalid="ignore"):
            return np.asarray(f(a * t), dtype=float) - np.asarray(f(b * t), dtype=float)

    def right(x):
        with np.errstate(over="ignore"):
            return diff(np.exp(x))

    def left(y):
        return diff(np.exp(-y))

    pos = integrate_halfline(right, cfg)
    neg = integrate_halfline(left, cfg)
    return EvalResult(pos.real + neg.real, pos.err_estimate + neg.err_estimate, pos.work + neg.work)


def _limit(f: Callable, points: Sequence[float]) -> float:
    with np.errstate(over="ignore", under="ignore"):
        vals = [float(np.asarray(f(np.array([p], dtype=float)))[0]) for p in points]
    if not all(math.isfinite(v) for v in vals):
        raise DomainError("f has no finite limit")
    if abs(vals[0] - vals[1]) > 1e-10 * max(1.0, abs(vals[1])):
        raise DomainError("f does not settle at the sampled limit")
    return vals[1]


def frullani_rhs(f: Callable, a: float, b: float) -> float:
    """(f(0) - f(inf)) log(b/a) with the limits taken from samples."""
    f0 = _limit(f, (1e-100, 1e-150))
    finf = _limit(f, (1e100, 1e150))
    return (f0 - finf) * math.log(float(b) / float(a))


# ---------------------------------------------------------------------------
# characterization audits


class Criterion(str, enum.Enum):
    BOHR_MOLLERUP = "BohrMollerup"
    WIELANDT = "Wielandt"


class Verdict(str, enum.Enum):
    PASS = "pass"
    FAIL_SIDE_CONDITION = "fail_side_condition"
    FAIL_FUNCTIONAL_EQ = "fail_functional_eq"
    FAIL_NORMALIZATION = "fail_normalization"


def _verdict(norm: float, norm_tol: float, feq: float, eq_tol: float, violations: list) -> Verdict:
    if not norm <= norm_tol:
        return Verdict.FAIL_NORMALIZATION
    if not feq <= eq_tol:
        return Verdict.FAIL_FUNCTIONAL_EQ
    if violations:
        return Verdict.FAIL_SIDE_CONDITION
    return Verdict.PASS


@dataclass(frozen=True)
class AuditReport:
    criterion: Criterion
    functional_eq_max_residual: float
    normalization_residual: float
    side_condition_violations: list
    max_deviation_from_gamma: float
    verdict: Verdict
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict is Verdict.PASS

    def as_dict(self) -> dict:
        return {
            "criterion": self.criterion.value,
            "functional_eq_max_residual": self.functional_eq_max_residual,
            "normalization_residual": self.normalization_residual,
            "side_condition_violations": [
                {"location": _jsonable(loc), "magnitude": mag} for loc, mag in self.side_condition_violations
            ],
            "max_deviation_from_gamma": self.max_deviation_from_gamma,
            "verdict": self.verdict.value,
            "details": {k: _jsonable(v) for k, v in self.details.items()},
        }


def _jsonable(v):
    if isinstance(v, complex):
        return {"re": v.real, "im": v.imag}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    if isinstance(v, (np.floating, np.integer)):
        return v.item()
    return v


@dataclass(frozen=True)
class ResidualGrid:
    points: list
    residuals: list
    identity: str

    def __post_init__(self):
        if len(self.points) != len(self.residuals):
            raise ArgumentError("points and residuals differ in length")
        if not all(math.isfinite(r) and r >= 0.0 for r in self.residuals):
            raise ArgumentError("residuals must be finite and non-negative")

    @property
    def max_residual(self) -> float:
        return max(self.residuals) if self.residuals else 0.0


def residual_grid(identity: str, fn: Callable[[Number], float], points: Sequence[Number]) -> ResidualGrid:
    return ResidualGrid(list(points), [float(fn(p)) for p in points], identity)


DEFAULT_BM_GRID = tuple(round(0.1 + 0.05 * i, 10) for i in range(119))


def bohr_mollerup_audit(
    f: Callable[[float], float],
    grid: Sequence[float] | None = None,
    tol: float = 1e-10,
    eq_tol: float = 1e-9,
    norm_tol: float = 1e-10,
) -> AuditReport:
    """Check f(1) = 1, f(x+1) = x f(x) and log-convexity of f on a real grid.

    Log-convexity is tested at midpoints: for every symmetric triple
    (x[i-k], x[i], x[i+k]) whose middle point is the midpoint of the outer
    two, log f(x[i]) may not exceed the mean of the outer logs by more than
    ``tol``. Each offending midpoint is reported once, with its largest excess.
    """
    xs = np.asarray(DEFAULT_BM_GRID if grid is None else grid, dtype=float)
    if xs.ndim != 1 or xs.size < 3 or np.any(np.diff(xs) <= 0.0) or xs[0] <= 0.0:
        raise ArgumentError("grid must be a strictly increasing sequence of positive reals (>= 3 points)")
    top = xs[-1]
    vals = np.array([float(np.real(f(float(x)))) for x in xs])
    if np.any(~(vals > 0.0)):
        bad = xs[~(vals > 0.0)][0]
        raise DomainError(f"f must be positive on the grid (f({bad}) = {vals[~(vals > 0.0)][0]})")
    logs = np.log(vals)

    norm = abs(float(np.real(f(1.0))) - 1.0)

    feq = 0.0
    feq_at = None
    for x, fx in zip(xs, vals):
        if x + 1.0 > top + 1e-12:
            break
        up = float(np.real(f(float(x) + 1.0)))
        r = abs(up - x * fx) / abs(up)
        if r > feq:
            feq, feq_at = r, float(x)

    excess = np.full(xs.size, -np.inf)
    partner = np.zeros(xs.size, dtype=int)
    scale = max(1.0, float(top))
    for k in range(1, (xs.size - 1) // 2 + 1):
        lo, mid, hi = xs[: -2 * k], xs[k:-k], xs[2 * k :]
        symmetric = np.abs(mid - 0.5 * (lo + hi)) <= 1e-9 * scale
        e = logs[k:-k] - 0.5 * (logs[: -2 * k] + logs[2 * k :])
        e = np.where(symmetric, e, -np.inf)
        better = e > excess[k:-k]
        excess[k:-k] = np.where(better, e, excess[k:-k])
        partner[k:-k] = np.where(better, k, partner[k:-k])
    violations = []
    triples = []
    for i in np.nonzero(excess > tol)[0]:
        k = partner[i]
        violations.append((float(xs[i]), float(excess[i])))
        triples.append((float(xs[i - k]), float(xs[i]), float(xs[i + k])))

    ref = np.array([gamma_reference(float(x)) for x in xs])
    deviation = float(np.max(np.abs(vals - ref) / np.abs(ref)))
    verdict = _verdict(norm, norm_tol, feq, eq_tol, violations)
    details = {
        "grid_points": int(xs.size),
        "tolerances": {"log_convexity": tol, "functional_eq": eq_tol, "normalization": norm_tol},
        "worst_functional_eq_at": feq_at,
        "violation_triples": triples,
    }
    return AuditReport(Criterion.BOHR_MOLLERUP, feq, norm, violations, deviation, verdict, details)


def default_strip_samples(ceiling: float = 3.0, step: float = 0.25) -> list[complex]:
    """Re s in {1, 1.25, 1.5, 1.75}, Im s from -ceiling to ceiling."""
    count = int(round(2 * ceiling / step))
    ims = [-ceiling + step * j for j in range(count + 1)]
    return [complex(re, im) for im in ims for re in (1.0, 1.25, 1.5, 1.75)]


def wielandt_audit(
    f: Callable[[complex], complex],
    strip_samples: Sequence[complex] | None = None,
    bound_tol: float = 10.0,
    eq_tol: float = 1e-10,
    norm_tol: float = 1e-10,
) -> AuditReport:
    """Check f(1) = 1, f(s+1) = s f(s) and boundedness on the strip 1 <= Re s < 2.

    Boundedness is judged from samples only: the growth ratio
    max |f| / max_{|Im s| <= 1} |f| must stay below ``bound_tol``. This detects
    growth; it cannot prove boundedness.
    """
    samples = [complex(z) for z in (default_strip_samples() if strip_samples is None else strip_samples)]
    if not samples:
        raise ArgumentError("no strip samples")
    for z in samples:
        if not 1.0 <= z.real < 2.0:
            raise ArgumentError(f"sample {z} is outside the strip 1 <= Re s < 2")
    if not any(abs(z.imag) <= 1.0 for z in samples):
        raise ArgumentError("need at least one sample with |Im s| <= 1")

    def ev(z):
        try:
            return complex(f(z))
        except DomainError as exc:
            raise type(exc)(f"evaluation failed at s = {z}: {exc}") from exc

    vals = [ev(z) for z in samples]
    norm = abs(ev(1.0 + 0j) - 1.0)

    feq = 0.0
    feq_at = None
    for z, fz in zip(samples, vals):
        up = ev(z + 1.0)
        r = abs(up - z * fz) / abs(up) if up != 0 else abs(z * fz)
        if r > feq:
            feq, feq_at = r, z

    mags = np.abs(np.array(vals))
    inner = max(m for z, m in zip(samples, mags) if abs(z.imag) <= 1.0)
    i_max = int(np.argmax(mags))
    ratio = float(mags[i_max] / inner) if inner > 0 else math.inf
    violations = [(samples[i_max], ratio)] if ratio > bound_tol else []

    dev = max(abs(v - gamma_reference(z)) / abs(gamma_reference(z)) for z, v in zip(samples, vals))
    verdict = _verdict(norm, norm_tol, feq, eq_tol, violations)
    details = {
        "growth_ratio": ratio,
        "boundedness": "growth detected" if violations else "consistent with bounded",
        "ceiling": float(max(abs(z.imag) for z in samples)),
        "samples": len(samples),
        "tolerances": {"growth": bound_tol, "functional_eq": eq_tol, "normalization": norm_tol},
        "worst_functional_eq_at": feq_at,
    }
    return AuditReport(Criterion.WIELANDT, feq, norm, violations, float(dev), verdict, details)


# test functions for the audits


def gamma_sin_perturbed(s: Number) -> Number:
    """Gamma(s) (1 + sin 2 pi s): same recurrence and f(1) as Gamma, unbounded on strips."""
    return _shape(s, complex(gamma_reference(s)) * (1.0 + complex(sinpi(2.0 * complex(s)))))


def gamma_doubled(s: Number) -> Number:
    """2 Gamma(s): breaks only the normalization."""
    return _shape(s, 2.0 * complex(gamma_reference(s)))


def gamma_exp_scaled(s: Number) -> Number:
    """Gamma(s) 2^(s-1): f(1) = 1 but f(s+1) = 2 s f(s)."""
    z = complex(s)
    return _shape(s, complex(gamma_reference(s)) * 2.0 ** (z - 1.0))


# ---------------------------------------------------------------------------
# Prym zero survey


class PrymPart(str, enum.Enum):
    P = "PrymP"
    Q = "PrymQ"


_POLE_MARGIN = 0.1


@dataclass(frozen=True)
class ZeroSurvey:
    which: PrymPart
    rect: Rectangle
    argument_principle_count: int
    contour_count: int
    poles_inside: int
    diagnostic: float
    sign_change_candidates: list
    refined_zeros: list
    consistent: bool
    evaluations: int

    def as_dict(self) -> dict:
        return {
            "which": self.which.value,
            "rect": self.rect.as_dict(),
            "argument_principle_count": self.argument_principle_count,
            "contour_count": self.contour_count,
            "poles_inside": self.poles_inside,
            "diagnostic": self.diagnostic,
            "sign_change_candidates": [list(iv) for iv in self.sign_change_candidates],
            "refined_zeros": [_jsonable(complex(z)) for z in self.refined_zeros],
            "consistent": self.consistent,
            "evaluations": self.evaluations,
        }


def _nearby_poles(rect: Rectangle) -> list[complex]:
    hi = min(0, math.ceil(rect.re_max) + 1)
    lo = math.floor(rect.re_min) - 1
    return [complex(n, 0.0) for n in range(lo, hi + 1) if n <= 0]


def _bisect_real(f, lo: float, hi: float, flo: float) -> float:
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        fm = f(mid)
        if fm == 0.0:
            return mid
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _newton(f, z: complex, rect: Rectangle, h: float = 1e-6) -> complex | None:
    for _ in range(60):
        fz = f(z)
        d = (f(z + h) - f(z - h)) / (2.0 * h)
        if d == 0 or not cmath.isfinite(d):
            return None
        step = fz / d
        z = z - step
        if not rect.contains(z):
            return None
        if abs(step) < 1e-13 * max(1.0, abs(z)):
            return z
    return None


def zero_survey(
    which: PrymPart | str,
    rect: Rectangle,
    grid_density: int = 10,
    nodes: int = 128,
) -> ZeroSurvey:
    """Look for zeros of Prym's P or Q inside ``rect``.

    Three sources are combined: the argument-principle count (for P the
    poles at 0, -1, -2, ... inside the rectangle are added back, so the
    reported count is the number of zeros), a sign-change scan along the
    real axis (intervals containing a pole of P are skipped), and Newton
    refinement started from local minima of |f| on a grid. ``consistent``
    says whether the number of distinct refined zeros equals the count.
    """
    part = PrymPart(which)
    if part is PrymPart.P:

        def f(z):
            return complex(prym_P(z).value)

        for pole in _nearby_poles(rect):
            if rect.boundary_distance(pole) < _POLE_MARGIN:
                raise ContourError(
                    f"pole of P at {pole.real:g} lies within {_POLE_MARGIN} of the contour; "
                    "shift the rectangle edges by a few tenths"
                )
        poles = [int(p.real) for p in _nearby_poles(rect) if rect.contains(p)]
    else:

        def f(z):
            return complex(prym_Q(z).value)

        poles = []

    counted = zero_count_argument_principle(f, rect, nodes)
    zeros_expected = counted.count + len(poles)
    evaluations = counted.evaluations

    # real-axis sign scan
    candidates = []
    refined: list[complex] = []
    if rect.im_min < 0.0 < rect.im_max:
        m = max(2, int(math.ceil((rect.re_max - rect.re_min) * grid_density)) + 1)
        xs = np.linspace(rect.re_min, rect.re_max, m + 2)[1:-1]
        xs = [float(x) for x in xs if not is_nonpositive_integer(x)]
        fx = [f(x).real for x in xs]
        evaluations += len(xs)
        for (x0, f0), (x1, f1) in zip(zip(xs, fx), zip(xs[1:], fx[1:])):
            if part is PrymPart.P and any(x0 < p.real < x1 for p in _nearby_poles(rect)):
                continue
            if f0 == 0.0:
                refined.append(complex(x0))
            elif (f0 > 0) != (f1 > 0):
                candidates.append((x0, x1))
                refined.append(complex(_bisect_real(lambda t: f(t).real, x0, x1, f0)))

    # complex candidates from local minima of |f|
    nx = max(3, int(math.ceil((rect.re_max - rect.re_min) * grid_density)))
    ny = max(3, int(math.ceil((rect.im_max - rect.im_min) * grid_density)))
    gx = np.linspace(rect.re_min, rect.re_max, nx + 2)[1:-1]
    gy = np.linspace(rect.im_min, rect.im_max, ny + 2)[1:-1]
    mag = np.empty((ny, nx))
    for j, y in enumerate(gy):
        for i, x in enumerate(gx):
            z = complex(x, y)
            mag[j, i] = abs(f(z)) if not is_nonpositive_integer(z) else np.inf
    evaluations += nx * ny
    for j in range(ny):
        for i in range(nx):
            window = mag[max(0, j - 1) : j + 2, max(0, i - 1) : i + 2]
            if mag[j, i] < np.inf and mag[j, i] <= window.min():
                root = _newton(f, complex(gx[i], gy[j]), rect)
                if root is None or abs(root.imag) < 1e-9:
                    continue
                if abs(f(root)) > 1e-10 * max(1.0, float(np.min(mag[np.isfinite(mag)]))):
                    continue
                if all(abs(root - r) > 1e-7 for r in refined):
                    refined.append(root)

    refined.sort(key=lambda z: (z.real, z.imag))
    consistent = len(refined) == zeros_expected
    return ZeroSurvey(
        part,
        rect,
        zeros_expected,
        counted.count,
        len(poles),
        counted.diagnostic,
        candidates,
        refined,
        consistent,
        evaluations,
    )
