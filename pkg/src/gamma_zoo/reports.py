"""Report envelopes, serialization and convergence traces."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Any, Iterable, Sequence

import numpy as np

from .audits import kummer_loggamma
from .constructions import gamma_gauss_product, gamma_reference, gamma_weierstrass_product
from .errors import ArgumentError, GammaZooError, MathError

__all__ = [
    "SCHEMA_VERSION",
    "ReportEnvelope",
    "ConvergenceTrace",
    "convergence_trace",
    "CONVERGE_LADDERS",
    "jsonable",
    "to_json",
    "to_csv",
    "flatten",
    "parse_range",
    "parse_complex",
    "error_body",
]

SCHEMA_VERSION = "1"


def jsonable(v: Any) -> Any:
    """Plain JSON types: complex -> {re, im}, non-finite floats -> strings."""
    if isinstance(v, bool) or v is None or isinstance(v, str):
        return v
    if isinstance(v, (complex, np.complexfloating)):
        return {"re": jsonable(float(v.real)), "im": jsonable(float(v.imag))}
    if isinstance(v, (float, np.floating)):
        f = float(v)
        return f if math.isfinite(f) else repr(f)
    if isinstance(v, (int, np.integer)):
        return int(v)
    if isinstance(v, dict):
        return {str(k): jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple, np.ndarray)):
        return [jsonable(x) for x in v]
    if hasattr(v, "as_dict"):
        return jsonable(v.as_dict())
    if hasattr(v, "value") and isinstance(getattr(v, "value"), str):  # enums
        return v.value
    return str(v)


@dataclass
class ReportEnvelope:
    tool_version: str
    command: str
    config_echo: dict
    payload: Any
    timestamp: str | None = None
    schema_version: str = SCHEMA_VERSION

    @classmethod
    def make(cls, command: str, config: dict, payload: Any, with_timestamp: bool = True) -> "ReportEnvelope":
        from . import __version__

        stamp = datetime.now(timezone.utc).isoformat(timespec="seconds") if with_timestamp else None
        return cls(__version__, command, config, payload, stamp)

    def as_dict(self) -> dict:
        return {
            "tool_version": self.tool_version,
            "schema_version": self.schema_version,
            "command": self.command,
            "config_echo": jsonable(self.config_echo),
            "payload": jsonable(self.payload),
            "timestamp": self.timestamp,
        }


def to_json(env: ReportEnvelope) -> str:
    return json.dumps(env.as_dict(), sort_keys=True, indent=2, allow_nan=False) + "\n"


def flatten(obj: Any, prefix: str = "") -> list[tuple[str, Any]]:
    """Dotted-key rows for nested payloads; complex values become .re / .im."""
    obj = jsonable(obj)
    rows: list[tuple[str, Any]] = []
    if isinstance(obj, dict):
        for k in sorted(obj):
            rows.extend(flatten(obj[k], f"{prefix}.{k}" if prefix else str(k)))
    elif isinstance(obj, list):
        for i, x in enumerate(obj):
            rows.extend(flatten(x, f"{prefix}.{i}" if prefix else str(i)))
    else:
        rows.append((prefix, obj))
    return rows


def to_csv(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow(["" if x is None else (repr(float(x)) if isinstance(x, float) else x) for x in r])
    return buf.getvalue()


# ---------------------------------------------------------------------------
# argument parsing helpers


def parse_complex(text: str) -> complex:
    t = str(text).strip().replace(" ", "").replace("i", "j")
    try:
        return complex(t)
    except ValueError:
        raise ArgumentError(f"cannot parse complex number {text!r}") from None


def parse_range(text: str, need_step: bool = True) -> list[float] | tuple[float, float]:
    """``a:b:step`` -> inclusive grid; ``a:b`` -> (a, b) when ``need_step`` is False."""
    parts = str(text).split(":")
    try:
        nums = [float(p) for p in parts]
    except ValueError:
        raise ArgumentError(f"cannot parse range {text!r}") from None
    if not need_step:
        if len(nums) != 2 or not nums[0] < nums[1]:
            raise ArgumentError(f"expected lo:hi with lo < hi, got {text!r}")
        return nums[0], nums[1]
    if len(nums) == 1:
        return nums
    if len(nums) != 3 or nums[2] <= 0 or nums[1] < nums[0]:
        raise ArgumentError(f"expected start:stop:step with step > 0, got {text!r}")
    a, b, h = nums
    count = int(math.floor((b - a) / h + 1e-9))
    return [round(a + h * i, 12) for i in range(count + 1)]


# ---------------------------------------------------------------------------
# convergence traces


@dataclass
class ConvergenceTrace:
    construction: str
    argument: complex
    points: list = field(default_factory=list)
    failures: list = field(default_factory=list)

    def add(self, work: int, abs_error: float, value: complex) -> None:
        if self.points and work <= self.points[-1]["work"]:
            raise ArgumentError("work must increase along a trace")
        if not abs_error >= 0.0:
            raise ArgumentError("errors must be non-negative")
        self.points.append({"work": int(work), "abs_error": float(abs_error), "value": complex(value)})

    def slope(self) -> float | None:
        """Least-squares slope of log(error) against log(work)."""
        pts = [(p["work"], p["abs_error"]) for p in self.points if p["abs_error"] > 0]
        if len(pts) < 2:
            return None
        x = np.log([w for w, _ in pts])
        y = np.log([e for _, e in pts])
        return float(np.polyfit(x, y, 1)[0])

    def as_dict(self) -> dict:
        return {
            "construction": self.construction,
            "argument": self.argument,
            "points": self.points,
            "failures": self.failures,
            "loglog_slope": self.slope(),
        }


CONVERGE_LADDERS = {
    "gauss-product": tuple(2**e for e in range(6, 13)),
    "weierstrass-product": (100, 1000, 10000, 100000),
    "kummer": (100, 1000, 10000),
}


def convergence_trace(construction: str, s: complex, ladder: Sequence[int] | None = None) -> ConvergenceTrace:
    """Evaluate at each work level and record the error against the reference."""
    if construction not in CONVERGE_LADDERS:
        raise ArgumentError(f"no work parameter for {construction!r}; choose from {sorted(CONVERGE_LADDERS)}")
    ladder = sorted(int(n) for n in (ladder or CONVERGE_LADDERS[construction]))
    z = complex(s)
    trace = ConvergenceTrace(construction, z)
    if construction == "kummer":
        if z.imag != 0.0:
            raise ArgumentError("kummer takes a real x in (0, 1)")
        ref = math.lgamma(z.real)
    else:
        ref = complex(gamma_reference(z))
    for n in ladder:
        try:
            if construction == "gauss-product":
                v = complex(gamma_gauss_product(z, n))
            elif construction == "weierstrass-product":
                v = complex(gamma_weierstrass_product(z, n_terms=n).value)
            else:
                v = complex(kummer_loggamma(z.real, n).value)
        except MathError as exc:
            trace.failures.append({"work": n, "error": type(exc).__name__, "message": str(exc)})
            continue
        trace.add(n, abs(v - ref), v)
    return trace


def error_body(exc: GammaZooError) -> dict:
    return {"error": {"type": type(exc).__name__, "message": str(exc)}}
