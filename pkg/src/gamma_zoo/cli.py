"""Command-line interface: ``gamma-zoo <eval|compare|audit|converge|zeros>``.

Exit codes: 0 success, 1 tolerance failure, 2 usage error, 3 math/domain
error, 4 audit failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import audits, companions, higher
from .constructions import GammaConstruction, GammaKind, gamma_gauss_product, gamma_reference
from .errors import ArgumentError, MathError
from .numerics import EvalResult, Rectangle
from .reports import (
    ReportEnvelope,
    convergence_trace,
    error_body,
    flatten,
    parse_complex,
    parse_range,
    to_csv,
    to_json,
)

EXIT_OK = 0
EXIT_TOLERANCE = 1
EXIT_USAGE = 2
EXIT_MATH = 3
EXIT_AUDIT = 4


# ---------------------------------------------------------------------------
# registry


@dataclass(frozen=True)
class Entry:
    name: str
    description: str
    evaluate: Callable[[argparse.Namespace], EvalResult]
    real_only: bool = False
    needs_s: bool = True


def _as_result(value, err: float = 0.0, work: int = 1) -> EvalResult:
    if isinstance(value, EvalResult):
        return value
    return EvalResult(value, err, work)


def _s(ns):
    if ns.s is None:
        raise ArgumentError("this function needs --s")
    return parse_complex(ns.s)


def _arg(ns, real_only: bool = False):
    """Real arguments stay real, so real-valued functions print real results."""
    z = _s(ns)
    if z.imag == 0.0:
        return z.real
    if real_only:
        raise ArgumentError("this function takes a real argument")
    return z


def _gamma_entry(kind: GammaKind) -> Entry:
    c = GammaConstruction(kind)
    return Entry(f"gamma.{kind.value}", f"Gamma(s) by the {kind.value} construction", lambda ns: c.evaluate(_arg(ns)).result)


def _mellin(ns) -> EvalResult:
    if not ns.spec:
        raise ArgumentError("mellin needs --spec '{\"leading\": 1, \"zeros\": [0], \"poles\": []}'")
    try:
        data = json.loads(ns.spec)
    except json.JSONDecodeError as exc:
        raise ArgumentError(f"--spec is not valid JSON: {exc}") from None
    F = higher.mellin_gamma_from_rational(higher.RationalFunctionSpec.from_dict(data))
    return _as_result(F(_arg(ns)), 1e-12)


def _bendersky(ns) -> EvalResult:
    if ns.level is None:
        raise ArgumentError("bendersky needs --level")
    return higher.bendersky_log_gamma(ns.level, _arg(ns, real_only=True))


def _constant(ns) -> EvalResult:
    g = companions.euler_gamma_constant(ns.method or "limit")
    return EvalResult(g.value, float(g.err_estimate), 1)


def _build_registry() -> dict[str, Entry]:
    entries = [_gamma_entry(k) for k in GammaKind]
    entries += [
        Entry("gamma.gauss-product-raw", "finite Gauss product at n = --n (default 4096)",
              lambda ns: _as_result(gamma_gauss_product(_arg(ns), ns.n or 4096), 0.0, ns.n or 4096)),
        Entry("gamma.sin-perturbed", "Gamma(s)(1 + sin 2 pi s)", lambda ns: _as_result(audits.gamma_sin_perturbed(_arg(ns)), 1e-12)),
        Entry("gamma.doubled", "2 Gamma(s)", lambda ns: _as_result(audits.gamma_doubled(_arg(ns)), 1e-12)),
        Entry("gamma.exp-scaled", "Gamma(s) 2^(s-1)", lambda ns: _as_result(audits.gamma_exp_scaled(_arg(ns)), 1e-12)),
        Entry("psi.stern", "psi(1+s) by Stern's binomial series", lambda ns: companions.digamma_stern(_arg(ns))),
        Entry("loggamma.hermite", "log Gamma(1+s) by Hermite's Newton series", lambda ns: companions.loggamma_hermite(_arg(ns))),
        Entry("loggamma.malmsten", "log Gamma(s) by Malmsten's integral", lambda ns: audits.malmsten_loggamma(_arg(ns))),
        Entry("loggamma.kummer", "log Gamma(x) by Kummer's Fourier series, --n terms (default 10000)",
              lambda ns: audits.kummer_loggamma(_arg(ns, real_only=True), ns.n or 10000), real_only=True),
        Entry("factorielle", "Fc(u) = 1/Gamma(1+u)", lambda ns: _as_result(companions.factorielle(_arg(ns)), 1e-12)),
        Entry("prym.P", "polar part P(s) of Gamma", lambda ns: companions.prym_P(_arg(ns))),
        Entry("prym.P-ascending", "P(s) from the ascending factorial series", lambda ns: companions.prym_P_ascending(_arg(ns))),
        Entry("prym.Q", "entire part Q(s) = Gamma(s) - P(s)", lambda ns: companions.prym_Q(_arg(ns))),
        Entry("bourget.T", "T(s) = e P(s) / Gamma(s)", lambda ns: _as_result(companions.bourget_T(_arg(ns)), 1e-12)),
        Entry("hadamard.H", "Hadamard's entire factorial interpolation H(s)", lambda ns: companions.hadamard_H(_arg(ns))),
        Entry("davis.GS", "Davis's pseudo-Gamma (real s > 0)",
              lambda ns: _as_result(companions.davis_pseudo_gamma(_arg(ns, real_only=True))), real_only=True),
        Entry("mellin", "Mellin Gamma for R given by --spec JSON", _mellin),
        Entry("bendersky", "log Gamma_k(x) for k = --level", _bendersky, real_only=True),
        Entry("constants.gamma", "Euler's constant, --method limit|integral", _constant, needs_s=False),
    ]
    return {e.name: e for e in entries}


REGISTRY = _build_registry()

AUDIT_TARGETS = {
    **{f"gamma.{k.value}": GammaConstruction(k) for k in GammaKind},
    "gamma.sin-perturbed": audits.gamma_sin_perturbed,
    "gamma.doubled": audits.gamma_doubled,
    "gamma.exp-scaled": audits.gamma_exp_scaled,
    "davis.GS": companions.davis_pseudo_gamma,
}
REAL_ONLY_TARGETS = {"davis.GS"}

COMPARE_CONSTRUCTIONS = ("euler-log-integral", "euler-integral", "gauss-product", "weierstrass-product")


# ---------------------------------------------------------------------------
# output


class Output:
    def __init__(self, ns: argparse.Namespace, stdout):
        self.ns = ns
        self.stdout = stdout

    def config(self, **extra) -> dict:
        base = {k: getattr(self.ns, k) for k in ("tol", "seed") if getattr(self.ns, k, None) is not None}
        base["format"] = "csv" if self.ns.csv else "json"
        base.update({k: v for k, v in extra.items()})
        return base

    def emit(self, command: str, config: dict, payload, table: tuple | None = None) -> None:
        if self.ns.csv:
            if table is None:
                header, rows = ("field", "value"), flatten(payload)
            else:
                header, rows = table
            self.stdout.write(to_csv(header, rows))
        else:
            env = ReportEnvelope.make(command, config, payload, with_timestamp=not self.ns.no_timestamp)
            self.stdout.write(to_json(env))


def _value_row(z) -> list:
    z = complex(z)
    return [z.real, z.imag]


# ---------------------------------------------------------------------------
# commands


def cmd_eval(ns, out: Output) -> int:
    entry = REGISTRY.get(ns.function)
    if entry is None:
        raise ArgumentError(f"unknown function {ns.function!r}; see --list")
    res = entry.evaluate(ns)
    payload = {"function": entry.name, **res.as_dict()}
    if entry.needs_s:
        payload["argument"] = parse_complex(ns.s)
    cfg = out.config(function=entry.name, s=ns.s, method=ns.method, level=ns.level, spec=ns.spec, n=ns.n)
    arg = payload.get("argument")
    table = (
        ("function", "s_re", "s_im", "value_re", "value_im", "err_estimate", "work"),
        [[entry.name, *(_value_row(arg) if arg is not None else ["", ""]), *_value_row(res.value), float(res.err_estimate), res.work]],
    )
    out.emit("eval", cfg, payload, table)
    if ns.tol is not None and res.err_estimate > ns.tol:
        print(f"error estimate {res.err_estimate:.3g} exceeds --tol {ns.tol:g}", file=sys.stderr)
        return EXIT_TOLERANCE
    return EXIT_OK


def _compare_points(ns) -> list[complex]:
    pts: list[complex] = []
    res = parse_range(ns.re)
    ims = parse_range(ns.im) if ns.im else [0.0]
    for y in ims:
        for x in res:
            pts.append(complex(x, y))
    rng = np.random.default_rng(ns.seed)
    for _ in range(ns.random):
        x = float(rng.uniform(0.0, 5.0))
        while x == 0.0:
            x = float(rng.uniform(0.0, 5.0))
        pts.append(complex(x, float(rng.uniform(-3.0, 3.0))))
    return pts


def cmd_compare(ns, out: Output) -> int:
    tol = 1e-7 if ns.tol is None else ns.tol
    points = _compare_points(ns)
    names = list(COMPARE_CONSTRUCTIONS) + (["gauss-product-raw"] if ns.include_raw else [])
    rows = []
    stats = {n: {"max_rel_dev": 0.0, "sum": 0.0, "count": 0, "errors": 0, "budget_failures": 0} for n in names}
    for z in points:
        arg = z.real if z.imag == 0.0 else z
        try:
            ref = complex(gamma_reference(arg))
        except MathError as exc:
            for n in names:
                rows.append({"s": z, "construction": n, "error": type(exc).__name__, "message": str(exc)})
                stats[n]["errors"] += 1
            continue
        for n in names:
            try:
                if n == "gauss-product-raw":
                    v = complex(gamma_gauss_product(arg, ns.raw_n))
                else:
                    v = complex(GammaConstruction(n)(arg))
            except MathError as exc:
                rows.append({"s": z, "construction": n, "error": type(exc).__name__, "message": str(exc)})
                st = stats[n]
                st["errors"] += 1
                if type(exc).__name__ == "BudgetExceededError":
                    st["budget_failures"] += 1
                continue
            dev = abs(v - ref) / abs(ref)
            rows.append({"s": z, "construction": n, "value": v, "reference": ref, "rel_dev": dev})
            st = stats[n]
            st["max_rel_dev"] = max(st["max_rel_dev"], dev)
            st["sum"] += dev
            st["count"] += 1
    summary = {}
    failed = []
    for n in names:
        st = stats[n]
        limit = ns.raw_tol if n == "gauss-product-raw" else tol
        ok = st["max_rel_dev"] <= limit and st["budget_failures"] == 0
        summary[n] = {
            "max_rel_dev": st["max_rel_dev"],
            "mean_rel_dev": st["sum"] / st["count"] if st["count"] else None,
            "points": st["count"],
            "error_rows": st["errors"],
            "tolerance": limit,
            "within_tolerance": ok,
        }
        if not ok:
            failed.append(n)
    payload = {"summary": summary, "rows": rows, "failed": failed, "points": len(points)}
    cfg = out.config(tol=tol, re=ns.re, im=ns.im, random=ns.random, seed=ns.seed,
                     include_raw=ns.include_raw, raw_n=ns.raw_n, raw_tol=ns.raw_tol)
    table = (
        ("s_re", "s_im", "construction", "value_re", "value_im", "reference_re", "reference_im", "rel_dev", "error"),
        [
            [*_value_row(r["s"]), r["construction"],
             *(_value_row(r["value"]) if "value" in r else ["", ""]),
             *(_value_row(r["reference"]) if "reference" in r else ["", ""]),
             r.get("rel_dev", ""), r.get("error", "")]
            for r in rows
        ],
    )
    out.emit("compare", cfg, payload, table)
    if failed:
        print("tolerance exceeded by: " + ", ".join(failed), file=sys.stderr)
        return EXIT_TOLERANCE
    return EXIT_OK


def cmd_audit(ns, out: Output) -> int:
    target = AUDIT_TARGETS.get(ns.target)
    if target is None:
        raise ArgumentError(f"unknown audit target {ns.target!r}; choose from {sorted(AUDIT_TARGETS)}")
    if ns.criterion == "bohr-mollerup":
        tol = 1e-10 if ns.convexity_tol is None else ns.convexity_tol
        eq_tol = 1e-9 if ns.tol is None else ns.tol
        rep = audits.bohr_mollerup_audit(target, tol=tol, eq_tol=eq_tol)
        cfg = out.config(criterion=ns.criterion, target=ns.target, convexity_tol=tol, eq_tol=eq_tol,
                         grid="0.1:6:0.05")
    else:
        if ns.target in REAL_ONLY_TARGETS:
            raise ArgumentError(f"{ns.target} is real-valued; the wielandt audit needs complex arguments")
        eq_tol = 1e-10 if ns.tol is None else ns.tol
        bound = 10.0 if ns.bound_tol is None else ns.bound_tol
        rep = audits.wielandt_audit(target, audits.default_strip_samples(ns.ceiling), bound_tol=bound, eq_tol=eq_tol)
        cfg = out.config(criterion=ns.criterion, target=ns.target, eq_tol=eq_tol, bound_tol=bound, ceiling=ns.ceiling)
    payload = {"target": ns.target, **rep.as_dict()}
    out.emit("audit", cfg, payload)
    if not rep.passed:
        print(f"audit failed: {rep.verdict.value}", file=sys.stderr)
        return EXIT_AUDIT
    return EXIT_OK


def cmd_converge(ns, out: Output) -> int:
    ladder = [int(float(x)) for x in ns.ladder.split(",")] if ns.ladder else None
    s = parse_complex(ns.s) if ns.s is not None else complex(0.25 if ns.construction == "kummer" else 0.5)
    trace = convergence_trace(ns.construction, s, ladder)
    cfg = out.config(construction=ns.construction, s=s, ladder=[p["work"] for p in trace.points] + [f["work"] for f in trace.failures])
    table = (
        ("work", "abs_error", "value_re", "value_im"),
        [[p["work"], p["abs_error"], *_value_row(p["value"])] for p in trace.points],
    )
    out.emit("converge", cfg, trace.as_dict(), table)
    return EXIT_OK


def cmd_zeros(ns, out: Output) -> int:
    re_lo, re_hi = parse_range(ns.re, need_step=False)
    im_lo, im_hi = parse_range(ns.im, need_step=False)
    rect = Rectangle(re_lo, re_hi, im_lo, im_hi)
    which = {"prym-P": "PrymP", "prym-Q": "PrymQ"}[ns.which]
    survey = audits.zero_survey(which, rect, grid_density=ns.density, nodes=ns.nodes)
    cfg = out.config(which=ns.which, rect=rect.as_dict(), density=ns.density, nodes=ns.nodes)
    table = (("re", "im"), [_value_row(z) for z in survey.refined_zeros])
    out.emit("zeros", cfg, survey.as_dict(), table)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="JSON report (default)")
    fmt.add_argument("--csv", action="store_true", help="CSV table instead of JSON")
    p.add_argument("--tol", type=float, default=None, help="tolerance (meaning depends on the command)")
    p.add_argument("--seed", type=int, default=0, help="seed for random sample points")
    p.add_argument("--no-timestamp", action="store_true", help="omit the timestamp (byte-stable output)")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="gamma-zoo", description="Gamma function constructions and identity checks.")
    parser.add_argument("--list", action="store_true", help="list the evaluable functions and exit")
    sub = parser.add_subparsers(dest="command")

    p = sub.add_parser("eval", parents=[common], help="evaluate one registered function")
    p.add_argument("function")
    p.add_argument("--s", help="argument, e.g. 2.5 or 1+2i")
    p.add_argument("--method", choices=["limit", "integral"])
    p.add_argument("--level", type=int)
    p.add_argument("--spec", help="JSON rational function spec for 'mellin'")
    p.add_argument("--n", type=int, help="work parameter for raw Gauss product / Kummer")

    p = sub.add_parser("compare", parents=[common], help="all constructions against the reference")
    p.add_argument("--re", default="0.1:4:0.1", help="real parts start:stop:step")
    p.add_argument("--im", default=None, help="imaginary parts start:stop:step")
    p.add_argument("--random", type=int, default=20, help="extra seeded complex points")
    p.add_argument("--include-raw", action="store_true", help="also compare the finite Gauss product")
    p.add_argument("--raw-n", type=int, default=4096)
    p.add_argument("--raw-tol", type=float, default=1e-5)

    p = sub.add_parser("audit", parents=[common], help="Bohr-Mollerup or Wielandt audit")
    p.add_argument("criterion", choices=["bohr-mollerup", "wielandt"])
    p.add_argument("target")
    p.add_argument("--convexity-tol", type=float)
    p.add_argument("--bound-tol", type=float)
    p.add_argument("--ceiling", type=float, default=3.0, help="largest |Im s| sampled (wielandt)")

    p = sub.add_parser("converge", parents=[common], help="error against work for one construction")
    p.add_argument("construction", choices=["gauss-product", "weierstrass-product", "kummer"])
    p.add_argument("--s")
    p.add_argument("--ladder", help="comma separated work levels")

    p = sub.add_parser("zeros", parents=[common], help="zero survey for Prym's P or Q")
    p.add_argument("which", choices=["prym-P", "prym-Q"])
    p.add_argument("--re", required=True, help="lo:hi")
    p.add_argument("--im", required=True, help="lo:hi")
    p.add_argument("--density", type=int, default=10, help="grid points per unit length")
    p.add_argument("--nodes", type=int, default=128, help="contour nodes per edge")
    return parser


COMMANDS = {
    "eval": cmd_eval,
    "compare": cmd_compare,
    "audit": cmd_audit,
    "converge": cmd_converge,
    "zeros": cmd_zeros,
}


def main(argv: Sequence[str] | None = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    if ns.list:
        for name in sorted(REGISTRY):
            stdout.write(f"{name}\t{REGISTRY[name].description}\n")
        return EXIT_OK
    if ns.command is None:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    out = Output(ns, stdout)
    try:
        return COMMANDS[ns.command](ns, out)
    except ArgumentError as exc:
        print(f"gamma-zoo: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except MathError as exc:
        cfg = out.config(command_args=vars(ns))
        out.emit(ns.command, cfg, error_body(exc))
        print(f"gamma-zoo: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_MATH


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
