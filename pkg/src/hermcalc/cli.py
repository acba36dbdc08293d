"""Command-line entry point.

    hermcalc check <manifest>
    hermcalc deform <manifest>
    hermcalc blowup <manifest>
    hermcalc identities [--seed S] [--n N] [--cases C]

Exit codes: 0 every condition holds, 1 a condition fails (witness printed),
2 input or precondition error, 3 internal oracle mismatch.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path
from typing import Any, Dict, List, Optional

from . import __version__
from .blowup import BlowupInstance, binomial_expansion_residual, positivity_threshold
from .core.forms import BiForm, ddbar, power
from .core.maps import pullback
from .core.poly import Poly
from .deformation import (
    DeformationFamily,
    MetricFamily,
    first_order_residual,
    holomorphy_residual,
    mc_residual,
    order1_jet_oracle,
)
from .errors import HermcalcError, NotClosedError, PreconditionError, TruncationError
from .identities import MUTATIONS, run_suite
from .manifest import Manifest, ManifestError, load_manifest
from .metrics import MetricForm, check_k_special, classify

__all__ = ["main", "build_parser", "EXIT_OK", "EXIT_FAIL", "EXIT_INPUT", "EXIT_ORACLE"]

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_ORACLE = 0, 1, 2, 3

POSITIVITY_NOTE = "positivity is certified only at the listed sample points"


class InputError(Exception):
    """Precondition failure to be reported with exit code 2."""

    def __init__(self, message: str, path: str = "", witness: Optional[str] = None):
        super().__init__(message)
        self.path = path
        self.witness = witness


class OracleMismatch(Exception):
    def __init__(self, message: str, direct: BiForm, oracle: BiForm):
        super().__init__(message)
        self.direct = direct
        self.oracle = oracle


def _text(x) -> Optional[str]:
    return None if x is None else str(x)


def _entry(name: str, witness=None, detail: str = "", holds: Optional[bool] = None) -> Dict[str, Any]:
    if holds is None:
        holds = not witness
    return {"name": name, "holds": bool(holds), "witness": None if holds else _text(witness), "detail": detail}


def _require_metric(m: Manifest) -> BiForm:
    if m.metric is None:
        raise ManifestError("metric", "this command needs a metric")
    return m.metric


def _metric_form(omega: BiForm, points, path: str = "metric") -> MetricForm:
    try:
        return MetricForm(omega, points)
    except (PreconditionError, ValueError) as exc:
        raise InputError(str(exc), path) from None


# -- commands ------------------------------------------------------------------------


def cmd_check(m: Manifest) -> Dict[str, Any]:
    mf = _metric_form(_require_metric(m), m.sample_points)
    report = classify(mf)
    verdicts = [_entry(v.name, v.witness, v.detail, v.holds) for v in report.verdicts.values()]
    return {"verdicts": verdicts, "notes": [POSITIVITY_NOTE]}


def cmd_deform(m: Manifest) -> Dict[str, Any]:
    if m.deformation is None:
        raise ManifestError("deformation", "this command needs a deformation section")
    if m.truncation_order < 1:
        raise TruncationError("deformation checks need truncation_order >= 1")
    sec = m.deformation
    try:
        fam = DeformationFamily(sec.phi)
    except PreconditionError as exc:
        raise InputError(str(exc), "deformation.phi") from None
    base = _metric_form(_require_metric(m), m.sample_points)
    try:
        mf = MetricFamily(sec.omega_t if sec.omega_t is not None else base.omega, base)
    except PreconditionError as exc:
        raise InputError(str(exc), "deformation.omega_t") from None

    verdicts = []
    mc = mc_residual(fam)
    verdicts.append(_entry("maurer_cartan", None if mc.is_zero() else mc))
    for i, fn in enumerate(sec.functions, start=1):
        verdicts.append(_entry(f"holomorphic_{i}", holomorphy_residual(fam, fn)))
    n = m.dim
    ks = sec.ks or tuple(range(1, n))
    for k in ks:
        if not 1 <= k <= n - 1:
            raise InputError(f"k must lie in 1..{n - 1}, got {k}", "deformation.k")
        res = first_order_residual(base, fam, mf, k)
        oracle = order1_jet_oracle(base, fam, mf, k)
        if res != oracle:
            raise OracleMismatch(f"first-order residual disagrees with the jet oracle at k={k}", res, oracle)
        verdicts.append(_entry(f"first_order_k{k}", res, "matches the jet oracle"))
    notes = []
    if not mc.is_zero():
        notes.append("phi does not satisfy Maurer-Cartan; first-order residuals are still reported")
    if not ks:
        notes.append("no k in 1..n-1 for n = 1; first-order checks are vacuous")
    return {"verdicts": verdicts, "notes": notes}


def cmd_blowup(m: Manifest) -> Dict[str, Any]:
    if m.blowup is None:
        raise ManifestError("blowup", "this command needs a blowup section")
    sec = m.blowup
    F = _require_metric(m)
    Fp = pullback(sec.chart, F) if sec.chart is not None else F
    values: Dict[str, Any] = {}
    if sec.chart is not None:
        values["pullback"] = str(Fp)
    try:
        b = BlowupInstance(_metric_form(Fp, ()), sec.omega, sec.k)
        b.require_closed()
    except NotClosedError as exc:
        raise InputError(str(exc), "blowup.omega", str(exc.witness)) from None
    except (PreconditionError, ValueError) as exc:
        raise InputError(str(exc), "blowup") from None
    if not 1 <= sec.k <= b.dim - 1:
        raise InputError(f"k must lie in 1..{b.dim - 1}, got {sec.k}", "blowup.k")

    verdicts = [_entry("binomial_expansion", binomial_expansion_residual(b))]
    hyp = check_k_special(b.F, sec.k)
    verdicts.append(_entry(f"hypothesis_k_special_{sec.k}", hyp.witness, hyp.detail, hyp.holds))
    if hyp.holds:
        tilde = b.F.omega + b.omega.scale(Poly.N(b.omega.order))
        for i in range(1, sec.k + 1):
            verdicts.append(_entry(f"ddbar_power_{i}", ddbar(power(tilde, i)), "identically in N"))

    points = sec.points or (m.sample_points if sec.chart is None else ())
    notes = []
    if points:
        n0 = positivity_threshold(Fp, sec.omega, points)
        values["positivity_threshold"] = n0
        verdicts.append(_entry("positivity", holds=n0 is not None,
                               witness="no N up to the search cap" if n0 is None else None,
                               detail=f"N0 = {n0}" if n0 is not None else "search cap reached"))
        notes.append(POSITIVITY_NOTE)
    return {"verdicts": verdicts, "values": values, "notes": notes}


def cmd_identities(seed: int, n: int, cases: int, mutation: Optional[str] = None) -> Dict[str, Any]:
    results = run_suite(seed, n, cases, mutation)
    rows = [{"name": r.name, "status": r.status, "cases": r.cases, "failures": r.failures,
             "failing_case": r.failing_case, "witness": r.witness} for r in results]
    return {"identities": rows}


# -- plumbing --------------------------------------------------------------------------


def _add_common(p: argparse.ArgumentParser, suppress: bool) -> None:
    kw = {"default": argparse.SUPPRESS} if suppress else {}
    p.add_argument("--report", metavar="PATH", help="write a JSON report", **kw)
    p.add_argument("--quiet", action="store_true", help="print nothing on success", **kw)
    p.add_argument("--timing", action="store_true", help="include wall-clock timing in the report", **kw)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hermcalc", description="Exact checks for Hermitian metric conditions.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    _add_common(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_ in (("check", "classify the metric of a manifest"),
                        ("deform", "first-order stability along a deformation"),
                        ("blowup", "blow-up expansion, pullback and positivity")):
        p = sub.add_parser(name, help=help_)
        p.add_argument("manifest")
        _add_common(p, suppress=True)
    p = sub.add_parser("identities", help="run the seeded property suite")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n", type=int, default=3, help="largest dimension sampled")
    p.add_argument("--cases", type=int, default=10, help="cases per identity")
    p.add_argument("--mutate", choices=sorted(MUTATIONS), help="inject a known bug (suite sensitivity check)")
    _add_common(p, suppress=True)
    return parser


def _status(report: Dict[str, Any]) -> int:
    rows = report.get("verdicts", []) + [r for r in report.get("identities", []) if r["status"] == "fail"]
    if any(not r.get("holds", False) for r in rows):
        return EXIT_FAIL
    return EXIT_OK


def _print(report: Dict[str, Any], quiet: bool, out) -> None:
    code = report["exit_code"]
    if quiet and code == EXIT_OK:
        return
    if "error" in report:
        err = report["error"]
        where = f"{err['path']}: " if err.get("path") else ""
        print(f"error: {where}{err['message']}", file=sys.stderr)
        if err.get("witness"):
            print(f"  witness: {err['witness']}", file=sys.stderr)
        for key in ("direct", "oracle"):
            if key in err:
                print(f"  {key}: {err[key]}", file=sys.stderr)
        return
    for v in report.get("verdicts", []):
        if quiet and v["holds"]:
            continue
        line = f"{v['name']}: {'holds' if v['holds'] else 'FAILS'}"
        if v["detail"]:
            line += f" ({v['detail']})"
        print(line, file=out)
        if not v["holds"] and v["witness"]:
            print(f"  witness: {v['witness']}", file=out)
    for r in report.get("identities", []):
        if quiet and r["status"] != "fail":
            continue
        line = f"{r['name']}: {r['status']} ({r['cases'] - r['failures']}/{r['cases']})"
        print(line, file=out)
        if r["status"] == "fail":
            print(f"  first failing case: {r['failing_case']}", file=out)
            print(f"  witness: {r['witness']}", file=out)
    for k, v in sorted(report.get("values", {}).items()):
        print(f"{k}: {v}", file=out)
    if not quiet:
        for note in report.get("notes", []):
            print(f"note: {note}", file=out)


def main(argv: Optional[List[str]] = None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    report: Dict[str, Any] = {"command": args.command, "format": 1}
    try:
        if args.command == "identities":
            report["args"] = {"seed": args.seed, "n": args.n, "cases": args.cases, "mutate": args.mutate}
            report["seed"] = args.seed
            if args.n < 1 or args.cases < 0:
                raise InputError("--n must be positive and --cases non-negative", "args")
            body = cmd_identities(args.seed, args.n, args.cases, args.mutate)
        else:
            report["args"] = {"manifest": args.manifest}
            m = load_manifest(args.manifest)
            report["seed"] = m.seed
            report["dim"] = m.dim
            report["truncation_order"] = m.truncation_order
            body = {"check": cmd_check, "deform": cmd_deform, "blowup": cmd_blowup}[args.command](m)
        report.update(body)
        report["exit_code"] = _status(report)
    except ManifestError as exc:
        report["error"] = {"path": exc.path, "message": exc.message}
        report["exit_code"] = EXIT_INPUT
    except InputError as exc:
        report["error"] = {"path": exc.path, "message": str(exc), "witness": exc.witness}
        report["exit_code"] = EXIT_INPUT
    except (TruncationError, PreconditionError, HermcalcError, ValueError) as exc:
        report["error"] = {"path": "", "message": str(exc)}
        report["exit_code"] = EXIT_INPUT
    except OracleMismatch as exc:
        report["error"] = {"path": "", "message": str(exc), "direct": str(exc.direct), "oracle": str(exc.oracle)}
        report["exit_code"] = EXIT_ORACLE
    if args.timing:
        report["timing"] = {"seconds": round(time.perf_counter() - start, 6)}
    _print(report, args.quiet, out)
    if args.report:
        text = json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
        Path(args.report).write_text(text, encoding="utf-8")
    return report["exit_code"]


if __name__ == "__main__":
    sys.exit(main())
