"""JSON manifest format (version 1) and canonical serialization.

Scalars are ``[[re_num, re_den], [im_num, im_den]]``. A form is a list of
terms ``{"holo": [...], "anti": [...], "coeff": scalar, "monomial": {var: exp}}``
with 1-based indices and variables named ``z1``, ``zb1``, ``t``, ``N``. Vector
form terms carry an extra ``"target"`` index and no ``"holo"`` list.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, List, Optional, Tuple

from .core.forms import MAX_DIM, BiForm
from .core.maps import HoloMap
from .core.poly import DEFAULT_ORDER, Poly, parse_var, var_name
from .core.positivity import Point
from .core.scalar import Scalar
from .vector_forms import VecForm

__all__ = [
    "FORMAT_VERSION",
    "ManifestError",
    "Manifest",
    "DeformationSpec",
    "BlowupSpec",
    "load_manifest",
    "parse_manifest",
    "parse_scalar",
    "parse_poly",
    "parse_form",
    "parse_vecform",
    "dump_scalar",
    "dump_poly",
    "dump_form",
    "dump_vecform",
]

FORMAT_VERSION = 1


class ManifestError(ValueError):
    """Input error located at a field path such as ``metric[2].holo``."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path
        self.message = message


def _int(x: Any, path: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise ManifestError(path, f"expected an integer, got {x!r}")
    return x


def _rational(x: Any, path: str) -> Fraction:
    if isinstance(x, list) and len(x) == 2:
        num, den = _int(x[0], f"{path}[0]"), _int(x[1], f"{path}[1]")
        if den == 0:
            raise ManifestError(path, "zero denominator")
        return Fraction(num, den)
    raise ManifestError(path, f"expected [num, den], got {x!r}")


def parse_scalar(x: Any, path: str) -> Scalar:
    if isinstance(x, list) and len(x) == 2 and all(isinstance(p, list) for p in x):
        return Scalar(_rational(x[0], f"{path}[0]"), _rational(x[1], f"{path}[1]"))
    raise ManifestError(path, f"expected [[re_num, re_den], [im_num, im_den]], got {x!r}")


def _monomial(x: Any, path: str, dim: int) -> dict:
    if x is None:
        return {}
    if not isinstance(x, dict):
        raise ManifestError(path, "monomial must be an object {var: exponent}")
    exps = {}
    for name, e in x.items():
        try:
            v = parse_var(name)
        except ValueError as exc:
            raise ManifestError(f"{path}.{name}", str(exc)) from None
        if v >= 2 and v // 2 > dim:
            raise ManifestError(f"{path}.{name}", f"coordinate beyond C^{dim}")
        e = _int(e, f"{path}.{name}")
        if e < 0:
            raise ManifestError(f"{path}.{name}", "negative exponent")
        exps[v] = exps.get(v, 0) + e
    return exps


def _indices(x: Any, path: str, dim: int) -> Tuple[int, ...]:
    if x is None:
        return ()
    if not isinstance(x, list):
        raise ManifestError(path, "expected a list of indices")
    out = []
    for k, i in enumerate(x):
        i = _int(i, f"{path}[{k}]")
        if not 1 <= i <= dim:
            raise ManifestError(f"{path}[{k}]", f"index {i} outside 1..{dim}")
        out.append(i)
    if len(set(out)) != len(out):
        raise ManifestError(path, "repeated index")
    return tuple(out)


def _check_keys(obj: dict, allowed: set, path: str) -> None:
    extra = set(obj) - allowed
    if extra:
        raise ManifestError(path, f"unknown field(s) {sorted(extra)}")


def parse_poly(x: Any, path: str, dim: int, order: int = DEFAULT_ORDER) -> Poly:
    if not isinstance(x, list):
        raise ManifestError(path, "polynomial must be a list of terms")
    out = Poly.zero(order)
    for k, term in enumerate(x):
        tp = f"{path}[{k}]"
        if not isinstance(term, dict):
            raise ManifestError(tp, "term must be an object")
        _check_keys(term, {"coeff", "monomial"}, tp)
        if "coeff" not in term:
            raise ManifestError(tp, "missing coeff")
        c = parse_scalar(term["coeff"], f"{tp}.coeff")
        out = out + Poly.monomial(_monomial(term.get("monomial"), f"{tp}.monomial", dim), c, order)
    return out


def parse_form(x: Any, path: str, dim: int, order: int = DEFAULT_ORDER) -> BiForm:
    if not isinstance(x, list):
        raise ManifestError(path, "form must be a list of terms")
    out = BiForm.zero(dim, order)
    for k, term in enumerate(x):
        tp = f"{path}[{k}]"
        if not isinstance(term, dict):
            raise ManifestError(tp, "term must be an object")
        _check_keys(term, {"holo", "anti", "coeff", "monomial"}, tp)
        if "coeff" not in term:
            raise ManifestError(tp, "missing coeff")
        holo = _indices(term.get("holo"), f"{tp}.holo", dim)
        anti = _indices(term.get("anti"), f"{tp}.anti", dim)
        c = parse_scalar(term["coeff"], f"{tp}.coeff")
        p = Poly.monomial(_monomial(term.get("monomial"), f"{tp}.monomial", dim), c, order)
        out = out + BiForm.monomial(dim, holo, anti, p, order)
    return out


def parse_vecform(x: Any, path: str, dim: int, order: int = DEFAULT_ORDER) -> VecForm:
    if not isinstance(x, list):
        raise ManifestError(path, "vector form must be a list of terms")
    comps = [BiForm.zero(dim, order) for _ in range(dim)]
    q = None
    for k, term in enumerate(x):
        tp = f"{path}[{k}]"
        if not isinstance(term, dict):
            raise ManifestError(tp, "term must be an object")
        _check_keys(term, {"target", "anti", "coeff", "monomial"}, tp)
        if "target" not in term or "coeff" not in term:
            raise ManifestError(tp, "vector form terms need target and coeff")
        target = _int(term["target"], f"{tp}.target")
        if not 1 <= target <= dim:
            raise ManifestError(f"{tp}.target", f"index {target} outside 1..{dim}")
        anti = _indices(term.get("anti"), f"{tp}.anti", dim)
        if q is None:
            q = len(anti)
        elif q != len(anti):
            raise ManifestError(f"{tp}.anti", "all terms must have the same form degree")
        c = parse_scalar(term["coeff"], f"{tp}.coeff")
        p = Poly.monomial(_monomial(term.get("monomial"), f"{tp}.monomial", dim), c, order)
        comps[target - 1] = comps[target - 1] + BiForm.monomial(dim, (), anti, p, order)
    return VecForm(dim, 1 if q is None else q, tuple(comps))


def parse_point(x: Any, path: str, dim: int) -> Point:
    if not isinstance(x, list) or len(x) != dim:
        raise ManifestError(path, f"point must list {dim} coordinates")
    return Point(tuple(parse_scalar(c, f"{path}[{k}]") for k, c in enumerate(x)))


# -- dumping ----------------------------------------------------------------------


def _dump_rational(q: Fraction) -> List[int]:
    return [q.numerator, q.denominator]


def dump_scalar(c: Scalar) -> list:
    return [_dump_rational(c.re), _dump_rational(c.im)]


def _dump_monomial(m) -> dict:
    return {var_name(v): e for v, e in m}


def dump_poly(p: Poly) -> list:
    return [{"coeff": dump_scalar(c), "monomial": _dump_monomial(m)} for m, c in p.sorted_terms()]


def dump_form(a: BiForm) -> list:
    out = []
    for (I, J), p in a.sorted_terms():
        for m, c in p.sorted_terms():
            out.append({"holo": list(I), "anti": list(J), "coeff": dump_scalar(c), "monomial": _dump_monomial(m)})
    return out


def dump_vecform(phi: VecForm) -> list:
    out = []
    for target, comp in enumerate(phi.components, start=1):
        for (_, J), p in comp.sorted_terms():
            for m, c in p.sorted_terms():
                out.append({"target": target, "anti": list(J), "coeff": dump_scalar(c), "monomial": _dump_monomial(m)})
    return out


# -- manifest ---------------------------------------------------------------------


@dataclass(frozen=True)
class DeformationSpec:
    phi: VecForm
    omega_t: Optional[BiForm] = None
    functions: Tuple[Poly, ...] = ()
    ks: Tuple[int, ...] = ()


@dataclass(frozen=True)
class BlowupSpec:
    omega: BiForm
    k: int
    chart: Optional[HoloMap] = None
    points: Tuple[Point, ...] = ()


@dataclass(frozen=True)
class Manifest:
    dim: int
    truncation_order: int
    metric: Optional[BiForm]
    sample_points: Tuple[Point, ...]
    seed: int = 0
    deformation: Optional[DeformationSpec] = None
    blowup: Optional[BlowupSpec] = None


def _parse_chart(x: Any, path: str, dim: int) -> HoloMap:
    from .blowup import incidence_chart

    if not isinstance(x, dict):
        raise ManifestError(path, "chart must be an object")
    if "components" in x:
        _check_keys(x, {"components", "source_dim"}, path)
        src = _int(x.get("source_dim", dim), f"{path}.source_dim")
        comps = x["components"]
        if not isinstance(comps, list) or len(comps) != dim:
            raise ManifestError(f"{path}.components", f"need {dim} component polynomials")
        polys = tuple(parse_poly(c, f"{path}.components[{k}]", src) for k, c in enumerate(comps))
        try:
            return HoloMap(src, dim, polys)
        except ValueError as exc:
            raise ManifestError(f"{path}.components", str(exc)) from None
    _check_keys(x, {"center_dim", "index"}, path)
    try:
        return incidence_chart(dim, _int(x.get("center_dim", 0), f"{path}.center_dim"),
                               _int(x.get("index", 1), f"{path}.index"))
    except ValueError as exc:
        raise ManifestError(path, str(exc)) from None


def parse_manifest(data: Any) -> Manifest:
    if not isinstance(data, dict):
        raise ManifestError("$", "manifest must be a JSON object")
    _check_keys(data, {"format", "dim", "truncation_order", "metric", "sample_points",
                       "seed", "deformation", "blowup"}, "$")
    fmt = data.get("format")
    if fmt != FORMAT_VERSION:
        raise ManifestError("format", f"unsupported format {fmt!r} (expected {FORMAT_VERSION})")
    if "dim" not in data:
        raise ManifestError("dim", "missing")
    dim = _int(data["dim"], "dim")
    if not 1 <= dim <= MAX_DIM:
        raise ManifestError("dim", f"dimension must lie in 1..{MAX_DIM}")
    order = _int(data.get("truncation_order", DEFAULT_ORDER), "truncation_order")
    if order < 0:
        raise ManifestError("truncation_order", "must be non-negative")
    metric = parse_form(data["metric"], "metric", dim, order) if "metric" in data else None
    pts = data.get("sample_points")
    if pts is None:
        points: Tuple[Point, ...] = (Point.origin(dim),)
    else:
        if not isinstance(pts, list):
            raise ManifestError("sample_points", "expected a list of points")
        points = tuple(parse_point(p, f"sample_points[{k}]", dim) for k, p in enumerate(pts))
    seed = _int(data.get("seed", 0), "seed")

    deformation = None
    if "deformation" in data:
        dd = data["deformation"]
        if not isinstance(dd, dict):
            raise ManifestError("deformation", "expected an object")
        _check_keys(dd, {"phi", "omega_t", "functions", "k"}, "deformation")
        if "phi" not in dd:
            raise ManifestError("deformation.phi", "missing")
        phi = parse_vecform(dd["phi"], "deformation.phi", dim, order)
        omega_t = parse_form(dd["omega_t"], "deformation.omega_t", dim, order) if "omega_t" in dd else None
        fns = dd.get("functions", [])
        if not isinstance(fns, list):
            raise ManifestError("deformation.functions", "expected a list of polynomials")
        functions = tuple(parse_poly(f, f"deformation.functions[{k}]", dim, order) for k, f in enumerate(fns))
        ks = dd.get("k", [])
        if isinstance(ks, int):
            ks = [ks]
        if not isinstance(ks, list):
            raise ManifestError("deformation.k", "expected an integer or a list")
        ks = tuple(_int(k, f"deformation.k[{i}]") for i, k in enumerate(ks))
        deformation = DeformationSpec(phi, omega_t, functions, ks)

    blowup = None
    if "blowup" in data:
        bd = data["blowup"]
        if not isinstance(bd, dict):
            raise ManifestError("blowup", "expected an object")
        _check_keys(bd, {"omega", "k", "chart", "points"}, "blowup")
        if "omega" not in bd:
            raise ManifestError("blowup.omega", "missing")
        chart = _parse_chart(bd["chart"], "blowup.chart", dim) if "chart" in bd else None
        src = chart.source_dim if chart else dim
        omega = parse_form(bd["omega"], "blowup.omega", src, order)
        k = _int(bd.get("k", 1), "blowup.k")
        bpts = bd.get("points", [])
        if not isinstance(bpts, list):
            raise ManifestError("blowup.points", "expected a list of points")
        bpoints = tuple(parse_point(p, f"blowup.points[{i}]", src) for i, p in enumerate(bpts))
        blowup = BlowupSpec(omega, k, chart, bpoints)

    return Manifest(dim, order, metric, points, seed, deformation, blowup)


def load_manifest(path: str | Path) -> Manifest:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise ManifestError(str(p), f"cannot read manifest: {exc.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ManifestError(f"{p}:{exc.lineno}:{exc.colno}", exc.msg) from None
    return parse_manifest(data)
