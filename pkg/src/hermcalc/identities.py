"""Seeded cross-module property suite.

Every identity is a function ``case(r, n) -> witness or None`` evaluated on
freshly generated data. Each case gets its own generator seeded from
``"{seed}/{name}/{index}"`` so a failure can be replayed in isolation.

Mutations deliberately break a primitive (for suite-sensitivity checks); see
:func:`mutated`.
"""

from __future__ import annotations

import random
import sys
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Callable, Dict, Iterator, List, Optional, Tuple

from .blowup import BlowupInstance, binomial_expansion_residual
from .core import forms as _forms
from .core.forms import BiForm, conj, d, del_, delbar, j_action, wedge
from .core.maps import pullback
from .core.poly import Poly, T_VAR
from .deformation import (
    DeformationFamily,
    MetricFamily,
    deformed_del,
    deformed_delbar,
    first_order_residual,
    mc_residual,
    order1_jet_oracle,
    projected_differential,
)
from .metrics import MetricForm
from . import randgen as rg
from . import vector_forms as _vf
from .vector_forms import (
    VecForm,
    bracket,
    conjugation_residual,
    conjugation_residual_del,
    conjugation_residual_delbar,
    contract,
    endo_compose,
    exp_contract,
    extension_map,
    extension_substitution,
    interior_compose,
    simultaneous_contract,
)

__all__ = ["Identity", "IdentityResult", "IDENTITIES", "MUTATIONS", "mutated", "case_rng", "run_identity", "run_suite"]

Witness = Optional[str]


@dataclass(frozen=True)
class Identity:
    name: str
    case: Callable[[random.Random, int], Witness]
    min_dim: int = 1
    max_dim: int = 6


@dataclass(frozen=True)
class IdentityResult:
    name: str
    status: str  # "pass", "fail" or "vacuous"
    cases: int
    failures: int = 0
    failing_case: Optional[str] = None
    witness: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.status != "fail"


def _first(*forms) -> Witness:
    for label, f in forms:
        if f:
            return f"{label}: {f}"
    return None


def _metric_like(r: random.Random, n: int, order: int = 2) -> BiForm:
    return rg.random_constant_11(r, n, order) + rg.random_real_11(r, n, max_deg=2, order=order)


# -- the identities ---------------------------------------------------------------


def _dolbeault(r, n):
    a = rg.random_form(r, n, max_deg=3, n_terms=3)
    return _first(("d^2", d(d(a))), ("del^2", del_(del_(a))), ("delbar^2", delbar(delbar(a))),
                  ("del delbar + delbar del", del_(delbar(a)) + delbar(del_(a))))


def _leibniz(r, n):
    k = r.randint(0, 2 * n)
    p = r.randint(max(0, k - n), min(k, n))
    a = rg.random_homogeneous(r, n, p, k - p)
    b = rg.random_form(r, n)
    lhs = d(wedge(a, b))
    rhs = wedge(d(a), b) + wedge(a, d(b)).scale(-1 if k % 2 else 1)
    return _first(("d(a^b) - da^b -+ a^db", lhs - rhs))


def _conj_del(r, n):
    a = rg.random_form(r, n)
    return _first(("conj(del a) - delbar(conj a)", conj(del_(a)) - delbar(conj(a))),
                  ("conj(conj a) - a", conj(conj(a)) - a))


def _pullback(r, n):
    f = rg.random_holomap(r, n, n)
    a = rg.random_form(r, n, max_deg=2, n_terms=2, max_form_deg=2)
    b = rg.random_form(r, n, max_deg=1, n_terms=2, max_form_deg=2)
    return _first(("f*(da) - d(f*a)", pullback(f, d(a)) - d(pullback(f, a))),
                  ("f*(delbar a) - delbar(f*a)", pullback(f, delbar(a)) - delbar(pullback(f, a))),
                  ("f*(a^b) - f*a ^ f*b", pullback(f, wedge(a, b)) - wedge(pullback(f, a), pullback(f, b))))


def _j_action(r, n):
    a = rg.random_form(r, n)
    b = rg.random_form(r, n)
    twice = j_action(j_action(a))
    expected = BiForm.zero(n)
    for deg in range(2 * n + 1):
        expected = expected + a.degree_component(deg).scale(-1 if deg % 2 else 1)
    return _first(("J(a^b) - Ja^Jb", j_action(wedge(a, b)) - wedge(j_action(a), j_action(b))),
                  ("J^2 a - (-1)^deg a", twice - expected))


def _contraction_derivation(r, n):
    phi = rg.random_vecform(r, n, max_deg=1)
    a = rg.random_form(r, n, max_deg=1, n_terms=2)
    b = rg.random_form(r, n, max_deg=1, n_terms=2)
    lhs = contract(phi, wedge(a, b))
    rhs = wedge(contract(phi, a), b) + wedge(a, contract(phi, b))
    return _first(("iota(a^b) - iota a^b - a^iota b", lhs - rhs))


def _exp_multiplicative(r, n):
    phi = rg.random_vecform(r, n, max_deg=1, t_deg=2, t_min=1)
    p = r.randint(1, min(4, n))
    idx = sorted(r.sample(range(1, n + 1), p))
    prod = BiForm.function(n, Poly.one())
    for i in idx:
        prod = wedge(prod, exp_contract(phi, BiForm.dz(i, n)))
    whole = exp_contract(phi, BiForm.monomial(n, idx, ()))
    return _first(("prod e^iota dz^i - e^iota dz^I", prod - whole))


def _extension_substitution(r, n):
    phi = rg.random_vecform(r, n, max_deg=1, t_deg=2, t_min=1)
    a = rg.random_form(r, n, max_deg=1, n_terms=3)
    return _first(("extension - (I+phi+phibar) substitution",
                   extension_map(phi, a) - simultaneous_contract(extension_substitution(phi), a)))


def _interior_compose(r, n):
    phi = rg.random_vecform(r, n, max_deg=1, n_terms=3, t_deg=2, t_min=1)
    phibar = phi.conj()
    diff = interior_compose(phi, phibar) - endo_compose(phi, phibar)
    if diff.is_zero():
        return None
    rows = "; ".join(", ".join(str(p) for p in row) for row in diff.entries)
    return f"phibar⌟phi - phi phibar = [{rows}]"


def _conjugation(r, n):
    phi = rg.random_vecform(r, n, max_deg=1, t_deg=2, t_min=1)
    a = rg.random_form(r, n, max_deg=2, n_terms=2)
    return _first(("d", conjugation_residual(phi, a)), ("del", conjugation_residual_del(phi, a)),
                  ("delbar", conjugation_residual_delbar(phi, a)))


def _bracket_symmetry(r, n):
    phi = rg.random_vecform(r, n, max_deg=2)
    psi = rg.random_vecform(r, n, max_deg=2)
    diff = bracket(phi, psi) - bracket(psi, phi)
    return None if diff.is_zero() else f"[phi,psi] - [psi,phi] = {diff}"


def _oracle(r, n):
    base = MetricForm(_metric_like(r, n))
    eta = rg.random_real_11(r, n, max_deg=2)
    mf = MetricFamily(base.omega + eta.scale(Poly.t()), base)
    fam = DeformationFamily(rg.random_vecform(r, n, max_deg=1, t_deg=2, t_min=1))
    k = r.randint(1, min(2, n - 1))
    a = first_order_residual(base, fam, mf, k)
    b = order1_jet_oracle(base, fam, mf, k)
    return _first((f"residual - oracle (k={k})", a - b))


def _blowup_binomial(r, n):
    F = MetricForm(_metric_like(r, n))
    omega = rg.random_closed_11(r, n, max_deg=3)
    k = r.randint(1, 3)
    return _first((f"binomial residual (k={k})", binomial_expansion_residual(BlowupInstance(F, omega, k))))


def mc_family(r: random.Random, n: int, order: int = 2) -> VecForm:
    """A t-jet solving Maurer-Cartan exactly.

    Constant-coefficient jets plus holomorphic coefficients that avoid the
    target coordinates: delbar(phi) = 0 and every bracket term differentiates
    a coefficient in a direction it does not depend on.
    """
    targets = sorted(r.sample(range(1, n + 1), r.randint(1, n)))
    free = [i for i in range(1, n + 1) if i not in targets]
    comps = [BiForm.zero(n, order) for _ in range(n)]
    for _ in range(r.randint(1, 3)):
        i = r.choice(targets)
        j = r.randint(1, n)
        coeff = Poly.const(rg.random_scalar(r), order)
        if free and r.random() < 0.6:
            coeff = coeff * Poly.z(r.choice(free), order)
        coeff = coeff * Poly.var(T_VAR, r.randint(1, order), order=order)
        comps[i - 1] = comps[i - 1] + BiForm.monomial(n, (), (j,), coeff, order)
    return VecForm(n, 1, tuple(comps))


def _deformed_vs_coframe(r, n):
    fam = DeformationFamily(mc_family(r, n))
    res = mc_residual(fam)
    if not res.is_zero():
        return f"generator produced a non-integrable family: {res}"
    p = r.randint(0, n)
    q = r.randint(0, n)
    alpha = rg.random_homogeneous(r, n, p, q, max_deg=2, n_terms=2)
    parts = projected_differential(fam, alpha)
    zero = BiForm.zero(n)
    extra = [bd for bd in parts if bd not in ((p + 1, q), (p, q + 1))]
    if extra:
        return f"d(e(alpha)) has components of bidegree {extra}"
    return _first(("deformed del - coframe projection", deformed_del(fam, alpha) - parts.get((p + 1, q), zero)),
                  ("deformed delbar - coframe projection",
                   deformed_delbar(fam, alpha) - parts.get((p, q + 1), zero)))


IDENTITIES: Tuple[Identity, ...] = (
    Identity("dolbeault_squares", _dolbeault),
    Identity("leibniz", _leibniz),
    Identity("conjugation_commutes_with_d", _conj_del),
    Identity("pullback_naturality", _pullback),
    Identity("complex_structure_action", _j_action),
    Identity("contraction_derivation", _contraction_derivation),
    Identity("exp_contraction_multiplicative", _exp_multiplicative),
    Identity("extension_equals_substitution", _extension_substitution),
    Identity("interior_equals_matrix_composition", _interior_compose),
    Identity("conjugation_identity", _conjugation),
    Identity("bracket_symmetry", _bracket_symmetry),
    Identity("first_order_oracle_equivalence", _oracle, min_dim=2, max_dim=3),
    Identity("blowup_binomial_expansion", _blowup_binomial, max_dim=4),
    Identity("deformed_operators_match_coframe", _deformed_vs_coframe, max_dim=3),
)


# -- mutations ---------------------------------------------------------------------

def _delbar_sign_bug(a: BiForm, _orig=_forms.delbar) -> BiForm:
    # forgets the (-1)^p from moving dzbar past the holomorphic block
    out = BiForm.zero(a.dim, a.order)
    for p, q in a.bidegrees():
        c = _orig(a.component(p, q))
        out = out + (c.scale(-1) if p % 2 else c)
    return out


def _contract_sign_bug(i: int, a: BiForm) -> BiForm:
    # forgets the positional sign of the interior product
    out = {}
    for (I_, J), p in a.terms.items():
        if i in I_:
            s = I_.index(i)
            out[(I_[:s] + I_[s + 1:], J)] = p
    return BiForm._from_clean(a.dim, out, a.order)


MUTATIONS: Dict[str, Tuple[object, object]] = {
    "delbar-sign": (_forms.delbar, _delbar_sign_bug),
    "contract-sign": (_vf.interior_dz, _contract_sign_bug),
}


@contextmanager
def mutated(name: Optional[str]) -> Iterator[None]:
    """Temporarily replace a primitive everywhere it is bound in the package."""
    if name is None:
        yield
        return
    if name not in MUTATIONS:
        raise KeyError(f"unknown mutation {name!r}; choose from {sorted(MUTATIONS)}")
    orig, repl = MUTATIONS[name]
    patched = []
    for mod_name, mod in list(sys.modules.items()):
        if mod is None or not mod_name.startswith(__package__):
            continue
        for attr, val in list(vars(mod).items()):
            if val is orig:
                setattr(mod, attr, repl)
                patched.append((mod, attr))
    try:
        yield
    finally:
        for mod, attr in patched:
            setattr(mod, attr, orig)


# -- runner ------------------------------------------------------------------------


def case_rng(seed: int, name: str, index: int) -> random.Random:
    return random.Random(f"{seed}/{name}/{index}")


def run_identity(ident: Identity, seed: int, n: int, cases: int) -> IdentityResult:
    top = min(n, ident.max_dim)
    if top < ident.min_dim:
        return IdentityResult(ident.name, "vacuous", 0)
    failures = 0
    first_case = first_witness = None
    for i in range(cases):
        r = case_rng(seed, ident.name, i)
        dim = r.randint(ident.min_dim, top)
        try:
            w = ident.case(r, dim)
        except Exception as exc:  # a crash under a mutation is a failure, not a suite abort
            w = f"raised {type(exc).__name__}: {exc}"
        if w is not None:
            failures += 1
            if first_case is None:
                first_case, first_witness = f"{seed}/{ident.name}/{i}", f"n={dim}: {w}"
    status = "fail" if failures else "pass"
    return IdentityResult(ident.name, status, cases, failures, first_case, first_witness)


def run_suite(seed: int = 0, n: int = 3, cases: int = 10, mutation: Optional[str] = None,
              only: Optional[List[str]] = None) -> List[IdentityResult]:
    chosen = [i for i in IDENTITIES if only is None or i.name in only]
    with mutated(mutation):
        return [run_identity(i, seed, n, cases) for i in chosen]
