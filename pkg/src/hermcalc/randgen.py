"""Seeded generators of random polynomials, forms and vector forms.

Every generator takes an explicit ``random.Random`` so that property suites
are reproducible from a single integer seed.
"""

from __future__ import annotations

import random
from typing import List, Optional

from .core.forms import BiForm, conj, ddbar
from .core.maps import HoloMap
from .core.poly import DEFAULT_ORDER, T_VAR, Poly, z_var, zb_var
from .core.positivity import Point
from .core.scalar import I, Scalar
from .vector_forms import VecForm

__all__ = [
    "rng",
    "random_scalar",
    "random_poly",
    "random_holo_poly",
    "random_form",
    "random_homogeneous",
    "random_real_11",
    "random_closed_11",
    "random_constant_11",
    "random_vecform",
    "random_holomap",
    "random_point",
]


def rng(seed: int | str) -> random.Random:
    return random.Random(seed)


def random_scalar(r: random.Random, bound: int = 3, gaussian: bool = True) -> Scalar:
    re = r.randint(-bound, bound)
    im = r.randint(-bound, bound) if gaussian else 0
    if re == 0 and im == 0:
        re = 1
    return Scalar(re, im)


def _random_mono(r: random.Random, variables: List[int], max_deg: int) -> dict:
    deg = r.randint(0, max_deg)
    exps: dict = {}
    for _ in range(deg):
        v = r.choice(variables)
        exps[v] = exps.get(v, 0) + 1
    return exps


def random_poly(r: random.Random, n: int, max_deg: int = 2, n_terms: int = 3, *,
                t_deg: int = 0, order: int = DEFAULT_ORDER, holomorphic: bool = False) -> Poly:
    """Random polynomial in z1..zn (and zbar unless ``holomorphic``), with t up to t_deg."""
    variables = [z_var(i) for i in range(1, n + 1)]
    if not holomorphic:
        variables += [zb_var(i) for i in range(1, n + 1)]
    out = Poly.zero(order)
    for _ in range(n_terms):
        exps = _random_mono(r, variables, max_deg) if variables else {}
        if t_deg:
            te = r.randint(0, t_deg)
            if te:
                exps[T_VAR] = te
        out = out + Poly.monomial(exps, random_scalar(r), order)
    return out


def random_holo_poly(r: random.Random, n: int, max_deg: int = 2, n_terms: int = 2) -> Poly:
    return random_poly(r, n, max_deg, n_terms, holomorphic=True)


def random_form(r: random.Random, n: int, *, max_deg: int = 2, n_terms: int = 3,
                t_deg: int = 0, order: int = DEFAULT_ORDER, max_form_deg: Optional[int] = None) -> BiForm:
    """Mixed-degree form with a few random basis monomials."""
    top = 2 * n if max_form_deg is None else max_form_deg
    out = BiForm.zero(n, order)
    for _ in range(n_terms):
        k = r.randint(0, top)
        p = r.randint(max(0, k - n), min(k, n))
        out = out + _random_basis_term(r, n, p, k - p, max_deg, t_deg, order)
    return out


def _random_basis_term(r, n, p, q, max_deg, t_deg, order) -> BiForm:
    holo = tuple(sorted(r.sample(range(1, n + 1), p)))
    anti = tuple(sorted(r.sample(range(1, n + 1), q)))
    coeff = random_poly(r, n, max_deg, 2, t_deg=t_deg, order=order)
    return BiForm.monomial(n, holo, anti, coeff, order)


def random_homogeneous(r: random.Random, n: int, p: int, q: int, *, max_deg: int = 2,
                       n_terms: int = 2, t_deg: int = 0, order: int = DEFAULT_ORDER) -> BiForm:
    out = BiForm.zero(n, order)
    for _ in range(n_terms):
        out = out + _random_basis_term(r, n, p, q, max_deg, t_deg, order)
    return out


def random_real_11(r: random.Random, n: int, *, max_deg: int = 2, n_terms: int = 2,
                   t_deg: int = 0, order: int = DEFAULT_ORDER) -> BiForm:
    a = random_homogeneous(r, n, 1, 1, max_deg=max_deg, n_terms=n_terms, t_deg=t_deg, order=order)
    return a + conj(a)


def random_constant_11(r: random.Random, n: int, order: int = DEFAULT_ORDER) -> BiForm:
    """i * sum g_jk dz^j ^ dzbar^k with constant Hermitian, diagonally dominant g."""
    out = BiForm.zero(n, order)
    for j in range(1, n + 1):
        out = out + BiForm.monomial(n, (j,), (j,), I * (n * 4 + r.randint(0, 3)), order)
        for k in range(j + 1, n + 1):
            c = random_scalar(r, 1)
            out = out + BiForm.monomial(n, (j,), (k,), I * c, order)
            out = out + BiForm.monomial(n, (k,), (j,), I * c.conjugate(), order)
    return out


def random_closed_11(r: random.Random, n: int, *, max_deg: int = 3, order: int = DEFAULT_ORDER) -> BiForm:
    """i ddbar(real potential) plus a constant real (1,1)-form; d-closed by construction."""
    f = random_poly(r, n, max_deg, 2, order=order)
    potential = f + f.conj()
    form = BiForm.function(n, potential, order)
    return ddbar(form).scale(I) + random_constant_11(r, n, order)


def random_vecform(r: random.Random, n: int, *, q: int = 1, max_deg: int = 1, n_terms: int = 2,
                   t_deg: int = 0, t_min: int = 0, order: int = DEFAULT_ORDER,
                   constant: bool = False) -> VecForm:
    """Random T^{1,0}-valued (0,q)-form; ``t_min = 1`` forces phi(0) = 0."""
    comps = [BiForm.zero(n, order) for _ in range(n)]
    for _ in range(n_terms):
        i = r.randint(1, n)
        anti = tuple(sorted(r.sample(range(1, n + 1), q)))
        if constant:
            coeff = Poly.const(random_scalar(r), order)
        else:
            coeff = random_poly(r, n, max_deg, 2, order=order)
        if t_deg:
            coeff = coeff * Poly.var(T_VAR, r.randint(max(1, t_min), t_deg), order=order)
        elif t_min:
            coeff = coeff * Poly.t(order)
        comps[i - 1] = comps[i - 1] + BiForm.monomial(n, (), anti, coeff, order)
    return VecForm(n, q, tuple(comps))


def random_holomap(r: random.Random, m: int, n: int, max_deg: int = 2) -> HoloMap:
    comps = []
    for _ in range(n):
        comps.append(random_poly(r, m, max_deg, 2, holomorphic=True))
    return HoloMap(m, n, tuple(comps))


def random_point(r: random.Random, n: int, bound: int = 2) -> Point:
    return Point(tuple(Scalar(r.randint(-bound, bound), r.randint(-bound, bound)) for _ in range(n)))
