"""Deformation jets: Maurer-Cartan residuals, deformed Dolbeault operators and
the first-order obstruction to keeping ddbar(omega_t^k) = 0 along a family.

Families are polynomial jets in t truncated at the order carried by the
forms, so "up to o(t)" is exact truncation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Tuple

from .core.forms import BiForm, d, ddbar, del_, delbar, power, t_derivative_at_zero
from .core.poly import Poly
from .errors import PreconditionError, TruncationError
from .metrics import MetricForm
from .vector_forms import (
    CoframeSubstitution,
    EndoField,
    VecForm,
    bracket,
    contract,
    contract_conj,
    endo_compose,
    endo_compose_conj,
    exp_contract_conj,
    extension_map,
    neumann_inverse,
    simultaneous_contract,
)

__all__ = [
    "DeformationFamily",
    "MetricFamily",
    "mc_residual",
    "holomorphy_residual",
    "deformed_delbar_function",
    "deformed_del",
    "deformed_delbar",
    "projected_differential",
    "first_order_residual",
    "order1_jet_oracle",
]


@dataclass(frozen=True)
class DeformationFamily:
    """phi(t) in A^{0,1}(T^{1,0}) as a t-jet with phi(0) = 0."""

    phi: VecForm

    def __post_init__(self):
        if self.phi.q != 1:
            raise PreconditionError("a deformation is parametrized by a (0,1) vector form")
        if not self.phi.t_coefficient(0).is_zero():
            raise PreconditionError("phi must vanish at t = 0")

    @property
    def dim(self) -> int:
        return self.phi.dim

    @property
    def order(self) -> int:
        return self.phi.order

    def first_derivative(self) -> VecForm:
        """phi'(0), the t^1 coefficient."""
        return self.phi.t_coefficient(1)


@dataclass(frozen=True)
class MetricFamily:
    """omega(t) in A^{1,1} pulled back to the central fiber; omega(0) = base.omega."""

    omega_t: BiForm
    base: MetricForm

    def __post_init__(self):
        if not self.omega_t.is_pure(1, 1):
            raise PreconditionError("omega(t) must be a (1,1)-form")
        at_zero = self.omega_t.map_coefficients(lambda p: p.t_coefficient(0))
        if at_zero != self.base.omega:
            raise PreconditionError("omega(t) at t = 0 differs from the base metric")

    @classmethod
    def constant(cls, base: MetricForm) -> "MetricFamily":
        return cls(base.omega, base)


def mc_residual(f: DeformationFamily) -> VecForm:
    """delbar(phi) - [phi, phi]/2, component-wise."""
    phi = f.phi
    dbar = VecForm(phi.dim, 2, tuple(delbar(c) for c in phi.components))
    return dbar - bracket(phi, phi).scale(Fraction(1, 2))


def _as_form(n: int, fn, order: int) -> BiForm:
    if isinstance(fn, BiForm):
        return fn
    if not isinstance(fn, Poly):
        fn = Poly.const(fn, order)
    return BiForm.function(n, fn)


def holomorphy_residual(f: DeformationFamily, fn) -> BiForm:
    """(delbar - phi ⌟ del) fn; zero iff fn is holomorphic for the deformed structure."""
    g = _as_form(f.dim, fn, f.order)
    return delbar(g) - contract(f.phi, del_(g))


def _holo_correction(phi: VecForm) -> EndoField:
    """I - phi phibar, acting on dz."""
    n = phi.dim
    return EndoField.identity(n, "holo", phi.order) - endo_compose(phi, phi.conj())


def _anti_correction(phi: VecForm) -> EndoField:
    """I - phibar phi, acting on dzbar."""
    n = phi.dim
    return EndoField.identity(n, "anti", phi.order) - endo_compose_conj(phi.conj(), phi)


def deformed_delbar_function(f: DeformationFamily, fn) -> BiForm:
    """delbar_t fn = e^{iota_phibar}((I - phibar phi)^{-1} ⌟ (delbar - phi ⌟ del) fn)."""
    inner = holomorphy_residual(f, fn)
    inv = neumann_inverse(_anti_correction(f.phi))
    dressed = simultaneous_contract(inv.to_substitution(), inner)
    return exp_contract_conj(f.phi.conj(), dressed)


def deformed_del(f: DeformationFamily, alpha: BiForm) -> BiForm:
    """beta with del_t(e^{iota_phi|iota_phibar} alpha) = e^{iota_phi|iota_phibar} beta.

    beta = (I - phi phibar)^{-1} ⨝ ([delbar, iota_phibar] + del)(I - phi phibar) ⨝ alpha
    """
    phi = f.phi
    phibar = phi.conj()
    corr = _holo_correction(phi)
    x = simultaneous_contract(corr.to_substitution(), alpha)
    y = delbar(contract_conj(phibar, x)) - contract_conj(phibar, delbar(x)) + del_(x)
    return simultaneous_contract(neumann_inverse(corr).to_substitution(), y)


def deformed_delbar(f: DeformationFamily, alpha: BiForm) -> BiForm:
    """beta with delbar_t(e^{iota_phi|iota_phibar} alpha) = e^{iota_phi|iota_phibar} beta.

    beta = (I - phibar phi)^{-1} ⨝ ([del, iota_phi] + delbar)(I - phibar phi) ⨝ alpha
    """
    phi = f.phi
    corr = _anti_correction(phi)
    x = simultaneous_contract(corr.to_substitution(), alpha)
    y = del_(contract(phi, x)) - contract(phi, del_(x)) + delbar(x)
    return simultaneous_contract(neumann_inverse(corr).to_substitution(), y)


# -- independent route: decompose d(e(alpha)) in the deformed coframe ----------


def _mat_mul(a: List[List[Poly]], b: List[List[Poly]], order: int) -> List[List[Poly]]:
    m = len(a)
    out = []
    for i in range(m):
        row = []
        for j in range(m):
            acc = Poly.zero(order)
            for k in range(m):
                if a[i][k] and b[k][j]:
                    acc = acc + a[i][k] * b[k][j]
            row.append(acc)
        out.append(row)
    return out


def _deformed_coframe_inverse(phi: VecForm) -> List[List[Poly]]:
    """Inverse of the 2n x 2n matrix expressing (e(dz), e(dzbar)) in (dz, dzbar)."""
    n = phi.dim
    order = phi.order
    m = phi.matrix()
    mbar = [[p.conj() for p in row] for row in m]
    zero = Poly.zero(order)
    # coframe = (I + Q)(dz, dzbar); Q has t-order >= 1
    neg_q = [[zero] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        for j in range(n):
            neg_q[i][n + j] = -m[i][j]
            neg_q[n + i][j] = -mbar[i][j]
    ident = [[Poly.one(order) if i == j else zero for j in range(2 * n)] for i in range(2 * n)]
    out = [row[:] for row in ident]
    term = ident
    for _ in range(order):
        term = _mat_mul(term, neg_q, order)
        out = [[a + b for a, b in zip(r, s)] for r, s in zip(out, term)]
    return out


def projected_differential(f: DeformationFamily, alpha: BiForm) -> Dict[Tuple[int, int], BiForm]:
    """Bidegree components of d(e(alpha)) written in the deformed coframe.

    The returned (p+1, q) component is the inner operand of del_t, and the
    (p, q+1) component that of delbar_t. Computed by an explicit change of
    coframe, without the contraction formulas.
    """
    phi = f.phi
    n = phi.dim
    order = min(phi.order, alpha.order)
    inv = _deformed_coframe_inverse(phi)

    def symbol(m: int) -> BiForm:
        return BiForm.dz(m + 1, n, order) if m < n else BiForm.dzb(m - n + 1, n, order)

    def image(row: List[Poly]) -> BiForm:
        out = BiForm.zero(n, order)
        for m, p in enumerate(row):
            if p:
                out = out + symbol(m).scale(p)
        return out

    sub = CoframeSubstitution(n, tuple(image(inv[i]) for i in range(n)),
                              tuple(image(inv[n + k]) for k in range(n)))
    expressed = simultaneous_contract(sub, d(extension_map(phi, alpha)))
    return {bd: expressed.component(*bd) for bd in sorted(expressed.bidegrees())}


# -- first-order stability condition --------------------------------------------


def _check_k(base: MetricForm, k: int) -> None:
    n = base.dim
    if not 1 <= k <= n - 1:
        raise PreconditionError(f"k must lie in 1..{n - 1}, got {k}")


def first_order_residual(base: MetricForm, family: DeformationFamily, mf: MetricFamily, k: int) -> BiForm:
    """-(del iota_{phi'} del) omega^k + (delbar iota_{phibar'} delbar) omega^k + ddbar((omega^k)').

    Vanishes whenever ddbar_t(omega_t^k) = 0 holds along the family.
    """
    _check_k(base, k)
    phi1 = family.first_derivative()
    w0 = power(base.omega, k)
    w1 = t_derivative_at_zero(power(mf.omega_t, k))
    a = del_(contract(phi1, del_(w0)))
    b = delbar(contract_conj(phi1.conj(), delbar(w0)))
    return -a + b + ddbar(w1)


def order1_jet_oracle(base: MetricForm, family: DeformationFamily, mf: MetricFamily, k: int) -> BiForm:
    """t^1 coefficient of deformed_del(deformed_delbar(omega(t)^k)), via the full formulas."""
    _check_k(base, k)
    order = min(family.order, mf.omega_t.order)
    if order < 1:
        raise TruncationError("the first-order oracle needs truncation order >= 1")
    w = power(mf.omega_t, k)
    return t_derivative_at_zero(deformed_del(family, deformed_delbar(family, w)))
