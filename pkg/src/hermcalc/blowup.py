"""Local algebra of blowing up: the binomial ddbar-expansion of (F + N omega)^k,
chart pullbacks from the incidence equations, positivity thresholds in N and
the product check.

Only two properties of the curvature form omega are modeled: it is d-closed,
and adding a large multiple of it restores positivity at the sample points.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Dict, Optional, Sequence

from .core.forms import BiForm, d, ddbar, power
from .core.maps import HoloMap, pullback
from .core.poly import N_VAR, Poly
from .core.positivity import Point, is_positive_definite_at
from .errors import BidegreeError, DimensionMismatch, HypothesisError, NotClosedError, PreconditionError
from .metrics import MetricForm, Verdict, check_kahler, check_k_special, check_special

__all__ = [
    "BlowupInstance",
    "perturbed_form",
    "ddbar_power_by_N",
    "binomial_expansion_residual",
    "k_special_preserved",
    "incidence_chart",
    "blowup_chart_pullback",
    "positivity_threshold",
    "product_special_check",
    "DEFAULT_THRESHOLD_CAP",
]

DEFAULT_THRESHOLD_CAP = 1000


@dataclass(frozen=True)
class BlowupInstance:
    """F-tilde = F + N omega with N a formal variable.

    ``F`` plays the role of the pulled-back metric form; ``omega`` must be
    d-closed (checked by the operations, so non-closed input can be reported).
    """

    F: MetricForm
    omega: BiForm
    k: int

    def __post_init__(self):
        if self.omega.dim != self.F.dim:
            raise DimensionMismatch("F and omega live on different C^n")
        if not self.omega.is_pure(1, 1):
            raise BidegreeError("omega must be a (1,1)-form")
        if self.k < 1:
            raise PreconditionError("k must be positive")
        if self.F.omega.has_var(N_VAR) or self.omega.has_var(N_VAR):
            raise PreconditionError("N is reserved for the blow-up parameter")

    @property
    def dim(self) -> int:
        return self.F.dim

    def require_closed(self) -> None:
        w = d(self.omega)
        if w:
            raise NotClosedError("omega is not d-closed", witness=w)


def perturbed_form(b: BlowupInstance) -> BiForm:
    """F + N omega."""
    return b.F.omega + b.omega.scale(Poly.N(b.omega.order))


def ddbar_power_by_N(b: BlowupInstance, i: int) -> Dict[int, BiForm]:
    """ddbar((F + N omega)^i) split by powers of N: {e: coefficient of N^e}."""
    total = ddbar(power(perturbed_form(b), i))
    buckets: Dict[int, BiForm] = {}
    for basis, p in total.terms.items():
        for e, c in p.split_by(N_VAR).items():
            buckets.setdefault(e, {})[basis] = c
    return {e: BiForm(total.dim, terms, total.order) for e, terms in sorted(buckets.items())}


def binomial_expansion_residual(b: BlowupInstance, check_closed: bool = True) -> BiForm:
    """ddbar((F+N omega)^k) - sum_l C(k,l) N^{k-l} ddbar(F^l) ^ omega^{k-l}.

    Zero whenever d omega = 0. With ``check_closed=False`` the raw residual is
    returned even for non-closed omega.
    """
    if check_closed:
        b.require_closed()
    k = b.k
    F, w = b.F.omega, b.omega
    order = min(F.order, w.order)
    lhs = ddbar(power(perturbed_form(b), k))
    rhs = BiForm.zero(b.dim, order)
    for l in range(k + 1):
        piece = ddbar(power(F, l)) if l else BiForm.zero(b.dim, order)
        if not piece:
            continue
        if k - l:
            piece = piece ^ power(w, k - l)
        rhs = rhs + piece.scale(Poly.var(N_VAR, k - l, comb(k, l), order=order))
    return lhs - rhs


def k_special_preserved(b: BlowupInstance) -> Verdict:
    """ddbar((F + N omega)^i) = 0 identically in N for i = 1..k."""
    hyp = check_k_special(b.F, b.k)
    if not hyp.holds:
        raise HypothesisError(f"F is not {b.k}-special ({hyp.detail})", witness=hyp.witness)
    b.require_closed()
    for i in range(1, b.k + 1):
        w = ddbar(power(perturbed_form(b), i))
        if w:
            return Verdict(f"blowup_k_special_{b.k}", False, w, f"fails at power {i}")
    return Verdict(f"blowup_k_special_{b.k}", True)


def incidence_chart(n: int, center_dim: int, index: int) -> HoloMap:
    """Standard chart of the blow-up of C^n along {z_{m+1} = ... = z_n = 0}.

    On the chart where the homogeneous coordinate l_index is nonzero, the
    incidence relations z_i l_j = z_j l_i give z_s = w_index * w_s for the
    normal directions s != index; all other coordinates are unchanged.
    """
    m = center_dim
    if not 0 <= m < n:
        raise ValueError(f"center dimension must lie in 0..{n - 1}")
    if not m < index <= n:
        raise ValueError(f"chart index must lie in {m + 1}..{n}")
    comps = []
    for s in range(1, n + 1):
        if s <= m or s == index:
            comps.append(Poly.z(s))
        else:
            comps.append(Poly.z(index) * Poly.z(s))
    return HoloMap(n, n, tuple(comps))


def blowup_chart_pullback(F: BiForm, chart: HoloMap) -> BiForm:
    """sigma^* F in chart coordinates."""
    return pullback(chart, F)


def positivity_threshold(Fpulled: BiForm, omega: BiForm, points: Sequence[Point],
                         cap: int = DEFAULT_THRESHOLD_CAP) -> Optional[int]:
    """Smallest integer N0 >= 0 with Fpulled + N0 omega positive at every point, or None."""
    if not points:
        raise PreconditionError("positivity threshold needs at least one point")
    for N in range(cap + 1):
        form = Fpulled + omega.scale(N)
        if all(is_positive_definite_at(form, p) for p in points):
            return N
    return None


def product_special_check(F_A: MetricForm, omega_B: MetricForm, k: Optional[int] = None,
                          offset: Optional[int] = None) -> Verdict:
    """Check that F_A + omega_B is special on C^{a+b}.

    F_A (on z1..za) must be special and omega_B Kahler; omega_B's coordinates
    are shifted by ``offset`` (default a) and must not overlap those of F_A.
    ``k`` caps the checked powers (default a+b-1).
    """
    a, b = F_A.dim, omega_B.dim
    offset = a if offset is None else offset
    if offset < a:
        raise PreconditionError("variable sets overlap")
    total = offset + b
    if a >= 2:
        sv = check_special(F_A)
        if not sv.holds:
            raise HypothesisError("F_A is not special", witness=sv.witness)
    kv = check_kahler(omega_B)
    if not kv.holds:
        raise HypothesisError("omega_B is not Kahler", witness=kv.witness)
    top = total - 1 if k is None else k
    if not 1 <= top <= total - 1:
        raise PreconditionError(f"k must lie in 1..{total - 1}")
    form = F_A.omega.embed(total, 0) + omega_B.omega.embed(total, offset)
    for i in range(1, top + 1):
        w = ddbar(power(form, i))
        if w:
            return Verdict("product_special", False, w, f"fails at power {i}")
    return Verdict("product_special", True)
