"""Holomorphic polynomial maps and pullback of forms."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Tuple

from ..errors import DimensionMismatch
from .forms import BiForm, conj, wedge
from .poly import N_VAR, T_VAR, Poly, z_var, zb_var

__all__ = ["HoloMap", "pullback", "identity_map"]


@dataclass(frozen=True)
class HoloMap:
    """f : C^m -> C^n given by n polynomials in the source coordinates.

    Source coordinates reuse the z-variables of C^m (z1..zm); components may
    not contain any zbar, t or N.
    """

    source_dim: int
    target_dim: int
    components: Tuple[Poly, ...]

    def __post_init__(self):
        comps = tuple(self.components)
        object.__setattr__(self, "components", comps)
        if len(comps) != self.target_dim:
            raise DimensionMismatch(
                f"expected {self.target_dim} components, got {len(comps)}"
            )
        for k, f in enumerate(comps, start=1):
            for v in f.variables():
                if v in (T_VAR, N_VAR):
                    raise ValueError(f"component {k} depends on t or N")
                if v % 2:
                    raise ValueError(f"component {k} is not holomorphic (contains zbar)")
                if v // 2 > self.source_dim:
                    raise ValueError(f"component {k} uses a coordinate beyond C^{self.source_dim}")

    def jacobian_row(self, i: int, order: int) -> BiForm:
        """Pullback of dz^i: sum_j (df^i/dw^j) dw^j."""
        f = self.components[i - 1].with_order(order)
        out = BiForm.zero(self.source_dim, order)
        for j in range(1, self.source_dim + 1):
            c = f.diff(z_var(j))
            if c:
                out = out + BiForm.monomial(self.source_dim, (j,), (), c, order)
        return out

    def compose(self, other: "HoloMap") -> "HoloMap":
        """self o other."""
        if other.target_dim != self.source_dim:
            raise DimensionMismatch("maps do not compose")
        sub = {z_var(j): other.components[j - 1] for j in range(1, self.source_dim + 1)}
        return HoloMap(other.source_dim, self.target_dim, tuple(f.substitute(sub) for f in self.components))


def identity_map(n: int) -> HoloMap:
    return HoloMap(n, n, tuple(Poly.z(i) for i in range(1, n + 1)))


def pullback(f: HoloMap, a: BiForm) -> BiForm:
    """Pull a form on the target back along f (z <- f(w), zbar <- conj f, dz <- df)."""
    if a.dim != f.target_dim:
        raise DimensionMismatch(f"form on C^{a.dim}, map targets C^{f.target_dim}")
    order = a.order
    m = f.source_dim
    sub: Dict[int, Poly] = {}
    for i, fi in enumerate(f.components, start=1):
        fi = fi.with_order(order)
        sub[z_var(i)] = fi
        sub[zb_var(i)] = fi.conj()
    holo = {}
    anti = {}

    def holo_img(i):
        if i not in holo:
            holo[i] = f.jacobian_row(i, order)
        return holo[i]

    def anti_img(j):
        if j not in anti:
            anti[j] = conj(holo_img(j))
        return anti[j]

    out = BiForm.zero(m, order)
    for (I, J), p in a.terms.items():
        coeff = p.substitute(sub, order)
        if not coeff:
            continue
        piece = BiForm.function(m, coeff, order)
        for i in I:
            piece = wedge(piece, holo_img(i))
            if not piece:
                break
        if piece:
            for j in J:
                piece = wedge(piece, anti_img(j))
                if not piece:
                    break
        out = out + piece
    return out
