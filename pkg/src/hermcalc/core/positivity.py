"""Pointwise evaluation and exact positivity of real (1,1)-forms."""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Tuple

from ..errors import BidegreeError, DimensionMismatch, PreconditionError
from .forms import BiForm, conj
from .poly import N_VAR, T_VAR, var_name, z_var, zb_var
from .scalar import I as IMAG
from .scalar import ONE, ZERO, Scalar, as_scalar

__all__ = [
    "Point",
    "evaluate",
    "hermitian_matrix_at",
    "determinant",
    "leading_principal_minors",
    "is_positive_definite_at",
    "is_real",
]

Matrix = List[List[Scalar]]


@dataclass(frozen=True)
class Point:
    """Values of z^1..z^n; zbar^i is forced to the conjugate of z^i."""

    coordinates: Tuple[Scalar, ...]

    def __post_init__(self):
        object.__setattr__(self, "coordinates", tuple(as_scalar(c) for c in self.coordinates))

    @classmethod
    def origin(cls, n: int) -> "Point":
        return cls((ZERO,) * n)

    @property
    def dim(self) -> int:
        return len(self.coordinates)

    def substitution(self, N=None) -> dict:
        values = {T_VAR: ZERO}
        for i, c in enumerate(self.coordinates, start=1):
            values[z_var(i)] = c
            values[zb_var(i)] = c.conjugate()
        if N is not None:
            values[N_VAR] = as_scalar(N)
        return values


def evaluate(a: BiForm, p: Point, N=None) -> BiForm:
    """Freeze the coefficients of ``a`` at ``p`` (t = 0; N substituted if given)."""
    if p.dim != a.dim:
        raise DimensionMismatch(f"point in C^{p.dim}, form on C^{a.dim}")
    values = p.substitution(N)
    return a.map_coefficients(lambda c: c.evaluate(values))


def is_real(a: BiForm) -> bool:
    return conj(a) == a


def hermitian_matrix_at(a: BiForm, p: Point, N=None) -> Matrix:
    """Matrix g with a = i * sum g_{jk} dz^j ^ dzbar^k, evaluated at ``p``."""
    if not a.is_pure(1, 1):
        raise BidegreeError(f"expected a (1,1)-form, got bidegrees {sorted(a.bidegrees())}")
    n = a.dim
    frozen = evaluate(a, p, N)
    g = [[ZERO] * n for _ in range(n)]
    minus_i = -IMAG
    for ((j,), (k,)), c in frozen.terms.items():
        if c.variables():
            missing = ", ".join(sorted(var_name(v) for v in c.variables()))
            raise PreconditionError(f"coefficient still depends on {missing}; supply values for them")
        g[j - 1][k - 1] = c.constant_term() * minus_i
    return g


def determinant(m: Matrix) -> Scalar:
    """Exact determinant by Gaussian elimination with pivot search."""
    a = [list(row) for row in m]
    n = len(a)
    det = ONE
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            return ZERO
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        pv = a[col][col]
        det = det * pv
        inv = pv.inverse()
        for r in range(col + 1, n):
            f = a[r][col] * inv
            if f:
                row, prow = a[r], a[col]
                for c in range(col, n):
                    row[c] = row[c] - f * prow[c]
    return det


def leading_principal_minors(m: Matrix) -> List[Scalar]:
    return [determinant([row[:k] for row in m[:k]]) for k in range(1, len(m) + 1)]


def is_positive_definite_at(a: BiForm, p: Point, N=None) -> bool:
    """Sylvester's criterion on the Hermitian coefficient matrix at ``p``."""
    if not a.is_pure(1, 1):
        raise BidegreeError("positivity is defined for (1,1)-forms")
    if not is_real(a):
        raise BidegreeError("form is not real: conj(a) != a")
    g = hermitian_matrix_at(a, p, N)
    for minor in leading_principal_minors(g):
        # minors of a Hermitian matrix are real
        if minor.im != 0:
            raise BidegreeError("coefficient matrix is not Hermitian")
        if minor.re <= 0:
            return False
    return True
