"""Bigraded complex differential forms on a coordinate patch of C^n.

A :class:`BiForm` maps normalized basis monomials ``dz^I ^ dzbar^J`` (holomorphic
factors first, each index tuple strictly increasing, indices 1-based) to
polynomial coefficients. Sorting signs are absorbed into the coefficients, so
two forms are equal iff their term dictionaries are equal.
"""

from __future__ import annotations

from typing import Dict, Iterable, Mapping, Optional, Tuple

from ..errors import BidegreeError, DimensionMismatch
from .poly import DEFAULT_ORDER, Poly
from .scalar import I as IMAG
from .scalar import ONE, as_scalar

__all__ = [
    "MAX_DIM",
    "Basis",
    "BiForm",
    "wedge",
    "d",
    "del_",
    "delbar",
    "conj",
    "j_action",
    "power",
    "t_derivative_at_zero",
    "ddbar",
    "sort_sign",
]

MAX_DIM = 6

Basis = Tuple[Tuple[int, ...], Tuple[int, ...]]


def sort_sign(indices: Iterable[int]) -> Optional[Tuple[Tuple[int, ...], int]]:
    """Sort an index word, returning ``(sorted, parity sign)`` or None on repeats."""
    idx = list(indices)
    if len(set(idx)) != len(idx):
        return None
    sign = 1
    # insertion sort; n <= 2*MAX_DIM so quadratic is fine
    for a in range(1, len(idx)):
        b = a
        while b > 0 and idx[b - 1] > idx[b]:
            idx[b - 1], idx[b] = idx[b], idx[b - 1]
            sign = -sign
            b -= 1
    return tuple(idx), sign


def _insert(i: int, idx: Tuple[int, ...]) -> Optional[Tuple[Tuple[int, ...], int]]:
    """Normalize ``d^i ^ d^idx``: sign is (-1)^(#indices below i)."""
    if i in idx:
        return None
    pos = 0
    while pos < len(idx) and idx[pos] < i:
        pos += 1
    return idx[:pos] + (i,) + idx[pos:], (-1 if pos % 2 else 1)


def _merge(a: Basis, b: Basis) -> Optional[Tuple[Basis, int]]:
    (I1, J1), (I2, J2) = a, b
    if set(I1) & set(I2) or set(J1) & set(J2):
        return None
    sign = -1 if (len(J1) * len(I2)) % 2 else 1
    hi = sort_sign(I1 + I2)
    ai = sort_sign(J1 + J2)
    return ((hi[0], ai[0]), sign * hi[1] * ai[1])


class BiForm:
    """Immutable sparse (mixed-degree allowed) complex differential form."""

    __slots__ = ("dim", "terms", "order", "_hash")

    def __init__(self, dim: int, terms: Mapping[Basis, Poly] | None = None, order: int | None = None):
        if dim < 0:
            raise ValueError("dimension must be non-negative")
        if order is None:
            order = min((p.order for p in (terms or {}).values()), default=DEFAULT_ORDER)
        clean: Dict[Basis, Poly] = {}
        for (I, J), p in (terms or {}).items():
            I, J = tuple(I), tuple(J)
            if any(not (1 <= i <= dim) for i in I + J):
                raise IndexError(f"differential index out of range 1..{dim} in {(I, J)}")
            if list(I) != sorted(set(I)) or list(J) != sorted(set(J)):
                raise ValueError(f"basis monomial {(I, J)} is not normalized")
            if p.order > order:
                p = p.truncate(order)
            if p:
                clean[(I, J)] = p
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "_hash", None)

    @classmethod
    def _from_clean(cls, dim: int, terms: Dict[Basis, Poly], order: int) -> "BiForm":
        obj = object.__new__(cls)
        object.__setattr__(obj, "dim", dim)
        object.__setattr__(obj, "terms", terms)
        object.__setattr__(obj, "order", order)
        object.__setattr__(obj, "_hash", None)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("BiForm is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, dim: int, order: int = DEFAULT_ORDER) -> "BiForm":
        return cls._from_clean(dim, {}, order)

    @classmethod
    def function(cls, dim: int, f, order: int | None = None) -> "BiForm":
        """A 0-form."""
        if not isinstance(f, Poly):
            f = Poly.const(f, DEFAULT_ORDER if order is None else order)
        return cls(dim, {((), ()): f}, order)

    @classmethod
    def monomial(cls, dim: int, holo: Iterable[int] = (), anti: Iterable[int] = (), coeff=1,
                 order: int | None = None) -> "BiForm":
        """``coeff * dz^holo ^ dzbar^anti`` with arbitrary index order (sign applied)."""
        if not isinstance(coeff, Poly):
            coeff = Poly.const(coeff, DEFAULT_ORDER if order is None else order)
        hi, ai = sort_sign(holo), sort_sign(anti)
        if hi is None or ai is None:
            return cls.zero(dim, coeff.order if order is None else order)
        return cls(dim, {(hi[0], ai[0]): coeff.scale(hi[1] * ai[1])}, order)

    @classmethod
    def dz(cls, i: int, dim: int, order: int = DEFAULT_ORDER) -> "BiForm":
        return cls.monomial(dim, (i,), (), 1, order)

    @classmethod
    def dzb(cls, i: int, dim: int, order: int = DEFAULT_ORDER) -> "BiForm":
        return cls.monomial(dim, (), (i,), 1, order)

    # -- protocol -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, BiForm):
            if not self.terms and not other.terms:
                return True
            return self.dim == other.dim and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.dim, frozenset(self.terms.items()))))
        return self._hash

    def _check(self, other: "BiForm") -> None:
        if self.dim != other.dim:
            raise DimensionMismatch(f"forms live on C^{self.dim} and C^{other.dim}")

    def __add__(self, other: "BiForm") -> "BiForm":
        if not isinstance(other, BiForm):
            if other == 0:
                return self
            return NotImplemented
        self._check(other)
        order = min(self.order, other.order)
        out = {k: (p if p.order <= order else p.truncate(order)) for k, p in self.terms.items()}
        for k, p in other.terms.items():
            q = out.get(k)
            s = p.truncate(order) if q is None else q + p
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return BiForm._from_clean(self.dim, out, order)

    def __radd__(self, other):
        if other == 0:
            return self
        return NotImplemented

    def __neg__(self) -> "BiForm":
        return BiForm._from_clean(self.dim, {k: -p for k, p in self.terms.items()}, self.order)

    def __sub__(self, other: "BiForm") -> "BiForm":
        return self + (-other)

    def scale(self, c) -> "BiForm":
        """Multiply by a Scalar or a Poly (a 0-form)."""
        if isinstance(c, Poly):
            order = min(self.order, c.order)
            out = {}
            for k, p in self.terms.items():
                q = p * c
                if q:
                    out[k] = q
            return BiForm._from_clean(self.dim, out, order)
        c = as_scalar(c)
        if not c:
            return BiForm.zero(self.dim, self.order)
        return BiForm._from_clean(self.dim, {k: p.scale(c) for k, p in self.terms.items()}, self.order)

    def __mul__(self, c) -> "BiForm":
        if isinstance(c, BiForm):
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__

    def __xor__(self, other: "BiForm") -> "BiForm":
        return wedge(self, other)

    # -- grading ------------------------------------------------------------

    def bidegrees(self) -> set:
        return {(len(I), len(J)) for I, J in self.terms}

    def is_pure(self, p: int, q: int) -> bool:
        """Zero belongs to every bidegree."""
        return all(len(I) == p and len(J) == q for I, J in self.terms)

    def component(self, p: int, q: int) -> "BiForm":
        return BiForm._from_clean(
            self.dim,
            {k: v for k, v in self.terms.items() if len(k[0]) == p and len(k[1]) == q},
            self.order,
        )

    def degree_component(self, k: int) -> "BiForm":
        return BiForm._from_clean(
            self.dim, {b: v for b, v in self.terms.items() if len(b[0]) + len(b[1]) == k}, self.order
        )

    def is_homogeneous(self) -> bool:
        return len({len(I) + len(J) for I, J in self.terms}) <= 1

    def total_degree(self) -> int:
        """Degree of a homogeneous form (0 for the zero form)."""
        degs = {len(I) + len(J) for I, J in self.terms}
        if len(degs) > 1:
            raise BidegreeError("form is not homogeneous")
        return degs.pop() if degs else 0

    def map_coefficients(self, fn) -> "BiForm":
        out = {}
        for k, p in self.terms.items():
            q = fn(p)
            if q:
                out[k] = q
        order = min((q.order for q in out.values()), default=self.order)
        return BiForm._from_clean(self.dim, out, min(order, self.order))

    def truncate(self, order: int) -> "BiForm":
        return BiForm(self.dim, {k: p.truncate(order) for k, p in self.terms.items()}, min(order, self.order))

    def with_order(self, order: int) -> "BiForm":
        return BiForm(self.dim, {k: p.with_order(order) for k, p in self.terms.items()}, order)

    def embed(self, dim: int, offset: int = 0) -> "BiForm":
        """Shift every coordinate index by ``offset`` into C^dim."""
        if offset == 0 and dim == self.dim:
            return self
        if self.dim + offset > dim:
            raise DimensionMismatch("embedding does not fit")
        shift = {}
        for p in self.terms.values():
            for v in p.variables():
                if v >= 2:
                    shift[v] = v + 2 * offset
        out = {}
        for (I, J), p in self.terms.items():
            np = p.substitute({v: Poly.var(w, order=p.order) for v, w in shift.items()}) if shift else p
            out[(tuple(i + offset for i in I), tuple(j + offset for j in J))] = np
        return BiForm(dim, out, self.order)

    def support(self) -> set:
        """Coordinate indices used by differentials or coefficients."""
        s = set()
        for (I, J), p in self.terms.items():
            s.update(I)
            s.update(J)
            s.update(v // 2 for v in p.variables() if v >= 2)
        return s

    def has_var(self, v: int) -> bool:
        return any(p.has_var(v) for p in self.terms.values())

    def coefficient(self, holo: Iterable[int] = (), anti: Iterable[int] = ()) -> Poly:
        """Coefficient of dz^holo ^ dzbar^anti, with the sign of the given ordering."""
        hi, ai = sort_sign(holo), sort_sign(anti)
        if hi is None or ai is None:
            return Poly.zero(self.order)
        p = self.terms.get((hi[0], ai[0]))
        if p is None:
            return Poly.zero(self.order)
        return p.scale(hi[1] * ai[1])

    # -- text ---------------------------------------------------------------

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: (len(kv[0][0]) + len(kv[0][1]), kv[0]))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (I, J), p in self.sorted_terms():
            basis = "^".join([f"dz{i}" for i in I] + [f"dzb{j}" for j in J])
            coef = str(p)
            if not basis:
                parts.append(f"({coef})")
            elif coef == "1":
                parts.append(basis)
            else:
                parts.append(f"({coef}) {basis}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"BiForm(dim={self.dim}, {self})"


# -- algebra --------------------------------------------------------------------


def wedge(a: BiForm, b: BiForm) -> BiForm:
    a._check(b)
    order = min(a.order, b.order)
    out: Dict[Basis, Poly] = {}
    for ka, pa in a.terms.items():
        for kb, pb in b.terms.items():
            m = _merge(ka, kb)
            if m is None:
                continue
            key, sign = m
            prod = pa * pb
            if not prod:
                continue
            if sign < 0:
                prod = -prod
            q = out.get(key)
            if q is not None:
                prod = q + prod
                if not prod:
                    del out[key]
                    continue
            out[key] = prod
    return BiForm._from_clean(a.dim, out, order)


def power(a: BiForm, k: int) -> BiForm:
    """k-fold wedge power, k >= 1 (k = 0 gives the constant 1)."""
    if k < 0:
        raise ValueError("power must be non-negative")
    if k == 0:
        return BiForm.function(a.dim, Poly.one(a.order), a.order)
    out = a
    for _ in range(k - 1):
        out = wedge(out, a)
    return out


def _accumulate(out: Dict[Basis, Poly], key: Basis, p: Poly) -> None:
    q = out.get(key)
    if q is not None:
        p = q + p
        if not p:
            del out[key]
            return
    if p:
        out[key] = p


def del_(a: BiForm) -> BiForm:
    """Holomorphic part of d: adds dz^i via d/dz^i of coefficients."""
    out: Dict[Basis, Poly] = {}
    for (I, J), p in a.terms.items():
        for v in p.variables():
            if v < 2 or v % 2:
                continue
            i = v // 2
            if i > a.dim:
                continue
            ins = _insert(i, I)
            if ins is None:
                continue
            nI, sign = ins
            c = p.diff(v)
            _accumulate(out, (nI, J), c if sign > 0 else -c)
    return BiForm._from_clean(a.dim, out, a.order)


def delbar(a: BiForm) -> BiForm:
    """Antiholomorphic part of d: adds dzbar^i via d/dzbar^i of coefficients."""
    out: Dict[Basis, Poly] = {}
    for (I, J), p in a.terms.items():
        base = -1 if len(I) % 2 else 1
        for v in p.variables():
            if v < 2 or v % 2 == 0:
                continue
            i = v // 2
            if i > a.dim:
                continue
            ins = _insert(i, J)
            if ins is None:
                continue
            nJ, sign = ins
            c = p.diff(v)
            _accumulate(out, (I, nJ), c if sign * base > 0 else -c)
    return BiForm._from_clean(a.dim, out, a.order)


def d(a: BiForm) -> BiForm:
    return del_(a) + delbar(a)


def ddbar(a: BiForm) -> BiForm:
    """del(delbar(a))."""
    return del_(delbar(a))


def conj(a: BiForm) -> BiForm:
    """Complex conjugation: swaps z/zbar and dz/dzbar, conjugates scalars."""
    out = {}
    for (I, J), p in a.terms.items():
        c = p.conj()
        if (len(I) * len(J)) % 2:
            c = -c
        out[(J, I)] = c
    return BiForm._from_clean(a.dim, out, a.order)


_I_POWERS = (ONE, IMAG, -ONE, -IMAG)


def j_action(a: BiForm) -> BiForm:
    """Multiply each (p,q) term by i^(q-p)."""
    out = {}
    for (I, J), p in a.terms.items():
        out[(I, J)] = p.scale(_I_POWERS[(len(J) - len(I)) % 4])
    return BiForm._from_clean(a.dim, out, a.order)


def t_derivative_at_zero(a: BiForm) -> BiForm:
    """Coefficient-wise d/dt at t = 0, i.e. the t^1 coefficient."""
    return a.map_coefficients(lambda p: p.t_coefficient(1))
