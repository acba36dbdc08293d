"""T^{1,0}-valued (0,q)-forms and the contraction calculus built on them.

A :class:`VecForm` ``phi = sum_i phi^i (x) d/dz^i`` stores its n form parts
``phi^i`` (each of bidegree (0,q)). Contraction is

    iota_phi(a) = sum_i phi^i ^ (interior product of d/dz^i with a),

which for q = 1 is an even derivation lowering the holomorphic degree by one.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import List, Sequence, Tuple

from .core.forms import BiForm, conj, d, del_, delbar, wedge
from .core.poly import DEFAULT_ORDER, Poly, z_var
from .errors import BidegreeError, DimensionMismatch, PreconditionError

__all__ = [
    "VecForm",
    "ConjVecForm",
    "EndoField",
    "CoframeSubstitution",
    "interior_dz",
    "interior_dzb",
    "contract",
    "contract_conj",
    "exp_contract",
    "exp_contract_conj",
    "simultaneous_contract",
    "extension_map",
    "extension_substitution",
    "bracket",
    "lie_derivative",
    "lie_derivative_10",
    "lie_derivative_01",
    "endo_compose",
    "endo_compose_conj",
    "interior_compose",
    "neumann_inverse",
    "conjugation_residual",
    "conjugation_residual_del",
    "conjugation_residual_delbar",
]


@dataclass(frozen=True)
class VecForm:
    """phi in A^{0,q}(T^{1,0}); ``components[i-1]`` is the (0,q)-form phi^i."""

    dim: int
    q: int
    components: Tuple[BiForm, ...]

    def __post_init__(self):
        comps = tuple(self.components)
        object.__setattr__(self, "components", comps)
        if len(comps) != self.dim:
            raise DimensionMismatch(f"need {self.dim} components, got {len(comps)}")
        for i, c in enumerate(comps, start=1):
            if c.dim != self.dim:
                raise DimensionMismatch(f"component {i} lives on C^{c.dim}")
            if not c.is_pure(0, self.q):
                raise BidegreeError(f"component {i} is not of bidegree (0,{self.q})")

    @property
    def order(self) -> int:
        return min(c.order for c in self.components) if self.components else DEFAULT_ORDER

    @classmethod
    def zero(cls, dim: int, q: int = 1, order: int = DEFAULT_ORDER) -> "VecForm":
        return cls(dim, q, tuple(BiForm.zero(dim, order) for _ in range(dim)))

    @classmethod
    def from_matrix(cls, m: Sequence[Sequence[Poly]]) -> "VecForm":
        """q = 1 form with phi^i = sum_j m[i-1][j-1] dzbar^j."""
        n = len(m)
        comps = []
        for row in m:
            c = BiForm.zero(n, min((p.order for p in row), default=DEFAULT_ORDER))
            for j, p in enumerate(row, start=1):
                if p:
                    c = c + BiForm.monomial(n, (), (j,), p)
            comps.append(c)
        return cls(n, 1, tuple(comps))

    @classmethod
    def elementary(cls, dim: int, target: int, form: BiForm) -> "VecForm":
        """form (x) d/dz^target."""
        q = form.total_degree() if form else 1
        comps = [BiForm.zero(dim, form.order) for _ in range(dim)]
        comps[target - 1] = form
        return cls(dim, q, tuple(comps))

    def matrix(self) -> List[List[Poly]]:
        """Coefficients phi^i_{jbar} (q = 1 only)."""
        if self.q != 1:
            raise BidegreeError("matrix form exists only for q = 1")
        order = self.order
        return [[c.coefficient((), (j,)).truncate(order) for j in range(1, self.dim + 1)] for c in self.components]

    def is_zero(self) -> bool:
        return all(not c for c in self.components)

    def __add__(self, other: "VecForm") -> "VecForm":
        self._check(other)
        return VecForm(self.dim, self.q, tuple(a + b for a, b in zip(self.components, other.components)))

    def __sub__(self, other: "VecForm") -> "VecForm":
        return self + other.scale(-1)

    def __neg__(self) -> "VecForm":
        return self.scale(-1)

    def scale(self, c) -> "VecForm":
        return VecForm(self.dim, self.q, tuple(x.scale(c) for x in self.components))

    def map_components(self, fn) -> "VecForm":
        return VecForm(self.dim, self.q, tuple(fn(c) for c in self.components))

    def t_coefficient(self, k: int) -> "VecForm":
        return self.map_components(lambda c: c.map_coefficients(lambda p: p.t_coefficient(k)))

    def truncate(self, order: int) -> "VecForm":
        return self.map_components(lambda c: c.truncate(order))

    def conj(self) -> "ConjVecForm":
        return ConjVecForm(self.dim, self.q, tuple(conj(c) for c in self.components))

    def _check(self, other) -> None:
        if self.dim != other.dim:
            raise DimensionMismatch(f"vector forms on C^{self.dim} and C^{other.dim}")
        if self.q != other.q:
            raise BidegreeError("vector forms of different degree")

    def __eq__(self, other) -> bool:
        if not isinstance(other, VecForm):
            return NotImplemented
        if self.is_zero() and other.is_zero():
            return self.dim == other.dim
        return self.dim == other.dim and self.q == other.q and self.components == other.components

    def __hash__(self):
        return hash((self.dim, self.q, self.components))

    def __str__(self) -> str:
        parts = [f"[{c}] d/dz{i}" for i, c in enumerate(self.components, start=1) if c]
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class ConjVecForm:
    """phibar in A^{q,0}(T^{0,1}); ``components[k-1]`` is the (q,0)-form phibar^k."""

    dim: int
    q: int
    components: Tuple[BiForm, ...]

    def __post_init__(self):
        comps = tuple(self.components)
        object.__setattr__(self, "components", comps)
        if len(comps) != self.dim:
            raise DimensionMismatch(f"need {self.dim} components, got {len(comps)}")
        for k, c in enumerate(comps, start=1):
            if not c.is_pure(self.q, 0):
                raise BidegreeError(f"component {k} is not of bidegree ({self.q},0)")

    @property
    def order(self) -> int:
        return min(c.order for c in self.components) if self.components else DEFAULT_ORDER

    def matrix(self) -> List[List[Poly]]:
        """Coefficients phibar^{kbar}_l, i.e. the dz^l coefficient of component k."""
        order = self.order
        return [[c.coefficient((l,), ()).truncate(order) for l in range(1, self.dim + 1)] for c in self.components]

    def scale(self, c) -> "ConjVecForm":
        return ConjVecForm(self.dim, self.q, tuple(x.scale(c) for x in self.components))


@dataclass(frozen=True)
class EndoField:
    """Function-valued n x n matrix acting on the holomorphic or antiholomorphic coframe.

    side "holo": entries[i][l] is the dz^l coefficient of E ⌟ dz^i (dzbar fixed).
    side "anti": entries[k][j] is the dzbar^j coefficient of E ⌟ dzbar^k (dz fixed).
    """

    dim: int
    entries: Tuple[Tuple[Poly, ...], ...]
    side: str = "holo"

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.entries)
        object.__setattr__(self, "entries", rows)
        if self.side not in ("holo", "anti"):
            raise ValueError("side must be 'holo' or 'anti'")
        if len(rows) != self.dim or any(len(r) != self.dim for r in rows):
            raise DimensionMismatch("entries must form a dim x dim matrix")

    @property
    def order(self) -> int:
        return min((p.order for r in self.entries for p in r), default=DEFAULT_ORDER)

    @classmethod
    def identity(cls, dim: int, side: str = "holo", order: int = DEFAULT_ORDER) -> "EndoField":
        return cls(dim, tuple(tuple(Poly.one(order) if i == j else Poly.zero(order) for j in range(dim))
                              for i in range(dim)), side)

    @classmethod
    def zero(cls, dim: int, side: str = "holo", order: int = DEFAULT_ORDER) -> "EndoField":
        return cls(dim, tuple(tuple(Poly.zero(order) for _ in range(dim)) for _ in range(dim)), side)

    def _check(self, other: "EndoField") -> None:
        if self.dim != other.dim or self.side != other.side:
            raise DimensionMismatch("incompatible endomorphism fields")

    def __add__(self, other: "EndoField") -> "EndoField":
        self._check(other)
        return EndoField(self.dim, tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)), self.side)

    def __sub__(self, other: "EndoField") -> "EndoField":
        self._check(other)
        return EndoField(self.dim, tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)), self.side)

    def __matmul__(self, other: "EndoField") -> "EndoField":
        self._check(other)
        n = self.dim
        order = min(self.order, other.order)
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = Poly.zero(order)
                for k in range(n):
                    a, b = self.entries[i][k], other.entries[k][j]
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            rows.append(tuple(row))
        return EndoField(n, tuple(rows), self.side)

    def is_zero(self) -> bool:
        return all(not p for r in self.entries for p in r)

    def __eq__(self, other) -> bool:
        if not isinstance(other, EndoField):
            return NotImplemented
        return self.dim == other.dim and self.side == other.side and self.entries == other.entries

    def __hash__(self):
        return hash((self.dim, self.side, self.entries))

    def truncate(self, order: int) -> "EndoField":
        return EndoField(self.dim, tuple(tuple(p.truncate(order) for p in r) for r in self.entries), self.side)

    def to_substitution(self) -> "CoframeSubstitution":
        n = self.dim
        order = self.order
        images = []
        for i in range(n):
            img = BiForm.zero(n, order)
            for j, p in enumerate(self.entries[i], start=1):
                if p:
                    basis = ((j,), ()) if self.side == "holo" else ((), (j,))
                    img = img + BiForm(n, {basis: p}, order)
            images.append(img)
        ident_h = tuple(BiForm.dz(i, n, order) for i in range(1, n + 1))
        ident_a = tuple(BiForm.dzb(i, n, order) for i in range(1, n + 1))
        if self.side == "holo":
            return CoframeSubstitution(n, tuple(images), ident_a)
        return CoframeSubstitution(n, ident_h, tuple(images))


@dataclass(frozen=True)
class CoframeSubstitution:
    """Images of each dz^i and dzbar^j, extended multiplicatively."""

    dim: int
    holo_images: Tuple[BiForm, ...]
    anti_images: Tuple[BiForm, ...]

    def __post_init__(self):
        object.__setattr__(self, "holo_images", tuple(self.holo_images))
        object.__setattr__(self, "anti_images", tuple(self.anti_images))
        if len(self.holo_images) != self.dim or len(self.anti_images) != self.dim:
            raise DimensionMismatch("need one image per coframe element")
        for img in self.holo_images + self.anti_images:
            if img.dim != self.dim:
                raise DimensionMismatch("image lives on a different C^n")
            if not all(len(I) + len(J) == 1 for I, J in img.terms):
                raise BidegreeError("coframe images must be 1-forms")

    @classmethod
    def identity(cls, dim: int, order: int = DEFAULT_ORDER) -> "CoframeSubstitution":
        return cls(dim, tuple(BiForm.dz(i, dim, order) for i in range(1, dim + 1)),
                   tuple(BiForm.dzb(i, dim, order) for i in range(1, dim + 1)))


# -- interior products and contraction ---------------------------------------


def interior_dz(i: int, a: BiForm) -> BiForm:
    """Interior product with d/dz^i."""
    out = {}
    for (I, J), p in a.terms.items():
        if i in I:
            s = I.index(i)
            out[(I[:s] + I[s + 1:], J)] = -p if s % 2 else p
    return BiForm._from_clean(a.dim, out, a.order)


def interior_dzb(k: int, a: BiForm) -> BiForm:
    """Interior product with d/dzbar^k."""
    out = {}
    for (I, J), p in a.terms.items():
        if k in J:
            s = len(I) + J.index(k)
            out[(I, J[:J.index(k)] + J[J.index(k) + 1:])] = -p if s % 2 else p
    return BiForm._from_clean(a.dim, out, a.order)


def contract(phi: VecForm, a: BiForm) -> BiForm:
    """iota_phi a = sum_i phi^i ^ i_{d/dz^i} a; maps (p,q) to (p-1, q+phi.q)."""
    if phi.dim != a.dim:
        raise DimensionMismatch("vector form and form live on different C^n")
    out = BiForm.zero(a.dim, min(a.order, phi.order))
    for i, c in enumerate(phi.components, start=1):
        if not c:
            continue
        inner = interior_dz(i, a)
        if inner:
            out = out + wedge(c, inner)
    return out


def contract_conj(phibar: ConjVecForm, a: BiForm) -> BiForm:
    """iota_phibar a = sum_k phibar^k ^ i_{d/dzbar^k} a."""
    if phibar.dim != a.dim:
        raise DimensionMismatch("vector form and form live on different C^n")
    out = BiForm.zero(a.dim, min(a.order, phibar.order))
    for k, c in enumerate(phibar.components, start=1):
        if not c:
            continue
        inner = interior_dzb(k, a)
        if inner:
            out = out + wedge(c, inner)
    return out


def _exp_series(step, a: BiForm) -> BiForm:
    # iota strictly lowers one of the two degrees, so the series is finite
    out = a
    term = a
    k = 1
    while True:
        term = step(term)
        if not term:
            return out
        out = out + term.scale(Fraction(1, factorial(k)))
        k += 1


def exp_contract(phi: VecForm, a: BiForm) -> BiForm:
    """e^{iota_phi} a = sum_k iota_phi^k a / k!."""
    return _exp_series(lambda x: contract(phi, x), a)


def exp_contract_conj(phibar: ConjVecForm, a: BiForm) -> BiForm:
    return _exp_series(lambda x: contract_conj(phibar, x), a)


def simultaneous_contract(s: CoframeSubstitution, a: BiForm) -> BiForm:
    """Replace every coframe factor by its image; coefficients unchanged."""
    if s.dim != a.dim:
        raise DimensionMismatch("substitution and form live on different C^n")
    order = min([a.order] + [x.order for x in s.holo_images + s.anti_images])
    out = BiForm.zero(a.dim, order)
    cache = {}
    for (I, J), p in a.terms.items():
        key = (I, J)
        img = cache.get(key)
        if img is None:
            img = BiForm.function(a.dim, Poly.one(order), order)
            for i in I:
                img = wedge(img, s.holo_images[i - 1])
                if not img:
                    break
            if img:
                for j in J:
                    img = wedge(img, s.anti_images[j - 1])
                    if not img:
                        break
            cache[key] = img
        if img:
            out = out + img.scale(p)
    return out


def extension_map(phi: VecForm, a: BiForm) -> BiForm:
    """e^{iota_phi | iota_phibar}: exp-contract the dz-block by phi and the dzbar-block by phibar."""
    if phi.q != 1:
        raise BidegreeError("extension map needs a (0,1) vector form")
    if phi.dim != a.dim:
        raise DimensionMismatch("vector form and form live on different C^n")
    phibar = phi.conj()
    n = a.dim
    order = min(a.order, phi.order)
    out = BiForm.zero(n, order)
    for (I, J), p in a.terms.items():
        hol = exp_contract(phi, BiForm.monomial(n, I, (), 1, order))
        ant = exp_contract_conj(phibar, BiForm.monomial(n, (), J, 1, order))
        out = out + wedge(hol, ant).scale(p)
    return out


def extension_substitution(phi: VecForm) -> CoframeSubstitution:
    """(I + phi + phibar): dz^i -> dz^i + phi^i, dzbar^j -> dzbar^j + conj(phi^j)."""
    if phi.q != 1:
        raise BidegreeError("extension substitution needs a (0,1) vector form")
    n = phi.dim
    order = phi.order
    holo = tuple(BiForm.dz(i, n, order) + phi.components[i - 1] for i in range(1, n + 1))
    anti = tuple(BiForm.dzb(j, n, order) + conj(phi.components[j - 1]) for j in range(1, n + 1))
    return CoframeSubstitution(n, holo, anti)


# -- bracket and Lie derivatives ---------------------------------------------


def _coeff_partial(i: int, a: BiForm) -> BiForm:
    # d/dz^i applied to coefficients only
    v = z_var(i)
    return a.map_coefficients(lambda p: p.diff(v))


def bracket(phi: VecForm, psi: VecForm) -> VecForm:
    """[phi, psi]^j = sum_i phi^i ^ d_i psi^j - (-1)^{pq} psi^i ^ d_i phi^j."""
    if phi.dim != psi.dim:
        raise DimensionMismatch("vector forms live on different C^n")
    n = phi.dim
    sign = -1 if (phi.q * psi.q) % 2 else 1
    order = min(phi.order, psi.order)
    comps = []
    for j in range(n):
        acc = BiForm.zero(n, order)
        for i in range(1, n + 1):
            a, b = phi.components[i - 1], psi.components[i - 1]
            if a:
                acc = acc + wedge(a, _coeff_partial(i, psi.components[j]))
            if b:
                term = wedge(b, _coeff_partial(i, phi.components[j]))
                acc = acc + (term if sign < 0 else -term)
        comps.append(acc)
    return VecForm(n, phi.q + psi.q, tuple(comps))


def lie_derivative_10(phi: VecForm, a: BiForm) -> BiForm:
    """(-1)^q del(iota_phi a) + iota_phi(del a)."""
    first = del_(contract(phi, a))
    if phi.q % 2:
        first = -first
    return first + contract(phi, del_(a))


def lie_derivative_01(phi: VecForm, a: BiForm) -> BiForm:
    """(-1)^q delbar(iota_phi a) + iota_phi(delbar a)."""
    first = delbar(contract(phi, a))
    if phi.q % 2:
        first = -first
    return first + contract(phi, delbar(a))


def lie_derivative(phi: VecForm, a: BiForm) -> BiForm:
    """Twisted Lie derivative (-1)^q d(iota_phi a) + iota_phi(d a)."""
    first = d(contract(phi, a))
    if phi.q % 2:
        first = -first
    return first + contract(phi, d(a))


# -- endomorphisms --------------------------------------------------------------


def _mat_product(a, b, order) -> Tuple[Tuple[Poly, ...], ...]:
    n = len(a)
    rows = []
    for i in range(n):
        row = []
        for l in range(n):
            acc = Poly.zero(order)
            for k in range(n):
                if a[i][k] and b[k][l]:
                    acc = acc + a[i][k] * b[k][l]
            row.append(acc)
        rows.append(tuple(row))
    return tuple(rows)


def endo_compose(phi: VecForm, phibar: ConjVecForm) -> EndoField:
    """phi phibar: entries[i][l] = sum_k phi^i_{kbar} phibar^{kbar}_l, acting on dz."""
    if phi.dim != phibar.dim:
        raise DimensionMismatch("vector forms live on different C^n")
    order = min(phi.order, phibar.order)
    return EndoField(phi.dim, _mat_product(phi.matrix(), phibar.matrix(), order), "holo")


def endo_compose_conj(phibar: ConjVecForm, phi: VecForm) -> EndoField:
    """phibar phi: entries[k][j] = sum_i phibar^{kbar}_i phi^i_{jbar}, acting on dzbar."""
    if phi.dim != phibar.dim:
        raise DimensionMismatch("vector forms live on different C^n")
    order = min(phi.order, phibar.order)
    return EndoField(phi.dim, _mat_product(phibar.matrix(), phi.matrix(), order), "anti")


def interior_compose(phi: VecForm, phibar: ConjVecForm) -> EndoField:
    """phibar ⌟ phi computed by contracting each component phi^i with phibar."""
    n = phi.dim
    order = min(phi.order, phibar.order)
    rows = []
    for c in phi.components:
        img = contract_conj(phibar, c)
        rows.append(tuple(img.coefficient((l,), ()).truncate(order) for l in range(1, n + 1)))
    return EndoField(n, tuple(rows), "holo")


def neumann_inverse(m: EndoField) -> EndoField:
    """Inverse of m = I - M for t-nilpotent M, as the truncated series sum M^k."""
    n = m.dim
    order = m.order
    ident = EndoField.identity(n, m.side, order)
    small = ident - m
    for r in small.entries:
        for p in r:
            if p.t_coefficient(0):
                raise PreconditionError("I - m has a t-free part; Neumann series does not terminate")
    out = ident
    term = ident
    for _ in range(order):
        term = term @ small
        if term.is_zero():
            break
        out = out + term
    return out


# -- conjugation identity -------------------------------------------------------


def _half_bracket(phi: VecForm) -> VecForm:
    return bracket(phi, phi).scale(Fraction(1, 2))


def conjugation_residual(phi: VecForm, a: BiForm) -> BiForm:
    """e^{-iota_phi} d e^{iota_phi} a - (d - L_phi - iota_{[phi,phi]/2}) a."""
    if phi.q != 1:
        raise BidegreeError("conjugation identity is stated for (0,1) vector forms")
    lhs = exp_contract(-phi, d(exp_contract(phi, a)))
    rhs = d(a) - lie_derivative(phi, a) - contract(_half_bracket(phi), a)
    return lhs - rhs


def conjugation_residual_del(phi: VecForm, a: BiForm) -> BiForm:
    """e^{-iota_phi} del e^{iota_phi} a - (del - L^{1,0}_phi - iota_{[phi,phi]/2}) a."""
    lhs = exp_contract(-phi, del_(exp_contract(phi, a)))
    rhs = del_(a) - lie_derivative_10(phi, a) - contract(_half_bracket(phi), a)
    return lhs - rhs


def conjugation_residual_delbar(phi: VecForm, a: BiForm) -> BiForm:
    """e^{-iota_phi} delbar e^{iota_phi} a - (delbar - L^{0,1}_phi) a."""
    lhs = exp_contract(-phi, delbar(exp_contract(phi, a)))
    rhs = delbar(a) - lie_derivative_01(phi, a)
    return lhs - rhs
