"""Sparse polynomials in z, zbar, t and N with Gaussian-rational coefficients.

Variables are encoded as small integers so that monomials can be stored as
sorted tuples of ``(var, exponent)`` pairs:

    t      -> 0          (deformation parameter, truncated)
    N      -> 1          (formal blow-up parameter, never truncated)
    z^i    -> 2*i        (i >= 1)
    zbar^i -> 2*i + 1

z and zbar are independent variables (Wirtinger convention), so complex
conjugation is the swap ``2i <-> 2i+1`` together with conjugating scalars.
"""

from __future__ import annotations

from functools import lru_cache
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Tuple

from .scalar import ONE, ZERO, Scalar, as_scalar

__all__ = [
    "DEFAULT_ORDER",
    "T_VAR",
    "N_VAR",
    "Monomial",
    "Poly",
    "z_var",
    "zb_var",
    "var_name",
    "parse_var",
]

DEFAULT_ORDER = 2
T_VAR = 0
N_VAR = 1

Monomial = Tuple[Tuple[int, int], ...]


def z_var(i: int) -> int:
    if i < 1:
        raise ValueError(f"coordinate index must be >= 1, got {i}")
    return 2 * i


def zb_var(i: int) -> int:
    if i < 1:
        raise ValueError(f"coordinate index must be >= 1, got {i}")
    return 2 * i + 1


def var_name(v: int) -> str:
    if v == T_VAR:
        return "t"
    if v == N_VAR:
        return "N"
    return f"z{v // 2}" if v % 2 == 0 else f"zb{v // 2}"


def parse_var(name: str) -> int:
    """Inverse of :func:`var_name` (``z3``, ``zb3``, ``t``, ``N``)."""
    if name == "t":
        return T_VAR
    if name == "N":
        return N_VAR
    for prefix, fn in (("zb", zb_var), ("z", z_var)):
        if name.startswith(prefix):
            rest = name[len(prefix):]
            if rest.isdigit():
                return fn(int(rest))
    raise ValueError(f"unknown variable name {name!r}")


@lru_cache(maxsize=1 << 16)
def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for v, e in b:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


@lru_cache(maxsize=1 << 14)
def _mono_conj(m: Monomial) -> Monomial:
    return tuple(sorted(((v ^ 1) if v >= 2 else v, e) for v, e in m))


def _t_exp(m: Monomial) -> int:
    if m and m[0][0] == T_VAR:
        return m[0][1]
    return 0


class Poly:
    """Immutable sparse polynomial, truncated in ``t`` at ``order``.

    Terms whose t-exponent exceeds ``order`` are dropped on construction and
    after every product. Combining polynomials of different orders keeps the
    smaller order, since higher coefficients of the other operand are unknown.
    """

    __slots__ = ("terms", "order", "_hash")

    def __init__(self, terms: Mapping[Monomial, object] | None = None, order: int = DEFAULT_ORDER):
        if order < 0:
            raise ValueError("truncation order must be non-negative")
        clean: Dict[Monomial, Scalar] = {}
        if terms:
            for m, c in terms.items():
                c = as_scalar(c)
                if c and _t_exp(m) <= order:
                    clean[m] = c
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "_hash", None)

    @classmethod
    def _from_clean(cls, terms: Dict[Monomial, Scalar], order: int) -> "Poly":
        obj = object.__new__(cls)
        object.__setattr__(obj, "terms", terms)
        object.__setattr__(obj, "order", order)
        object.__setattr__(obj, "_hash", None)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def const(cls, c, order: int = DEFAULT_ORDER) -> "Poly":
        return cls({(): c}, order)

    @classmethod
    def zero(cls, order: int = DEFAULT_ORDER) -> "Poly":
        return cls._from_clean({}, order)

    @classmethod
    def one(cls, order: int = DEFAULT_ORDER) -> "Poly":
        return cls._from_clean({(): ONE}, order)

    @classmethod
    def var(cls, v: int, power: int = 1, coeff=1, order: int = DEFAULT_ORDER) -> "Poly":
        if power == 0:
            return cls.const(coeff, order)
        return cls({((v, power),): coeff}, order)

    @classmethod
    def z(cls, i: int, order: int = DEFAULT_ORDER) -> "Poly":
        return cls.var(z_var(i), order=order)

    @classmethod
    def zb(cls, i: int, order: int = DEFAULT_ORDER) -> "Poly":
        return cls.var(zb_var(i), order=order)

    @classmethod
    def t(cls, order: int = DEFAULT_ORDER) -> "Poly":
        return cls.var(T_VAR, order=order)

    @classmethod
    def N(cls, order: int = DEFAULT_ORDER) -> "Poly":
        return cls.var(N_VAR, order=order)

    @classmethod
    def monomial(cls, exps: Mapping[int, int], coeff=1, order: int = DEFAULT_ORDER) -> "Poly":
        m = tuple(sorted((v, e) for v, e in exps.items() if e))
        return cls({m: coeff}, order)

    # -- basic protocol -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction, Scalar)):
            return self.terms == Poly.const(other).terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            object.__setattr__(self, "_hash", hash(frozenset(self.terms.items())))
        return self._hash

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            return other
        return Poly.const(other, self.order)

    def __add__(self, other) -> "Poly":
        other = self._coerce(other)
        order = min(self.order, other.order)
        out = dict(self.terms) if order == self.order else self.truncate(order).terms.copy()
        for m, c in other.terms.items():
            if _t_exp(m) > order:
                continue
            s = out.get(m)
            if s is None:
                out[m] = c
            else:
                s = s + c
                if s:
                    out[m] = s
                else:
                    del out[m]
        return Poly._from_clean(out, order)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._from_clean({m: -c for m, c in self.terms.items()}, self.order)

    def __sub__(self, other) -> "Poly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Poly":
        return self._coerce(other) - self

    def scale(self, c) -> "Poly":
        c = as_scalar(c)
        if not c:
            return Poly.zero(self.order)
        return Poly._from_clean({m: v * c for m, v in self.terms.items()}, self.order)

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            if isinstance(other, (int, Fraction, Scalar)):
                return self.scale(other)
            return NotImplemented
        order = min(self.order, other.order)
        out: Dict[Monomial, Scalar] = {}
        for m1, c1 in self.terms.items():
            e1 = _t_exp(m1)
            if e1 > order:
                continue
            for m2, c2 in other.terms.items():
                if e1 + _t_exp(m2) > order:
                    continue
                m = _mono_mul(m1, m2)
                p = c1 * c2
                s = out.get(m)
                if s is not None:
                    p = s + p
                    if not p:
                        del out[m]
                        continue
                out[m] = p
        return Poly._from_clean(out, order)

    def __rmul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction, Scalar)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative powers are not polynomial")
        out = Poly.one(self.order)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- structure ----------------------------------------------------------

    def truncate(self, order: int) -> "Poly":
        if order >= self.order:
            return Poly._from_clean(dict(self.terms), min(order, self.order))
        return Poly._from_clean(
            {m: c for m, c in self.terms.items() if _t_exp(m) <= order}, order
        )

    def with_order(self, order: int) -> "Poly":
        """Relabel the truncation order.

        Only sound for polynomials known exactly (t-free data such as chart
        maps); the t-exponents beyond ``order`` are dropped.
        """
        return Poly({m: c for m, c in self.terms.items()}, order)

    def variables(self) -> set:
        return {v for m in self.terms for v, _ in m}

    def has_var(self, v: int) -> bool:
        return any(v == w for m in self.terms for w, _ in m)

    def max_index(self) -> int:
        """Largest coordinate index i among z^i, zbar^i occurring."""
        vs = [v // 2 for v in self.variables() if v >= 2]
        return max(vs, default=0)

    def degree(self, vars: Iterable[int] | None = None) -> int:
        sel = None if vars is None else set(vars)
        best = -1
        for m in self.terms:
            d = sum(e for v, e in m if sel is None or v in sel)
            best = max(best, d)
        return best

    def coefficient_of(self, v: int, power: int) -> "Poly":
        """Coefficient of v**power, as a polynomial in the remaining variables."""
        out: Dict[Monomial, Scalar] = {}
        for m, c in self.terms.items():
            e = dict(m).get(v, 0)
            if e == power:
                rest = tuple(p for p in m if p[0] != v)
                out[rest] = out.get(rest, ZERO) + c
        return Poly({k: c for k, c in out.items() if c}, self.order)

    def t_coefficient(self, k: int) -> "Poly":
        return self.coefficient_of(T_VAR, k)

    def constant_term(self) -> Scalar:
        return self.terms.get((), ZERO)

    def split_by(self, v: int) -> Dict[int, "Poly"]:
        """Map exponent e -> coefficient of v**e."""
        buckets: Dict[int, Dict[Monomial, Scalar]] = {}
        for m, c in self.terms.items():
            e = 0
            rest = []
            for p in m:
                if p[0] == v:
                    e = p[1]
                else:
                    rest.append(p)
            buckets.setdefault(e, {})[tuple(rest)] = c
        return {e: Poly._from_clean(d, self.order) for e, d in buckets.items()}

    # -- calculus -----------------------------------------------------------

    def diff(self, v: int) -> "Poly":
        out: Dict[Monomial, Scalar] = {}
        for m, c in self.terms.items():
            for k, (w, e) in enumerate(m):
                if w == v:
                    if e == 1:
                        nm = m[:k] + m[k + 1:]
                    else:
                        nm = m[:k] + ((w, e - 1),) + m[k + 1:]
                    out[nm] = c * e
                    break
        return Poly._from_clean(out, self.order)

    def conj(self) -> "Poly":
        return Poly._from_clean(
            {_mono_conj(m): c.conjugate() for m, c in self.terms.items()}, self.order
        )

    def substitute(self, mapping: Mapping[int, "Poly"], order: int | None = None) -> "Poly":
        """Replace each variable in ``mapping`` by a polynomial; others stay."""
        if order is None:
            order = min([self.order] + [p.order for p in mapping.values()])
        powers: Dict[Tuple[int, int], Poly] = {}

        def pw(v: int, e: int) -> Poly:
            key = (v, e)
            if key not in powers:
                powers[key] = mapping[v].truncate(order) ** e
            return powers[key]

        out = Poly.zero(order)
        for m, c in self.terms.items():
            kept = []
            term = None
            for v, e in m:
                if v in mapping:
                    f = pw(v, e)
                    term = f if term is None else term * f
                else:
                    kept.append((v, e))
            base = Poly._from_clean({tuple(kept): c}, order) if _t_exp(tuple(kept)) <= order else Poly.zero(order)
            out = out + (base if term is None else base * term)
        return out

    def evaluate(self, values: Mapping[int, object]) -> "Poly":
        """Substitute Scalars for some variables."""
        mapping = {v: Poly.const(x, self.order) for v, x in values.items()}
        return self.substitute(mapping, self.order)

    # -- text ---------------------------------------------------------------

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda mc: (sum(e for _, e in mc[0]), mc[0]))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            mono = "*".join(var_name(v) if e == 1 else f"{var_name(v)}^{e}" for v, e in m)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"Poly({self})"
