"""Gaussian rationals: exact complex numbers a + bi with a, b in Q."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

__all__ = ["Scalar", "I", "ONE", "ZERO", "as_scalar"]


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot use {type(x).__name__} as an exact rational")


class Scalar:
    """Exact element of Q(i).

    Instances are immutable and hashable; ``int`` and ``Fraction`` operands
    are promoted automatically.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _frac(re))
        object.__setattr__(self, "im", _frac(im))

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    @classmethod
    def _raw(cls, re: Fraction, im: Fraction) -> "Scalar":
        obj = object.__new__(cls)
        object.__setattr__(obj, "re", re)
        object.__setattr__(obj, "im", im)
        return obj

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __eq__(self, other) -> bool:
        if isinstance(other, Scalar):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __add__(self, other) -> "Scalar":
        o = as_scalar(other)
        return Scalar._raw(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other) -> "Scalar":
        o = as_scalar(other)
        return Scalar._raw(self.re - o.re, self.im - o.im)

    def __rsub__(self, other) -> "Scalar":
        return as_scalar(other) - self

    def __neg__(self) -> "Scalar":
        return Scalar._raw(-self.re, -self.im)

    def __mul__(self, other) -> "Scalar":
        if isinstance(other, Scalar):
            a, b, c, d = self.re, self.im, other.re, other.im
            if not b:
                if not d:
                    return Scalar._raw(a * c, d)
                return Scalar._raw(a * c, a * d)
            if not d:
                return Scalar._raw(a * c, b * c)
            return Scalar._raw(a * c - b * d, a * d + b * c)
        if isinstance(other, (int, Fraction)):
            return Scalar._raw(self.re * other, self.im * other)
        return NotImplemented

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        """Squared modulus |z|^2."""
        return self.re * self.re + self.im * self.im

    def inverse(self) -> "Scalar":
        n = self.norm()
        if not n:
            raise ZeroDivisionError("inverse of zero Scalar")
        return Scalar._raw(self.re / n, -self.im / n)

    def __truediv__(self, other) -> "Scalar":
        return self * as_scalar(other).inverse()

    def __rtruediv__(self, other) -> "Scalar":
        return as_scalar(other) * self.inverse()

    def conjugate(self) -> "Scalar":
        return Scalar._raw(self.re, -self.im)

    def __pow__(self, k: int) -> "Scalar":
        if k < 0:
            return self.inverse() ** (-k)
        out, base = ONE, self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def is_real(self) -> bool:
        return self.im == 0

    def __repr__(self) -> str:
        return f"Scalar({self.re!s}, {self.im!s})"

    def __str__(self) -> str:
        re, im = self.re, self.im
        if not im:
            return str(re)
        if im == 1:
            ims = "i"
        elif im == -1:
            ims = "-i"
        else:
            ims = f"{im}i"
        if not re:
            return ims
        sign = "-" if im < 0 else "+"
        mag = -im if im < 0 else im
        mags = "i" if mag == 1 else f"{mag}i"
        return f"({re}{sign}{mags})"


def as_scalar(x) -> Scalar:
    if isinstance(x, Scalar):
        return x
    if isinstance(x, complex):
        raise TypeError("floating complex numbers are not exact; build a Scalar")
    return Scalar._raw(_frac(x), Fraction(0))


ZERO = Scalar(0, 0)
ONE = Scalar(1, 0)
I = Scalar(0, 1)
