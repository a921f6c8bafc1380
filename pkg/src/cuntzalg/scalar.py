"""Exact Gaussian rationals re + im*i with Fraction parts."""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational

__all__ = ["Scalar", "ZERO", "ONE", "I", "as_scalar"]


class Scalar:
    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if type(re) is Fraction else Fraction(re)
        self.im = im if type(im) is Fraction else Fraction(im)

    def conjugate(self) -> "Scalar":
        if not self.im:
            return self
        return Scalar(self.re, -self.im)

    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return Scalar(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return Scalar(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __neg__(self):
        return Scalar(-self.re, -self.im)

    def __mul__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if not self.im and not other.im:
            return Scalar(self.re * other.re)
        return Scalar(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        norm = other.re * other.re + other.im * other.im
        if not norm:
            raise ZeroDivisionError("division by zero scalar")
        num = self * other.conjugate()
        return Scalar(num.re / norm, num.im / norm)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Rational)):
            return not self.im and self.re == other
        if isinstance(other, complex):
            return self.re == other.real and self.im == other.imag
        return NotImplemented

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def is_real(self) -> bool:
        return not self.im

    def __repr__(self):
        return f"Scalar({self.re}, {self.im})" if self.im else f"Scalar({self.re})"

    def __str__(self):
        return format_scalar(self)


def as_scalar(x) -> Scalar:
    if type(x) is Scalar:
        return x
    if isinstance(x, complex):
        raise TypeError("floating complex numbers are not exact; use Scalar(re, im)")
    if isinstance(x, float):
        raise TypeError("floats are not exact; use Fraction or int")
    if isinstance(x, (int, Rational)):
        return Scalar(x)
    raise TypeError(f"cannot interpret {x!r} as an exact scalar")


def _coerce(x) -> Scalar | None:
    if type(x) is Scalar:
        return x
    if isinstance(x, (int, Rational)) and not isinstance(x, bool):
        return Scalar(x)
    return None


def _rat(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_scalar(c: Scalar) -> str:
    """Exact text form: ``3/4``, ``-1/2i``, ``1+2i``."""
    if not c.im:
        return _rat(c.re)
    im = f"{_rat(c.im)}i"
    if not c.re:
        return im
    sign = "-" if c.im < 0 else "+"
    return f"{_rat(c.re)}{sign}{_rat(abs(c.im))}i"


ZERO = Scalar(0)
ONE = Scalar(1)
I = Scalar(0, 1)
