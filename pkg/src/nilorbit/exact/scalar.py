"""Gaussian rationals: complex numbers whose real and imaginary parts are
arbitrary-precision rationals."""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational

__all__ = ["GScalar", "as_gscalar", "parse_gaussian"]


class GScalar:
    """An element ``re + im*i`` of Q(i).

    Instances are immutable and hashable.  Arithmetic with ``int`` and
    ``Fraction`` operands is supported; floats are rejected so that nothing
    inexact leaks into the structural layers.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _frac(re))
        object.__setattr__(self, "im", _frac(im))

    def __setattr__(self, name, value):
        raise AttributeError("GScalar is immutable")

    @classmethod
    def _raw(cls, re: Fraction, im: Fraction) -> "GScalar":
        obj = object.__new__(cls)
        object.__setattr__(obj, "re", re)
        object.__setattr__(obj, "im", im)
        return obj

    # arithmetic
    def __add__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        return GScalar._raw(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        return GScalar._raw(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        return GScalar._raw(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        if not o.im:
            return GScalar._raw(self.re * o.re, self.im * o.re)
        if not self.im:
            return GScalar._raw(self.re * o.re, self.re * o.im)
        return GScalar._raw(self.re * o.re - self.im * o.im,
                            self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __neg__(self):
        return GScalar._raw(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self) -> "GScalar":
        n = self.re * self.re + self.im * self.im
        if not n:
            raise ZeroDivisionError("GScalar division by zero")
        return GScalar._raw(self.re / n, -self.im / n)

    def conjugate(self) -> "GScalar":
        return GScalar._raw(self.re, -self.im)

    def norm2(self) -> Fraction:
        """Squared modulus, exact."""
        return self.re * self.re + self.im * self.im

    def is_real(self) -> bool:
        return not self.im

    def is_gaussian_integer(self) -> bool:
        return self.re.denominator == 1 and self.im.denominator == 1

    def denominator(self) -> int:
        a, b = self.re.denominator, self.im.denominator
        return a * b // _gcd(a, b)

    # comparisons / conversions
    def __eq__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            if isinstance(other, complex):
                return complex(self) == other
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __abs__(self) -> float:
        return abs(complex(self))

    def __repr__(self):
        return f"GScalar({self})"

    def __str__(self):
        return format_gaussian(self)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)) and not isinstance(x, bool):
        return Fraction(x)
    if isinstance(x, bool):
        return Fraction(int(x))
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot build an exact rational from {type(x).__name__}")


def _coerce(x):
    if isinstance(x, GScalar):
        return x
    if isinstance(x, (int, Fraction)):
        return GScalar._raw(Fraction(x), Fraction(0))
    return NotImplemented


def as_gscalar(x) -> GScalar:
    """Coerce ints, Fractions, GScalars and Gaussian-rational strings."""
    if isinstance(x, GScalar):
        return x
    if isinstance(x, str):
        return parse_gaussian(x)
    if isinstance(x, complex):
        raise TypeError("complex floats are not exact; pass a string such as '1/2+1/4i'")
    return GScalar(x)


ZERO = GScalar(0)
ONE = GScalar(1)
I = GScalar(0, 1)

_NUM = r"(?:\d+(?:\.\d*)?|\.\d+)(?:/\d+)?"
_TERM = re.compile(rf"([+-]?)\s*({_NUM})?\s*(\*?\s*[ij])?")


def parse_gaussian(text: str) -> GScalar:
    """Parse literals such as ``"3"``, ``"-1/2"``, ``"1/2+1/4i"``, ``"-i"``,
    ``"2/3 - 5i"``.  Decimal fractions are converted exactly."""
    s = text.strip().replace(" ", "")
    if not s:
        raise ValueError("empty Gaussian rational literal")
    pos = 0
    re_part = Fraction(0)
    im_part = Fraction(0)
    seen = False
    while pos < len(s):
        m = _TERM.match(s, pos)
        if m is None or m.end() == pos:
            raise ValueError(f"cannot parse Gaussian rational {text!r}")
        sign, num, imag = m.groups()
        if num is None and imag is None:
            raise ValueError(f"cannot parse Gaussian rational {text!r}")
        if seen and not sign:
            raise ValueError(f"missing operator in {text!r}")
        value = Fraction(num) if num is not None else Fraction(1)
        if sign == "-":
            value = -value
        if imag:
            im_part += value
        else:
            re_part += value
        seen = True
        pos = m.end()
    return GScalar._raw(re_part, im_part)


def _fmt_frac(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def format_gaussian(x: GScalar) -> str:
    if not x.im:
        return _fmt_frac(x.re)
    im = x.im
    if im == 1:
        im_s = "i"
    elif im == -1:
        im_s = "-i"
    else:
        im_s = _fmt_frac(im) + "i"
    if not x.re:
        return im_s
    if im_s.startswith("-"):
        return f"{_fmt_frac(x.re)}{im_s}"
    return f"{_fmt_frac(x.re)}+{im_s}"
