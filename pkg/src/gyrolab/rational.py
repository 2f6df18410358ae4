"""Exact rational scalars and rational complex numbers.

Model documents carry numbers that must be exact as strings ("1/2",
"0.25"); these helpers parse them and provide the small amount of exact
complex arithmetic the Mobius disk needs.  Everything here is immutable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational


def parse_rational(value) -> Fraction:
    """Parse "1/2", "0.25", "-3", ints, or Fractions into a Fraction."""
    if isinstance(value, bool):
        raise ValueError(f"not a rational number: {value!r}")
    if isinstance(value, Rational):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, int):
        return Fraction(value)
    raise ValueError(f"not an exact rational literal: {value!r}")


def format_rational(q: Fraction) -> str:
    """Canonical string form, inverse of parse_rational for Fractions."""
    return str(Fraction(q))


@dataclass(frozen=True)
class QComplex:
    """Complex number with exact rational real and imaginary parts."""

    re: Fraction
    im: Fraction

    @staticmethod
    def of(re, im=0) -> "QComplex":
        return QComplex(parse_rational(re), parse_rational(im))

    def __add__(self, other: "QComplex") -> "QComplex":
        return QComplex(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "QComplex") -> "QComplex":
        return QComplex(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "QComplex":
        return QComplex(-self.re, -self.im)

    def __mul__(self, other: "QComplex") -> "QComplex":
        return QComplex(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def __truediv__(self, other: "QComplex") -> "QComplex":
        d = other.abs_sq()
        if d == 0:
            raise ZeroDivisionError("division by exact complex zero")
        return QComplex(
            (self.re * other.re + self.im * other.im) / d,
            (self.im * other.re - self.re * other.im) / d,
        )

    def conjugate(self) -> "QComplex":
        return QComplex(self.re, -self.im)

    def abs_sq(self) -> Fraction:
        """|z|^2, exact."""
        return self.re * self.re + self.im * self.im

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def to_complex(self) -> complex:
        return complex(self.re) + 1j * complex(self.im)

    def __str__(self) -> str:
        return f"{self.re}{'+' if self.im >= 0 else ''}{self.im}i"


QC_ZERO = QComplex(Fraction(0), Fraction(0))
QC_ONE = QComplex(Fraction(1), Fraction(0))


def parse_qcomplex(value) -> QComplex:
    """Parse "re,im" strings, [re, im] pairs, or bare rational literals."""
    if isinstance(value, QComplex):
        return value
    if isinstance(value, str) and "," in value:
        re_s, im_s = value.split(",", 1)
        return QComplex(parse_rational(re_s), parse_rational(im_s))
    if isinstance(value, (list, tuple)) and len(value) == 2:
        return QComplex(parse_rational(value[0]), parse_rational(value[1]))
    return QComplex(parse_rational(value), Fraction(0))
