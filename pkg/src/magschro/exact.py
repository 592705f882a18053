"""Exact complex scalars for identity verification.

The calculus operators are generic over the scalar type.  Feeding them
graphs and functions whose data are :class:`~fractions.Fraction` weights and
:class:`ComplexRational` values (with phases drawn from exact units such as
the fourth roots of unity or Pythagorean points like (3 + 4i)/5) makes every
identity residual exactly zero, which separates genuine identity failures
from floating-point accumulation.
"""

from __future__ import annotations

import math
import numbers
from fractions import Fraction


class ComplexRational:
    """A complex number with exact rational real and imaginary parts."""

    __slots__ = ("real", "imag")

    def __init__(self, real=0, imag=0):
        object.__setattr__(self, "real", Fraction(real))
        object.__setattr__(self, "imag", Fraction(imag))

    def __setattr__(self, name, value):
        raise AttributeError("ComplexRational is immutable")

    def conjugate(self) -> "ComplexRational":
        return ComplexRational(self.real, -self.imag)

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return ComplexRational(self.real + other.real, self.imag + other.imag)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return ComplexRational(self.real - other.real, self.imag - other.imag)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return ComplexRational(
            self.real * other.real - self.imag * other.imag,
            self.real * other.imag + self.imag * other.real,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        denom = other.real * other.real + other.imag * other.imag
        num = self * other.conjugate()
        return ComplexRational(num.real / denom, num.imag / denom)

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __neg__(self):
        return ComplexRational(-self.real, -self.imag)

    def __pos__(self):
        return self

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.real == other.real and self.imag == other.imag

    def __hash__(self):
        return hash((self.real, self.imag))

    def __bool__(self):
        return bool(self.real) or bool(self.imag)

    def __abs__(self) -> float:
        return math.hypot(float(self.real), float(self.imag))

    def __complex__(self) -> complex:
        return complex(float(self.real), float(self.imag))

    def __repr__(self):
        return f"ComplexRational({self.real!r}, {self.imag!r})"


def _coerce(value):
    if isinstance(value, ComplexRational):
        return value
    if isinstance(value, numbers.Rational):
        return ComplexRational(Fraction(value))
    return NotImplemented


ONE = ComplexRational(1)
MINUS_ONE = ComplexRational(-1)
I = ComplexRational(0, 1)
MINUS_I = ComplexRational(0, -1)

#: the exact fourth roots of unity, closed under conjugation
FOURTH_ROOTS = (ONE, I, MINUS_ONE, MINUS_I)


def pythagorean_phase(p: int, q: int) -> ComplexRational:
    """The exact unit ((p^2 - q^2) + 2pq i) / (p^2 + q^2) for integers p, q."""
    if p == 0 and q == 0:
        raise ValueError("p and q must not both be zero")
    denom = p * p + q * q
    return ComplexRational(Fraction(p * p - q * q, denom), Fraction(2 * p * q, denom))
