"""Exact arithmetic in Q[j], where j = exp(2*pi*i/3) is a primitive cube root of unity.

Numbers are stored as pairs (x, y) of rationals meaning x + y*j, with the
reduction rule j**2 = -1 - j.  This gives exact lattice membership tests for
honeycomb geometry; nothing here ever rounds.
"""

from __future__ import annotations

import math
from fractions import Fraction

_SQRT3_2 = math.sqrt(3.0) / 2.0


class Eisenstein:
    """x + y*j with exact rational x, y."""

    __slots__ = ("x", "y")

    def __init__(self, x=0, y=0):
        self.x = Fraction(x)
        self.y = Fraction(y)

    @staticmethod
    def _coerce(other):
        if isinstance(other, Eisenstein):
            return other
        if isinstance(other, (int, Fraction)):
            return Eisenstein(other, 0)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Eisenstein(self.x + o.x, self.y + o.y)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Eisenstein(self.x - o.x, self.y - o.y)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return Eisenstein(-self.x, -self.y)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        # (x1 + y1 j)(x2 + y2 j), reduced with j^2 = -1 - j
        return Eisenstein(
            self.x * o.x - self.y * o.y,
            self.x * o.y + self.y * o.x - self.y * o.y,
        )

    __rmul__ = __mul__

    def conjugate(self):
        # complex conjugation sends j to j^2 = -1 - j
        return Eisenstein(self.x - self.y, -self.y)

    def norm2(self) -> Fraction:
        """Squared modulus x**2 - x*y + y**2, an exact rational."""
        return self.x * self.x - self.x * self.y + self.y * self.y

    def inverse(self):
        n = self.norm2()
        if n == 0:
            raise ZeroDivisionError("inverse of 0 in Q[j]")
        c = self.conjugate()
        return Eisenstein(c.x / n, c.y / n)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.x == o.x and self.y == o.y

    def __hash__(self):
        return hash((self.x, self.y))

    def __bool__(self):
        return self.x != 0 or self.y != 0

    def __complex__(self):
        # j = -1/2 + i sqrt(3)/2
        return complex(float(self.x) - float(self.y) / 2.0, float(self.y) * _SQRT3_2)

    def __repr__(self):
        return f"Eisenstein({self.x!r}, {self.y!r})"


ZERO = Eisenstein(0, 0)
ONE = Eisenstein(1, 0)
J = Eisenstein(0, 1)
J2 = Eisenstein(-1, -1)
MINUS_J = Eisenstein(0, -1)
MINUS_J2 = Eisenstein(1, 1)


def is_exact(value) -> bool:
    """True when value participates in exact Q[j] arithmetic."""
    return isinstance(value, (Eisenstein, int, Fraction))


def as_eisenstein(value) -> Eisenstein:
    if isinstance(value, Eisenstein):
        return value
    return Eisenstein(value, 0)
