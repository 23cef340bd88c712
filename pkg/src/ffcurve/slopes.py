"""Exact slope arithmetic for stable objects.

A slope is a reduced fraction d/h with h >= 1, or the formal value INFINITY
used for torsion. Finite slopes order by rational value and INFINITY is
greater than everything, so slope comparisons drive Harder-Narasimhan sorting
directly.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Tuple


class Slope:
    """A reduced slope d/h (h >= 1), or the distinguished infinite slope."""

    __slots__ = ("d", "h")

    def __init__(self, d: int, h: int = 1):
        if h < 1:
            raise ValueError("slope denominator must be a positive integer, got h=%r" % (h,))
        g = gcd(abs(d), h)
        if g > 1:
            d //= g
            h //= g
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "h", h)

    def __setattr__(self, name, value):  # immutability guard
        raise AttributeError("Slope is immutable")

    @property
    def is_finite(self) -> bool:
        return self.h != 0

    @property
    def value(self) -> Fraction:
        if self.h == 0:
            raise ValueError("the infinite slope has no rational value")
        return Fraction(self.d, self.h)

    def __eq__(self, other):
        if not isinstance(other, Slope):
            return NotImplemented
        return self.d == other.d and self.h == other.h

    def __hash__(self):
        return hash((self.d, self.h))

    def _key(self):
        # (0, value) for finite, (1, 0) for infinity: total order, inf maximal
        if self.h == 0:
            return (1, Fraction(0))
        return (0, Fraction(self.d, self.h))

    def __lt__(self, other):
        if not isinstance(other, Slope):
            return NotImplemented
        return self._key() < other._key()

    def __le__(self, other):
        if not isinstance(other, Slope):
            return NotImplemented
        return self._key() <= other._key()

    def __gt__(self, other):
        if not isinstance(other, Slope):
            return NotImplemented
        return self._key() > other._key()

    def __ge__(self, other):
        if not isinstance(other, Slope):
            return NotImplemented
        return self._key() >= other._key()

    def __str__(self) -> str:
        if self.h == 0:
            return "inf"
        if self.h == 1:
            return str(self.d)
        return "%d/%d" % (self.d, self.h)

    def __repr__(self) -> str:
        return "Slope(%s)" % self


def _make_infinite() -> Slope:
    s = object.__new__(Slope)
    object.__setattr__(s, "d", 1)
    object.__setattr__(s, "h", 0)
    return s


#: The slope of torsion sheaves; greater than every finite slope.
INFINITY = _make_infinite()


def reduce(d: int, h: int) -> Slope:
    """Return the canonical reduced slope d/h. Rejects h < 1."""
    return Slope(d, h)


def from_fraction(q: Fraction) -> Slope:
    return Slope(q.numerator, q.denominator)


def hom_slope_data(lam: Slope, mu: Slope) -> Tuple[Slope, int]:
    """Internal-Hom data of two stable slopes.

    Returns (nu, m) with nu = mu - lam reduced and m the multiplicity of
    O(nu) inside Hom(O(lam), O(mu)). The multiplicity is forced by rank
    additivity: h_lam * h_mu = m * h_nu, and satisfies the matching degree
    identity h_lam * h_mu * (mu - lam) = m * d_nu.
    """
    if not (lam.is_finite and mu.is_finite):
        raise ValueError("hom_slope_data is defined for finite slopes only")
    diff = mu.value - lam.value
    nu = from_fraction(diff)
    m, rem = divmod(lam.h * mu.h, nu.h)
    assert rem == 0, "rank identity failed: %d * %d not divisible by %d" % (lam.h, mu.h, nu.h)
    return nu, m
