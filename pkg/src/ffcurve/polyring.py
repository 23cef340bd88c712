"""Univariate polynomials over exact rationals.

This is the coefficient ring Q[t] used by the homological engine; the
variable prints as t. Euclidean structure (divmod, gcd) is what the
Smith-form routines rely on.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, List, Tuple


class Poly:
    """Immutable element of Q[t]; coefficients stored low degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs: List[Fraction] = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: Tuple[Fraction, ...] = tuple(cs)

    @staticmethod
    def const(value) -> "Poly":
        return Poly((Fraction(value),))

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        # zero gets -1 so that degree(r) < degree(b) holds in divmod
        return len(self.coeffs) - 1

    @property
    def leading(self) -> Fraction:
        if self.is_zero:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def _coerced(self, other) -> "Poly":
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(other)
        return NotImplemented

    def __add__(self, other):
        q = self._coerced(other)
        if q is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, q.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        q = self._coerced(other)
        if q is NotImplemented:
            return NotImplemented
        return self + (-q)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        q = self._coerced(other)
        if q is NotImplemented:
            return NotImplemented
        if self.is_zero or q.is_zero:
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(q.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(q.coeffs):
                out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not polynomials")
        out = Poly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def __divmod__(self, other):
        b = self._coerced(other)
        if b is NotImplemented:
            return NotImplemented
        if b.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        q = [Fraction(0)] * max(0, len(self.coeffs) - len(b.coeffs) + 1)
        r = list(self.coeffs)
        lb = b.leading
        nb = len(b.coeffs)
        while len(r) >= nb:
            c = r[-1] / lb
            k = len(r) - nb
            q[k] = c
            for i, bc in enumerate(b.coeffs):
                r[k + i] -= c * bc
            while r and r[-1] == 0:
                r.pop()
        return Poly(q), Poly(r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self) -> "Poly":
        if self.is_zero:
            return self
        lead = self.leading
        return Poly(tuple(c / lead for c in self.coeffs))

    def __call__(self, x):
        value = Fraction(0) if isinstance(x, (int, Fraction)) else Poly()
        for c in reversed(self.coeffs):
            value = value * x + c
        return value

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("Poly", self.coeffs))

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for e in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[e]
            if c == 0:
                continue
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                head = "t" if e == 1 else "t^%d" % e
                body = head if mag == 1 else "%s*%s" % (mag, head)
            if not parts:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)

    def __repr__(self) -> str:
        return "Poly(%s)" % (self,)

    def to_json(self) -> list:
        return [str(c) for c in self.coeffs]

    @staticmethod
    def from_json(data) -> "Poly":
        return Poly(tuple(Fraction(c) for c in data))


T_VAR = Poly((0, 1))


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd; poly_gcd(0, 0) = 0."""
    while not b.is_zero:
        a, b = b, a % b
    return a.monic()
