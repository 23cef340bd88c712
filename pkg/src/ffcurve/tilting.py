"""The tilt of the coherent heart at slope 0 and its slope theory.

Objects of the tilted heart split as (negative-slope part shifted into
degree -1, non-negative part in degree 0) because Ext^2 vanishes on the
curve. The tilted degree and rank are deg- = -rank, rg- = degree, and the
tilted slope mu- = -rank/degree, with slope-0 bundles sitting at mu- =
minus infinity. Tilting once more at mu- = 0 recovers the coherent heart;
the double-tilt functor just unshifts.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple

from .sheaves import (
    BCInvariant,
    CoherentSheaf,
    TiltedObject,
    direct_sum,
    ext1,
    hom,
)

#: Sentinel for the tilted slope of slope-0 bundles; compares below every Fraction.
MU_MINUS_INFINITY = float("-inf")


def split_torsion_pair(F: CoherentSheaf) -> Tuple[CoherentSheaf, CoherentSheaf]:
    """Split F = below + above with slopes(below) < 0 <= slopes(above).

    Torsion counts as slope infinity and lands above. There are no maps from
    the above part into the below part, which is what makes the pair a
    torsion pair.
    """
    below = [(s, m) for s, m in F.bundle if s.d < 0]
    above = [(s, m) for s, m in F.bundle if s.d >= 0]
    return (
        CoherentSheaf(tuple(below), ()),
        CoherentSheaf(tuple(above), F.torsion),
    )


def tilt(F: CoherentSheaf) -> TiltedObject:
    """Place the negative-slope part in degree -1 and the rest in degree 0."""
    below, above = split_torsion_pair(F)
    return TiltedObject(below, above)


def double_tilt(A: TiltedObject) -> CoherentSheaf:
    """Tilt the tilted heart once more and read the result as a sheaf.

    On split objects the second tilt composed with the shift equivalence
    simply forgets which part was shifted.
    """
    return direct_sum(A.neg, A.pos)


def tilted_invariants(A: TiltedObject):
    """(deg-, rg-, mu-) of a tilted object.

    With (r, d) the rank and degree of the class [pos] - [neg]:
    deg- = -r, rg- = d, mu- = -r/d; mu- is minus infinity when d = 0.
    """
    if A.is_zero:
        raise ValueError("the zero object has no tilted slope")
    a, b = A.k0_class()
    r, d = a + b, b
    if d == 0:
        return -r, d, MU_MINUS_INFINITY
    return -r, d, Fraction(-r, d)


def _atom_mu(kind: str, slope=None) -> object:
    if kind == "shifted":
        return Fraction(slope.h, -slope.d)
    if kind == "torsion":
        return Fraction(0)
    if slope.d == 0:
        return MU_MINUS_INFINITY
    return Fraction(-slope.h, slope.d)


def hn_minus(A: TiltedObject) -> List[Tuple[object, TiltedObject]]:
    """HN pieces for the tilted slope, strictly decreasing.

    Order of atom families: shifted negative stables (mu- = -1/slope > 0),
    torsion (mu- = 0), positive stables (mu- = -h/d < 0), slope-0 bundles
    (mu- = minus infinity).
    """
    if A.is_zero:
        raise ValueError("the zero object has no HN filtration")
    zero = CoherentSheaf.zero()
    pieces: List[Tuple[object, TiltedObject]] = []
    for s, m in A.neg.bundle:
        pieces.append((_atom_mu("shifted", s), TiltedObject(CoherentSheaf(((s, m),), ()), zero)))
    if A.pos.torsion:
        pieces.append((Fraction(0), TiltedObject(zero, CoherentSheaf((), A.pos.torsion))))
    for s, m in A.pos.bundle:
        pieces.append((_atom_mu("plain", s), TiltedObject(zero, CoherentSheaf(((s, m),), ()))))
    pieces.sort(key=lambda p: p[0], reverse=True)
    return pieces


@dataclass(frozen=True)
class HomMatrix:
    """2x2 block of hom invariants plus their sum."""

    entries: Tuple[Tuple[BCInvariant, BCInvariant], Tuple[BCInvariant, BCInvariant]]

    @property
    def total(self) -> BCInvariant:
        out = BCInvariant(0, 0)
        for row in self.entries:
            for e in row:
                out = out + e
        return out

    def __str__(self) -> str:
        rows = [
            "[%s  %s]" % (row[0], row[1]) for row in self.entries
        ]
        return "\n".join(rows) + "\ntotal %s" % self.total


def hom_tilted(A: TiltedObject, B: TiltedObject) -> HomMatrix:
    """Hom matrix in the tilted heart.

    Rows split the source (neg, pos), columns the target; the off-diagonal
    hom from the source pos part into the target neg part is an Ext^1 of
    sheaves, and the other corner vanishes.
    """
    return HomMatrix(
        (
            (hom(A.neg, B.neg), ext1(A.pos, B.neg)),
            (BCInvariant(0, 0), hom(A.pos, B.pos)),
        )
    )


def ext1_tilted(A: TiltedObject, B: TiltedObject) -> BCInvariant:
    """Ext^1 in the tilted heart, expanded over the split parts."""
    return ext1(A.neg, B.neg) + hom(A.neg, B.pos) + ext1(A.pos, B.pos)


def cohx_hom_matrix(F: CoherentSheaf, G: CoherentSheaf) -> HomMatrix:
    """Hom matrix in the coherent heart for the slope-sign splits of F, G."""
    Fn, Fp = split_torsion_pair(F)
    Gn, Gp = split_torsion_pair(G)
    return HomMatrix(
        (
            (hom(Fn, Gn), BCInvariant(0, 0)),
            (hom(Fn, Gp), hom(Fp, Gp)),
        )
    )


def second_tilt_hom_matrix(A: TiltedObject, B: TiltedObject) -> HomMatrix:
    """Hom matrix after tilting the tilted heart again at mu- = 0.

    The mu- <= 0 part of a tilted object is its degree-0 part, the mu- > 0
    part is the shifted negative bundle; all entries reduce to plain sheaf
    homs, and the total agrees with the coherent-heart total across the
    double tilt.
    """
    return HomMatrix(
        (
            (hom(A.pos, B.pos), hom(A.neg, B.pos)),
            (BCInvariant(0, 0), hom(A.neg, B.neg)),
        )
    )
