"""Normal forms and invariant-level homological algebra for coherent sheaves.

A coherent sheaf is stored in slope normal form: a bundle part given by a
multiset of reduced slopes (the classification theorem makes every bundle a
direct sum of stables O(d/h)) and a torsion part given by point labels with
non-increasing invariant-factor lists. All cohomological data lives at the
level of (dimension, height) pairs.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, List, NamedTuple, Optional, Sequence, Tuple

from .slopes import INFINITY, Slope, hom_slope_data, reduce


class BCInvariant(NamedTuple):
    """Additive (dimension, height) pair."""

    dim: int
    ht: int

    def __add__(self, other):
        return BCInvariant(self.dim + other[0], self.ht + other[1])

    def __sub__(self, other):
        return BCInvariant(self.dim - other[0], self.ht - other[1])

    def __neg__(self):
        return BCInvariant(-self.dim, -self.ht)

    def scaled(self, n: int) -> "BCInvariant":
        return BCInvariant(n * self.dim, n * self.ht)

    def __str__(self) -> str:
        return "(%d, %d)" % (self.dim, self.ht)


ZERO_INV = BCInvariant(0, 0)

BundleAtom = Tuple[Slope, int]
TorsionAtom = Tuple[str, Tuple[int, ...]]


def _canon_label(label: str) -> str:
    return "inf" if label in ("∞", "inf") else str(label)


@dataclass(frozen=True)
class CoherentSheaf:
    """Slope normal form: bundle atoms (slope strictly decreasing) + torsion."""

    bundle: Tuple[BundleAtom, ...] = ()
    torsion: Tuple[TorsionAtom, ...] = ()

    @staticmethod
    def zero() -> "CoherentSheaf":
        return CoherentSheaf((), ())

    @property
    def is_zero(self) -> bool:
        return not self.bundle and not self.torsion

    @property
    def rank(self) -> int:
        return sum(s.h * m for s, m in self.bundle)

    @property
    def degree(self) -> int:
        return sum(s.d * m for s, m in self.bundle) + sum(
            sum(fs) for _, fs in self.torsion
        )

    @property
    def torsion_length(self) -> int:
        return sum(sum(fs) for _, fs in self.torsion)

    def bundle_part(self) -> "CoherentSheaf":
        return CoherentSheaf(self.bundle, ())

    def torsion_part(self) -> "CoherentSheaf":
        return CoherentSheaf((), self.torsion)

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for s, m in self.bundle:
            atom = "O" if (s.d, s.h) == (0, 1) else "O(%s)" % s
            parts.append(atom if m == 1 else "%s^%d" % (atom, m))
        for label, fs in self.torsion:
            parts.append("T(%s,[%s])" % (label, ",".join(str(k) for k in fs)))
        return " + ".join(parts)


def normalize(
    bundle: Iterable[Tuple[object, int]], torsion: Iterable[Tuple[str, Sequence[int]]]
) -> CoherentSheaf:
    """Canonical form: slopes merged and sorted descending, factors sorted.

    Bundle entries are (Slope | (d, h), multiplicity >= 1); torsion entries
    are (label, non-empty positive factors). Same-label torsion merges.
    """
    by_slope = {}
    for raw, mult in bundle:
        s = raw if isinstance(raw, Slope) else reduce(*raw)
        if not s.is_finite:
            raise ValueError("bundle atoms need finite slopes; torsion is separate")
        if mult < 1:
            raise ValueError("multiplicity must be >= 1, got %r" % (mult,))
        by_slope[s] = by_slope.get(s, 0) + mult
    by_label = {}
    for label, factors in torsion:
        fs = tuple(int(k) for k in factors)
        if not fs:
            raise ValueError("torsion factor list must be non-empty")
        if any(k < 1 for k in fs):
            raise ValueError("torsion factors must be positive, got %r" % (factors,))
        by_label.setdefault(_canon_label(label), []).extend(fs)
    b = tuple(sorted(by_slope.items(), key=lambda it: it[0], reverse=True))
    t = tuple(
        (label, tuple(sorted(fs, reverse=True)))
        for label, fs in sorted(by_label.items())
    )
    return CoherentSheaf(b, t)


def O(d: int, h: int = 1, mult: int = 1) -> CoherentSheaf:
    """The semistable bundle O(d/h)^mult."""
    return normalize([(reduce(d, h), mult)], [])


def T(factors: Sequence[int], label: str = "inf") -> CoherentSheaf:
    """Torsion sheaf at one point with the given invariant factors."""
    return normalize([], [(label, tuple(factors))])


def direct_sum(*sheaves: CoherentSheaf) -> CoherentSheaf:
    bundle: List[Tuple[Slope, int]] = []
    torsion: List[Tuple[str, Tuple[int, ...]]] = []
    for F in sheaves:
        bundle.extend(F.bundle)
        torsion.extend(F.torsion)
    return normalize(bundle, torsion)


def numeric_invariants(F: CoherentSheaf):
    """(rank, degree, slope). Slope is INFINITY for pure torsion and None for 0."""
    r, d = F.rank, F.degree
    if F.is_zero:
        return r, d, None
    if r == 0:
        return r, d, INFINITY
    return r, d, reduce(d, r)


def hn(F: CoherentSheaf) -> List[Tuple[Slope, CoherentSheaf]]:
    """Harder-Narasimhan pieces with strictly decreasing slopes.

    Torsion (slope infinity) comes first; the filtration splits, so each
    piece is returned as a summand.
    """
    if F.is_zero:
        raise ValueError("the zero sheaf has no HN filtration")
    pieces: List[Tuple[Slope, CoherentSheaf]] = []
    if F.torsion:
        pieces.append((INFINITY, CoherentSheaf((), F.torsion)))
    for s, m in F.bundle:
        pieces.append((s, CoherentSheaf(((s, m),), ())))
    return pieces


# ------------------------------------------------------------------ cohomology


def _stable_h0(s: Slope) -> BCInvariant:
    # slope > 0: (d, h); slope 0: (0, 1); slope < 0: 0
    if s.d > 0:
        return BCInvariant(s.d, s.h)
    if s.d == 0:
        return BCInvariant(0, 1)
    return ZERO_INV


def _stable_h1(s: Slope) -> BCInvariant:
    # vanishes for slope >= 0; (-d, -h) below
    if s.d >= 0:
        return ZERO_INV
    return BCInvariant(-s.d, -s.h)


def h0(F: CoherentSheaf) -> BCInvariant:
    total = ZERO_INV
    for s, m in F.bundle:
        total = total + _stable_h0(s).scaled(m)
    total = total + BCInvariant(F.torsion_length, 0)
    return total


def h1(F: CoherentSheaf) -> BCInvariant:
    total = ZERO_INV
    for s, m in F.bundle:
        total = total + _stable_h1(s).scaled(m)
    return total


def chi(F: CoherentSheaf) -> BCInvariant:
    out = h0(F) - h1(F)
    # Riemann-Roch shape: chi = (degree, rank)
    assert out == BCInvariant(F.degree, F.rank)
    return out


# --------------------------------------------------------------------- hom/ext


def hom(F: CoherentSheaf, G: CoherentSheaf) -> BCInvariant:
    """Hom-space invariant, bilinear over the normal forms."""
    total = ZERO_INV
    for lam, a in F.bundle:
        for mu, b in G.bundle:
            nu, m = hom_slope_data(lam, mu)
            total = total + _stable_h0(nu).scaled(a * b * m)
        # bundle into torsion: rank * length sections of the stalk
        total = total + BCInvariant(lam.h * a * G.torsion_length, 0)
    total = total + BCInvariant(_torsion_pairing(F, G), 0)
    return total


def ext1(F: CoherentSheaf, G: CoherentSheaf) -> BCInvariant:
    total = ZERO_INV
    for lam, a in F.bundle:
        for mu, b in G.bundle:
            nu, m = hom_slope_data(lam, mu)
            total = total + _stable_h1(nu).scaled(a * b * m)
    # torsion against bundles: dual pairing, length * rank
    t_len = F.torsion_length
    total = total + BCInvariant(t_len * G.rank, 0)
    total = total + BCInvariant(_torsion_pairing(F, G), 0)
    return total


def ext2(F: CoherentSheaf, G: CoherentSheaf) -> BCInvariant:
    # the curve is regular of dimension 1
    return ZERO_INV


def _torsion_pairing(F: CoherentSheaf, G: CoherentSheaf) -> int:
    """Same-point pairing: sum of min(a, b) over factor pairs."""
    gt = dict(G.torsion)
    total = 0
    for label, fs in F.torsion:
        other = gt.get(label)
        if not other:
            continue
        total += sum(min(a, b) for a in fs for b in other)
    return total


# -------------------------------------------------------------------------- K0


def k0_class(F: CoherentSheaf) -> Tuple[int, int]:
    """Class a*[O] + b*[O(1)], solved from rank = a + b, degree = b."""
    a = b = 0
    for s, m in F.bundle:
        a += m * (s.h - s.d)
        b += m * s.d
    for _, fs in F.torsion:
        k = sum(fs)
        a -= k
        b += k
    return a, b


# --------------------------------------------------------------- tilted values


@dataclass(frozen=True)
class TiltedObject:
    """Object of the tilted heart: (neg placed in degree -1, pos in degree 0).

    neg carries only bundle atoms of slope < 0; pos carries slopes >= 0
    and all torsion.
    """

    neg: CoherentSheaf
    pos: CoherentSheaf

    def __post_init__(self):
        if self.neg.torsion:
            raise ValueError("the degree -1 part cannot contain torsion")
        if any(s.d >= 0 for s, _ in self.neg.bundle):
            raise ValueError("degree -1 slopes must be < 0")
        if any(s.d < 0 for s, _ in self.pos.bundle):
            raise ValueError("degree 0 slopes must be >= 0")

    @property
    def is_zero(self) -> bool:
        return self.neg.is_zero and self.pos.is_zero

    def k0_class(self) -> Tuple[int, int]:
        an, bn = k0_class(self.neg)
        ap, bp = k0_class(self.pos)
        return ap - an, bp - bn

    @property
    def rank(self) -> int:
        a, b = self.k0_class()
        return a + b

    @property
    def degree(self) -> int:
        return self.k0_class()[1]

    def __str__(self) -> str:
        if self.pos.is_zero and not self.neg.is_zero:
            parts = []
            for s, m in self.neg.bundle:
                atom = "O(%s)" % s
                if m > 1:
                    atom += "^%d" % m
                parts.append(atom + "[1]")
            return " + ".join(parts)
        return "tilted(%s; %s)" % (self.neg, self.pos)


def as_tilted(x) -> TiltedObject:
    """Wrap a plain sheaf in degree 0; pass tilted objects through."""
    if isinstance(x, TiltedObject):
        return x
    below, above = [], []
    for s, m in x.bundle:
        (below if s.d < 0 else above).append((s, m))
    if below:
        raise ValueError(
            "sheaf has negative slopes; tilt it explicitly to place them"
        )
    return TiltedObject(CoherentSheaf.zero(), x)


# ------------------------------------------------------------------- sequences


@dataclass(frozen=True)
class ShortExactSequence:
    """A certified short exact sequence; entries live in the tilted heart."""

    left: TiltedObject
    middle: TiltedObject
    right: TiltedObject
    tag: str = "composite"

    def validate(self) -> "ShortExactSequence":
        lm, rm, mm = self.left.k0_class(), self.right.k0_class(), self.middle.k0_class()
        if mm != (lm[0] + rm[0], lm[1] + rm[1]):
            raise ValueError(
                "additivity fails for %s: %s != %s + %s" % (self.tag, mm, lm, rm)
            )
        return self

    def __str__(self) -> str:
        return "0 -> %s -> %s -> %s -> 0  [%s]" % (
            self.left,
            self.middle,
            self.right,
            self.tag,
        )


def _plain(F: CoherentSheaf) -> TiltedObject:
    return TiltedObject(CoherentSheaf.zero(), F)


def _shifted(F: CoherentSheaf) -> TiltedObject:
    return TiltedObject(F, CoherentSheaf.zero())


def se1(d: int) -> ShortExactSequence:
    """0 -> O -> O(1) + O(d-1) -> O(d) -> 0 for d > 1."""
    if d <= 1:
        raise ValueError("se1 needs an integer d > 1")
    return ShortExactSequence(
        _plain(O(0)), _plain(direct_sum(O(1), O(d - 1))), _plain(O(d)), "se1"
    ).validate()


def se2(k: int) -> ShortExactSequence:
    """0 -> O -> O(k) -> T(inf,[k]) -> 0 for k > 0."""
    if k <= 0:
        raise ValueError("se2 needs an integer k > 0")
    return ShortExactSequence(
        _plain(O(0)), _plain(O(k)), _plain(T([k])), "se2"
    ).validate()


def se3(k: int) -> ShortExactSequence:
    """0 -> O -> T(inf,[k]) -> O(-k)[1] -> 0 for k > 0."""
    if k <= 0:
        raise ValueError("se3 needs an integer k > 0")
    return ShortExactSequence(
        _plain(O(0)), _plain(T([k])), _shifted(O(-k)), "se3"
    ).validate()


def pushforward_from_level(d: int, h: int) -> CoherentSheaf:
    """Pushforward of the degree-d line bundle from the level-h cover.

    Comes out as O(d'/h')^gcd(d,h) with d/h = d'/h' reduced; rank h and
    degree d are preserved.
    """
    if h < 1:
        raise ValueError("level must be a positive integer")
    g = gcd(abs(d), h) if d != 0 else h
    return O(d // g if d else 0, h // g, mult=g)
