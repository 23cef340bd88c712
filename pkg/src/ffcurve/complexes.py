"""Bounded complexes of free modules over a Euclidean coefficient domain.

Cohomology is read off Smith forms (kernel from V past the rank, image in
kernel coordinates, quotient by invariant factors). The shift functor
eta_{delta,f} re-presents the submodule terms in explicit free bases with
all basis changes tracked, so induced differentials and induced chain
maps stay over the domain with exact divisions only.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

from .exactalg import (
    DOMAINS,
    CoeffDomain,
    Mat,
    identity,
    mat_mul,
    mat_neg,
    mat_from_json,
    mat_to_json,
    smith_normal_form,
    zeros,
)


@dataclass(frozen=True)
class BoundedComplex:
    """Terms are free modules of the given ranks, starting at degree lowest.

    differentials[i] maps term i to term i+1 and has shape
    ranks[i+1] x ranks[i]; consecutive differentials must compose to zero.
    """

    domain: CoeffDomain
    lowest: int
    ranks: Tuple[int, ...]
    differentials: Tuple[Mat, ...]

    def __post_init__(self):
        if not self.ranks:
            raise ValueError("a bounded complex needs at least one term")
        if len(self.differentials) != len(self.ranks) - 1:
            raise ValueError("expected %d differentials" % (len(self.ranks) - 1))
        for i, d in enumerate(self.differentials):
            if (d.rows, d.cols) != (self.ranks[i + 1], self.ranks[i]):
                raise ValueError("differential %d has the wrong shape" % i)
        dom = self.domain
        for i in range(len(self.differentials) - 1):
            prod = mat_mul(dom, self.differentials[i + 1], self.differentials[i])
            if any(not dom.is_zero(x) for row in prod.data for x in row):
                raise ValueError("differentials do not compose to zero at %d" % i)

    @property
    def highest(self) -> int:
        return self.lowest + len(self.ranks) - 1

    def degrees(self) -> range:
        return range(self.lowest, self.highest + 1)

    def rank_at(self, degree: int) -> int:
        if self.lowest <= degree <= self.highest:
            return self.ranks[degree - self.lowest]
        return 0

    def differential_at(self, degree: int) -> Mat:
        """Outgoing differential at the degree, zero off the support."""
        i = degree - self.lowest
        if 0 <= i < len(self.differentials):
            return self.differentials[i]
        return zeros(self.domain, self.rank_at(degree + 1), self.rank_at(degree))


def complex_to_json(C: BoundedComplex) -> dict:
    return {
        "domain": C.domain.name,
        "lowest": C.lowest,
        "ranks": list(C.ranks),
        "differentials": [mat_to_json(C.domain, d) for d in C.differentials],
    }


def complex_from_json(payload: dict) -> BoundedComplex:
    dom = DOMAINS[payload["domain"]]
    return BoundedComplex(
        dom,
        int(payload["lowest"]),
        tuple(int(r) for r in payload["ranks"]),
        tuple(mat_from_json(dom, d) for d in payload["differentials"]),
    )


def pad_complex(C: BoundedComplex, lo: int, hi: int) -> BoundedComplex:
    """Extend the support window with zero terms."""
    if lo > C.lowest or hi < C.highest:
        raise ValueError("padding window must contain the support")
    ranks = tuple(C.rank_at(j) for j in range(lo, hi + 1))
    diffs = tuple(C.differential_at(j) for j in range(lo, hi))
    return BoundedComplex(C.domain, lo, ranks, diffs)


def direct_sum_complexes(C: BoundedComplex, D: BoundedComplex) -> BoundedComplex:
    if C.domain is not D.domain:
        raise ValueError("direct sum needs a common coefficient domain")
    lo, hi = min(C.lowest, D.lowest), max(C.highest, D.highest)
    A, B = pad_complex(C, lo, hi), pad_complex(D, lo, hi)
    dom = C.domain
    ranks = tuple(a + b for a, b in zip(A.ranks, B.ranks))
    diffs = []
    for da, db in zip(A.differentials, B.differentials):
        rows = []
        for i in range(da.rows):
            rows.append(da.data[i] + tuple(dom.zero for _ in range(db.cols)))
        for i in range(db.rows):
            rows.append(tuple(dom.zero for _ in range(da.cols)) + db.data[i])
        diffs.append(Mat(da.rows + db.rows, da.cols + db.cols, tuple(rows)))
    return BoundedComplex(dom, lo, ranks, tuple(diffs))


# ------------------------------------------------------------------ cohomology


def cohomology(C: BoundedComplex) -> Dict[int, Tuple[int, Tuple]]:
    """Per-degree (free rank, invariant factors) of H^j = Ker d_j / Im d_{j-1}."""
    dom = C.domain
    out: Dict[int, Tuple[int, Tuple]] = {}
    for j in C.degrees():
        d_out = C.differential_at(j)
        d_in = C.differential_at(j - 1)
        f = smith_normal_form(dom, d_out)
        r = f.rank
        k = d_out.cols - r
        # image of d_{j-1} in kernel coordinates: rows past the rank of Vinv @ d_in
        coords = mat_mul(dom, f.Vinv, d_in)
        for i in range(r):
            # d o d = 0 means the image lives inside the kernel
            assert all(dom.is_zero(x) for x in coords.data[i])
        M = Mat(k, d_in.cols, coords.data[r:])
        g = smith_normal_form(dom, M)
        factors = tuple(s for s in g.invariant_factors if s != dom.one)
        out[j] = (k - g.rank, factors)
    return out


def is_acyclic(C: BoundedComplex) -> bool:
    return all(v == (0, ()) for v in cohomology(C).values())


# ---------------------------------------------------------------------- Koszul


def koszul(dom: CoeffDomain, elements: Sequence) -> BoundedComplex:
    """Koszul complex on the given elements, degrees 0..n.

    Basis of term m is the sorted m-subsets; inserting h as the m-th
    element of the new subset carries the sign (-1)^(m-1).
    """
    gs = [dom.convert(g) for g in elements]
    n = len(gs)
    if n < 1:
        raise ValueError("koszul needs at least one element")
    levels = [list(combinations(range(n), m)) for m in range(n + 1)]
    index = [{S: i for i, S in enumerate(level)} for level in levels]
    ranks = tuple(comb(n, m) for m in range(n + 1))
    diffs = []
    for m in range(n):
        rows = [[dom.zero] * ranks[m] for _ in range(ranks[m + 1])]
        for col, S in enumerate(levels[m]):
            for h in range(n):
                if h in S:
                    continue
                pos = sum(1 for s in S if s < h)
                target = tuple(sorted(S + (h,)))
                entry = gs[h] if pos % 2 == 0 else -gs[h]
                row = index[m + 1][target]
                rows[row][col] = rows[row][col] + entry
        diffs.append(Mat(ranks[m + 1], ranks[m], tuple(tuple(r) for r in rows)))
    return BoundedComplex(dom, 0, ranks, tuple(diffs))


# -------------------------------------------------------------------- decalage


@dataclass(frozen=True)
class ShiftProfile:
    """delta tabulated on [lo, lo+len-1], clamped constant outside."""

    lo: int
    values: Tuple[int, ...]

    def __post_init__(self):
        if not self.values:
            raise ValueError("shift profile needs at least one value")
        if any(v < 0 for v in self.values):
            raise ValueError("shift values must be non-negative")

    def __call__(self, j: int) -> int:
        i = min(max(j - self.lo, 0), len(self.values) - 1)
        return self.values[i]

    @property
    def is_nondecreasing(self) -> bool:
        return all(a <= b for a, b in zip(self.values, self.values[1:]))

    @staticmethod
    def constant(c: int) -> "ShiftProfile":
        return ShiftProfile(0, (c,))

    @staticmethod
    def identity(lo: int, hi: int) -> "ShiftProfile":
        if lo < 0:
            raise ValueError("identity profile needs lo >= 0 to stay in N")
        return ShiftProfile(lo, tuple(range(lo, hi + 1)))


ZERO_PROFILE = ShiftProfile.constant(0)


def _exact_div(dom: CoeffDomain, a, b):
    if b == dom.one:
        return a
    q, r = dom.divmod(a, b)
    if not dom.is_zero(r):
        raise ArithmeticError("inexact division while re-presenting a term")
    return q


class _EtaTerm:
    """Basis data for one term of eta: columns of B span the submodule."""

    __slots__ = ("B", "Vinv", "tvec")

    def __init__(self, B: Mat, Vinv: Mat, tvec: Tuple):
        self.B = B
        self.Vinv = Vinv
        self.tvec = tvec

    def coordinates(self, dom: CoeffDomain, W: Mat) -> Mat:
        """Solve B X = W exactly (columns of W lie in the span)."""
        raw = mat_mul(dom, self.Vinv, W)
        data = tuple(
            tuple(_exact_div(dom, x, self.tvec[i]) for x in raw.data[i])
            for i in range(raw.rows)
        )
        return Mat(raw.rows, raw.cols, data)


def _eta_terms(C: BoundedComplex, f, delta: ShiftProfile) -> List[_EtaTerm]:
    dom = C.domain
    terms: List[_EtaTerm] = []
    for j in C.degrees():
        n = C.rank_at(j)
        c = max(0, delta(j + 1) - delta(j))
        if c == 0:
            terms.append(_EtaTerm(identity(dom, n), identity(dom, n), (dom.one,) * n))
            continue
        smith = smith_normal_form(dom, C.differential_at(j))
        fpow = dom.pow(f, c)
        tvec = []
        for i in range(n):
            if i < smith.rank:
                g = dom.gcd(smith.invariant_factors[i], fpow)
                tvec.append(_exact_div(dom, fpow, g))
            else:
                tvec.append(dom.one)
        B = Mat(
            n,
            n,
            tuple(
                tuple(smith.V.data[i][k] * tvec[k] for k in range(n))
                for i in range(n)
            ),
        )
        terms.append(_EtaTerm(B, smith.Vinv, tuple(tvec)))
    return terms


def decalage(C: BoundedComplex, f, delta: ShiftProfile) -> BoundedComplex:
    """The shifted complex: term j is {x in f^d(j) K^j : dx in f^d(j+1) K^j+1}.

    Ranks are unchanged (each term is a finite-index free submodule);
    the differentials are rewritten in the new bases.
    """
    dom = C.domain
    f = dom.convert(f)
    if dom.is_zero(f):
        raise ValueError("decalage needs a non-zero-divisor f")
    terms = _eta_terms(C, f, delta)
    diffs = []
    for i, j in enumerate(range(C.lowest, C.highest)):
        c = max(0, delta(j + 1) - delta(j))
        e = max(0, delta(j) - delta(j + 1))
        W = mat_mul(dom, C.differentials[i], terms[i].B)
        fc, fe = dom.pow(f, c), dom.pow(f, e)
        data = tuple(
            tuple(_exact_div(dom, x, fc) * fe for x in row) for row in W.data
        )
        diffs.append(terms[i + 1].coordinates(dom, Mat(W.rows, W.cols, data)))
    return BoundedComplex(dom, C.lowest, C.ranks, tuple(diffs))


# ------------------------------------------------------------------ chain maps


@dataclass(frozen=True)
class ChainMap:
    """Degreewise map between complexes on the same support window."""

    source: BoundedComplex
    target: BoundedComplex
    components: Tuple[Mat, ...]

    def __post_init__(self):
        if self.source.domain is not self.target.domain:
            raise ValueError("chain map needs a common coefficient domain")
        if (self.source.lowest, len(self.source.ranks)) != (
            self.target.lowest,
            len(self.target.ranks),
        ):
            raise ValueError("chain map needs matching support; pad first")
        if len(self.components) != len(self.source.ranks):
            raise ValueError("one component per degree expected")
        dom = self.source.domain
        for i, comp in enumerate(self.components):
            if (comp.rows, comp.cols) != (self.target.ranks[i], self.source.ranks[i]):
                raise ValueError("component %d has the wrong shape" % i)
        for i in range(len(self.components) - 1):
            lhs = mat_mul(dom, self.target.differentials[i], self.components[i])
            rhs = mat_mul(dom, self.components[i + 1], self.source.differentials[i])
            if lhs != rhs:
                raise ValueError("squares do not commute at index %d" % i)


def identity_chain_map(C: BoundedComplex) -> ChainMap:
    return ChainMap(C, C, tuple(identity(C.domain, r) for r in C.ranks))


def cone(phi: ChainMap) -> BoundedComplex:
    """Mapping cone: term j is source^{j+1} + target^j."""
    src, tgt = phi.source, phi.target
    dom = src.domain
    N = len(src.ranks)
    lo = src.lowest - 1

    def a(i):  # source part of cone index i
        return src.ranks[i] if i < N else 0

    def b(i):  # target part
        return tgt.ranks[i - 1] if i >= 1 else 0

    ranks = tuple(a(i) + b(i) for i in range(N + 1))
    diffs = []
    for i in range(N):
        top_left = (
            mat_neg(src.differentials[i]) if i < N - 1 else zeros(dom, 0, a(i))
        )
        bottom_left = phi.components[i]
        bottom_right = (
            tgt.differentials[i - 1] if i >= 1 else zeros(dom, tgt.ranks[i], 0)
        )
        rows = []
        for r in range(top_left.rows):
            rows.append(top_left.data[r] + tuple(dom.zero for _ in range(b(i))))
        for r in range(bottom_left.rows):
            rows.append(bottom_left.data[r] + bottom_right.data[r])
        diffs.append(Mat(ranks[i + 1], ranks[i], tuple(rows)))
    return BoundedComplex(dom, lo, ranks, tuple(diffs))


def is_quasi_iso(phi: ChainMap) -> bool:
    """True iff the mapping cone is acyclic."""
    return is_acyclic(cone(phi))


def decalage_map(phi: ChainMap, f, delta: ShiftProfile) -> ChainMap:
    """Induced map between the shifted complexes, in the tracked bases."""
    dom = phi.source.domain
    f = dom.convert(f)
    if dom.is_zero(f):
        raise ValueError("decalage needs a non-zero-divisor f")
    src_terms = _eta_terms(phi.source, f, delta)
    tgt_terms = _eta_terms(phi.target, f, delta)
    comps = []
    for i in range(len(phi.components)):
        W = mat_mul(dom, phi.components[i], src_terms[i].B)
        comps.append(tgt_terms[i].coordinates(dom, W))
    return ChainMap(
        decalage(phi.source, f, delta),
        decalage(phi.target, f, delta),
        tuple(comps),
    )
