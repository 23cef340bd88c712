"""Graded polynomial de Rham complexes of affine n-space, characteristic 0.

Pieces are indexed by (form degree i, coefficient degree e) and kept for
total weight w = i + e up to the truncation D; the exterior derivative
preserves w, so every stored weight strand is a complete complex. All
matrices have integer entries; ranks use fraction-free elimination.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, combinations_with_replacement
from math import comb
from typing import Dict, FrozenSet, List, Tuple

Form = Tuple[Tuple[int, ...], Tuple[int, ...]]  # (variable subset, exponents)
IntMat = Tuple[Tuple[int, ...], ...]


def _monomials(n: int, e: int) -> List[Tuple[int, ...]]:
    out = []
    for pick in combinations_with_replacement(range(n), e):
        expo = [0] * n
        for v in pick:
            expo[v] += 1
        out.append(tuple(expo))
    return out


def int_rank(rows: IntMat, ncols: int) -> int:
    """Rank over Q of an integer matrix, by Bareiss elimination."""
    A = [list(r) for r in rows]
    m = len(A)
    row, prev = 0, 1
    for col in range(ncols):
        piv = None
        for i in range(row, m):
            if A[i][col] != 0:
                piv = i
                break
        if piv is None:
            continue
        if piv != row:
            A[row], A[piv] = A[piv], A[row]
        p = A[row][col]
        for i in range(row + 1, m):
            f = A[i][col]
            ai, ar = A[i], A[row]
            for j in range(col, ncols):
                ai[j] = (p * ai[j] - f * ar[j]) // prev
        prev = p
        row += 1
        if row == m:
            break
    return row


@dataclass(frozen=True)
class GradedDeRham:
    """All graded pieces with i + e <= D and their differentials."""

    n: int
    D: int
    bases: Dict[Tuple[int, int], Tuple[Form, ...]]
    mats: Dict[Tuple[int, int], IntMat]

    def dimension(self, i: int, e: int) -> int:
        return len(self.bases.get((i, e), ()))

    def basis(self, i: int, e: int) -> Tuple[Form, ...]:
        return self.bases.get((i, e), ())

    def differential(self, i: int, e: int) -> IntMat:
        """Matrix of d on the (i, e) piece, into (i+1, e-1)."""
        return self.mats.get((i, e), ())

    def pieces(self, i: int) -> Dict[int, int]:
        return {
            e: len(fs) for (fi, e), fs in sorted(self.bases.items()) if fi == i
        }


def build(n: int, D: int) -> GradedDeRham:
    if n < 1 or D < 1:
        raise ValueError("need n >= 1 and D >= 1")
    bases: Dict[Tuple[int, int], Tuple[Form, ...]] = {}
    index: Dict[Tuple[int, int], Dict[Form, int]] = {}
    for i in range(0, n + 1):
        for e in range(0, D - i + 1):
            forms = [
                (S, expo)
                for S in combinations(range(n), i)
                for expo in _monomials(n, e)
            ]
            bases[(i, e)] = tuple(forms)
            index[(i, e)] = {f: k for k, f in enumerate(forms)}
    mats: Dict[Tuple[int, int], IntMat] = {}
    for (i, e), forms in bases.items():
        tgt = bases.get((i + 1, e - 1), ())
        rows = [[0] * len(forms) for _ in range(len(tgt))]
        for col, (S, expo) in enumerate(forms):
            for v in range(n):
                k = expo[v]
                if k == 0 or v in S:
                    continue
                sign = -1 if sum(1 for s in S if s < v) % 2 else 1
                new_expo = list(expo)
                new_expo[v] -= 1
                key = (tuple(sorted(S + (v,))), tuple(new_expo))
                rows[index[(i + 1, e - 1)][key]][col] += sign * k
        mats[(i, e)] = tuple(tuple(r) for r in rows)
    _check_dd(n, D, bases, mats)
    return GradedDeRham(n, D, bases, mats)


def _check_dd(n, D, bases, mats) -> None:
    # d(i+1, e-1) o d(i, e) must vanish entrywise on every stored piece
    for (i, e), M in mats.items():
        if not M:
            continue
        N = mats.get((i + 1, e - 1), ())
        if not N:
            continue
        cols = len(bases[(i, e)])
        for r in range(len(N)):
            for c in range(cols):
                acc = 0
                for k in range(len(M)):
                    if N[r][k]:
                        acc += N[r][k] * M[k][c]
                if acc != 0:
                    raise AssertionError("d o d nonzero at piece (%d, %d)" % (i, e))


def ga_cohomology(n: int, D: int) -> Dict[int, Dict[int, int]]:
    """Dimensions of the Omega^i graded pieces; the group cohomology is
    the whole module of forms, so no quotient is taken."""
    g = build(n, D)
    return {i: g.pieces(i) for i in range(0, n + 1)}


@dataclass(frozen=True)
class QpCohomology:
    """Kernel dimensions per weight strand, with the truncation frontier."""

    n: int
    D: int
    table: Dict[int, Dict[int, int]]
    boundary: FrozenSet[Tuple[int, int]]


def qp_cohomology(n: int, D: int) -> QpCohomology:
    """dim Ker(d_i) per weight w; exactness Ker = Im is asserted on every
    interior strand (w < D), and pieces on the w = D frontier are flagged.

    Degree 0 reports just the constants.
    """
    g = build(n, D)
    table: Dict[int, Dict[int, int]] = {0: {0: 1}}
    boundary = set()
    for i in range(1, n + 1):
        table[i] = {}
        for w in range(i, D + 1):
            e = w - i
            dim = g.dimension(i, e)
            rank_out = int_rank(g.differential(i, e), dim) if dim else 0
            ker = dim - rank_out
            src_dim = g.dimension(i - 1, e + 1)
            rank_in = int_rank(g.differential(i - 1, e + 1), src_dim) if src_dim else 0
            if w == D:
                boundary.add((i, w))
            elif ker != rank_in:
                raise AssertionError(
                    "exactness fails at i=%d weight %d: ker %d vs im %d"
                    % (i, w, ker, rank_in)
                )
            table[i][w] = ker
    return QpCohomology(n, D, table, frozenset(boundary))
