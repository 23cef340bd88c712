"""Function spaces and pullback differentials of a length-3 resolution.

A free resolution of an abelian group object truncated at length 3 has
components built from generators [x1,...,xk]:

    Z[G^4] x Z[G^3]^2 x Z[G^2] x Z[G] -> Z[G^3] x Z[G^2] -> Z[G^2] -> Z[G]

Applying Hom(-, G') turns each bracket rule into a precomposition operator
on functions of k variables.  Two exact-arithmetic function spaces are
provided: polynomials over the rationals and finite combinations of
binomial-coefficient functions C(x, k) (stable under precomposition with
coordinate sums via C(x+y, n) = sum_j C(x, j) C(y, n-j)).  On top of the
operators, this module computes symmetric 2-cocycle spaces by degree and
the small kernel and exactness checks used for the Hom and Ext columns.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Dict, Iterable, List, Tuple

Key = Tuple[int, ...]

#: arities of the resolution components by cohomological degree
LEVEL_ARITIES = {0: (1,), -1: (2,), -2: (3, 2), -3: (4, 3, 3, 2, 1)}


def _compositions(total: int, parts: int) -> Iterable[Key]:
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _multinomial(total: int, comp: Key) -> int:
    out = math.factorial(total)
    for part in comp:
        out //= math.factorial(part)
    return out


def _binom_product(a: int, b: int) -> Dict[int, int]:
    # C(x,a)*C(x,b) = sum_k C(k,a)*C(a,k-b)*C(x,k)
    return {
        k: math.comb(k, a) * math.comb(a, k - b)
        for k in range(max(a, b), a + b + 1)
    }


def _binom_value(x: Fraction, k: int) -> Fraction:
    out = Fraction(1)
    for i in range(k):
        out *= x - i
    return out / math.factorial(k)


def _var_names(arity: int) -> Tuple[str, ...]:
    if arity <= 4:
        return ("x", "y", "z", "w")[:arity]
    return tuple("x%d" % (i + 1) for i in range(arity))


def _render_terms(pairs) -> str:
    if not pairs:
        return "0"
    chunks = []
    for coeff, text in pairs:
        mag = abs(coeff)
        if text and mag == 1:
            body = text
        elif text:
            body = "%s*%s" % (mag, text)
        else:
            body = str(mag)
        if not chunks:
            chunks.append(body if coeff > 0 else "-" + body)
        else:
            chunks.append(("+ " if coeff > 0 else "- ") + body)
    return " ".join(chunks)


class _Combo:
    """Finite linear combination of exponent-tuple basis keys."""

    __slots__ = ("arity", "coeffs")

    def __init__(self, arity: int, coeffs: Dict[Key, Fraction]):
        if not isinstance(arity, int) or arity < 1:
            raise ValueError("arity must be a positive integer")
        clean: Dict[Key, Fraction] = {}
        for key, value in coeffs.items():
            key = tuple(key)
            if len(key) != arity or any(not isinstance(e, int) or e < 0 for e in key):
                raise ValueError("bad basis key %r for arity %d" % (key, arity))
            value = Fraction(value)
            if value:
                clean[key] = value
        self.arity = arity
        self.coeffs = clean

    # -- construction ------------------------------------------------------

    @classmethod
    def zero(cls, arity: int) -> "_Combo":
        return cls(arity, {})

    @classmethod
    def constant(cls, arity: int, value) -> "_Combo":
        return cls(arity, {(0,) * arity: Fraction(value)})

    @classmethod
    def from_coeffs(cls, arity: int, coeffs: Dict[Key, Fraction]) -> "_Combo":
        return cls(arity, dict(coeffs))

    # -- ring-ish structure ------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        if not self.coeffs:
            return -1
        return max(sum(key) for key in self.coeffs)

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self.arity == other.arity and self.coeffs == other.coeffs

    __hash__ = None

    def _same_space(self, other: "_Combo") -> None:
        if self.arity != other.arity:
            raise ValueError("arity mismatch: %d vs %d" % (self.arity, other.arity))

    def __add__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        self._same_space(other)
        out = dict(self.coeffs)
        for key, value in other.coeffs.items():
            out[key] = out.get(key, Fraction(0)) + value
        return type(self)(self.arity, out)

    def __sub__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return type(self)(self.arity, {k: -v for k, v in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return type(self)(self.arity, {k: v * other for k, v in self.coeffs.items()})
        if type(other) is type(self):
            self._same_space(other)
            out: Dict[Key, Fraction] = {}
            for ka, ca in self.coeffs.items():
                for kb, cb in other.coeffs.items():
                    for key, mult in self._merge_keys(ka, kb).items():
                        out[key] = out.get(key, Fraction(0)) + ca * cb * mult
            return type(self)(self.arity, out)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __pow__(self, power: int):
        if not isinstance(power, int) or power < 0:
            raise ValueError("power must be a non-negative integer")
        out = type(self).constant(self.arity, 1)
        for _ in range(power):
            out = out * self
        return out

    # -- evaluation and composition ----------------------------------------

    def evaluate(self, point) -> Fraction:
        if len(point) != self.arity:
            raise ValueError("expected %d coordinates" % self.arity)
        values = [Fraction(v) for v in point]
        total = Fraction(0)
        for key, coeff in self.coeffs.items():
            term = coeff
            for value, e in zip(values, key):
                if e:
                    term *= self._basis_factor(value, e)
            total += term
        return total

    def precompose(self, assignment, out_arity: int) -> "_Combo":
        """Substitute coordinate sums: argument i becomes sum of the listed
        output variables.  Each slot must be a non-empty tuple of indices."""
        assignment = tuple(tuple(slot) for slot in assignment)
        if len(assignment) != self.arity:
            raise ValueError("assignment must cover %d argument slots" % self.arity)
        if not isinstance(out_arity, int) or out_arity < 1:
            raise ValueError("output arity must be a positive integer")
        for slot in assignment:
            if not slot:
                raise ValueError("empty argument slot")
            if any(not isinstance(j, int) or j < 0 or j >= out_arity for j in slot):
                raise ValueError("variable index out of range")
        zero = (0,) * out_arity
        out: Dict[Key, Fraction] = {}
        for key, coeff in self.coeffs.items():
            partial: Dict[Key, Fraction] = {zero: Fraction(1)}
            for slot, e in zip(assignment, key):
                if e == 0:
                    continue
                block = self._slot_block(slot, e, out_arity)
                merged: Dict[Key, Fraction] = {}
                for ka, ca in partial.items():
                    for kb, cb in block.items():
                        for merged_key, mult in self._merge_keys(ka, kb).items():
                            merged[merged_key] = (
                                merged.get(merged_key, Fraction(0)) + ca * cb * mult
                            )
                partial = merged
            for new_key, c in partial.items():
                out[new_key] = out.get(new_key, Fraction(0)) + coeff * c
        return type(self)(out_arity, out)

    @classmethod
    def _slot_block(cls, slot, e, out_arity):
        # expansion of one argument set to the sum of the slot variables
        zero = (0,) * out_arity
        block: Dict[Key, Fraction] = {}
        for comp in _compositions(e, len(slot)):
            coeff = cls._composition_coeff(e, comp)
            partial: Dict[Key, Fraction] = {zero: Fraction(1)}
            for var, a in zip(slot, comp):
                if a == 0:
                    continue
                unit = tuple(a if j == var else 0 for j in range(out_arity))
                merged: Dict[Key, Fraction] = {}
                for key, c0 in partial.items():
                    for key2, mult in cls._merge_keys(key, unit).items():
                        merged[key2] = merged.get(key2, Fraction(0)) + c0 * mult
                partial = merged
            for key, c in partial.items():
                block[key] = block.get(key, Fraction(0)) + coeff * c
        return block

    # subclass hooks
    @staticmethod
    def _merge_keys(key_a: Key, key_b: Key) -> Dict[Key, int]:
        raise NotImplementedError

    @staticmethod
    def _composition_coeff(total: int, comp: Key) -> int:
        raise NotImplementedError

    @staticmethod
    def _basis_factor(value: Fraction, e: int) -> Fraction:
        raise NotImplementedError

    def __repr__(self):
        return "%s(%d, %r)" % (type(self).__name__, self.arity, self.coeffs)


class PolyFunc(_Combo):
    """Polynomial with rational coefficients in ``arity`` variables."""

    __slots__ = ()

    @classmethod
    def variable(cls, arity: int, index: int) -> "PolyFunc":
        if not 0 <= index < arity:
            raise ValueError("variable index out of range")
        key = tuple(1 if i == index else 0 for i in range(arity))
        return cls(arity, {key: Fraction(1)})

    @staticmethod
    def _merge_keys(key_a, key_b):
        return {tuple(a + b for a, b in zip(key_a, key_b)): 1}

    @staticmethod
    def _composition_coeff(total, comp):
        return _multinomial(total, comp)

    @staticmethod
    def _basis_factor(value, e):
        return value ** e

    def __str__(self):
        names = _var_names(self.arity)
        pairs = []
        for key in sorted(self.coeffs, key=lambda k: (sum(k), k), reverse=True):
            factors = []
            for name, e in zip(names, key):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append("%s^%d" % (name, e))
            pairs.append((self.coeffs[key], "*".join(factors)))
        return _render_terms(pairs)


class MahlerFunc(_Combo):
    """Combination of products of binomial functions C(x_i, k_i)."""

    __slots__ = ()

    @classmethod
    def basis(cls, arity: int, key: Key) -> "MahlerFunc":
        return cls(arity, {tuple(key): Fraction(1)})

    @staticmethod
    def _merge_keys(key_a, key_b):
        out: Dict[Key, int] = {(): 1}
        for a, b in zip(key_a, key_b):
            if a == 0:
                options = {b: 1}
            elif b == 0:
                options = {a: 1}
            else:
                options = _binom_product(a, b)
            merged: Dict[Key, int] = {}
            for prefix, c0 in out.items():
                for k, c1 in options.items():
                    merged[prefix + (k,)] = merged.get(prefix + (k,), 0) + c0 * c1
            out = merged
        return out

    @staticmethod
    def _composition_coeff(total, comp):
        return 1

    @staticmethod
    def _basis_factor(value, e):
        return _binom_value(value, e)

    def __str__(self):
        names = _var_names(self.arity)
        pairs = []
        for key in sorted(self.coeffs, key=lambda k: (sum(k), k), reverse=True):
            factors = [
                "C(%s,%d)" % (name, k) for name, k in zip(names, key) if k
            ]
            pairs.append((self.coeffs[key], "*".join(factors)))
        return _render_terms(pairs)


# --------------------------------------------------------------- differentials
#
# Each pullback operator is stored as data: for every output component a
# list of terms (sign, input component, slot assignment), where the slots
# give each input argument as a sum of output variables.  The tables are a
# direct transcription of the bracket rules
#
#   d1[x,y]      = [x+y] - [x] - [y]
#   d2[x,y,z]    = [x+y,z] - [y,z] - [x,y+z] + [x,y]
#   d2[x,y]      = [x,y] - [y,x]
#   d3[x,y,z,w]  = -[y,z,w] + [x+y,z,w] - [x,y+z,w] + [x,y,z+w] - [x,y,z]
#   d3[x,y,z]    = -[y,z] + [x+y,z] - [x,z] - [x,y,z] + [x,z,y] - [z,x,y]
#   d3'[x,y,z]   = -[x,z] + [x,y+z] - [x,y] + [x,y,z] - [y,x,z] + [y,z,x]
#   d3[x,y]      = [x,y] + [y,x]
#   d3[x]        = [x,x]

_D1 = (
    ((1, 0, ((0, 1),)), (-1, 0, ((0,),)), (-1, 0, ((1,),))),
)

_D2 = (
    (
        (1, 0, ((0, 1), (2,))),
        (-1, 0, ((1,), (2,))),
        (-1, 0, ((0,), (1, 2))),
        (1, 0, ((0,), (1,))),
    ),
    (
        (1, 0, ((0,), (1,))),
        (-1, 0, ((1,), (0,))),
    ),
)

_D3 = (
    (
        (-1, 0, ((1,), (2,), (3,))),
        (1, 0, ((0, 1), (2,), (3,))),
        (-1, 0, ((0,), (1, 2), (3,))),
        (1, 0, ((0,), (1,), (2, 3))),
        (-1, 0, ((0,), (1,), (2,))),
    ),
    (
        (-1, 1, ((1,), (2,))),
        (1, 1, ((0, 1), (2,))),
        (-1, 1, ((0,), (2,))),
        (-1, 0, ((0,), (1,), (2,))),
        (1, 0, ((0,), (2,), (1,))),
        (-1, 0, ((2,), (0,), (1,))),
    ),
    (
        (-1, 1, ((0,), (2,))),
        (1, 1, ((0,), (1, 2))),
        (-1, 1, ((0,), (1,))),
        (1, 0, ((0,), (1,), (2,))),
        (-1, 0, ((1,), (0,), (2,))),
        (1, 0, ((1,), (2,), (0,))),
    ),
    (
        (1, 1, ((0,), (1,))),
        (1, 1, ((1,), (0,))),
    ),
    (
        (1, 1, ((0,), (0,))),
    ),
)


def _apply_pullback(table, in_arities, out_arities, funcs):
    funcs = tuple(funcs)
    if len(funcs) != len(in_arities):
        raise ValueError("expected %d component functions" % len(in_arities))
    cls = type(funcs[0])
    if cls not in (PolyFunc, MahlerFunc):
        raise TypeError("unsupported function space: %s" % cls.__name__)
    for f in funcs:
        if type(f) is not cls:
            raise TypeError("mixed function spaces")
    for f, arity in zip(funcs, in_arities):
        if f.arity != arity:
            raise ValueError("component has arity %d, expected %d" % (f.arity, arity))
    out = []
    for component, out_arity in zip(table, out_arities):
        acc = cls.zero(out_arity)
        for sign, source, slots in component:
            acc = acc + funcs[source].precompose(slots, out_arity) * sign
        out.append(acc)
    return tuple(out)


def pullback_d1(f):
    """(d1* f)(x, y) = f(x+y) - f(x) - f(y)."""
    return _apply_pullback(_D1, LEVEL_ARITIES[0], LEVEL_ARITIES[-1], (f,))[0]


def pullback_d2(f):
    """Components (f(x+y,z) - f(y,z) - f(x,y+z) + f(x,y), f(x,y) - f(y,x))."""
    return _apply_pullback(_D2, LEVEL_ARITIES[-1], LEVEL_ARITIES[-2], (f,))


def pullback_d3(f3, f2):
    """Pullback of a pair of functions on the degree -2 components; returns
    the five functions on the degree -3 components."""
    return _apply_pullback(_D3, LEVEL_ARITIES[-2], LEVEL_ARITIES[-3], (f3, f2))


# ------------------------------------------------------------ linear algebra

def _rref(rows: List[List[Fraction]]):
    rows = [[Fraction(v) for v in row] for row in rows]
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        lead = rows[r][c]
        rows[r] = [v / lead for v in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c]:
                factor = rows[i][c]
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return r, pivots, rows


def _rank(rows) -> int:
    if not rows:
        return 0
    return _rref(rows)[0]


def _kernel_basis(rows, ncols) -> List[List[Fraction]]:
    if not rows or ncols == 0:
        rank, pivots, red = 0, [], []
    else:
        rank, pivots, red = _rref(rows)
    basis = []
    for free in range(ncols):
        if free in pivots:
            continue
        vec = [Fraction(0)] * ncols
        vec[free] = Fraction(1)
        for i, pc in enumerate(pivots):
            vec[pc] = -red[i][free]
        basis.append(vec)
    return basis


def _transpose(columns):
    if not columns:
        return []
    return [[col[i] for col in columns] for i in range(len(columns[0]))]


def _keys_of_degree(arity: int, degree: int) -> List[Key]:
    return sorted(_compositions(degree, arity), reverse=True)


def _keys_up_to(arity: int, degree: int) -> List[Key]:
    keys: List[Key] = []
    for d in range(degree + 1):
        keys.extend(_keys_of_degree(arity, d))
    return keys


def _coeff_vector(funcs, key_lists) -> List[Fraction]:
    vec: List[Fraction] = []
    for f, keys in zip(funcs, key_lists):
        vec.extend(f.coeffs.get(k, Fraction(0)) for k in keys)
    return vec


# ------------------------------------------------------------ cocycle spaces

def symmetric_2cocycle_report(q: int) -> dict:
    """Kernel of the second pullback on homogeneous degree-q polynomials of
    two variables (the symmetric 2-cocycles), with the coboundary line."""
    if not isinstance(q, int) or q < 1:
        raise ValueError("degree must be a positive integer")
    source_keys = _keys_of_degree(2, q)
    out_keys = (_keys_of_degree(3, q), _keys_of_degree(2, q))
    columns = [
        _coeff_vector(pullback_d2(PolyFunc.from_coeffs(2, {key: 1})), out_keys)
        for key in source_keys
    ]
    kernel = _kernel_basis(_transpose(columns), len(source_keys))
    basis = tuple(
        PolyFunc.from_coeffs(2, dict(zip(source_keys, vec))) for vec in kernel
    )
    coboundary = pullback_d1(PolyFunc.variable(1, 0) ** q)
    cob_dim = 0 if coboundary.is_zero() else 1
    return {
        "q": q,
        "cocycle_dim": len(basis),
        "coboundary_dim": cob_dim,
        "quotient_dim": len(basis) - cob_dim,
        "cocycle_basis": basis,
    }


def symmetric_2cocycle_quotient(q: int) -> int:
    return symmetric_2cocycle_report(q)["quotient_dim"]


def hom_column_checks(degree_poly: int = 6, degree_mahler: int = 4) -> dict:
    """Kernel and exactness checks for the first columns of the resolution.

    (a) on polynomials of one variable up to degree_poly the kernel of d1*
        is the span of the identity function;
    (b) on constants d1* acts by negation, hence is injective;
    (c) on binomial-basis functions up to degree_mahler the chain
        scalars -> functions of one variable -> functions of two variables
        -> degree -2 components is exact at the two middle spots.
    """
    keys1 = _keys_up_to(1, degree_poly)
    keys2 = _keys_up_to(2, degree_poly)
    columns = [
        _coeff_vector((pullback_d1(PolyFunc.from_coeffs(1, {k: 1})),), (keys2,))
        for k in keys1
    ]
    kernel = _kernel_basis(_transpose(columns), len(keys1))
    kernel_polys = [
        PolyFunc.from_coeffs(1, dict(zip(keys1, vec))) for vec in kernel
    ]
    identity = PolyFunc.variable(1, 0)
    span_x = len(kernel_polys) == 1 and not (
        kernel_polys[0] - kernel_polys[0].coeffs.get((1,), Fraction(0)) * identity
    ).coeffs
    poly_report = {
        "degree_bound": degree_poly,
        "dim": len(kernel_polys),
        "basis": tuple(str(p) for p in kernel_polys),
        "is_span_of_identity": bool(span_x),
    }

    image = pullback_d1(PolyFunc.constant(1, 1))
    constants_report = {
        "image_of_unit": str(image),
        "injective": not image.is_zero(),
    }

    akeys = _keys_up_to(1, degree_mahler)
    bkeys = _keys_up_to(2, degree_mahler)
    ckeys = (_keys_up_to(3, degree_mahler), _keys_up_to(2, degree_mahler))
    d1_cols = [
        _coeff_vector((pullback_d1(MahlerFunc.from_coeffs(1, {k: 1})),), (bkeys,))
        for k in akeys
    ]
    d2_cols = [
        _coeff_vector(pullback_d2(MahlerFunc.from_coeffs(2, {k: 1})), ckeys)
        for k in bkeys
    ]
    rank_d1 = _rank(_transpose(d1_cols))
    ker_d1 = len(akeys) - rank_d1
    ker_d2 = len(_kernel_basis(_transpose(d2_cols), len(bkeys)))
    # the inclusion of scalars lands on the identity function: image dim 1
    homology = (ker_d1 - 1, ker_d2 - rank_d1)
    mahler_report = {
        "degree_bound": degree_mahler,
        "dims": {"functions": len(akeys), "pairs": len(bkeys)},
        "homology_dims": homology,
        "exact": homology == (0, 0),
    }

    ok = poly_report["is_span_of_identity"] and constants_report["injective"] \
        and mahler_report["exact"]
    return {
        "poly_kernel": poly_report,
        "constants": constants_report,
        "mahler_middle": mahler_report,
        "ok": bool(ok),
    }
