"""Complexes, Koszul, décalage and quasi-isomorphism testing.

Frozen small examples first (hand-checked), then randomized complexes
whose cohomology is known by construction.
"""

import random

import pytest

from ffcurve.complexes import (
    BoundedComplex,
    ChainMap,
    ShiftProfile,
    ZERO_PROFILE,
    cohomology,
    complex_from_json,
    complex_to_json,
    cone,
    decalage,
    decalage_map,
    direct_sum_complexes,
    identity_chain_map,
    is_acyclic,
    is_quasi_iso,
    koszul,
    pad_complex,
)
from ffcurve.exactalg import (
    DOMAINS,
    INTEGERS,
    POLY_OVER_RATIONALS as POLY,
    RATIONALS,
    Mat,
    identity,
    mat,
    zeros,
)
from ffcurve.polyring import Poly, T_VAR as t

from gen import random_known_complex, random_qis

rng_seed = 23


def two_term(dom, entry):
    return BoundedComplex(dom, 0, (1, 1), (mat(dom, [[entry]]),))


# ------------------------------------------------------------------ structure


def test_composition_must_vanish():
    d0 = mat(INTEGERS, [[1]])
    d1 = mat(INTEGERS, [[1]])
    with pytest.raises(ValueError):
        BoundedComplex(INTEGERS, 0, (1, 1, 1), (d0, d1))


def test_shape_validation():
    with pytest.raises(ValueError):
        BoundedComplex(INTEGERS, 0, (1, 2), (mat(INTEGERS, [[1]]),))
    with pytest.raises(ValueError):
        BoundedComplex(INTEGERS, 0, (), ())


def test_json_round_trip():
    C = koszul(POLY, (t, t + 1))
    assert complex_from_json(complex_to_json(C)) == C


def test_pad_and_direct_sum():
    C = two_term(INTEGERS, 2)
    P = pad_complex(C, -1, 2)
    assert P.ranks == (0, 1, 1, 0)
    assert cohomology(P)[1] == (0, (2,))
    D = direct_sum_complexes(C, two_term(INTEGERS, 0))
    assert D.ranks == (2, 2)
    h = cohomology(D)
    assert h[0] == (1, ()) and h[1] == (1, (2,))


# ------------------------------------------------------------------ cohomology


def test_multiplication_by_two():
    h = cohomology(two_term(INTEGERS, 2))
    assert h == {0: (0, ()), 1: (0, (2,))}


def test_identity_complex_acyclic():
    assert is_acyclic(two_term(INTEGERS, 1))
    assert is_acyclic(two_term(RATIONALS, 7))


def test_invariant_factor_normal_form():
    C = BoundedComplex(
        INTEGERS, 0, (2, 2), (mat(INTEGERS, [[2, 0], [0, 3]]),)
    )
    assert cohomology(C)[1] == (0, (6,))
    C = BoundedComplex(
        INTEGERS, 0, (2, 2), (mat(INTEGERS, [[2, 0], [0, 2]]),)
    )
    assert cohomology(C)[1] == (0, (2, 2))


def test_koszul_pair_over_integers():
    h = cohomology(koszul(INTEGERS, (2, 4)))
    assert h == {0: (0, ()), 1: (0, (2,)), 2: (0, (2,))}
    assert is_acyclic(koszul(INTEGERS, (2, 3)))


def test_known_random_complexes_all_domains():
    rng = random.Random(rng_seed)
    for name, dom in DOMAINS.items():
        rounds = 40 if dom is not POLY else 20
        for _ in range(rounds):
            C, expected = random_known_complex(dom, rng)
            assert cohomology(C) == expected


# ---------------------------------------------------------------------- Koszul


def test_koszul_shapes_and_signs():
    K1 = koszul(INTEGERS, (5,))
    assert K1.ranks == (1, 1) and K1.differentials[0] == mat(INTEGERS, [[5]])
    K2 = koszul(INTEGERS, (2, 3))
    assert K2.ranks == (1, 2, 1)
    assert K2.differentials[0] == mat(INTEGERS, [[2], [3]])
    assert K2.differentials[1] == mat(INTEGERS, [[-3, 2]])
    K3 = koszul(INTEGERS, (1, 2, 3))
    assert K3.ranks == (1, 3, 3, 1)


def test_koszul_needs_elements():
    with pytest.raises(ValueError):
        koszul(INTEGERS, ())


def test_koszul_single_t_cohomology():
    h = cohomology(koszul(POLY, (t,)))
    assert h == {0: (0, ()), 1: (0, (t,))}


# -------------------------------------------------------------------- decalage


def test_profile_validation():
    with pytest.raises(ValueError):
        ShiftProfile(0, (0, -1))
    with pytest.raises(ValueError):
        ShiftProfile(0, ())
    p = ShiftProfile.identity(0, 3)
    assert [p(j) for j in (-2, 0, 1, 3, 9)] == [0, 0, 1, 3, 3]
    assert p.is_nondecreasing
    assert not ShiftProfile(0, (2, 1)).is_nondecreasing
    assert ZERO_PROFILE(5) == 0


def test_decalage_zero_profile_is_identity():
    C = koszul(POLY, (t + 1, t * t - 2))
    assert decalage(C, t, ZERO_PROFILE) == C


def test_decalage_rejects_zero():
    with pytest.raises(ValueError):
        decalage(koszul(POLY, (t,)), Poly(), ZERO_PROFILE)


def test_decalage_divides_single():
    # eta_t Koszul(t*g) is Koszul(g) on the nose for one element
    delta = ShiftProfile.identity(0, 1)
    for g in (t + 1, 3 * t**2 - 1, Poly.const(2)):
        assert decalage(koszul(POLY, (t * g,)), t, delta) == koszul(POLY, (g,))


def test_decalage_divides_pair_and_triple():
    rng = random.Random(29)
    delta2 = ShiftProfile.identity(0, 2)
    delta3 = ShiftProfile.identity(0, 3)
    for _ in range(10):
        gs = [
            Poly([rng.randint(-3, 3) for _ in range(rng.randint(1, 3))]) + 1
            for _ in range(3)
        ]
        lhs = cohomology(decalage(koszul(POLY, [t * g for g in gs[:2]]), t, delta2))
        rhs = cohomology(koszul(POLY, gs[:2]))
        assert lhs == rhs
        lhs = cohomology(decalage(koszul(POLY, [t * g for g in gs]), t, delta3))
        rhs = cohomology(koszul(POLY, gs))
        assert lhs == rhs


def test_decalage_acyclic_when_element_divides_f():
    delta = ShiftProfile.identity(0, 2)
    for g in (t + 1, 2 * t, t**2 + 1):
        assert is_acyclic(decalage(koszul(POLY, (t, g)), t, delta))
    # over the integers with f = 2
    assert is_acyclic(decalage(koszul(INTEGERS, (2, 5)), 2, delta))


def test_decalage_integer_single():
    delta = ShiftProfile.identity(0, 1)
    assert decalage(koszul(INTEGERS, (6,)), 2, delta) == koszul(INTEGERS, (3,))


# ------------------------------------------------------------------ chain maps


def test_chain_map_validation():
    C = two_term(INTEGERS, 2)
    with pytest.raises(ValueError):
        ChainMap(C, two_term(RATIONALS, 2), (identity(INTEGERS, 1),) * 2)
    with pytest.raises(ValueError):
        ChainMap(C, pad_complex(C, 0, 2), (identity(INTEGERS, 1),) * 2)
    # non-commuting square
    with pytest.raises(ValueError):
        ChainMap(
            C,
            two_term(INTEGERS, 4),
            (identity(INTEGERS, 1), identity(INTEGERS, 1)),
        )


def test_identity_is_quasi_iso():
    C = koszul(INTEGERS, (2, 4))
    assert is_quasi_iso(identity_chain_map(C))


def test_acyclic_to_zero_is_quasi_iso():
    C = two_term(INTEGERS, 1)
    Z = BoundedComplex(INTEGERS, 0, (0, 0), (zeros(INTEGERS, 0, 0),))
    phi = ChainMap(C, Z, (zeros(INTEGERS, 0, 1), zeros(INTEGERS, 0, 1)))
    assert is_quasi_iso(phi)


def test_doubling_is_not_quasi_iso():
    C = BoundedComplex(INTEGERS, 0, (1,), ())
    double = ChainMap(C, C, (mat(INTEGERS, [[2]]),))
    assert not is_quasi_iso(double)
    D = BoundedComplex(RATIONALS, 0, (1,), ())
    assert is_quasi_iso(ChainMap(D, D, (mat(RATIONALS, [[2]]),)))


def test_cone_shape():
    C = two_term(INTEGERS, 2)
    K = cone(identity_chain_map(C))
    assert K.lowest == -1 and K.ranks == (1, 2, 1)


def test_random_quasi_isos_detected():
    rng = random.Random(31)
    for name, dom in DOMAINS.items():
        rounds = 20 if dom is not POLY else 8
        for _ in range(rounds):
            assert is_quasi_iso(random_qis(dom, rng))


def test_inclusion_with_leftover_homology_is_not_qis():
    free = BoundedComplex(INTEGERS, 0, (1, 0), (zeros(INTEGERS, 0, 1),))
    C = two_term(INTEGERS, 1)
    D = direct_sum_complexes(C, free)
    comps = (
        mat(INTEGERS, [[1], [0]]),
        mat(INTEGERS, [[1]], cols=1),
    )
    phi = ChainMap(C, D, comps)
    assert not is_quasi_iso(phi)


def test_decalage_map_preserves_quasi_iso_smoke():
    rng = random.Random(37)
    delta = ShiftProfile.identity(0, 3)
    for _ in range(6):
        phi = random_qis(POLY, rng, n_terms=3, max_atoms=2)
        assert is_quasi_iso(decalage_map(phi, t, delta))
    for _ in range(6):
        phi = random_qis(INTEGERS, rng, n_terms=3, max_atoms=3)
        assert is_quasi_iso(decalage_map(phi, 2, delta))
