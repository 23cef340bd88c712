"""Expression grammar round trips and error reporting."""

import random
from fractions import Fraction

import pytest

from ffcurve.parser import ParseError, parse_object, parse_poly, parse_sheaf
from ffcurve.polyring import Poly, T_VAR
from ffcurve.sheaves import CoherentSheaf, O, T, TiltedObject, direct_sum, normalize
from ffcurve.slopes import Slope

from gen import random_sheaf, random_tilted


def test_atom_and_sum():
    F = parse_sheaf("O(1/2)^2 + T(inf,[3,1])")
    assert F == normalize([(Slope(1, 2), 2)], [("inf", (3, 1))])
    assert parse_sheaf("O(2/4)") == O(1, 2)
    assert parse_sheaf("O") == O(0)
    assert parse_sheaf("O^3") == O(0, mult=3)
    assert parse_sheaf("0") == CoherentSheaf.zero()
    assert parse_sheaf("T(∞,[2])") == T([2])
    assert parse_sheaf("O(-3)") == O(-3)
    assert parse_sheaf(" O( -3 / 2 ) ^ 2 ") == O(-3, 2, mult=2)


def test_sum_merges_to_normal_form():
    F = parse_sheaf("O(1) + O(2/2) + T(x0,[1]) + T(x0,[4])")
    assert F == direct_sum(O(1, mult=2), T([4, 1], label="x0"))


def test_tilted_expressions():
    A = parse_object("tilted(O(-1); O(2))")
    assert A == TiltedObject(O(-1), O(2))
    assert parse_object("tilted(0; O)") == TiltedObject(CoherentSheaf.zero(), O(0))
    assert parse_object("tilted(0; 0)") == TiltedObject(CoherentSheaf.zero(), CoherentSheaf.zero())


def test_shift_suffix():
    A = parse_object("O(-1)[1]")
    assert A == TiltedObject(O(-1), CoherentSheaf.zero())
    B = parse_object("O(-3/2)^2[1] + O(1)")
    assert B == TiltedObject(O(-3, 2, mult=2), O(1))


def test_slope_sign_violations():
    with pytest.raises(ParseError):
        parse_object("tilted(O(1); O)")
    with pytest.raises(ParseError):
        parse_object("tilted(O(-1); O(-2))")
    with pytest.raises(ParseError):
        parse_object("tilted(T(inf,[1]); O)")
    with pytest.raises(ParseError):
        parse_object("O(2)[1]")
    with pytest.raises(ParseError):
        parse_object("T(inf,[2])[1]")


def test_parse_errors_carry_positions():
    cases = [
        "",
        "O(",
        "O(1",
        "O(1/)",
        "O(1/0)",
        "O(1)^0",
        "O(1)^-2",
        "T(inf,[])",
        "T(inf,[0])",
        "T(inf,[2)",
        "O(1)+",
        "Q(1)",
        "O(1) O(2)",
        "tilted(O(-1) O)",
        "tilted(O(-1); O(1)) junk",
        "tilted(O(-1)[1]; O)",
    ]
    for text in cases:
        with pytest.raises(ParseError) as info:
            parse_object(text)
        err = info.value
        assert 0 <= err.position <= len(text)
        assert str(err)


def test_parse_sheaf_rejects_tilted():
    with pytest.raises(ParseError):
        parse_sheaf("tilted(O(-1); O)")
    with pytest.raises(ParseError):
        parse_sheaf("O(-1)[1]")


def test_round_trip_random_objects():
    rng = random.Random(7)
    for _ in range(300):
        F = random_sheaf(rng, allow_zero=True)
        assert parse_object(str(F)) == F
    for _ in range(300):
        A = random_tilted(rng)
        assert parse_object(str(A)) == A


# ------------------------------------------------------------------ poly side

def test_poly_parsing():
    t = T_VAR
    assert parse_poly("t^2 - 2*t + 1") == (t - 1) ** 2
    assert parse_poly("1/2*t") == Poly((0, Fraction(1, 2)))
    assert parse_poly("-3/2*t") == Poly((0, Fraction(-3, 2)))
    assert parse_poly("3") == Poly.const(3)
    assert parse_poly("-(t+1)*(t-1)") == -(t * t - 1)
    assert parse_poly("2*(t+1)^2") == 2 * (t + 1) * (t + 1)
    assert parse_poly(" t ") == t
    assert parse_poly("t*t*t") == t ** 3


def test_poly_parse_errors():
    for text in ["", "t t", "t^-1", "t^", "1/0", "2t", "(t", "t+", "*t", "t/2"]:
        with pytest.raises(ParseError):
            parse_poly(text)


def test_poly_round_trip():
    rng = random.Random(9)
    for _ in range(200):
        coeffs = [Fraction(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(rng.randint(0, 5))]
        p = Poly(coeffs)
        assert parse_poly(str(p)) == p
