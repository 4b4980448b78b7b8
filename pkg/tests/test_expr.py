from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from twistzeta.dc import DCPoint
from twistzeta.errors import ExpressionParseError, OpaqueValue
from twistzeta.exact import Cyclotomic, RootOfUnity
from twistzeta.expr import Atom, ValueExpr, parse_value_expr
from twistzeta.partial import simplify
from twistzeta.poly import parse_poly

HALF = RootOfUnity(1, 2)
OPAQUE = DCPoint((-1, 2), (parse_poly("X1 + X2", 2), parse_poly("X1*X2", 2)), (HALF, RootOfUnity(1, 3)))


def test_zero_coefficients_dropped():
    e = ValueExpr.pi_power(2, Fraction(1, 3)) - ValueExpr.pi_power(2, Fraction(1, 3))
    assert e.is_zero()
    assert e.terms == {}
    assert e.render() == "0"


def test_views():
    e = ValueExpr.const(Fraction(1, 4)) + ValueExpr.pi_power(2, Fraction(1, 24)) + ValueExpr.lerch_atom(
        RootOfUnity(1, 3), 3
    )
    assert e.constant == Fraction(1, 4)
    assert e.pi_terms == {2: Fraction(1, 24)}
    assert len(e.lerch_atoms) == 1
    assert e.opaque_atoms == {}


def test_render_forms():
    e = ValueExpr.const(Fraction(1, 4)) + ValueExpr.pi_power(2, Fraction(1, 24))
    assert e.render() == "1/4 + 1/24*pi^2"
    assert (-e).render() == "-1/4 - 1/24*pi^2"
    assert ValueExpr.lerch_atom(RootOfUnity(1, 3), 3).render() == "zeta_{1/3}(3)"
    c = ValueExpr.const(Cyclotomic.root(4))
    assert c.render() == "[4; 0, 1]"
    assert e.render(decimal=True) == "0.25 + 0.041666666666666664*pi^2"


def test_numeric():
    e = ValueExpr.const(Fraction(1, 4)) + ValueExpr.pi_power(2, Fraction(1, 24))
    assert abs(e.numeric() - (0.25 + math.pi**2 / 24)) < 1e-14
    assert abs(ValueExpr.lerch_atom(HALF, 1).numeric() + math.log(2)) < 1e-12


def test_numeric_refuses_opaque():
    with pytest.raises(OpaqueValue):
        ValueExpr.opaque_atom(OPAQUE).numeric()


def test_opaque_round_trip():
    e = ValueExpr.const(2) + ValueExpr.opaque_atom(OPAQUE, Fraction(-3, 5))
    assert parse_value_expr(e.render()) == e


def test_simplify_examples():
    assert simplify(ValueExpr.lerch_atom(HALF, 2)) == ValueExpr.pi_power(2, Fraction(-1, 12))
    assert simplify(ValueExpr.lerch_atom(HALF, 4)) == ValueExpr.pi_power(4, Fraction(-7, 720))
    c = ValueExpr.const(Fraction(3, 7))
    assert simplify(c) == c
    odd = ValueExpr.lerch_atom(HALF, 3)
    assert simplify(odd) == odd


def test_simplify_product_atom():
    atom = Atom(lerch=((HALF, 2), (RootOfUnity(1, 3), 1)))
    out = simplify(ValueExpr({atom: 6}))
    assert out == ValueExpr({Atom(pi_power=2, lerch=((RootOfUnity(1, 3), 1),)): Fraction(-1, 2)})


@pytest.mark.parametrize("text", ["", "1 +", "zeta_{1/1}(2)", "foo"])
def test_parse_errors(text):
    with pytest.raises((ExpressionParseError, ValueError)):
        parse_value_expr(text)


def test_atom_invariants():
    with pytest.raises(ValueError):
        Atom(pi_power=-1)
    with pytest.raises(ValueError):
        Atom(lerch=((HALF, 0),))
    assert Atom(lerch=((RootOfUnity(1, 3), 1), (HALF, 2))) == Atom(lerch=((HALF, 2), (RootOfUnity(1, 3), 1)))


# -- property tests ----------------------------------------------------------

MUS = st.sampled_from([HALF, RootOfUnity(1, 3), RootOfUnity(2, 5), RootOfUnity(1, 4)])
COEF = st.fractions(min_value=-5, max_value=5, max_denominator=9)


@st.composite
def coefficients(draw):
    if draw(st.booleans()):
        return Cyclotomic.rational(draw(COEF))
    b = draw(st.sampled_from([3, 4, 5]))
    return Cyclotomic(b, draw(st.lists(COEF, min_size=2, max_size=2)))


@st.composite
def atoms(draw):
    lerch = draw(st.lists(st.tuples(MUS, st.integers(min_value=1, max_value=4)), max_size=2))
    return Atom(pi_power=draw(st.integers(min_value=0, max_value=4)), lerch=tuple(lerch))


@st.composite
def exprs(draw):
    return ValueExpr(draw(st.lists(st.tuples(atoms(), coefficients()), max_size=4)))


@given(exprs(), exprs())
def test_render_is_additive(a, b):
    assert abs((a + b).numeric() - (a.numeric() + b.numeric())) < 1e-10 * (1 + abs(a.numeric()) + abs(b.numeric()))


@given(exprs(), exprs(), exprs())
def test_algebra_laws(a, b, c):
    assert a + b == b + a
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a - a == ValueExpr.zero()
    assert hash(a + b) == hash(b + a)


@given(exprs())
def test_round_trip(e):
    assert parse_value_expr(e.render()) == e


@given(exprs())
def test_simplify_preserves_value(e):
    s = simplify(e)
    assert abs(s.numeric() - e.numeric()) < 1e-9 * (1 + abs(e.numeric()))
    assert simplify(s) == s
