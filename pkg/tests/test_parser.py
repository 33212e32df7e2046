import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kfueter.errors import NonR2Denominator, ParseError
from kfueter.exact import ExactComplex, I, R2, SymField, X0, X1, X2
from kfueter.parser import BinOp, Num, Pow, Var, lower, parse_expr, parse_field, random_expr, to_text


def test_basic_fields():
    assert parse_field("x0") == X0
    assert parse_field("1/r2") == SymField(1, 1)
    assert parse_field("x0 + i*x1") == X0 + X1 * I
    assert parse_field("x0^2 - x1^2") == X0 * X0 - X1 * X1
    assert parse_field("-x2") == -X2
    assert parse_field("r2 * (1/r2)") == SymField.const(1)


def test_rational_literals():
    assert parse_expr("3/4") == Num(Fraction(3, 4))
    assert parse_expr("3 / 4") == BinOp("/", Num(Fraction(3)), Num(Fraction(4)))
    assert parse_field("3/4*x0") == X0.scale(ExactComplex(Fraction(3, 4)))
    assert parse_expr("x0^2/3") == BinOp("/", Pow(Var(0), 2), Num(Fraction(3)))


def test_division_by_r2_powers():
    assert parse_field("x0/(2*r2^2)") == X0.scale(ExactComplex(Fraction(1, 2))).over_r2(2)
    assert parse_field("x0/(x0^2+x1^2+x2^2+x3^2)") == X0.over_r2(1)
    assert parse_field("(x0*r2)/r2^3") == X0.over_r2(2)


def test_parse_errors_carry_position():
    with pytest.raises(ParseError) as info:
        parse_expr("x0 + * x1")
    assert info.value.pos == 5
    with pytest.raises(ParseError) as info:
        parse_expr("x4")
    assert info.value.pos == 0
    with pytest.raises(ParseError):
        parse_expr("(x0 + x1")
    with pytest.raises(ParseError):
        parse_expr("x0^x1")
    with pytest.raises(ParseError):
        parse_expr("x0 $ 1")


def test_bad_denominators():
    with pytest.raises(NonR2Denominator) as info:
        parse_field("x0/x1")
    assert info.value.pos == 2
    with pytest.raises(NonR2Denominator):
        parse_field("1/(r2 - r2)")
    with pytest.raises(NonR2Denominator):
        parse_field("1/(r2 + 1)")


def test_round_trip_hundred_expressions():
    rng = random.Random(2024)
    for _ in range(100):
        node = random_expr(rng)
        text = to_text(node)
        assert parse_expr(text) == node
        assert lower(parse_expr(text)) == lower(node)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**9), st.integers(1, 4))
def test_round_trip_property(seed, depth):
    node = random_expr(random.Random(seed), depth)
    assert parse_expr(to_text(node)) == node


def test_r2_symbol():
    assert parse_field("r2") == R2
