"""Element grammar: parsing, rendering, round-trip stability, errors."""

import random

import pytest

from pinsep.exprs import ExprError, parse_element, render_element
from pinsep.perfect import CapExceeded, Context

from conftest import random_element


@pytest.fixture
def ctx():
    return Context(2, ("X", "Y", "Z"))


def test_parse_root(ctx):
    e = parse_element(ctx, "rt(X,2)")
    assert e.level == 2
    assert e == ctx.variable("X").frob(-2)


def test_parse_worked_generator(ctx):
    e = parse_element(ctx, "rt(X,2)*rt(Y,1)+rt(Z,1)")
    expected = (ctx.variable("X").frob(-2) * ctx.variable("Y").frob(-1)
                + ctx.variable("Z").frob(-1))
    assert e == expected


def test_parse_cancellation(ctx):
    assert parse_element(ctx, "X + X").is_zero()


def test_integer_literals_reduced_mod_p(ctx):
    assert parse_element(ctx, "3").is_one()
    assert parse_element(ctx, "2").is_zero()


def test_precedence_and_parens(ctx):
    a = parse_element(ctx, "X*Y+Z")
    b = parse_element(ctx, "X*(Y+Z)")
    X, Y, Z = (ctx.variable(v) for v in "XYZ")
    assert a == X * Y + Z
    assert b == X * (Y + Z)
    assert parse_element(ctx, "X^3") == X * X * X
    assert parse_element(ctx, "rt(X,1)^2") == X


def test_negative_power_and_division(ctx):
    assert parse_element(ctx, "X^-1") == ctx.one() / ctx.variable("X")
    assert parse_element(ctx, "(X+Y)/(X+Y)").is_one()


def test_unary_minus():
    ctx3 = Context(3, ("X",))
    e = parse_element(ctx3, "-X")
    assert e + ctx3.variable("X") == ctx3.zero()


def test_nested_rt(ctx):
    assert parse_element(ctx, "rt(rt(X,1),1)") == ctx.variable("X").frob(-2)


def test_errors_carry_position(ctx):
    with pytest.raises(ExprError) as err:
        parse_element(ctx, "X + + Y")
    assert err.value.pos == 4
    with pytest.raises(ExprError) as err:
        parse_element(ctx, "X + W")
    assert "unknown name 'W'" in str(err.value)
    with pytest.raises(ExprError):
        parse_element(ctx, "X Y")
    with pytest.raises(ExprError):
        parse_element(ctx, "rt(X)")
    with pytest.raises(ExprError):
        parse_element(ctx, "1/0")
    with pytest.raises(ExprError):
        parse_element(ctx, "X $ Y")


def test_cap_error_propagates():
    tight = Context(2, ("X",), ambient_cap=1)
    with pytest.raises(CapExceeded):
        parse_element(tight, "rt(X,4)")


def test_bindings(ctx):
    a1 = parse_element(ctx, "rt(X,2)")
    e = parse_element(ctx, "a1*rt(Y,1)", bindings={"a1": a1})
    assert e == a1 * ctx.variable("Y").frob(-1)


def test_render_examples(ctx):
    assert render_element(parse_element(ctx, "rt(X,2)")) == "rt(X,2)"
    e = parse_element(ctx, "rt(X,2)*rt(Y,1)+rt(Z,1)")
    assert render_element(e) == "rt(X,2)*rt(Y,1)+rt(Z,1)"
    assert render_element(ctx.zero()) == "0"
    assert render_element(ctx.one()) == "1"


def test_roundtrip_random_elements():
    rng = random.Random(31)
    for p in (2, 3, 5):
        ctx = Context(p, ("X", "Y"))
        for _ in range(40):
            e = random_element(ctx, rng, max_level=3, max_terms=3)
            if rng.random() < 0.3:
                d = random_element(ctx, rng, max_level=2, max_terms=2)
                if not d.is_zero():
                    e = e / d
            assert parse_element(ctx, render_element(e)) == e


def test_roundtrip_is_bit_exact(ctx):
    e = parse_element(ctx, "(rt(X,1)+Y)/(Z+1)")
    text = render_element(e)
    again = parse_element(ctx, text)
    assert again == e
    assert render_element(again) == text
