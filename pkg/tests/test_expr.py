import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import random_expr
from ulpa.algebra import LeavittPathAlgebra
from ulpa.corpus import CURATED, G_FAN, G_LOOP, G_OMEGA
from ulpa.errors import ExprSyntaxError, ScalarNotInField, UnknownSymbol
from ulpa.expr import format_element, parse_expr
from ulpa.fields import Field


def test_examples():
    loop = LeavittPathAlgebra(G_LOOP)
    assert parse_expr("p({v}) + s(e)^2", loop) == loop.p("v") + loop.s("e") ** 2
    fan = LeavittPathAlgebra(G_FAN)
    assert parse_expr("st(e)*s(e)", fan) == fan.p("v") + fan.p("w")
    assert format_element(parse_expr("st(e)*s(e)", fan)) == "p({v}) + p({w})"


def test_rationals_and_signs():
    fan = LeavittPathAlgebra(G_FAN)
    x = parse_expr("1/2*p({v}) - 3*s(e)", fan)
    assert format_element(x) == "1/2*p({v}) - 3*s(e)*p({v}) - 3*s(e)*p({w})"
    assert x == fan.p("v").scale("1/2") - fan.s("e").scale(3)
    assert parse_expr("-p({v})", fan) == -fan.p("v")
    assert parse_expr("p({v})^0", fan) == fan.unit()


def test_omega_index():
    om = LeavittPathAlgebra(G_OMEGA)
    x = parse_expr("st(a:3)*s(a:3)", om)
    assert x == om.p("w")
    assert (parse_expr("st(a:3)*s(a:2)", om)).is_zero()


def test_errors():
    with pytest.raises(UnknownSymbol):
        parse_expr("s(q)", G_FAN)
    with pytest.raises(UnknownSymbol):
        parse_expr("p({z})", G_FAN)
    for bad in ("s(e", "p(v)", "1/0", "+", "s(e) s(e)", ""):
        with pytest.raises(ExprSyntaxError):
            parse_expr(bad, G_FAN)


def test_field_residues():
    K = Field(3)
    fan = LeavittPathAlgebra(G_FAN, K)
    assert parse_expr("3*p({v})", fan).is_zero()
    assert parse_expr("2*p({v})", fan) == -fan.p("v")
    with pytest.raises(ScalarNotInField):
        parse_expr("1/3*p({v})", fan)


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(sorted(CURATED)), st.integers(0, 10 ** 6), st.sampled_from([None, 3, 5]))
def test_round_trip(name, seed, p):
    g = CURATED[name]
    alg = LeavittPathAlgebra(g, Field(p))
    text = random_expr(g, random.Random(seed))
    x = parse_expr(text, alg)
    printed = format_element(x)
    y = parse_expr(printed, alg)
    assert x == y
    assert format_element(y) == printed
