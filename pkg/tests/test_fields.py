import itertools
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from ulpa.classify import irreducible_laurents, is_irreducible_laurent
from ulpa.errors import UnsupportedDegree, UnsupportedEnumeration
from ulpa.fields import QQ, Field, LaurentPoly, ResidueField, parse_field, parse_laurent

F2, F3 = Field(2), Field(3)


def test_parse_field():
    assert parse_field("q") == QQ
    assert parse_field("f5") == Field(5)
    with pytest.raises(ValueError):
        parse_field("f4")


def test_fp_arithmetic():
    K = Field(7)
    for a in range(1, 7):
        assert K.mul(a, K.inv(a)) == 1
    assert K.signed(6) == -1
    assert QQ("1/2") == Fraction(1, 2)


def test_laurent_parse_and_print():
    f = parse_laurent("x^2 + x + 1", F2)
    assert str(f) == "x^2 + x + 1"
    assert str(parse_laurent("x^-1", QQ)) == "x^-1"
    g = parse_laurent("x^3 + x^2", F2)  # shifts to x + 1
    assert g.canonical().coeffs() == [1, 1]


def test_irreducible_examples():
    assert [str(f) for f in irreducible_laurents(F2, 2)] == ["x + 1", "x^2 + x + 1"]
    assert [str(f) for f in irreducible_laurents(F2, 1)] == ["x + 1"]
    with pytest.raises(UnsupportedEnumeration):
        irreducible_laurents(QQ, 1)


def _mobius(n):
    return int(sympy.mobius(n))


def _necklace(q, n):
    return sum(_mobius(d) * q ** (n // d) for d in sympy.divisors(n)) // n


@pytest.mark.parametrize("p", [2, 3, 5])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_irreducible_counts_match_necklace_formula(p, n):
    K = Field(p)
    got = [f for f in irreducible_laurents(K, n) if f.degree == n]
    want = _necklace(p, n) - (1 if n == 1 else 0)  # x is a unit
    assert len(got) == want


def test_q_irreducibility_agrees_with_sympy():
    x = sympy.Symbol("x")
    for deg in (1, 2, 3):
        for cs in itertools.product(range(-2, 3), repeat=deg):
            coeffs = list(cs[:deg]) + [1]
            if coeffs[0] == 0:
                continue
            f = LaurentPoly.from_coeffs(QQ, coeffs)
            poly = sympy.Poly(sum(c * x ** i for i, c in enumerate(coeffs)), x)
            assert is_irreducible_laurent(f) == poly.is_irreducible, coeffs


def test_q_degree_limit():
    with pytest.raises(UnsupportedDegree):
        is_irreducible_laurent(parse_laurent("x^4 + 2", QQ))


def test_residue_field():
    R = ResidueField(parse_laurent("x^2 + x + 1", F2))
    xb = R.xbar
    assert R.add(R.add(R.mul(xb, xb), xb), R.one) == R.zero
    assert R.mul(xb, R.inv(xb)) == R.one
    assert R.power(xb, 3) == R.one
    assert R.power(xb, -1) == R.inv(xb)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(0, 2), min_size=2, max_size=5), st.lists(st.integers(0, 2), min_size=2, max_size=5))
def test_f3_irreducible_has_no_factorisation(a, b):
    # a product of two non-units is never reported irreducible
    from ulpa.fields import pmul, ptrim
    a, b = ptrim(a + [1]), ptrim(b + [1])
    if len(a) < 2 or len(b) < 2 or a[0] == 0 or b[0] == 0:
        return
    f = LaurentPoly.from_coeffs(F3, pmul(F3, a, b))
    assert not is_irreducible_laurent(f)
