from fractions import Fraction

import pytest
from hypothesis import given

from motivica.errors import ParseError
from motivica.exactring import EPoly, L, MotivicRational
from motivica.grothendieck import EqClass
from motivica.parse import (
    parse_character, parse_count, parse_epoly, parse_eqclass, parse_series, parse_sympy, tokenize,
)

from conftest import eqclasses, int_epolys, series


def test_implicit_multiplication():
    assert parse_epoly("2uv") == 2 * L
    assert parse_epoly("(u+1)(v+1)") == parse_epoly("L+u+v+1")


def test_fractional_exponents():
    assert parse_epoly("L^(2/3)") == EPoly.Lpow(Fraction(2, 3))
    assert parse_epoly("u^(1/2)v^(1/2)") == EPoly.Lpow(Fraction(1, 2))


@pytest.mark.parametrize("text", ["u+", "u**2", "x", "(u", "u)", "2//3", ""])
def test_malformed_epoly(text):
    with pytest.raises(ParseError):
        parse_epoly(text)


def test_characters():
    assert parse_character("1/6") == Fraction(1, 6)
    assert parse_character("0") == 0
    for bad in ("3/6", "1", "7/6", "-1/2", "a"):
        with pytest.raises(ParseError):
            parse_character(bad)


def test_eqclass_literal():
    c = parse_eqclass("{0: 1, 1/6: -u, 5/6: -v}")
    assert c[Fraction(1, 6)] == -EPoly.mono(1, 0)
    assert parse_eqclass("uv") == EqClass.trivial(L)


def test_eqclass_rejects_unreduced_key():
    with pytest.raises(ParseError):
        parse_eqclass("{3/6: 1}")


def test_series_atoms():
    assert parse_series("F(1,2)") == MotivicRational.factor(1, 2)
    assert parse_series("T1*F(1,1,0)", r=2) == MotivicRational.T(0, 2) * MotivicRational.factor(1, (1, 0))
    with pytest.raises(ParseError):
        parse_series("F(1,1,0)")
    with pytest.raises(ParseError):
        parse_series("T3", r=2)


def test_series_division():
    x = parse_series("T/((1-T)*(1-L*T))")
    assert x.coefficients(3) == [EPoly(), EPoly.const(1), L + 1, L ** 2 + L + 1]
    with pytest.raises(ParseError):
        parse_series("1/(1+T+T^2)")


def test_count_polynomial():
    assert parse_count("q^2-q") == L ** 2 - L
    with pytest.raises(ParseError):
        parse_count("u")


def test_sympy_ring_variables():
    parse_sympy("(1+s)/(2+s)", "s")
    with pytest.raises(ParseError):
        parse_sympy("t", "s")
    with pytest.raises(ParseError):
        parse_sympy("1/(s-s)", "s")


def test_no_code_execution():
    with pytest.raises(ParseError):
        parse_epoly("__import__('os')")
    assert tokenize("u+1")[0][1] == "u"


@given(int_epolys())
def test_epoly_text_round_trip(e):
    assert parse_epoly(str(e)) == e


@given(eqclasses())
def test_eqclass_text_round_trip(c):
    assert parse_eqclass(str(c)) == c


@given(series())
def test_series_text_round_trip(x):
    assert parse_series(str(x)) == x


@given(series(r=2))
def test_series_text_round_trip_two_variables(x):
    assert parse_series(str(x), r=2) == x
