import pytest
from hypothesis import given
from hypothesis import strategies as st

from motivica import zeta
from motivica.convolution import (
    MeasureZeta, convolution_closed_form, convolve, mass, nearby_measure, reduced_measure, ts_infinity,
)
from motivica.errors import NotMassless, ValidationError
from motivica.exactring import EPoly, L
from motivica.grothendieck import EqClass, quasi_convolution
from motivica.parse import parse_eqclass, parse_series

from synth import random_massless_series


def S(fx, name):
    return nearby_measure(fx(name))


def test_masses(fx):
    for name in ("xN(1)", "xN(2)", "xN(5)", "node", "cuspA"):
        assert mass(S(fx, name)) == EPoly.const(1)
    pure = MeasureZeta(parse_series("{1/2: 1}*F(1,2)"))
    assert mass(pure) == EPoly()


def test_convolution_of_smooth_germs(fx):
    got = convolve(S(fx, "xN(1)"), S(fx, "xN(1)"), 8).coefficients(8)
    assert got == S(fx, "line2").coefficients(8)
    assert all(got[n] == EqClass.trivial(L ** -n) for n in range(1, 9))


def test_convolution_gives_node(fx):
    got = convolve(S(fx, "xN(2)"), S(fx, "xN(2)"), 8)
    assert got.coefficients(8) == S(fx, "node").coefficients(8)


def test_convolution_gives_cusp(fx):
    got = convolve(S(fx, "xN(2)"), S(fx, "xN(3)"), 12)
    assert got.coefficients(12) == S(fx, "cuspA").coefficients(12)


def test_commutative(fx):
    a, b = S(fx, "xN(2)"), S(fx, "cuspA")
    assert convolve(a, b, 8).coefficients(8) == convolve(b, a, 8).coefficients(8)


def test_closed_form_extends_truncation(fx):
    a, b = reduced_measure(fx("xN(2)")), reduced_measure(fx("xN(3)"))
    closed = convolution_closed_form(a, b)
    assert closed.coefficients(20) == convolve(a, b, 20).coefficients(20)


def test_ts_infinity_synthetic():
    half = MeasureZeta(parse_series("{1/2: 1}*F(1,2)"))
    third = MeasureZeta(parse_series("{1/3: 1, 2/3: 1}*F(1,3)"))
    assert half.series.value_at_infinity() == -parse_eqclass("{1/2: 1}")
    assert ts_infinity(half, half) == EqClass.trivial(L)
    assert ts_infinity(half, third) == parse_eqclass("{1/6: u, 5/6: v}")


def test_ts_infinity_needs_massless(fx):
    with pytest.raises(NotMassless):
        ts_infinity(S(fx, "xN(2)"), S(fx, "xN(2)"))


def test_thom_sebastiani_for_curves(fx):
    got = ts_infinity(reduced_measure(fx("xN(2)")), reduced_measure(fx("xN(3)")))
    assert got == zeta.vanishing_class(fx("cuspA"))
    got = ts_infinity(reduced_measure(fx("xN(2)")), reduced_measure(fx("xN(2)")))
    assert got == zeta.vanishing_class(fx("node"))


def test_character_check():
    bad = MeasureZeta(parse_series("{1/3: 1}*T"))
    with pytest.raises(ValidationError):
        bad.check_characters(3)


@given(st.integers(0, 10 ** 6), st.integers(0, 10 ** 6))
def test_ts_infinity_random(s1, s2):
    la, lb = MeasureZeta(random_massless_series(s1)), MeasureZeta(random_massless_series(s2))
    assert not mass(la) and not mass(lb)
    expected = quasi_convolution(EqClass.coerce(la.series.value_at_infinity()),
                                 EqClass.coerce(lb.series.value_at_infinity()))
    assert ts_infinity(la, lb) == expected
