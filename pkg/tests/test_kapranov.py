from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from motivica.errors import ReconstructionFailed, ValidationError
from motivica.exactring import EPoly, L
from motivica.kapranov import (
    curve_class, curve_numerator, functional_equation_check, kapranov_series, sym_powers,
    sym_powers_product, verify_rational,
)
from motivica.parse import parse_epoly

from conftest import int_epolys

P1 = EPoly.const(1) + L


def test_point():
    assert sym_powers(EPoly.const(1), 6) == [EPoly.const(1)] * 7


def test_projective_line():
    s = sym_powers(P1, 5)
    for n, c in enumerate(s):
        assert c == sum((L ** k for k in range(n + 1)), EPoly())


def test_genus_one_second_power():
    e = curve_class(1)
    # (e^2 + psi^2 e) / 2 by hand; Sym^2 of an elliptic curve is a P^1-bundle over it
    assert sym_powers(e, 2)[2] == parse_epoly("1-u-v+2uv-u*uv-v*uv+uv*uv")
    assert sym_powers(e, 2)[2] == P1 * e


def test_verify_rational():
    assert verify_rational(sym_powers(P1, 8), [(0, 0), (1, 1)])
    assert verify_rational(sym_powers(EPoly.const(1), 8), [(0, 0)])
    assert not verify_rational(sym_powers(P1, 8), [(0, 0)])


def test_numerators():
    assert curve_numerator(P1, 8) == [EPoly.const(1)]
    assert curve_numerator(curve_class(1), 8) == [EPoly.const(1), parse_epoly("-u-v"), L]


@pytest.mark.parametrize("g", [0, 1, 2, 3])
def test_functional_equation(g):
    assert functional_equation_check(curve_class(g), 2 * g + 4)


def test_functional_equation_needs_enough_terms():
    with pytest.raises(ReconstructionFailed):
        functional_equation_check(curve_class(2), 4)


def test_not_a_curve():
    with pytest.raises(ValidationError):
        functional_equation_check(parse_epoly("1+2u"), 8)


def test_non_integral():
    # Sym^n of a class with fractional exponents is not defined here
    with pytest.raises(ValidationError):
        sym_powers(EPoly.Lpow(Fraction(1, 2)), 3)


@given(int_epolys(), int_epolys())
def test_exponential_property(a, b):
    K = 8
    sa, sb, sab = kapranov_series(a, K), kapranov_series(b, K), kapranov_series(a + b, K)
    prod = [sum((sa[i] * sb[n - i] for i in range(n + 1)), EPoly()) for n in range(K + 1)]
    assert prod == sab


@given(int_epolys())
def test_newton_recursion_matches_product_formula(e):
    assert sym_powers(e, 6) == sym_powers_product(e, 6)


@given(int_epolys(), st.integers(0, 8))
def test_euler_specialization(e, n):
    # coefficient of T^n in (1 - T)^(-chi)
    from math import comb
    chi = e.euler()
    expected = comb(chi + n - 1, n) if chi > 0 else ((-1) ** n * comb(-chi, n) if chi < 0 else int(n == 0))
    assert sym_powers(e, 8)[n].euler() == expected
