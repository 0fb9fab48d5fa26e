from fractions import Fraction

import pytest

from motivica.errors import SchemaError, ValidationError
from motivica.exactring import EPoly, L
from motivica.mckay import (
    AbelianAction, age, cyclic_action, mckay_compare, orbifold_weight, parse_group, stringy_invariant,
)
from motivica.resolution import parse_resolution, to_document


def Lp(x):
    return EPoly.Lpow(Fraction(x))


def test_age():
    assert age((1, 1), 2) == 1
    assert age((0, 0), 5) == 0
    assert age((1, 2), 3) == 1
    assert age((4, 1), 3) == Fraction(2, 3)


def test_orbifold_weight():
    assert orbifold_weight(cyclic_action(2, [1, 1])) == L ** 2 + L
    assert orbifold_weight(cyclic_action(3, [1, 1])) == L ** 2 + Lp("2/3") + Lp("4/3")
    assert orbifold_weight(AbelianAction.from_generators(1, 2, [])) == L ** 2


def test_stringy_invariant(fx):
    assert stringy_invariant(fx("An_surface(1)")) == L ** 2 + L
    assert stringy_invariant(fx("third_11")) == L ** 2 + Lp("4/3") + Lp("2/3")
    assert stringy_invariant(fx("affine(3)")) == L ** 3


def test_stringy_is_resolution_independent(fx):
    assert stringy_invariant(fx("A1_blowup")) == stringy_invariant(fx("An_surface(1)"))


@pytest.mark.parametrize("n", range(2, 7))
def test_type_A(fx, n):
    report = mckay_compare(cyclic_action(n, [1, n - 1]), fx(f"An_surface({n - 1})"))
    assert report.equal
    assert report.orbifold == L ** 2 + (n - 1) * L


def test_wrong_discrepancy_is_detected(fx):
    doc = to_document(fx("An_surface(1)"))
    doc["components"][0]["nu"] = "2"
    report = mckay_compare(cyclic_action(2, [1, 1]), parse_resolution(doc))
    assert not report.equal
    assert report.difference
    assert "equal: false" in str(report)


def test_dimension_mismatch(fx):
    with pytest.raises(ValidationError):
        mckay_compare(cyclic_action(2, [1, 1, 0]), fx("An_surface(1)"))


def test_group_closure_and_parsing():
    G = parse_group('{"m": 4, "dim": 2, "generators": [[2, 2], [1, 3]]}')
    assert G.order == 4
    klein = parse_group({"m": 2, "dim": 3, "generators": [[1, 1, 0], [0, 1, 1]]})
    assert klein.order == 4
    assert orbifold_weight(klein) == L ** 3 + 3 * L ** 2
    with pytest.raises(SchemaError):
        parse_group({"m": 2, "generators": [[1, 1]]})
    with pytest.raises(ValidationError):
        parse_group({"m": 2, "dim": 2, "generators": [[1]]})
