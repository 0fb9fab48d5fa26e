from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from motivica.exactring import EPoly, MotivicRational
from motivica.grothendieck import EqClass
from motivica.resolution import builtin_fixture

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

small = st.integers(-3, 3)
exps = st.sampled_from([Fraction(k, d) for d in (1, 2, 3) for k in range(-2 * d, 2 * d + 1)])


@st.composite
def epolys(draw, frac=True, max_terms=4):
    ex = exps if frac else st.integers(-1, 2)
    terms = draw(st.dictionaries(st.tuples(ex, ex), small, max_size=max_terms))
    return EPoly(terms)


@st.composite
def int_epolys(draw, max_terms=3):
    terms = draw(st.dictionaries(st.tuples(st.integers(0, 2), st.integers(0, 2)), small, max_size=max_terms))
    return EPoly(terms)


characters = st.sampled_from(sorted({Fraction(k, d) for d in (1, 2, 3, 4, 6) for k in range(d)}))


@st.composite
def eqclasses(draw, max_parts=3):
    parts = draw(st.dictionaries(characters, int_epolys(), max_size=max_parts))
    return EqClass(parts)


@st.composite
def series(draw, r=1, max_terms=2):
    out = MotivicRational(r)
    for _ in range(draw(st.integers(1, max_terms))):
        k = draw(st.integers(0, 2))
        fs = tuple(sorted(
            (draw(st.integers(-1, 3)), tuple(draw(st.integers(0, 2)) for _ in range(r)))
            for _ in range(k)))
        fs = tuple(f for f in fs if any(f[1]))
        coeff = draw(int_epolys())
        mono = tuple(draw(st.integers(0, 1)) for _ in range(r))
        out = out + MotivicRational(r, [({mono: coeff}, fs)])
    return out


@pytest.fixture(scope="session")
def fx():
    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = builtin_fixture(name)
        return cache[name]

    return get
