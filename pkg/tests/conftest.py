from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from winfinity.exact import Poly, QuasiPoly, gaussian

settings.register_profile(
    "default", max_examples=60, deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


def rationals(max_num: int = 6, max_den: int = 4):
    return st.builds(Fraction, st.integers(-max_num, max_num), st.integers(1, max_den))


def scalars(complex_: bool = True):
    real = rationals()
    if not complex_:
        return real
    return st.one_of(real, st.builds(gaussian, rationals(), rationals()))


def polys(max_deg: int = 4, coeff=None):
    coeff = st.integers(-5, 5) if coeff is None else coeff
    return st.lists(coeff, max_size=max_deg + 1).map(Poly)


@st.composite
def quasipolys(draw, max_terms: int = 3, max_deg: int = 2, exponents=None):
    exponents = rationals(6, 3) if exponents is None else exponents
    rs = draw(st.lists(exponents, max_size=max_terms, unique=True))
    terms = []
    for r in rs:
        p = draw(polys(max_deg, st.integers(-4, 4)))
        if p:
            terms.append((r, p))
    return QuasiPoly(terms)


@pytest.fixture
def rng():
    return random.Random(20261014)


@st.composite
def dops(draw, max_mode: int = 3, max_deg: int = 4, n: int = 0, max_terms: int = 3,
         complex_: bool = False):
    from winfinity.dop import DOp
    from winfinity.exact import falling_poly

    coeff = scalars() if complex_ else st.integers(-3, 3)
    ks = draw(st.lists(st.integers(-max_mode, max_mode), max_size=max_terms, unique=True))
    modes = {}
    base = falling_poly(n)
    for k in ks:
        f = draw(polys(max(max_deg - n, 0), coeff))
        modes[k] = f * base
    return DOp(modes)
