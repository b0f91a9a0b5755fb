from __future__ import annotations

import math
from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from winfinity.exact import (
    I,
    InsufficientDataError,
    Poly,
    QuasiPoly,
    TruncSeries,
    W,
    apply_diffop,
    detect_recurrence,
    falling_factorial,
    falling_poly,
    format_scalar,
    gaussian,
    is_psd,
    min_annihilator,
    parse_scalar,
    poly,
    poly_shift,
    quasipoly_to_series,
    series_div_expm1,
    solve_falling_diffop,
)

from conftest import polys, quasipolys, scalars

x_sym = sympy.Symbol("x")


def e(r, p=1):
    return QuasiPoly.exp(r, p)


def sympy_expr(q: QuasiPoly):
    out = 0
    for r, p in q.items():
        r = sympy.nsimplify(str(r)) if not hasattr(r, "im") else (
            sympy.Rational(str(r.re)) + sympy.I * sympy.Rational(str(r.im)))
        pe = sum(sympy.Rational(str(c)) * x_sym**k for k, c in enumerate(p.coeffs))
        out += pe * sympy.exp(r * x_sym)
    return out


# scalars -------------------------------------------------------------------

@given(scalars(), scalars(), scalars())
def test_scalar_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == 0


@given(scalars())
def test_scalar_text_round_trip(a):
    assert parse_scalar(format_scalar(a)) == a


def test_gaussian_collapses_to_real():
    assert gaussian(3, 0) == 3 and type(gaussian(3, 0)) is int
    assert I * I == -1
    assert (1 + I) * (1 - I) == 2


# polynomials ---------------------------------------------------------------

@given(polys(), polys(), polys())
def test_poly_ring_axioms(f, g, h):
    assert (f + g) + h == f + (g + h)
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h


@given(polys(), polys())
def test_poly_divmod(f, g):
    if g.is_zero():
        return
    q, r = divmod(f, g)
    assert q * g + r == f
    assert r.degree < g.degree


def test_falling_factorial_examples():
    assert falling_factorial(5, 3) == 60
    assert falling_factorial(W, 0) == Poly.const(1)
    assert falling_factorial(2, 4) == 0


@given(scalars(), st.integers(0, 6))
def test_falling_factorial_recursion(xv, l):
    assert falling_factorial(xv, l + 1) == falling_factorial(xv, l) * (xv - l)
    assert falling_factorial(xv, l) == math.prod([xv - i for i in range(l)], start=1)


def test_poly_shift_examples():
    assert poly_shift(W * W, 1) == poly(1, 2, 1)
    f = poly(3, -1, 2)
    assert poly_shift(f, 0) == f
    assert poly_shift(W, -1) == poly(-1, 1)


@given(polys(), scalars(), scalars())
def test_poly_shift_matches_evaluation(f, h, at):
    assert poly_shift(f, h)(at) == f(at + h)


# series and quasipolynomials ----------------------------------------------

def test_quasipoly_to_series_examples():
    assert quasipoly_to_series(e(2), 3) == (1, 2, 4, 8)
    assert quasipoly_to_series(QuasiPoly(), 4) == (0, 0, 0, 0, 0)
    assert quasipoly_to_series(e(1, W), 3) == (0, 1, 2, 3)


@given(quasipolys(max_terms=2, max_deg=2))
def test_quasipoly_to_series_against_sympy(q):
    expr = sympy_expr(q)
    got = quasipoly_to_series(q, 5)
    for l in range(6):
        want = sympy.diff(expr, x_sym, l).subs(x_sym, 0)
        assert sympy.nsimplify(sympy.simplify(want - sympy.Rational(str(got[l])))) == 0


def _bernoulli(n):
    # independent oracle: sum_{j<m} C(m+1, j) B_j = -(m+1) B_m, B_0 = 1
    B = [Fraction(1)]
    for m in range(1, n + 1):
        B.append(-sum(math.comb(m + 1, j) * B[j] for j in range(m)) / (m + 1))
    return B


def test_series_div_expm1_examples():
    assert series_div_expm1(e(1) - 1, 4) == (1, 0, 0, 0, 0)
    assert series_div_expm1(e(2) - 1, 3) == (2, 1, 1, 1)
    assert series_div_expm1(QuasiPoly.x(), 4) == (1, Fraction(-1, 2), Fraction(1, 6), 0,
                                                  Fraction(-1, 30))
    assert series_div_expm1(QuasiPoly.x(), 12) == tuple(_bernoulli(12))


def test_series_div_expm1_rejects_nonzero_constant():
    with pytest.raises(ValueError):
        series_div_expm1(e(2), 3)


@given(quasipolys(), st.integers(1, 10))
def test_series_div_expm1_round_trip(q, K):
    q = q - q.value_at_zero()
    S = series_div_expm1(q, K)
    assert S * TruncSeries.expm1(K + 1) == quasipoly_to_series(q, K)


def test_apply_diffop_examples():
    assert apply_diffop(W - 2, e(2)) == QuasiPoly()
    assert apply_diffop(W, e(1, W)) == e(1, W + 1)
    assert apply_diffop(falling_poly(2), e(3)) == e(3, 6)


@given(quasipolys(), polys(3))
def test_apply_diffop_commutes_with_series(q, c):
    K = 8
    lhs = quasipoly_to_series(apply_diffop(c, q), K - max(c.degree, 0))
    rhs = apply_diffop(c, quasipoly_to_series(q, K))
    assert lhs == rhs


def test_min_annihilator_examples():
    assert min_annihilator(e(2)) == W - 2
    assert min_annihilator(e(1, W)) == (W - 1) ** 2
    assert min_annihilator(QuasiPoly()) == Poly.const(1)


@given(quasipolys())
def test_min_annihilator_annihilates_and_is_minimal(q):
    c = min_annihilator(q)
    assert c.is_monic()
    K = 12
    s = quasipoly_to_series(q, K)
    assert apply_diffop(c, s).is_zero()
    assert apply_diffop(c, q).is_zero()
    # dropping any single root factor leaves something alive
    for r in q.exponents():
        smaller = c.exact_div(W - r)
        assert not apply_diffop(smaller, q).is_zero()


# recurrence detection ------------------------------------------------------

def test_detect_recurrence_examples():
    assert detect_recurrence([2, 4, 8, 16, 32, 64], 2).annihilator == W - 2
    assert detect_recurrence([0] * 7, 3).annihilator == Poly.const(1)
    assert detect_recurrence([math.factorial(l) for l in range(9)], 3) is None


def test_detect_recurrence_reports_short_prefix():
    with pytest.raises(InsufficientDataError):
        detect_recurrence([1, 2, 3], 3)


@given(quasipolys())
def test_detect_recurrence_recovers_min_annihilator(q):
    c = min_annihilator(q)
    d = c.degree
    cert = detect_recurrence(quasipoly_to_series(q, 2 * d + 4), d)
    assert cert is not None
    assert cert.annihilator == c
    assert cert.verified_to_order == 2 * d + 4


# the falling-factorial differential equation -------------------------------

def test_solve_falling_diffop_examples():
    assert solve_falling_diffop(e(2, 2), 1) == e(2) - 1
    assert solve_falling_diffop(QuasiPoly(), 3) == QuasiPoly()
    phi = solve_falling_diffop(e(1), 1)
    assert phi == e(1, W)
    assert apply_diffop(falling_poly(2), phi) == e(1)


@given(quasipolys(exponents=st.integers(-2, 4).map(Fraction)), st.integers(0, 3))
def test_solve_falling_diffop_properties(F, n):
    phi = solve_falling_diffop(F, n)
    assert apply_diffop(falling_poly(n + 1), phi) == F
    assert phi.value_at_zero() == 0
    for k in range(1, n + 1):
        assert phi.multiplicity(k).coeff(0) == 0


# exact PSD test -------------------------------------------------------------

def test_is_psd():
    assert is_psd([[2, 4], [4, 8]])
    assert is_psd([[2, -2], [-2, 2]])
    assert not is_psd([[0, 1], [1, 0]])
    assert not is_psd([[1, 2], [2, 1]])
    assert is_psd([[0, 0], [0, 3]])
