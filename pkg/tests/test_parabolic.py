from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from winfinity.dop import DOp, bracket
from winfinity.exact import W, Poly, falling_poly, poly
from winfinity.parabolic import (
    A_span,
    PolySpan,
    closure_check,
    codim,
    example_parabolic,
    g0_span_for_b,
    min_parabolic_level1,
)

from conftest import polys


def multiples(q: Poly, d: int) -> PolySpan:
    """Independent description ``q * C[w]`` truncated at degree d."""
    return PolySpan.from_generators([q * W ** j for j in range(d - q.degree + 1)], d)


def test_polyspan_echelon():
    s = PolySpan.from_generators([poly(1, 1), poly(2, 2), poly(0, 0, 1), poly(1, 1, 1)], 2)
    assert s.dim == 2
    assert s.pivots == [1, 2]
    assert poly(3, 3, 5) in s
    assert poly(1) not in s
    with pytest.raises(ValueError):
        s.contains(W ** 3)


def test_polyspan_intersects_with_degree_bound():
    # (w^3 + w) - (w^3) has degree 1 and must survive truncation at d = 1
    s = PolySpan.from_generators([poly(0, 1, 0, 1), poly(0, 0, 0, 1)], 1)
    assert s.basis == (W,)


@pytest.mark.parametrize("k", [1, 2, 3])
@pytest.mark.parametrize("d", range(0, 9))
def test_A_span_full_for_small_n(k, d):
    assert A_span(0, k, d) == PolySpan.full(d)
    assert A_span(1, k, d) == PolySpan.full(d)


@pytest.mark.parametrize("n", range(1, 6))
@pytest.mark.parametrize("d", range(0, 9))
def test_A_span_level_one(n, d):
    assert A_span(n, 1, d) == multiples(falling_poly(n - 1, 1), d)


def test_A_span_example():
    want = PolySpan.from_generators([W - 1, W * (W - 1), W ** 2 * (W - 1)], 3)
    assert A_span(2, 1, 3) == want


@given(st.integers(0, 4), st.integers(1, 3), polys(3))
def test_A_span_stability(n, k, f):
    elt = f.shift(-k) * falling_poly(n, k) - f * falling_poly(n)
    d = max(elt.degree, 0) + 1
    assert A_span(n, k, d).contains(elt)


def test_A_span_degree_two_contains_every_degree():
    s = A_span(2, 3, 8)
    assert set(range(1, 9)) <= set(s.pivots)


def test_g0_span_examples():
    assert g0_span_for_b(1, W, 0).basis == (W,)
    assert g0_span_for_b(2, falling_poly(2), -1).dim == 0
    s = g0_span_for_b(1, W * (W - 2), 1)
    assert s.dim == 2
    # direct expansion for g = 1 and g = w
    b = W * (W - 2)
    for g in (Poly.const(1), W):
        assert (W - 1) * g * b - W * g.shift(1) * b.shift(1) in s
    with pytest.raises(ValueError):
        g0_span_for_b(2, W, 1)


@given(st.integers(0, 3), polys(2), st.integers(0, 3))
def test_g0_span_matches_brackets(n, a, d):
    if a.is_zero():
        return
    b = a * falling_poly(n)
    fn = falling_poly(n)
    gens = []
    for m in range(d + 1):
        br = bracket(DOp({1: W ** m * fn}), DOp({-1: b}))
        gens.append(br.mode(0))
    span = g0_span_for_b(n, b, d)
    assert PolySpan.from_generators(gens, span.ambient_deg) == span


def test_min_parabolic_examples():
    b = W * (W - 2)
    assert min_parabolic_level1(1, b, 5) == multiples(b, 5)
    for n in range(0, 5):
        assert min_parabolic_level1(n, falling_poly(n), n).basis == (falling_poly(n),)
    with pytest.raises(ValueError):
        min_parabolic_level1(1, Poly(), 4)


def test_min_parabolic_golden_bases():
    # n = 2 saturates to every multiple of [w]_2 within the bound
    s2 = min_parabolic_level1(2, falling_poly(2), 4)
    assert s2 == multiples(falling_poly(2), 4)
    assert [p.format() for p in s2.basis] == ["w^2 - w", "w^3 - w", "w^4 - w"]
    # n = 3 does not: one direction is missing at every bound
    s3 = min_parabolic_level1(3, falling_poly(3), 6)
    assert [p.format() for p in s3.basis] == [
        "w^3 - 3*w^2 + 2*w",
        "w^5 - 6*w^4 + 27*w^2 - 22*w",
        "w^6 - 23*w^4 + 130*w^2 - 108*w",
    ]
    assert s3.dim == multiples(falling_poly(3), 6).dim - 1


@given(st.integers(0, 3), polys(2))
def test_min_parabolic_nonzero(n, a):
    if a.is_zero():
        return
    b = a * falling_poly(n)
    s = min_parabolic_level1(n, b, b.degree + 2)
    assert s.dim >= 1 and b in s


def test_example_parabolic_examples():
    for n in range(0, 4):
        for d in range(0, 9):
            want = multiples(falling_poly(n, 1) * falling_poly(n), d)
            assert example_parabolic(n, 2, d) == want
    assert example_parabolic(1, 1, 2).basis == (W, W ** 2)
    assert example_parabolic(3, 1, 3).basis == (falling_poly(3),)


def test_codim_examples():
    for d in range(0, 9):
        assert codim(A_span(1, 1, d)) == 0
    assert codim(example_parabolic(1, 2, 5)) == 2


@pytest.mark.parametrize("n", [1, 2, 3])
def test_example_family_closed(n):
    report = closure_check(n, lambda k, d: example_parabolic(n, k, d), 3, 8)
    assert report.ok, report.failures[:3]
    assert report.checked > 0


def test_closure_check_reports_failures():
    # dropping the w*[w]_n generator at depth one breaks closure under g_0
    def broken(k, d):
        if k == 1:
            return PolySpan.from_generators([falling_poly(2)], d)
        return example_parabolic(2, k, d)
    report = closure_check(2, broken, 2, 4)
    assert not report.ok


@pytest.mark.parametrize("n", [0, 1, 2])
def test_depth_one_is_ideal_for_small_n(n):
    assert example_parabolic(n, 1, 9).closed_under_w()


def test_depth_one_ideal_status_for_larger_n():
    # at n = 3 the depth-one piece is still all of [w]_3 C[w]
    assert example_parabolic(3, 1, 9) == multiples(falling_poly(3), 9)
    for n in (4, 5):
        assert not example_parabolic(n, 1, 9).closed_under_w()
