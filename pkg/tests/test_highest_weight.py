from __future__ import annotations

import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from winfinity.dop import DOp, bracket, omega
from winfinity.exact import (
    W,
    Poly,
    QuasiPoly,
    apply_diffop,
    falling_poly,
    is_hermitian,
    is_psd,
    quasipoly_to_series,
    rank,
)
from winfinity.exact.linalg import matmul
from winfinity.highest_weight import (
    HighestWeight,
    LabelSeq,
    Level1Vector,
    S_operator,
    SingularWeightError,
    F_series,
    char_poly,
    classify_exponents,
    exponent_root_check,
    exponents,
    gamma_lift,
    gram_level1,
    labels_from_phi,
    lambda_eval,
    level1_act,
    phi_from_F,
    quasifinite_check,
    singular_check,
    unitary_classify,
)

from conftest import quasipolys, rationals

X = QuasiPoly.x()
half = Fraction(1, 2)


def e(r, p=1):
    return QuasiPoly.exp(r, p)


@st.composite
def canonical_phis(draw, max_terms=4, max_deg=2):
    q = draw(quasipolys(max_terms=max_terms, max_deg=max_deg))
    return q - q.value_at_zero()


def hw_of(n, c, phi):
    return HighestWeight(n, c, phi)


# labels and the F series ---------------------------------------------------

def test_labels_examples():
    assert labels_from_phi(hw_of(1, 0, e(1) - 1), 6).deltas == (0,) * 7
    assert labels_from_phi(hw_of(1, 0, e(2) - 1), 5).deltas == (1,) * 6
    assert labels_from_phi(hw_of(2, 0, e(2) - 1), 5).deltas == (0,) * 6


def test_labels_against_direct_division():
    # oracle: Delta = [d/dx]_n Gamma with Gamma = phi/(e^x-1) evaluated by
    # multiplying back: (e^x - 1) Gamma = phi
    hw = hw_of(2, 3, e(3) - 1 + X * e(-1))
    gamma = gamma_lift(hw, 12)
    assert (gamma * quasipoly_to_series(e(1) - 1, 12)) == quasipoly_to_series(hw.phi, 12)
    assert labels_from_phi(hw, 10).series() == apply_diffop(falling_poly(2), gamma)


def test_F_series_examples():
    assert F_series(LabelSeq(1, (0,) * 6)).is_zero()
    delta = quasipoly_to_series(e(1), 8)
    assert F_series(LabelSeq(1, delta.coeffs)) == quasipoly_to_series(e(2, 2), 7)
    gamma = quasipoly_to_series(e(1) + 1, 8)
    want = (quasipoly_to_series(e(1) - 1, 8) * gamma).derivative()
    assert F_series(LabelSeq(0, gamma.coeffs)) == want


@given(canonical_phis(), st.integers(0, 3))
def test_F_identity(phi, n):
    hw = hw_of(n, 0, phi)
    K = 15
    got = F_series(labels_from_phi(hw, K))
    assert got == quasipoly_to_series(apply_diffop(falling_poly(n + 1), phi), K - 1)


def test_quasifinite_examples():
    v = quasifinite_check(labels_from_phi(hw_of(1, 0, e(2) - 1), 16), 3)
    assert v.quasifinite and v.certificate == W - 2
    v = quasifinite_check(LabelSeq(2, (0,) * 17), 3)
    assert v.quasifinite and v.certificate == Poly.const(1)
    v = quasifinite_check(LabelSeq(1, tuple(math.factorial(l) for l in range(17))), 4)
    assert not v.quasifinite


@given(canonical_phis(max_terms=3, max_deg=1), st.integers(0, 3))
def test_quasifinite_certificate_is_char_factor(phi, n):
    hw = hw_of(n, 0, phi)
    v = quasifinite_check(labels_from_phi(hw, 28), 8)
    assert v.quasifinite
    if n >= 1:
        assert falling_poly(n) * v.certificate == char_poly(hw)


def test_phi_from_F_examples():
    assert phi_from_F(e(2, 2), 1, 1).phi == e(2) - 1
    assert phi_from_F(QuasiPoly(), 2, 5).phi == QuasiPoly()
    assert phi_from_F(e(3, 6), 2, 0).phi == e(3) - 1


@given(canonical_phis(), st.integers(1, 3), st.lists(rationals(), min_size=3, max_size=3))
def test_phi_kernel_independence(phi, n, cs):
    shifted = phi
    for i, c in enumerate(cs[:n], start=1):
        shifted = shifted + (e(1) - 1) ** i * c
    a, b = hw_of(n, 0, phi), hw_of(n, 0, shifted)
    assert labels_from_phi(a, 12) == labels_from_phi(b, 12)
    assert a.phi == b.phi


# characteristic polynomial ----------------------------------------------

def test_char_poly_examples():
    assert char_poly(hw_of(1, 0, e(2) - 1)) == W * (W - 2)
    assert char_poly(hw_of(1, 0, QuasiPoly())) == W
    assert char_poly(hw_of(2, 0, e(3) - 1)) == W * (W - 1) * (W - 3)


def _roots_with_multiplicity(b: Poly, candidates):
    roots = []
    for r in candidates:
        while b.degree > 0 and b(r) == 0:
            roots.append(r)
            b = b.exact_div(W - r)
    assert b.degree == 0, "all roots must be exactly representable"
    return roots


def proper_admissible_divisors(hw):
    b = char_poly(hw)
    n = hw.n
    a = b.exact_div(falling_poly(n)) if n else b
    cand = set(hw.F.exponents()) | set(range(-4, 8)) | set((hw.phi + hw.c).exponents())
    roots = _roots_with_multiplicity(a, sorted(cand, key=lambda r: (str(type(r)), str(r))))
    seen = set()
    for k in range(len(roots)):
        for sub in itertools.combinations(roots, k):
            if sub in seen:
                continue
            seen.add(sub)
            yield falling_poly(n) * Poly.from_roots(sub)


@pytest.mark.parametrize("n,c,phi", [
    (1, 1, e(2) - 1),
    (1, 0, e(2) - 1 + e(-1) - 1),
    (2, 0, e(3) - 1),
    (1, 3, X * e(half)),
    (0, 1, e(2) - 1),
    (0, 2, e(-1) - 1 + X),
    (3, 0, e(5) - 1 + e(-2, 2) - 2),
])
def test_char_poly_minimality(n, c, phi):
    hw = hw_of(n, c, phi)
    b = char_poly(hw)
    assert b.is_monic()
    g_deg = b.degree + 3
    assert singular_check(hw, b, g_deg)
    for d in proper_admissible_divisors(hw):
        assert not singular_check(hw, d, g_deg), d


@given(canonical_phis(max_terms=3, max_deg=1), st.integers(0, 2), rationals())
def test_char_poly_is_singular(phi, n, c):
    hw = hw_of(n, c, phi)
    b = char_poly(hw)
    assert singular_check(hw, b, b.degree + 2)
    if b.degree > n:
        # dropping one root always breaks singularity
        for r in set((hw.phi + hw.c).exponents()) | set(hw.F.exponents()):
            if b(r) == 0 and (b.exact_div(W - r)).degree >= n and \
                    falling_poly(n).divides(b.exact_div(W - r)):
                assert not singular_check(hw, b.exact_div(W - r), b.degree + 2)


def test_singular_check_examples():
    hw = hw_of(1, 1, e(2) - 1)
    assert singular_check(hw, W * (W - 2), 6)
    assert not singular_check(hw, W, 2)
    for n in range(4):
        assert singular_check(hw_of(n, 0, QuasiPoly()), falling_poly(n), 5)


def test_singular_check_via_bracket_oracle():
    # lambda of the zero mode of [t g(D)[D]_n, t^-1 b(D)] evaluated from brackets
    hw = hw_of(2, 4, e(3) - 1 + X * e(-1))
    b = char_poly(hw)
    for m in range(6):
        br = bracket(DOp({1: W ** m * falling_poly(2)}), DOp({-1: b}))
        assert lambda_eval(hw, br.mode(0), br.central) == 0


# exponents and their roots ----------------------------------------

def test_exponents_examples():
    assert exponents(hw_of(1, 1, e(2) - 1)).terms == ((2, Poly.const(1)),)
    assert exponents(hw_of(1, 0, QuasiPoly())).terms == ()
    ex = exponents(hw_of(1, 5, e(-1) - 1))
    assert dict(ex.terms) == {-1: Poly.const(1), 0: Poly.const(4)}


@given(canonical_phis(), st.integers(0, 3), rationals())
def test_exponent_charge(phi, n, c):
    assert exponents(hw_of(n, c, phi)).central_charge == c


def test_exponent_roots_examples():
    r = exponent_root_check(hw_of(1, 1, e(2) - 1))
    assert r.ok and r.entries == ((2, "root"),)
    assert exponent_root_check(hw_of(1, 0, QuasiPoly())).ok
    r = exponent_root_check(hw_of(1, 5, e(2) - 1))
    assert r.ok and dict(r.entries) == {2: "root", 0: "exempt"}


@given(canonical_phis(), st.integers(1, 3), rationals())
def test_exponents_are_roots(phi, n, c):
    assert exponent_root_check(hw_of(n, c, phi)).ok


def test_gamma_lift_examples():
    assert gamma_lift(hw_of(1, 0, e(2) - 1), 6) == quasipoly_to_series(e(1) + 1, 6)
    assert gamma_lift(hw_of(1, 0, QuasiPoly()), 4).is_zero()
    assert gamma_lift(hw_of(2, 0, e(3) - 1), 4).coeffs == (3, 3, 5, 9, 17)
    with pytest.raises(ValueError):
        gamma_lift(hw_of(0, 0, e(3) - 1), 4)


@given(canonical_phis(), st.integers(1, 3))
def test_gamma_lift_restricts(phi, n):
    hw = hw_of(n, 0, phi)
    assert apply_diffop(falling_poly(n), gamma_lift(hw, 12)) == labels_from_phi(hw, 12 - n).series()


# lambda, level-one action, S ---------------------------------------------

def test_lambda_eval_examples():
    hw = hw_of(1, 7, e(2) - 1)
    assert lambda_eval(hw, Poly([0, -2])) == 2
    assert lambda_eval(hw, Poly(), 1) == 7
    assert lambda_eval(hw, Poly([0, -1, -3])) == 4
    with pytest.raises(ValueError):
        lambda_eval(hw_of(2, 0, e(2) - 1), W)


def test_level1_act_examples():
    hw = hw_of(1, 0, e(2) - 1)
    res = level1_act(hw, W, Level1Vector(1, W))
    assert res.vector.q == -W
    assert res.scalar == -hw.delta(0)
    res = level1_act(hw, Poly(), Level1Vector(1, W ** 2))
    assert res.vector.q.is_zero() and res.scalar == 0


def test_S_examples():
    half_ = Fraction(-1, 2)
    assert S_operator(hw_of(1, 0, e(2) - 1)) == Poly([0, 0, half_])
    # Delta_0 = 1, Delta_1 = -1: 2 e^{x/2} ... use explicit labels via phi
    hw = hw_of(1, 0, (e(-1) - 1) * 1)
    assert hw.delta(0) == 1 and hw.delta(1) == -1
    assert S_operator(hw) == Poly([0, half_, half_])
    with pytest.raises(SingularWeightError):
        S_operator(hw_of(1, 0, (e(2) - 1) * -1))


@given(canonical_phis(max_terms=3))
def test_S_raises_level_one_vectors(phi):
    hw = hw_of(1, 0, phi)
    assume(1 + hw.delta(0) != 0)
    S = S_operator(hw)
    v = Level1Vector(1, W)
    for j in range(7):
        assert v.q == W ** (j + 1)
        res = level1_act(hw, S, v)
        assert res.total().q == W * v.q
        v = res.total()


# Gram matrix ---------------------------------------------------------------

def test_gram_examples():
    assert gram_level1(hw_of(1, 1, e(2) - 1), 2) == [[2, 4], [4, 8]]
    assert gram_level1(hw_of(1, 0, QuasiPoly()), 3) == [[0] * 3] * 3
    assert gram_level1(hw_of(1, 1, e(-1) - 1), 2) == [[2, -2], [-2, 2]]
    with pytest.raises(ValueError):
        gram_level1(hw_of(2, 0, e(3) - 1), 2)


def test_gram_entries_from_omega_and_bracket():
    # oracle: <t^-1 p v, t^-1 q v> = lambda([omega(t^-1 p(D)), t^-1 q(D)])
    hw = hw_of(1, 2, e(3) - 1 + X * e(-2))
    G = gram_level1(hw, 4)
    for i in range(4):
        for j in range(4):
            br = bracket(omega(DOp({-1: W ** (i + 1)})), DOp({-1: W ** (j + 1)}))
            assert G[i][j] == lambda_eval(hw, br.mode(0), br.central)


@given(canonical_phis(), st.integers(1, 5))
def test_gram_hermitian_and_rank(phi, d):
    hw = hw_of(1, 0, phi)
    G = gram_level1(hw, d)
    assert is_hermitian(G)
    deg_a = char_poly(hw).degree - 1
    assert rank(G) == min(d, deg_a)


@given(canonical_phis())
def test_gram_kernel_contains_char_vector(phi):
    hw = hw_of(1, 0, phi)
    b = char_poly(hw)
    d = b.degree + 1
    vec = [b.coeff(j + 1) for j in range(d)]
    assert all(x == 0 for x in matmul(gram_level1(hw, d), vec))


# unitarity -----------------------------------------------------------------

def test_classify_examples():
    assert unitary_classify(hw_of(1, 1, e(2) - 1)).unitary
    assert classify_exponents([(half, -2), (-half, 1)]).unitary
    v = classify_exponents([(half, 1), (-half, -3), (Fraction(3, 2), 1)])
    assert not v.unitary and v.reason == "spread"


def test_classify_rejections():
    assert classify_exponents([]).unitary
    assert classify_exponents([(2, W + 1)]).reason == "polynomial-multiplicity"
    from winfinity.exact import gaussian
    assert classify_exponents([(gaussian(0, 1), 1)]).reason == "complex-exponent"
    assert classify_exponents([(1, -1)]).reason == "integral-class-multiplicity"
    assert classify_exponents([(1, half)]).reason == "integral-class-multiplicity"
    assert classify_exponents([(half, 1), (-half, 1)]).reason == "negative-count"
    assert classify_exponents([(half, -1), (-half, 1)]).reason == "class-charge"
    assert classify_exponents([(half, Fraction(-3, 2)), (-half, 1)]).reason == \
        "non-integer-multiplicity"


UNITARY_CORPUS = [
    (1, e(2) - 1),
    (1, e(-1) - 1),
    (3, e(2, 2) + e(-1) - 3),
    (-1, e(half, -2) + e(-half) + 1),
    (-2, e(Fraction(1, 3), -3) + e(Fraction(-2, 3)) + 2),
    (4, e(1) + e(-3, 2) - 3),
    (-2, e(half, -2) + e(-half) + e(Fraction(1, 3), -2) + e(Fraction(-2, 3)) + 2),
]


@pytest.mark.parametrize("c,phi", UNITARY_CORPUS)
def test_unitary_implies_psd_gram(c, phi):
    hw = hw_of(1, c, phi)
    assert unitary_classify(hw).unitary
    for d in range(1, 6):
        assert is_psd(gram_level1(hw, d))


@pytest.mark.parametrize("phi", [X * e(2), X * X * e(-1) + X, X * e(half), X * e(3) + e(3) - 1])
def test_repeated_root_breaks_positivity(phi):
    hw = hw_of(1, 0, phi)
    a = char_poly(hw).exact_div(W)
    assert a.degree >= 2
    G = gram_level1(hw, a.degree)
    assert rank(G) == a.degree
    assert not is_psd(G)
    assert not unitary_classify(hw).unitary
