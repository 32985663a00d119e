from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bezoutcheck.bezout import closed_form
from bezoutcheck.errors import PreconditionError, SingularDenominatorError
from bezoutcheck.identities import (
    brill_sum,
    gamma_ratio_sides,
    lemma42_triple,
    remark62_bivariate_sides,
    remark63_from_remark62_coefficients,
    remark63_sides,
    second_proof_coefficients,
    twin_polynomial,
    u_poly,
    v_poly,
    verify_brill,
    verify_cancellation,
    verify_chaundy_bullard,
    verify_first_proof,
    verify_gamma_ratio_form,
    verify_lemma42,
    verify_remark62,
    verify_remark62_beta_form,
    verify_remark63,
    verify_second_proof_shape,
    verify_symmetry,
    verify_twin,
    w_telescoping_check,
    w_values,
)
from bezoutcheck.polynomial import ONE_POLY, BiPoly, DensePoly, bi_eval

small = st.integers(0, 8)
positive_rationals = st.fractions(min_value=Fraction(1, 50), max_value=50, max_denominator=50)


def test_partition_of_unity_example():
    # n = 0, m = 1: x^2 + (1 - x)(1 + x) = 1
    assert u_poly(0, 1) == DensePoly.of([0, 0, 1])
    assert v_poly(0, 1) == DensePoly.of([1, 0, -1])
    assert u_poly(0, 1) + v_poly(0, 1) == ONE_POLY


@given(small, small)
def test_chaundy_bullard(n, m):
    report = verify_chaundy_bullard(n, m)
    assert report.passed
    assert report.residual == "0"
    assert report.parameters == {"n": n, "m": m}


def test_chaundy_bullard_large():
    assert verify_chaundy_bullard(20, 20).passed


@given(small, small)
def test_proof_chains(n, m):
    assert verify_symmetry(n, m).passed
    assert verify_first_proof(n, m).passed
    assert verify_second_proof_shape(n, m).passed
    assert verify_cancellation(n, m).passed


def test_second_proof_coefficients_example():
    coeffs = second_proof_coefficients(1, 1)
    assert coeffs.a == (3, -2)
    assert coeffs.b == (1, -2, 1)
    assert coeffs.c == (1, 2)
    assert coeffs.d == (1, 0, -3, 2)


@given(small, small)
def test_a_coefficients_are_p(n, m):
    coeffs = second_proof_coefficients(n, m)
    assert DensePoly.of(coeffs.a) == closed_form(n, m).P
    assert coeffs.d[0] == 1
    assert not any(coeffs.d[1 : m + 1])


def test_brill_small_cases():
    x = Fraction(3, 7)
    assert brill_sum(0, x) == (x, x)
    left, right = brill_sum(1, x)
    assert left == right == x * (x - 1) / 2


@given(st.integers(0, 10), st.fractions(min_value=-30, max_value=30, max_denominator=30))
def test_brill(p, x):
    assert verify_brill(p, x).passed


def test_lemma42_example():
    assert lemma42_triple(0, 1, 1) == (3, 3, 3)


def test_lemma42_precondition():
    with pytest.raises(PreconditionError):
        lemma42_triple(3, 2, 0)
    with pytest.raises(PreconditionError):
        w_values(3, 2, 0)


@given(small, small, small)
def test_lemma42_and_telescoping(k, n, m):
    if k <= n:
        assert verify_lemma42(k, n, m).passed
        assert w_telescoping_check(k, n, m).passed


def test_w_values_example():
    W = w_values(0, 1, 1)
    assert W[0] == 0
    assert -W[2] == 3


def test_remark62_example():
    left, middle, right = remark62_bivariate_sides(0, 1)
    expected = BiPoly.alpha() + BiPoly.alpha() + BiPoly.beta()
    assert left == middle == right == expected


@pytest.mark.parametrize("n, m", [(0, 0), (0, 1), (2, 3), (4, 4), (5, 2)])
def test_remark62(n, m):
    report = verify_remark62(n, m)
    assert report.passed, report.residual
    assert "complex" in report.method


def test_remark62_sides_at_a_point():
    left, _, right = remark62_bivariate_sides(3, 2)
    point = (Fraction(1, 3), Fraction(-5, 2))
    assert bi_eval(left, *point) == bi_eval(right, *point)


@given(st.integers(0, 5), st.integers(0, 5), positive_rationals, positive_rationals)
def test_remark62_beta_form(n, m, alpha, beta):
    assert verify_remark62_beta_form(n, m, alpha, beta).passed


def test_remark63_example():
    assert remark63_sides(0, 1, 0) == (Fraction(1, 2), Fraction(1, 2))


@given(small, small, small)
def test_remark63(k, m, n):
    if k <= m:
        assert verify_remark63(k, m, n).passed


def test_remark63_precondition():
    with pytest.raises(PreconditionError):
        remark63_sides(2, 1, 0)


@pytest.mark.parametrize("n, m", [(0, 0), (2, 5), (6, 3)])
def test_remark63_from_remark62(n, m):
    coefficients = remark63_from_remark62_coefficients(n, m)
    assert coefficients == [remark63_sides(k, m, n)[0] for k in range(m + 1)]


def test_twin_example():
    # (1 - x)(2 - x)/2 + x(3 - x)/2 = 1
    assert twin_polynomial(1, 0) == ONE_POLY


@given(st.integers(0, 10), st.integers(0, 10))
def test_twin(n, m):
    report = verify_twin(n, m)
    assert report.passed, report.residual


@given(st.integers(0, 6), st.integers(0, 6), positive_rationals, positive_rationals)
def test_gamma_ratio(n, m, alpha, beta):
    assert gamma_ratio_sides(n, m, alpha, beta) == 1
    assert verify_gamma_ratio_form(n, m, alpha, beta).passed


@given(st.integers(0, 6), st.integers(0, 6), st.fractions(max_denominator=20))
def test_gamma_ratio_on_the_line_alpha_plus_beta_one(n, m, x):
    assert gamma_ratio_sides(n, m, x, 1 - x) == twin_polynomial(n, m)(x)


def test_gamma_ratio_negative_parameters():
    # the identity is rational in alpha, beta; only poles are excluded
    assert gamma_ratio_sides(2, 1, Fraction(-7, 2), Fraction(1, 3)) == 1


def test_gamma_ratio_singular():
    with pytest.raises(SingularDenominatorError):
        gamma_ratio_sides(1, 1, 1, -1)
    with pytest.raises(SingularDenominatorError):
        verify_gamma_ratio_form(1, 1, Fraction(1, 2), Fraction(-7, 2))


@pytest.mark.parametrize(
    "verify",
    [
        lambda c: verify_chaundy_bullard(2, 3, corrupt=c),
        lambda c: verify_symmetry(2, 3, corrupt=c),
        lambda c: verify_first_proof(2, 3, corrupt=c),
        lambda c: verify_second_proof_shape(2, 3, corrupt=c),
        lambda c: verify_cancellation(2, 3, corrupt=c),
        lambda c: verify_brill(3, Fraction(2, 5), corrupt=c),
        lambda c: verify_lemma42(1, 3, 2, corrupt=c),
        lambda c: w_telescoping_check(1, 3, 2, corrupt=c),
        lambda c: verify_remark62(2, 2, corrupt=c),
        lambda c: verify_remark62_beta_form(2, 2, Fraction(1, 2), 3, corrupt=c),
        lambda c: verify_remark63(1, 3, 2, corrupt=c),
        lambda c: verify_twin(2, 3, corrupt=c),
        lambda c: verify_gamma_ratio_form(2, 3, Fraction(2, 3), Fraction(5, 4), corrupt=c),
    ],
)
def test_corruption_is_detected(verify):
    assert verify(False).passed
    report = verify(True)
    assert not report.passed
    assert report.residual != "0"
