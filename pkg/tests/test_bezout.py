from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bezoutcheck.bezout import (
    BezoutSolution,
    Method,
    bernstein_split_check,
    bezout_residual,
    closed_form,
    closed_form_factored,
    cross_check,
    derivative_identity_residual,
    euclid_solution,
    extended_euclid,
    mu,
    ode_residuals,
    recurrence_solution,
    symmetric_partner,
)
from bezoutcheck.errors import BothZeroError, PreconditionError, UnsupportedBasisError
from bezoutcheck.polynomial import (
    ONE_MINUS_X,
    ONE_POLY,
    ZERO_POLY,
    Basis,
    DensePoly,
    power,
)

indices = st.integers(0, 12)


@pytest.mark.parametrize(
    "n, m, P, Q",
    [
        (0, 0, [1], [1]),
        (1, 1, [3, -2], [1, 2]),
        (2, 1, [6, -8, 3], [1, 3]),
        (1, 2, [4, -3], [1, 2, 3]),
    ],
)
def test_closed_form_examples(n, m, P, Q):
    sol = closed_form(n, m)
    assert sol.P == DensePoly.of(P)
    assert sol.Q == DensePoly.of(Q)
    assert sol.method is Method.CLOSED_FORM
    assert bezout_residual(sol).is_zero()


def test_mu():
    assert mu(0, 0) == 1
    assert mu(1, 1) == 6
    assert mu(2, 1) == 12


def test_negative_index():
    with pytest.raises(PreconditionError):
        closed_form(-1, 0)


@given(indices, indices)
def test_constructions_agree(n, m):
    reference = closed_form(n, m)
    assert recurrence_solution(n, m).same_pair(reference)
    assert euclid_solution(n, m).same_pair(reference)
    assert closed_form_factored(n, m) == (reference.P, reference.Q)


@given(indices, indices)
def test_degrees_and_integrality(n, m):
    sol = closed_form(n, m)
    assert sol.P.degree == n
    assert sol.Q.degree == m
    assert all(c.denominator == 1 for c in sol.P.coeffs + sol.Q.coeffs)
    assert all(c > 0 for c in sol.Q.coeffs)
    assert [c > 0 for c in sol.P.coeffs] == [k % 2 == 0 for k in range(n + 1)]


@given(indices, indices)
def test_symmetry_and_ode(n, m):
    sol = closed_form(n, m)
    assert symmetric_partner(sol) == sol.P
    assert all(r.is_zero() for r in ode_residuals(sol))
    assert derivative_identity_residual(sol).is_zero()
    assert mu(n, m) == (n + 1) * sol.Q(1)


def test_wrong_pair_has_nonzero_residual():
    sol = closed_form(2, 2)
    broken = BezoutSolution(2, 2, sol.P, sol.Q + ONE_POLY, Method.CLOSED_FORM)
    assert not bezout_residual(broken).is_zero()
    assert not derivative_identity_residual(broken).is_zero()
    assert not all(r.is_zero() for r in ode_residuals(broken))


def test_extended_euclid_coprime():
    u, v, g = extended_euclid(DensePoly.monomial(2), power(ONE_MINUS_X, 2))
    assert g == ONE_POLY
    assert u == DensePoly.of([3, -2])
    assert v == DensePoly.of([1, 2])


def test_extended_euclid_common_factor():
    A = DensePoly.of([-1, 0, 1])
    B = DensePoly.of([-2, 2])
    u, v, g = extended_euclid(A, B)
    assert g == DensePoly.of([-1, 1])
    assert u == ZERO_POLY
    assert v == DensePoly.constant(Fraction(1, 2))


def test_extended_euclid_divisible_arguments():
    u, v, g = extended_euclid(DensePoly.monomial(2), DensePoly.monomial(1))
    assert g == DensePoly.monomial(1)
    assert u == ZERO_POLY
    assert v == ONE_POLY


def test_extended_euclid_one_zero_argument():
    u, v, g = extended_euclid(ZERO_POLY, DensePoly.of([2, 4]))
    assert g == DensePoly.of([Fraction(1, 2), 1])
    assert u == ZERO_POLY
    assert v == DensePoly.constant(Fraction(1, 4))


def test_extended_euclid_errors():
    with pytest.raises(BothZeroError):
        extended_euclid(ZERO_POLY, ZERO_POLY)
    with pytest.raises(UnsupportedBasisError):
        extended_euclid(DensePoly.of([1, 1], Basis.RISING), ONE_POLY)


@given(indices, indices)
def test_bernstein_split(n, m):
    report = bernstein_split_check(n, m)
    assert report.passed
    assert report.residual == "0"


def test_bernstein_split_corrupted():
    assert not bernstein_split_check(2, 3, corrupt=True).passed


@pytest.mark.parametrize("n, m", [(0, 0), (3, 5), (7, 2)])
def test_cross_check(n, m):
    report = cross_check(n, m)
    assert report.passed, report.residual
    assert report.identity_name == "bezout-cross-check"
    assert report.parameters == {"n": n, "m": m}


@pytest.mark.parametrize("n, m", [(0, 0), (3, 5)])
def test_cross_check_corrupted(n, m):
    report = cross_check(n, m, corrupt=True)
    assert not report.passed
    assert "Q recurrence" in report.residual
