import math
from fractions import Fraction

import pytest

from bezoutcheck.errors import BetaDomainError, SingularDenominatorError
from bezoutcheck.identities import gamma_ratio_sides
from bezoutcheck.numeric_core import binomial
from bezoutcheck.polynomial import DensePoly, evaluate
from bezoutcheck.special_fn import (
    BetaParams,
    beta_shift_ratio,
    complete_beta_integer,
    incomplete_beta,
    incomplete_beta_estimate,
    incomplete_beta_exact,
    incomplete_beta_numeric,
    verify_beta_identity,
)


@pytest.mark.parametrize(
    "p, q, coeffs",
    [
        (1, 1, [0, 1]),
        (2, 1, [0, 0, Fraction(1, 2)]),
        (2, 2, [0, 0, Fraction(1, 2), Fraction(-1, 3)]),
    ],
)
def test_incomplete_beta_exact(p, q, coeffs):
    assert incomplete_beta_exact(p, q) == DensePoly.of(coeffs)


@pytest.mark.parametrize("p, q", [(0, 1), (1, 0), (-1, 2)])
def test_incomplete_beta_exact_domain(p, q):
    with pytest.raises(BetaDomainError):
        incomplete_beta_exact(p, q)


def test_exact_value():
    # int_0^(1/2) t (1 - t)^2 dt
    assert evaluate(incomplete_beta_exact(2, 3), Fraction(1, 2)) == Fraction(11, 192)
    assert incomplete_beta(2, 3, Fraction(1, 2)) == Fraction(11, 192)


@pytest.mark.parametrize("p", range(1, 6))
@pytest.mark.parametrize("q", range(1, 6))
def test_complete_beta_consistency(p, q):
    complete = complete_beta_integer(p, q)
    assert evaluate(incomplete_beta_exact(p, q), 1) == complete
    for dp in range(4):
        for dq in range(4):
            shifted = complete_beta_integer(p + dp, q + dq)
            assert beta_shift_ratio(dp, dq, p, q) * complete == shifted


def test_beta_shift_ratio():
    alpha, beta = Fraction(2, 3), Fraction(5, 7)
    assert beta_shift_ratio(0, 0, alpha, beta) == 1
    assert beta_shift_ratio(1, 0, alpha, beta) == alpha / (alpha + beta)
    assert beta_shift_ratio(2, 1, Fraction(1, 2), Fraction(1, 2)) == Fraction(1, 16)


def test_beta_shift_ratio_singular():
    with pytest.raises(SingularDenominatorError):
        beta_shift_ratio(2, 1, Fraction(1, 2), Fraction(-3, 2))


def exact_numeric_gap(p, q, a):
    exact = evaluate(incomplete_beta_exact(p, q), a)
    return abs(incomplete_beta_numeric(float(p), float(q), float(a)) - float(exact))


@pytest.mark.parametrize("p", range(1, 7))
@pytest.mark.parametrize("q", range(1, 7))
def test_exact_numeric_agreement(p, q):
    for a in (Fraction(1, 10), Fraction(1, 3), Fraction(1, 2), Fraction(9, 10)):
        assert exact_numeric_gap(p, q, a) <= 1e-12


def complete_beta(x, y):
    return math.exp(math.lgamma(x) + math.lgamma(y) - math.lgamma(x + y))


@pytest.mark.parametrize(
    "x, y, a", [(1.364, 0.151, 0.982), (0.151, 1.364, 0.99), (0.7, 0.2, 0.999)]
)
def test_numeric_near_upper_limit_with_small_parameter(x, y, a):
    value, error = incomplete_beta_estimate(x, y, a)
    reflected = incomplete_beta_numeric(y, x, 1 - a)
    assert abs(value + reflected - complete_beta(x, y)) <= 1e-11
    assert error <= 1e-9 * max(1.0, value)


def test_numeric_trivial_cases():
    assert incomplete_beta_numeric(0.3, 2.5, 0.0) == 0.0
    assert abs(incomplete_beta_numeric(1.0, 1.0, 0.37) - 0.37) <= 1e-12
    assert abs(incomplete_beta_numeric(2.0, 3.0, 0.5) - 11 / 192) <= 1e-12


def test_numeric_singular_endpoints():
    # B(1/2, 1/2) = pi; both endpoints carry an integrable singularity
    assert abs(incomplete_beta_numeric(0.5, 0.5, 1.0) - math.pi) <= 1e-12
    # B(1/2, 1) = 2
    assert abs(incomplete_beta_numeric(0.5, 1.0, 1.0) - 2.0) <= 1e-12
    value, error = incomplete_beta_estimate(0.25, 0.75, 0.9)
    assert 0 < value and 0 <= error <= 1e-12


def test_numeric_symmetry():
    left = incomplete_beta_numeric(0.7, 1.9, 0.35)
    right = incomplete_beta_numeric(1.9, 0.7, 1.0) - incomplete_beta_numeric(1.9, 0.7, 0.65)
    assert abs(left - right) <= 1e-11


@pytest.mark.parametrize("x, y", [(0.3, 0.3), (0.7, 1.9), (2.5, 0.4)])
def test_numeric_is_monotone_in_a(x, y):
    values = [incomplete_beta_numeric(x, y, i / 49) for i in range(50)]
    assert all(b >= a for a, b in zip(values, values[1:]))


@pytest.mark.parametrize(
    "x, y, a",
    [(0.0, 1.0, 0.5), (1.0, -1.0, 0.5), (1.0, 1.0, -0.1), (1.0, 1.0, 1.5)],
)
def test_numeric_domain(x, y, a):
    with pytest.raises(BetaDomainError):
        incomplete_beta_numeric(x, y, a)
    with pytest.raises(BetaDomainError):
        BetaParams(x, y, a)


def test_dispatcher_picks_numeric_for_real_parameters():
    value = incomplete_beta(Fraction(1, 2), Fraction(1, 2), 1)
    assert isinstance(value, float)
    assert abs(value - math.pi) <= 1e-12


def test_beta_identity_trivial():
    report = verify_beta_identity(0, 0, 1, 1)
    assert report.passed
    assert report.method.startswith("exact")


@pytest.mark.parametrize("alpha", range(1, 6))
@pytest.mark.parametrize("beta", range(1, 6))
def test_beta_identity_exact_grid(alpha, beta):
    for n in range(0, 9, 2):
        for m in range(0, 9, 3):
            assert verify_beta_identity(n, m, alpha, beta).passed


def test_beta_identity_exact_at_a_point():
    report = verify_beta_identity(1, 1, 2, 3, Fraction(1, 3))
    assert report.passed
    assert report.parameters["a"] == Fraction(1, 3)


def test_beta_identity_numeric():
    report = verify_beta_identity(1, 2, 0.7, 1.9, 0.35)
    assert report.passed
    assert report.method.startswith("numeric")
    assert abs(report.numeric_defect) <= 1e-10


@pytest.mark.parametrize(
    "alpha, beta, a", [(0.1, 2.9, 1.0), (2.2, 0.15, 0.8), (0.5, 0.5, 0.5)]
)
def test_beta_identity_numeric_small_parameters(alpha, beta, a):
    for n in range(5):
        for m in range(5):
            assert verify_beta_identity(n, m, alpha, beta, a).passed


def test_beta_identity_corrupted():
    assert not verify_beta_identity(1, 1, 2, 3, corrupt=True).passed
    assert not verify_beta_identity(1, 2, 0.7, 1.9, 0.35, corrupt=True).passed


def test_beta_identity_domain():
    with pytest.raises(BetaDomainError):
        verify_beta_identity(1, 1, -1, 2)
    with pytest.raises(BetaDomainError):
        verify_beta_identity(1, 1, 1, 2, Fraction(3, 2))


@pytest.mark.parametrize("n, m", [(0, 0), (2, 3), (6, 6)])
@pytest.mark.parametrize("alpha, beta", [(1, 1), (2, 5), (4, 3)])
def test_complete_form_matches_gamma_ratio(n, m, alpha, beta):
    # at a = 1 each B term divided by B(alpha, beta) is a beta shift ratio
    complete = complete_beta_integer(alpha, beta)
    first = sum(
        binomial(n + k, k) * evaluate(incomplete_beta_exact(alpha + k, beta + n + 1), 1)
        for k in range(m + 1)
    )
    ratios = sum(
        binomial(n + k, k) * beta_shift_ratio(k, n + 1, alpha, beta) for k in range(m + 1)
    )
    assert first / complete == ratios
    second = sum(
        binomial(m + k, k) * beta_shift_ratio(m + 1, k, alpha, beta) for k in range(n + 1)
    )
    assert ratios + second == gamma_ratio_sides(n, m, alpha, beta) == 1
