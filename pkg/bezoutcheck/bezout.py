"""The unique pair (P, Q) with x^(m+1) P + (1-x)^(n+1) Q = 1, deg P <= n, deg Q <= m.

Three independent constructions are provided (closed form, coefficient
recurrence, extended Euclid) plus the mixed-basis factored form; agreement
between them is the executable form of uniqueness.
"""

import enum
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

from .errors import BothZeroError, Failure, IntegralityError, UnsupportedBasisError
from .numeric_core import binomial, check_index, sign
from .polynomial import (
    ONE_MINUS_X,
    ONE_POLY,
    X,
    ZERO_POLY,
    Basis,
    DensePoly,
    compose_one_minus_x,
    derivative,
    divmod_poly,
    power,
    scale,
    shift_up,
)
from .report import CheckReport

logger = logging.getLogger(__name__)


@enum.unique
class Method(enum.Enum):
    CLOSED_FORM = "closed-form"
    RECURRENCE = "recurrence"
    EUCLID_ORACLE = "euclid-oracle"


@dataclass(frozen=True)
class BezoutSolution:
    n: int
    m: int
    P: DensePoly
    Q: DensePoly
    method: Method

    def same_pair(self, other: "BezoutSolution") -> bool:
        return (self.n, self.m, self.P, self.Q) == (other.n, other.m, other.P, other.Q)


def mu(n: int, m: int) -> int:
    check_index("n", n)
    check_index("m", m)
    return (n + 1) * binomial(n + m + 1, m)


def _closed_form_p(n: int, m: int, k: int) -> int:
    value = (
        sign(k)
        * Fraction(n + m + 1, k + m + 1)
        * binomial(n + m, m)
        * binomial(n, k)
    )
    if value.denominator != 1:
        raise IntegralityError(
            f"p_{k} for (n, m) = ({n}, {m}) is not an integer: {value}"
        )
    return value.numerator


def closed_form(n: int, m: int) -> BezoutSolution:
    check_index("n", n)
    check_index("m", m)
    P = DensePoly.of(_closed_form_p(n, m, k) for k in range(n + 1))
    Q = DensePoly.of(binomial(n + k, k) for k in range(m + 1))
    return BezoutSolution(n, m, P, Q, Method.CLOSED_FORM)


def closed_form_factored(n: int, m: int) -> Tuple[DensePoly, DensePoly]:
    """Expand the sums of binomial-weighted x^i (1-x)^j products."""
    check_index("n", n)
    check_index("m", m)
    N = n + m + 1
    P = ZERO_POLY
    for k in range(n + 1):
        P = P + scale(shift_up(power(ONE_MINUS_X, k), n - k), binomial(N, k))
    Q = ZERO_POLY
    for k in range(m + 1):
        Q = Q + scale(shift_up(power(ONE_MINUS_X, m - k), k), binomial(N, k))
    return P, Q


def recurrence_solution(n: int, m: int) -> BezoutSolution:
    check_index("n", n)
    check_index("m", m)
    q = [Fraction(1)]
    for k in range(m):
        q.append(q[k] * Fraction(n + k + 1, k + 1))
    if q[m] != binomial(n + m, m):
        raise Failure(
            f"recurrence top coefficient q_{m} = {q[m]} disagrees with C(n+m, m)"
        )
    constant = mu(n, m)
    p = [sign(k) * Fraction(constant * binomial(n, k), m + k + 1) for k in range(n + 1)]
    return BezoutSolution(n, m, DensePoly.of(p), DensePoly.of(q), Method.RECURRENCE)


def bezout_residual(sol: BezoutSolution) -> DensePoly:
    return (
        shift_up(sol.P, sol.m + 1)
        + power(ONE_MINUS_X, sol.n + 1) * sol.Q
        - ONE_POLY
    )


def ode_residuals(sol: BezoutSolution) -> Tuple[DensePoly, DensePoly]:
    n, m = sol.n, sol.m
    constant = mu(n, m)
    first = (
        scale(sol.Q, n + 1)
        - ONE_MINUS_X * derivative(sol.Q)
        - DensePoly.monomial(m, constant)
    )
    second = (
        scale(sol.P, m + 1)
        + X * derivative(sol.P)
        - scale(power(ONE_MINUS_X, n), constant)
    )
    return first, second


def derivative_identity_residual(sol: BezoutSolution) -> DensePoly:
    """The derivative of the Bezout identity, split across x^m and (1-x)^n."""
    n, m = sol.n, sol.m
    left = shift_up(scale(sol.P, m + 1) + X * derivative(sol.P), m)
    right = power(ONE_MINUS_X, n) * (
        scale(sol.Q, n + 1) - ONE_MINUS_X * derivative(sol.Q)
    )
    return left - right


def _monic(p: DensePoly) -> Tuple[DensePoly, Fraction]:
    lead = p.leading_coefficient()
    return scale(p, 1 / lead), lead


def extended_euclid(
    A: DensePoly, B: DensePoly
) -> Tuple[DensePoly, DensePoly, DensePoly]:
    """Return (u, v, g) with A u + B v = g, g the monic gcd.

    The cofactors are normalised to deg u < deg B - deg g and
    deg v < deg A - deg g, which makes them unique.
    """
    for p in (A, B):
        if p.basis is not Basis.MONOMIAL:
            raise UnsupportedBasisError("extended_euclid works in the monomial basis")
    if A.is_zero() and B.is_zero():
        raise BothZeroError("extended_euclid needs at least one nonzero polynomial")

    r0, s0, t0 = A, ONE_POLY, ZERO_POLY
    r1, s1, t1 = B, ZERO_POLY, ONE_POLY
    if not r0.is_zero():
        r0, lead = _monic(r0)
        s0 = scale(s0, 1 / lead)
    if not r1.is_zero():
        r1, lead = _monic(r1)
        t1 = scale(t1, 1 / lead)
    steps = 0
    while not r1.is_zero():
        quotient, remainder = divmod_poly(r0, r1)
        s_next = s0 - quotient * s1
        t_next = t0 - quotient * t1
        if not remainder.is_zero():
            remainder, lead = _monic(remainder)
            s_next = scale(s_next, 1 / lead)
            t_next = scale(t_next, 1 / lead)
        r0, s0, t0, r1, s1, t1 = r1, s1, t1, remainder, s_next, t_next
        steps += 1
    g, u, v = r0, s0, t0
    logger.debug("extended_euclid: %d division steps, deg g = %s", steps, g.degree)

    if not B.is_zero():
        reduced_b, rest = divmod_poly(B, g)
        if not rest.is_zero():
            raise Failure("gcd does not divide its argument")
        _, u = divmod_poly(u, reduced_b)
        v, rest = divmod_poly(g - A * u, B)
        if not rest.is_zero():
            raise Failure("cofactor normalisation left a remainder")
    return u, v, g


def euclid_solution(n: int, m: int) -> BezoutSolution:
    check_index("n", n)
    check_index("m", m)
    u, v, g = extended_euclid(
        DensePoly.monomial(m + 1), power(ONE_MINUS_X, n + 1)
    )
    if g != ONE_POLY:
        raise Failure(f"x^{m + 1} and (1-x)^{n + 1} reported as not coprime: {g}")
    return BezoutSolution(n, m, u, v, Method.EUCLID_ORACLE)


def symmetric_partner(sol: BezoutSolution) -> DensePoly:
    """Q of the swapped problem, reflected: should equal P of this one."""
    return compose_one_minus_x(closed_form(sol.m, sol.n).Q)


def bernstein_split_check(n: int, m: int, corrupt: bool = False) -> CheckReport:
    """Both halves of the identity are tails of the expansion of (x + (1-x))^(n+m+1)."""
    sol = closed_form(n, m)
    if corrupt:
        sol = BezoutSolution(n, m, sol.P + DensePoly.monomial(0), sol.Q, sol.method)
    P = sol.P
    N = n + m + 1
    terms = [
        scale(shift_up(power(ONE_MINUS_X, N - k), k), binomial(N, k))
        for k in range(N + 1)
    ]
    lower = ZERO_POLY
    for term in terms[: m + 1]:
        lower = lower + term
    upper = ZERO_POLY
    for term in terms[m + 1 :]:
        upper = upper + term
    return CheckReport.exact(
        "bernstein",
        {"n": n, "m": m},
        [
            ("upper", shift_up(P, m + 1) - upper),
            ("lower", power(ONE_MINUS_X, n + 1) * sol.Q - lower),
            ("total", lower + upper - ONE_POLY),
            ("bezout", bezout_residual(sol)),
        ],
        "binomial expansion of (x + (1 - x))^(n+m+1), monomial basis",
    )


def cross_check(n: int, m: int, corrupt: bool = False) -> CheckReport:
    reference = closed_form(n, m)
    if corrupt:
        reference = BezoutSolution(
            n,
            m,
            reference.P,
            reference.Q + DensePoly.monomial(min(1, m)),
            reference.method,
        )
    factored_p, factored_q = closed_form_factored(n, m)
    recurrence = recurrence_solution(n, m)
    oracle = euclid_solution(n, m)
    first, second = ode_residuals(reference)
    return CheckReport.exact(
        "bezout-cross-check",
        {"n": n, "m": m},
        [
            ("P factored", reference.P - factored_p),
            ("Q factored", reference.Q - factored_q),
            ("P recurrence", reference.P - recurrence.P),
            ("Q recurrence", reference.Q - recurrence.Q),
            ("P euclid", reference.P - oracle.P),
            ("Q euclid", reference.Q - oracle.Q),
            ("bezout", bezout_residual(reference)),
            ("ode Q", first),
            ("ode P", second),
            ("derivative", derivative_identity_residual(reference)),
            ("mu", mu(n, m) - (n + 1) * reference.Q(1)),
        ],
        "closed form vs factored form vs recurrence vs extended Euclid",
    )
