"""Incomplete beta function B_a(x, y) = int_0^a t^(x-1) (1-t)^(y-1) dt.

Integer parameters get an exact polynomial in a. Real parameters go through
QUADPACK's adaptive Gauss-Kronrod quadrature (`scipy.integrate.quad`); an
integrable endpoint singularity is removed first with a power substitution.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple, Union

from scipy import integrate

from .errors import BetaDomainError, NonConvergenceError, SingularDenominatorError
from .numeric_core import (
    Scalar,
    as_rational,
    binomial,
    check_index,
    factorial,
    rising_factorial,
    sign,
)
from .polynomial import ZERO_POLY, DensePoly, evaluate, scale
from .report import CheckReport, Part

logger = logging.getLogger(__name__)

Real = Union[int, float, Fraction]

ABS_ERROR_TARGET = 1e-12
IDENTITY_TOLERANCE = 1e-10
SUBDIVISION_LIMIT = 200
RELATIVE_FLOOR = 1e-13
# summed error estimates beyond this, scaled by max(1, |value|), abort
ESTIMATE_CEILING = 1e-9


@dataclass(frozen=True)
class BetaParams:
    x: Real
    y: Real
    a: Real

    def __post_init__(self) -> None:
        if not self.x > 0 or not self.y > 0:
            raise BetaDomainError(
                f"B_a(x, y) needs x > 0 and y > 0, got x = {self.x}, y = {self.y}"
            )
        if not 0 <= self.a <= 1:
            raise BetaDomainError(f"B_a(x, y) needs 0 <= a <= 1, got a = {self.a}")

    def is_integral(self) -> bool:
        return _positive_integer(self.x) and _positive_integer(self.y)


def _positive_integer(value: Real) -> bool:
    if isinstance(value, bool):
        return False
    if isinstance(value, int):
        return value > 0
    if isinstance(value, Fraction):
        return value.denominator == 1 and value > 0
    return False


def incomplete_beta_exact(p: int, q: int) -> DensePoly:
    if any(isinstance(v, bool) or not isinstance(v, int) for v in (p, q)):
        raise BetaDomainError(
            f"exact B_a(p, q) needs integer parameters, got ({p!r}, {q!r})"
        )
    if p < 1 or q < 1:
        raise BetaDomainError(
            f"exact B_a(p, q) needs p >= 1 and q >= 1, got ({p}, {q})"
        )
    result = ZERO_POLY
    for j in range(q):
        coeff = Fraction(sign(j) * binomial(q - 1, j), p + j)
        result = result + DensePoly.monomial(p + j, coeff)
    return result


def complete_beta_integer(p: int, q: int) -> Fraction:
    check_index("p", p)
    check_index("q", q)
    if p < 1 or q < 1:
        raise BetaDomainError(f"B(p, q) needs p >= 1 and q >= 1, got ({p}, {q})")
    return Fraction(factorial(p - 1) * factorial(q - 1), factorial(p + q - 1))


def _quad(f: Callable[[float], float], lo: float, hi: float) -> Tuple[float, float]:
    if hi <= lo:
        return 0.0, 0.0
    result = integrate.quad(
        f,
        lo,
        hi,
        epsabs=ABS_ERROR_TARGET / 4,
        epsrel=RELATIVE_FLOOR,
        limit=SUBDIVISION_LIMIT,
        full_output=1,
    )
    value, error = result[0], result[1]
    if len(result) > 3:
        raise NonConvergenceError(
            f"quadrature on [{lo}, {hi}] did not converge: {result[3].splitlines()[0]}"
        )
    logger.debug(
        "quad on [%g, %g]: %d evaluations, error estimate %.3g",
        lo,
        hi,
        result[2]["neval"],
        error,
    )
    return value, error


def _left_piece(x: float, y: float, c: float) -> Tuple[float, float]:
    """int_0^c t^(x-1) (1-t)^(y-1) dt with c <= 1/2."""
    if x >= 1:
        return _quad(lambda t: t ** (x - 1) * (1 - t) ** (y - 1), 0.0, c)
    # t = u^(1/x) turns t^(x-1) dt into du / x
    value, error = _quad(lambda u: (1 - u ** (1 / x)) ** (y - 1), 0.0, c**x)
    return value / x, error / x


def incomplete_beta_estimate(x: float, y: float, a: float) -> Tuple[float, float]:
    """B_a(x, y) and the summed quadrature error estimate."""
    BetaParams(x, y, a)
    x, y, a = float(x), float(y), float(a)
    if a == 0:
        return 0.0, 0.0
    # B_a(x, y) = B_(1/2)(x, y) + int_(1-a)^(1/2) s^(y-1) (1-s)^(x-1) ds for a > 1/2
    value, error = _left_piece(x, y, min(a, 0.5))
    if a > 0.5:
        lo = 1 - a
        if y >= 1:
            right, right_error = _quad(
                lambda s: s ** (y - 1) * (1 - s) ** (x - 1), lo, 0.5
            )
        else:
            right, right_error = _quad(
                lambda w: (1 - w ** (1 / y)) ** (x - 1), lo**y, 0.5**y
            )
            right, right_error = right / y, right_error / y
        value += right
        error += right_error
    if error > ESTIMATE_CEILING * max(1.0, abs(value)):
        raise NonConvergenceError(
            f"B_{a}({x}, {y}) error estimate {error:.3g} exceeds {ESTIMATE_CEILING:g}"
        )
    if error > max(ABS_ERROR_TARGET, RELATIVE_FLOOR * abs(value)):
        logger.debug("B_%g(%g, %g): error estimate %.3g", a, x, y, error)
    return value, error


def incomplete_beta_numeric(x: float, y: float, a: float) -> float:
    return incomplete_beta_estimate(x, y, a)[0]


def incomplete_beta(x: Real, y: Real, a: Real) -> Union[Fraction, float]:
    params = BetaParams(x, y, a)
    if params.is_integral() and not isinstance(a, float):
        return evaluate(incomplete_beta_exact(int(x), int(y)), as_rational(a))
    return incomplete_beta_numeric(float(x), float(y), float(a))


def beta_shift_ratio(p: int, q: int, alpha: Scalar, beta: Scalar) -> Fraction:
    """B(alpha + p, beta + q) / B(alpha, beta)."""
    check_index("p", p)
    check_index("q", q)
    alpha = as_rational(alpha)
    beta = as_rational(beta)
    denominator = rising_factorial(alpha + beta, p + q)
    if denominator == 0:
        raise SingularDenominatorError(
            f"(alpha + beta)^({p + q}) vanishes for alpha = {alpha}, beta = {beta}"
        )
    return rising_factorial(alpha, p) * rising_factorial(beta, q) / denominator


def _beta_identity_terms(n: int, m: int) -> List[Tuple[int, int, int]]:
    """(weight, alpha shift, beta shift) for every term on the left-hand side."""
    terms = [(binomial(n + k, k), k, n + 1) for k in range(m + 1)]
    terms.extend((binomial(m + k, k), m + 1, k) for k in range(n + 1))
    return terms


def verify_beta_identity(
    n: int,
    m: int,
    alpha: Real,
    beta: Real,
    a: Optional[Real] = None,
    corrupt: bool = False,
) -> CheckReport:
    """Sum of the shifted B_a terms against B_a(alpha, beta).

    Integer alpha, beta give an exact comparison of polynomials in a, which
    covers every a at once. Anything else is checked numerically at one a,
    defaulting to a = 1.
    """
    check_index("n", n)
    check_index("m", m)
    BetaParams(alpha, beta, 1 if a is None else a)
    terms = _beta_identity_terms(n, m)
    params: Dict[str, Scalar] = {"n": n, "m": m}

    exact_mode = _positive_integer(alpha) and _positive_integer(beta)
    if exact_mode and not isinstance(a, float):
        al, be = int(alpha), int(beta)
        if corrupt:
            weight, da, db = terms[0]
            terms[0] = (weight + 1, da, db)
        params.update(alpha=al, beta=be)
        left = ZERO_POLY
        for weight, da, db in terms:
            left = left + scale(incomplete_beta_exact(al + da, be + db), weight)
        residual = left - incomplete_beta_exact(al, be)
        parts: List[Part] = [("polynomial in a", residual)]
        if a is not None:
            params["a"] = as_rational(a)
            parts.append(("at a", evaluate(residual, as_rational(a))))
        logger.debug("beta identity (%d, %d) exact at alpha=%d beta=%d", n, m, al, be)
        return CheckReport.exact("beta", params, parts, "exact: polynomials in a")

    af, bf = float(alpha), float(beta)
    at = 1.0 if a is None else float(a)
    params.update(
        alpha=_as_param(alpha),
        beta=_as_param(beta),
        a=_as_param(1 if a is None else a),
    )
    total = math.fsum(
        weight * incomplete_beta_numeric(af + da, bf + db, at)
        for weight, da, db in terms
    )
    defect = total - incomplete_beta_numeric(af, bf, at)
    if corrupt:
        # offset the whole sum; single terms vanish as a -> 0
        defect += 1.0
    return CheckReport.numeric(
        "beta", params, defect, IDENTITY_TOLERANCE, "numeric: adaptive quadrature"
    )


def _as_param(value: Real) -> Scalar:
    if isinstance(value, float):
        return Fraction(value).limit_denominator(10**12)
    return as_rational(value)

