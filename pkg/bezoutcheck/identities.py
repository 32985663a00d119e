"""Exact verification of the partition-of-unity identity and its companions.

Every `verify_*` function returns a `CheckReport` holding the exact residual.
The optional ``corrupt`` flag perturbs a single coefficient before checking
(negative controls for the tests and for `check --inject-fault`).
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Tuple

from .bezout import closed_form
from .errors import Failure, PreconditionError, SingularDenominatorError
from .numeric_core import (
    ONE,
    ZERO,
    Scalar,
    as_rational,
    binomial,
    check_index,
    factorial,
    gen_binomial,
    rising_factorial,
    sign,
)
from .polynomial import (
    ONE_MINUS_X,
    ONE_POLY,
    X,
    ZERO_POLY,
    Basis,
    BiPoly,
    DensePoly,
    bi_eval,
    bi_rising_factorial,
    bi_scale,
    compose_one_minus_x,
    power,
    rising_factorial_poly,
    scale,
    shift_up,
    to_rising_basis,
)
from .report import CheckReport, Part
from .special_fn import beta_shift_ratio

logger = logging.getLogger(__name__)

__all__ = [
    "CheckReport",
    "SecondProofCoefficients",
    "brill_sum",
    "gamma_ratio_sides",
    "lemma42_triple",
    "remark62_bivariate_sides",
    "remark63_from_remark62_coefficients",
    "remark63_sides",
    "second_proof_coefficients",
    "twin_polynomial",
    "u_poly",
    "v_poly",
    "verify_brill",
    "verify_cancellation",
    "verify_chaundy_bullard",
    "verify_first_proof",
    "verify_gamma_ratio_form",
    "verify_lemma42",
    "verify_remark62",
    "verify_remark62_beta_form",
    "verify_remark63",
    "verify_second_proof_shape",
    "verify_symmetry",
    "verify_twin",
    "w_telescoping_check",
    "w_values",
]


def _nm(n: int, m: int) -> Dict[str, Scalar]:
    check_index("n", n)
    check_index("m", m)
    return {"n": n, "m": m}


def _bump(p: DensePoly, k: int = 0) -> DensePoly:
    return p + DensePoly.monomial(k)


# ==== PARTITION OF UNITY ====


def v_poly(n: int, m: int) -> DensePoly:
    """(1-x)^(n+1) sum_{k<=m} C(n+k, k) x^k."""
    inner = DensePoly.of(binomial(n + k, k) for k in range(m + 1))
    return power(ONE_MINUS_X, n + 1) * inner


def u_poly(n: int, m: int) -> DensePoly:
    """x^(m+1) sum_{k<=n} C(m+k, k) (1-x)^k."""
    inner = ZERO_POLY
    for k in range(n + 1):
        inner = inner + scale(power(ONE_MINUS_X, k), binomial(m + k, k))
    return shift_up(inner, m + 1)


def verify_chaundy_bullard(n: int, m: int, corrupt: bool = False) -> CheckReport:
    params = _nm(n, m)
    left = v_poly(n, m)
    if corrupt:
        left = left + power(ONE_MINUS_X, n + 1)
    total = left + u_poly(n, m)
    return CheckReport.exact(
        "chaundy-bullard",
        params,
        [("sum - 1", total - ONE_POLY)],
        "symbolic expansion, monomial basis",
    )


def verify_symmetry(n: int, m: int, corrupt: bool = False) -> CheckReport:
    params = _nm(n, m)
    P = closed_form(n, m).P
    if corrupt:
        P = _bump(P)
    reflected = compose_one_minus_x(closed_form(m, n).Q)
    return CheckReport.exact(
        "symmetry",
        params,
        [("P_{n,m}(x) - Q_{m,n}(1-x)", P - reflected)],
        "closed form compared with the reflected swapped Q",
    )


def verify_first_proof(n: int, m: int, corrupt: bool = False) -> CheckReport:
    """1 - (1-x)^(n+1) Q_{n,m} = x^(m+1) P_{n,m} = x^(m+1) Q_{m,n}(1-x) = U_{n,m}."""
    params = _nm(n, m)
    sol = closed_form(n, m)
    Q = _bump(sol.Q) if corrupt else sol.Q
    first = ONE_POLY - power(ONE_MINUS_X, n + 1) * Q
    second = shift_up(sol.P, m + 1)
    third = shift_up(compose_one_minus_x(closed_form(m, n).Q), m + 1)
    fourth = u_poly(n, m)
    return CheckReport.exact(
        "first-proof",
        params,
        [
            ("step 1", first - second),
            ("step 2", second - third),
            ("step 3", third - fourth),
        ],
        "equality chain through the reflection of Q",
    )


# ==== COEFFICIENT PROOF ====


@dataclass(frozen=True)
class SecondProofCoefficients:
    n: int
    m: int
    a: Tuple[Fraction, ...]
    b: Tuple[Fraction, ...]
    c: Tuple[Fraction, ...]
    d: Tuple[Fraction, ...]


def second_proof_coefficients(n: int, m: int) -> SecondProofCoefficients:
    check_index("n", n)
    check_index("m", m)
    top = n + m + 1
    a = tuple(
        Fraction(
            sign(k)
            * sum(binomial(m + nu, nu) * binomial(nu, k) for nu in range(k, n + 1))
        )
        for k in range(n + 1)
    )
    b_full = [Fraction(sign(k) * binomial(n + 1, k)) for k in range(top + 1)]
    if any(b_full[n + 2 :]):
        raise Failure(f"b_k does not vanish beyond k = {n + 1}")
    b = tuple(b_full[: n + 2])
    c = tuple(Fraction(binomial(n + k, k)) if k <= m else ZERO for k in range(top + 1))
    d = tuple(
        sum(
            (b[k - nu] * c[nu] for nu in range(k + 1) if k - nu < len(b)),
            ZERO,
        )
        for k in range(top + 1)
    )
    for k in range(m + 1, top + 1):
        tail = sign(k) * sum(
            sign(nu) * binomial(n + nu, nu) * binomial(n + 1, k - nu)
            for nu in range(m + 1)
        )
        if d[k] != tail:
            raise Failure(
                f"Cauchy product d_{k} = {d[k]} disagrees with its tail form {tail}"
            )
    return SecondProofCoefficients(n, m, a, b, c[: m + 1], d)


def verify_cancellation(n: int, m: int, corrupt: bool = False) -> CheckReport:
    params = _nm(n, m)
    coeffs = second_proof_coefficients(n, m)
    a = list(coeffs.a)
    if corrupt:
        a[0] += 1
    parts: List[Part] = [("d_0 - 1", coeffs.d[0] - 1)]
    parts.extend((f"d_{k}", coeffs.d[k]) for k in range(1, m + 1))
    parts.extend(
        (f"a_{k - m - 1} + d_{k}", a[k - m - 1] + coeffs.d[k])
        for k in range(m + 1, n + m + 2)
    )
    U = u_poly(n, m)
    V = v_poly(n, m)
    assembled_u = shift_up(DensePoly.of(a), m + 1)
    assembled_v = DensePoly.of(coeffs.d)
    parts.extend(
        [
            ("U - sum a_(k-m-1) x^k", U - assembled_u),
            ("V - sum d_k x^k", V - assembled_v),
            ("U + V - 1", assembled_u + assembled_v - ONE_POLY),
        ]
    )
    return CheckReport.exact(
        "cancellation",
        params,
        parts,
        "binomial theorem and Cauchy product coefficients",
    )


def _degree_offset(poly: DensePoly, expected: int) -> Fraction:
    return Fraction(-1) if poly.is_zero() else Fraction(poly.degree - expected)


def verify_second_proof_shape(n: int, m: int, corrupt: bool = False) -> CheckReport:
    params = _nm(n, m)
    U = u_poly(n, m)
    V = v_poly(n, m)
    if corrupt:
        V = V + DensePoly.monomial(n + m + 2)
    return CheckReport.exact(
        "second-proof",
        params,
        [
            ("deg U - (n+m+1)", _degree_offset(U, n + m + 1)),
            ("deg V - (n+m+1)", _degree_offset(V, n + m + 1)),
            ("V_{n,m}(x) - U_{m,n}(1-x)", V - compose_one_minus_x(u_poly(m, n))),
        ],
        "degree and reflection of the two halves",
    )


# ==== COMBINATORIAL LEMMAS ====


def brill_sum(p: int, x: Scalar) -> Tuple[Fraction, Fraction]:
    check_index("p", p)
    x = as_rational(x)
    left = sum(
        (
            sign(nu) * gen_binomial(x + nu, nu + 1) * gen_binomial(x, p - nu)
            for nu in range(p + 1)
        ),
        ZERO,
    )
    return left, gen_binomial(x, p + 1)


def verify_brill(p: int, x: Scalar, corrupt: bool = False) -> CheckReport:
    left, right = brill_sum(p, x)
    if corrupt:
        left += 1
    return CheckReport.exact(
        "brill",
        {"p": p, "x": as_rational(x)},
        [("lhs - rhs", left - right)],
        "exact rational evaluation of both sides",
    )


def _require_k_le(k: int, bound: int, bound_name: str) -> None:
    check_index("k", k)
    check_index(bound_name, bound)
    if k > bound:
        raise PreconditionError(
            f"requires k <= {bound_name}, got k = {k}, {bound_name} = {bound}"
        )


def _lemma42_s(k: int, n: int, m: int) -> Fraction:
    return Fraction(
        sum(binomial(m + nu, nu) * binomial(nu, k) for nu in range(k, n + 1))
    )


def _lemma42_t(k: int, n: int, m: int) -> Fraction:
    return Fraction(n + m + 1, m + k + 1) * binomial(n + m, m) * binomial(n, k)


def _lemma42_r(k: int, n: int, m: int) -> Fraction:
    return Fraction(
        sign(m)
        * sum(
            sign(nu) * binomial(n + nu, nu) * binomial(n + 1, m + k + 1 - nu)
            for nu in range(m + 1)
        )
    )


def lemma42_triple(k: int, n: int, m: int) -> Tuple[Fraction, Fraction, Fraction]:
    """Returns (S_n, R_m, T_n)."""
    _require_k_le(k, n, "n")
    check_index("m", m)
    return _lemma42_s(k, n, m), _lemma42_r(k, n, m), _lemma42_t(k, n, m)


def verify_lemma42(k: int, n: int, m: int, corrupt: bool = False) -> CheckReport:
    S, R, T = lemma42_triple(k, n, m)
    if corrupt:
        S += 1
    base = binomial(m + k, m)
    parts: List[Part] = [
        ("S - R", S - R),
        ("S - T", S - T),
        ("S_k - C(m+k,m)", _lemma42_s(k, k, m) - base),
        ("T_k - C(m+k,m)", _lemma42_t(k, k, m) - base),
    ]
    for j in range(k, n):
        step = binomial(j + m + 1, m) * binomial(j + 1, k)
        s_step = _lemma42_s(k, j + 1, m) - _lemma42_s(k, j, m)
        t_step = _lemma42_t(k, j + 1, m) - _lemma42_t(k, j, m)
        parts.append((f"S step {j}", s_step - step))
        parts.append((f"T step {j}", t_step - step))
    return CheckReport.exact(
        "lemma42",
        {"k": k, "n": n, "m": m},
        parts,
        "direct summation plus induction steps",
    )


def w_values(k: int, n: int, m: int) -> List[Fraction]:
    """The telescoping witness W_nu for 0 <= nu <= m + 1."""
    _require_k_le(k, n, "n")
    check_index("m", m)
    return [
        sign(m - nu)
        * Fraction(nu * (nu + n - k - m), (n + 1) * (k + m + 1))
        * binomial(n + 1, m + k + 1 - nu)
        * binomial(n + nu, n)
        for nu in range(m + 2)
    ]


def w_telescoping_check(k: int, n: int, m: int, corrupt: bool = False) -> CheckReport:
    W = w_values(k, n, m)
    if corrupt:
        W[0] += 1
    T = _lemma42_t(k, n, m)
    R = _lemma42_r(k, n, m)
    parts: List[Part] = [("W_0", W[0])]
    for nu in range(m + 1):
        summand = sign(m + nu) * binomial(n + nu, nu) * binomial(n + 1, m + k + 1 - nu)
        parts.append((f"W_{nu} - W_{nu + 1}", W[nu] - W[nu + 1] - summand))
    parts.append(("-W_(m+1) - T", -W[m + 1] - T))
    parts.append(("-W_(m+1) - R", -W[m + 1] - R))
    return CheckReport.exact(
        "w-telescoping", {"k": k, "n": n, "m": m}, parts, "term-by-term telescoping"
    )


# ==== RISING FACTORIAL FORMS ====


def _remark62_bivariate(n: int, m: int) -> Tuple[BiPoly, BiPoly, BiPoly]:
    alpha = BiPoly.alpha()
    beta = BiPoly.beta()
    both = alpha + beta
    alpha_rising = [bi_rising_factorial(alpha, k) for k in range(m + 1)]
    beta_rising = [bi_rising_factorial(beta, k) for k in range(m + 1)]
    tails = [
        bi_rising_factorial(both + BiPoly.constant(k), m - k) for k in range(m + 1)
    ]

    left = BiPoly()
    middle = BiPoly()
    right = BiPoly()
    for k in range(m + 1):
        outer = alpha_rising[k] * beta_rising[m - k]
        left = left + bi_scale(outer, binomial(n + m + 1, k))
        middle = middle + bi_scale(alpha_rising[k] * tails[k], binomial(n + k, k))
        weight = Fraction(sign(k), k + n + 1) * binomial(m, k)
        right = right + bi_scale(beta_rising[k] * tails[k], weight)
    right = bi_scale(right, (n + m + 1) * binomial(n + m, m))
    return left, middle, right


def _alternating_reflection(n: int, m: int) -> DensePoly:
    """sum_j (-1)^j / (j+n+1) C(m, j) (1-x)^j"""
    poly = ZERO_POLY
    for j in range(m + 1):
        weight = Fraction(sign(j), j + n + 1) * binomial(m, j)
        poly = poly + scale(power(ONE_MINUS_X, j), weight)
    return poly


def _remark62_univariate(n: int, m: int) -> Tuple[DensePoly, DensePoly, DensePoly]:
    first = ZERO_POLY
    for k in range(m + 1):
        term = shift_up(power(ONE_MINUS_X, m - k), k)
        first = first + scale(term, binomial(n + m + 1, k))
    second = DensePoly.of(binomial(n + k, k) for k in range(m + 1))
    third = scale(_alternating_reflection(n, m), (n + m + 1) * binomial(n + m, m))
    return first, second, third


def verify_remark62(n: int, m: int, corrupt: bool = False) -> CheckReport:
    params = _nm(n, m)
    logger.debug(
        "remark62 (%d, %d): expanding %d bivariate terms per side", n, m, m + 1
    )
    left, middle, right = _remark62_bivariate(n, m)
    if corrupt:
        left = left + BiPoly.constant(1)
    first, second, third = _remark62_univariate(n, m)
    return CheckReport.exact(
        "remark62",
        params,
        [
            ("bivariate left - middle", left - middle),
            ("bivariate middle - right", middle - right),
            ("univariate first - second", first - second),
            ("univariate second - third", second - third),
            ("univariate - Q_{n,m}", second - closed_form(n, m).Q),
        ],
        "bivariate polynomial identity over Q in (alpha, beta), hence valid for "
        "all complex alpha, beta",
    )


def remark62_bivariate_sides(n: int, m: int) -> Tuple[BiPoly, BiPoly, BiPoly]:
    _nm(n, m)
    return _remark62_bivariate(n, m)


def verify_remark62_beta_form(
    n: int, m: int, alpha: Scalar, beta: Scalar, corrupt: bool = False
) -> CheckReport:
    """The complete-beta form, every term divided by B(alpha, beta)."""
    params = _nm(n, m)
    alpha = as_rational(alpha)
    beta = as_rational(beta)
    params.update(alpha=alpha, beta=beta)
    if alpha <= 0 or beta <= 0:
        raise PreconditionError("the beta form needs alpha > 0 and beta > 0")
    first = sum(
        (
            binomial(n + m + 1, k) * beta_shift_ratio(k, m - k, alpha, beta)
            for k in range(m + 1)
        ),
        ZERO,
    )
    second = sum(
        (
            binomial(n + k, k) * beta_shift_ratio(k, 0, alpha, beta)
            for k in range(m + 1)
        ),
        ZERO,
    )
    third = (n + m + 1) * binomial(n + m, m) * sum(
        (
            Fraction(sign(k), k + n + 1)
            * binomial(m, k)
            * beta_shift_ratio(0, k, alpha, beta)
            for k in range(m + 1)
        ),
        ZERO,
    )
    if corrupt:
        first += 1
    left, _, _ = _remark62_bivariate(n, m)
    rising_form = bi_eval(left, alpha, beta) / rising_factorial(alpha + beta, m)
    return CheckReport.exact(
        "remark62-beta",
        params,
        [
            ("first - second", first - second),
            ("second - third", second - third),
            ("first - rising form", first - rising_form),
        ],
        "complete beta ratios at rational alpha, beta",
    )


def remark63_sides(k: int, m: int, n: int) -> Tuple[Fraction, Fraction]:
    _require_k_le(k, m, "m")
    check_index("n", n)
    left = sum(
        (
            Fraction(sign(nu), nu + n + 1) * binomial(m, nu) * binomial(nu, k)
            for nu in range(k, m + 1)
        ),
        ZERO,
    )
    right = Fraction(sign(k), n + m + 1) * Fraction(
        binomial(n + k, k), binomial(n + m, m)
    )
    return left, right


def verify_remark63(k: int, m: int, n: int, corrupt: bool = False) -> CheckReport:
    left, right = remark63_sides(k, m, n)
    if corrupt:
        left += 1
    return CheckReport.exact(
        "remark63",
        {"k": k, "m": m, "n": n},
        [("lhs - rhs", left - right)],
        "exact rational evaluation of both sides",
    )


def remark63_from_remark62_coefficients(n: int, m: int) -> List[Fraction]:
    """Entry k is (-1)^k times the x^k coefficient of sum (-1)^j/(j+n+1) C(m,j) (1-x)^j.

    Each entry reproduces the left-hand side of the alternating double-binomial sum.
    """
    _nm(n, m)
    poly = _alternating_reflection(n, m)
    return [sign(k) * poly.coefficient(k) for k in range(m + 1)]


def twin_polynomial(n: int, m: int) -> DensePoly:
    _nm(n, m)
    left_sum = ZERO_POLY
    for k in range(m + 1):
        weight = Fraction(n + 1, (n + k + 1) * factorial(k))
        left_sum = left_sum + scale(rising_factorial_poly(X, k), weight)
    left_front = rising_factorial_poly(ONE_MINUS_X, n + 1)
    left = scale(left_front, Fraction(1, factorial(n + 1))) * left_sum
    right_sum = ZERO_POLY
    for k in range(n + 1):
        weight = Fraction(m + 1, (m + k + 1) * factorial(k))
        right_sum = right_sum + scale(rising_factorial_poly(ONE_MINUS_X, k), weight)
    right_front = rising_factorial_poly(X, m + 1)
    right = scale(right_front, Fraction(1, factorial(m + 1))) * right_sum
    return left + right


def verify_twin(n: int, m: int, corrupt: bool = False) -> CheckReport:
    total = twin_polynomial(n, m)
    if corrupt:
        total = total + X
    return CheckReport.exact(
        "twin",
        _nm(n, m),
        [
            ("monomial basis", total - ONE_POLY),
            (
                "rising basis",
                to_rising_basis(total) - DensePoly.constant(1, Basis.RISING),
            ),
        ],
        "rising factorials of x and 1-x expanded as products of affine factors",
    )


def gamma_ratio_sides(n: int, m: int, alpha: Scalar, beta: Scalar) -> Fraction:
    _nm(n, m)
    alpha = as_rational(alpha)
    beta = as_rational(beta)
    both = alpha + beta
    for j in range(n + m + 2):
        if both + j == 0:
            raise SingularDenominatorError(
                f"alpha + beta + {j} vanishes for alpha = {alpha}, beta = {beta}"
            )
    first = rising_factorial(beta, n + 1) * sum(
        (
            binomial(n + k, k)
            * rising_factorial(alpha, k)
            / rising_factorial(both, n + k + 1)
            for k in range(m + 1)
        ),
        ZERO,
    )
    second = rising_factorial(alpha, m + 1) * sum(
        (
            binomial(m + k, k)
            * rising_factorial(beta, k)
            / rising_factorial(both, m + k + 1)
            for k in range(n + 1)
        ),
        ZERO,
    )
    return first + second


def verify_gamma_ratio_form(
    n: int, m: int, alpha: Scalar, beta: Scalar, corrupt: bool = False
) -> CheckReport:
    total = gamma_ratio_sides(n, m, alpha, beta)
    if corrupt:
        total += 1
    params = _nm(n, m)
    params.update(alpha=as_rational(alpha), beta=as_rational(beta))
    return CheckReport.exact(
        "gamma-ratio",
        params,
        [("sum - 1", total - ONE)],
        "exact rational evaluation of the rising-factorial ratios",
    )
