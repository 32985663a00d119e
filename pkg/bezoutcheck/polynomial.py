"""Dense exact polynomials over the rationals.

`DensePoly` is univariate and carries the basis its coefficients refer to:
element k is x^k (MONOMIAL) or x^(k)/k! (RISING, the rising factorial over
k factorial). `BiPoly` is a dense grid of coefficients in (alpha, beta).
Both are immutable and canonical, so `==` is structural equality.
"""

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, List, Sequence, Tuple, Union

from .errors import BasisMismatchError, Failure, UnsupportedBasisError
from .numeric_core import ONE, ZERO, Scalar, as_rational, check_index, format_rational

NEG_INFINITY = float("-inf")
Degree = Union[int, float]


@enum.unique
class Basis(enum.Enum):
    MONOMIAL = "monomial"
    RISING = "rising"


def _trim(coeffs: Iterable[Scalar]) -> Tuple[Fraction, ...]:
    out = [as_rational(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


@dataclass(frozen=True)
class DensePoly:
    coeffs: Tuple[Fraction, ...] = ()
    basis: Basis = Basis.MONOMIAL

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", _trim(self.coeffs))

    @staticmethod
    def of(coeffs: Iterable[Scalar], basis: Basis = Basis.MONOMIAL) -> "DensePoly":
        return DensePoly(tuple(as_rational(c) for c in coeffs), basis)

    @staticmethod
    def constant(c: Scalar, basis: Basis = Basis.MONOMIAL) -> "DensePoly":
        return DensePoly((as_rational(c),), basis)

    @staticmethod
    def monomial(k: int, c: Scalar = 1) -> "DensePoly":
        check_index("k", k)
        return DensePoly((ZERO,) * k + (as_rational(c),))

    @property
    def degree(self) -> Degree:
        return len(self.coeffs) - 1 if self.coeffs else NEG_INFINITY

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading_coefficient(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else ZERO

    def coefficient(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else ZERO

    def __add__(self, other: "DensePoly") -> "DensePoly":
        return add(self, other)

    def __sub__(self, other: "DensePoly") -> "DensePoly":
        return sub(self, other)

    def __mul__(self, other: "DensePoly") -> "DensePoly":
        return mul(self, other)

    def __neg__(self) -> "DensePoly":
        return scale(self, -1)

    def __call__(self, x: Scalar) -> Fraction:
        return evaluate(self, x)

    def __str__(self) -> str:
        return render(self)


ZERO_POLY = DensePoly()
ONE_POLY = DensePoly.constant(1)
X = DensePoly.monomial(1)
ONE_MINUS_X = DensePoly.of([1, -1])


def _check_same_basis(a: DensePoly, b: DensePoly) -> None:
    if a.basis is not b.basis:
        raise BasisMismatchError(
            f"cannot combine {a.basis.value} and {b.basis.value} polynomials"
        )


def _require_monomial(p: DensePoly, what: str) -> None:
    if p.basis is not Basis.MONOMIAL:
        raise UnsupportedBasisError(f"{what} needs a monomial-basis polynomial")


def add(a: DensePoly, b: DensePoly) -> DensePoly:
    _check_same_basis(a, b)
    size = max(len(a.coeffs), len(b.coeffs))
    return DensePoly(
        tuple(a.coefficient(i) + b.coefficient(i) for i in range(size)), a.basis
    )


def sub(a: DensePoly, b: DensePoly) -> DensePoly:
    _check_same_basis(a, b)
    size = max(len(a.coeffs), len(b.coeffs))
    return DensePoly(
        tuple(a.coefficient(i) - b.coefficient(i) for i in range(size)), a.basis
    )


def _convolve(a: Sequence[Fraction], b: Sequence[Fraction]) -> List[Fraction]:
    if not a or not b:
        return []
    out = [ZERO] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return out


def mul(a: DensePoly, b: DensePoly) -> DensePoly:
    _check_same_basis(a, b)
    if a.basis is Basis.RISING:
        # the rising basis is not closed under convolution
        product = mul(to_monomial_basis(a), to_monomial_basis(b))
        return to_rising_basis(product)
    return DensePoly(tuple(_convolve(a.coeffs, b.coeffs)), a.basis)


def scale(p: DensePoly, c: Scalar) -> DensePoly:
    c = as_rational(c)
    return DensePoly(tuple(c * x for x in p.coeffs), p.basis)


def shift_up(p: DensePoly, k: int) -> DensePoly:
    """Multiply a monomial-basis polynomial by x^k."""
    _require_monomial(p, "shift_up")
    check_index("k", k)
    if p.is_zero():
        return p
    return DensePoly((ZERO,) * k + p.coeffs)


def power(p: DensePoly, e: int) -> DensePoly:
    check_index("e", e)
    result = DensePoly.constant(1, p.basis)
    base = p
    while e:
        if e & 1:
            result = mul(result, base)
        e >>= 1
        if e:
            base = mul(base, base)
    return result


def derivative(p: DensePoly) -> DensePoly:
    _require_monomial(p, "derivative")
    return DensePoly(tuple(k * c for k, c in enumerate(p.coeffs))[1:])


def compose_one_minus_x(p: DensePoly) -> DensePoly:
    """Return q with q(x) = p(1 - x)."""
    _require_monomial(p, "compose_one_minus_x")
    result = ZERO_POLY
    for c in reversed(p.coeffs):
        result = mul(result, ONE_MINUS_X) + DensePoly.constant(c)
    return result


def divmod_poly(a: DensePoly, b: DensePoly) -> Tuple[DensePoly, DensePoly]:
    _require_monomial(a, "divmod_poly")
    _require_monomial(b, "divmod_poly")
    if b.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    remainder = list(a.coeffs)
    lead = b.leading_coefficient()
    db = len(b.coeffs) - 1
    if len(remainder) <= db:
        return ZERO_POLY, a
    quotient = [ZERO] * (len(remainder) - db)
    for shift in range(len(remainder) - 1 - db, -1, -1):
        factor = remainder[shift + db] / lead
        quotient[shift] = factor
        if factor:
            for j, bj in enumerate(b.coeffs):
                remainder[shift + j] -= factor * bj
    return DensePoly(tuple(quotient)), DensePoly(tuple(remainder[:db]))


def evaluate(p: DensePoly, x: Scalar) -> Fraction:
    x = as_rational(x)
    if p.basis is Basis.MONOMIAL:
        acc = ZERO
        for c in reversed(p.coeffs):
            acc = acc * x + c
        return acc
    total = ZERO
    element = ONE
    for k, c in enumerate(p.coeffs):
        if k:
            element = element * (x + k - 1) / k
        total += c * element
    return total


@lru_cache(maxsize=None)
def _rising_column(k: int) -> Tuple[Fraction, ...]:
    """Monomial coefficients of x^(k)/k!."""
    if k == 0:
        return (ONE,)
    prev = _rising_column(k - 1)
    column = [ZERO] * (k + 1)
    for i, c in enumerate(prev):
        column[i] += c * (k - 1) / k
        column[i + 1] += c / k
    return tuple(column)


def to_monomial_basis(p: DensePoly) -> DensePoly:
    if p.basis is Basis.MONOMIAL:
        return p
    out = [ZERO] * len(p.coeffs)
    for k, c in enumerate(p.coeffs):
        for i, entry in enumerate(_rising_column(k)):
            out[i] += c * entry
    return DensePoly(tuple(out))


def to_rising_basis(p: DensePoly) -> DensePoly:
    """Back-substitute against the upper-triangular change-of-basis matrix."""
    if p.basis is Basis.RISING:
        return p
    size = len(p.coeffs)
    residual = list(p.coeffs)
    out = [ZERO] * size
    for k in range(size - 1, -1, -1):
        column = _rising_column(k)
        out[k] = residual[k] / column[k]
        if out[k]:
            for i in range(k + 1):
                residual[i] -= out[k] * column[i]
    if any(residual):
        raise Failure("change of basis left a nonzero residual")
    return DensePoly(tuple(out), Basis.RISING)


def rising_factorial_poly(arg: DensePoly, n: int) -> DensePoly:
    """The product arg (arg + 1) ... (arg + n - 1) for a polynomial argument."""
    _require_monomial(arg, "rising_factorial_poly")
    check_index("n", n)
    result = ONE_POLY
    for j in range(n):
        result = mul(result, arg + DensePoly.constant(j))
    return result


def _element(k: int, var: str, basis: Basis) -> str:
    if basis is Basis.RISING:
        return f"{var}^({k})/{k}!"
    return var if k == 1 else f"{var}^{k}"


def render(p: DensePoly, var: str = "x") -> str:
    if p.is_zero():
        return "0"
    parts: List[str] = []
    for k, c in enumerate(p.coeffs):
        if c == 0:
            continue
        negative = c < 0
        magnitude = -c if negative else c
        if k == 0:
            body = format_rational(magnitude)
        elif magnitude == 1:
            body = _element(k, var, p.basis)
        else:
            body = f"{format_rational(magnitude)}*{_element(k, var, p.basis)}"
        if not parts:
            parts.append(f"-{body}" if negative else body)
        else:
            parts.append(f"- {body}" if negative else f"+ {body}")
    return " ".join(parts)


def coefficient_strings(p: DensePoly) -> List[str]:
    return [format_rational(c) for c in p.coeffs]


def from_coefficient_strings(
    values: Sequence[str], basis: Basis = Basis.MONOMIAL
) -> DensePoly:
    return DensePoly(tuple(Fraction(v) for v in values), basis)


# ==== BIVARIATE ====

Grid = Tuple[Tuple[Fraction, ...], ...]


def _canonical_grid(rows: Sequence[Sequence[Scalar]]) -> Grid:
    grid = [[as_rational(c) for c in row] for row in rows]
    width = 0
    for row in grid:
        for j in range(len(row) - 1, -1, -1):
            if row[j] != 0:
                width = max(width, j + 1)
                break
    height = 0
    for i, row in enumerate(grid):
        if any(c != 0 for c in row):
            height = i + 1
    if width == 0:
        return ()
    return tuple(
        tuple(row[j] if j < len(row) else ZERO for j in range(width))
        for row in grid[:height]
    )


@dataclass(frozen=True)
class BiPoly:
    """Entry (i, j) is the coefficient of alpha^i beta^j."""

    coeffs: Grid = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", _canonical_grid(self.coeffs))

    @staticmethod
    def constant(c: Scalar) -> "BiPoly":
        return BiPoly(((as_rational(c),),))

    @staticmethod
    def alpha() -> "BiPoly":
        return BiPoly(((ZERO,), (ONE,)))

    @staticmethod
    def beta() -> "BiPoly":
        return BiPoly(((ZERO, ONE),))

    def is_zero(self) -> bool:
        return not self.coeffs

    def entry(self, i: int, j: int) -> Fraction:
        if 0 <= i < len(self.coeffs) and 0 <= j < len(self.coeffs[i]):
            return self.coeffs[i][j]
        return ZERO

    def __add__(self, other: "BiPoly") -> "BiPoly":
        return bi_add(self, other)

    def __sub__(self, other: "BiPoly") -> "BiPoly":
        return bi_sub(self, other)

    def __mul__(self, other: "BiPoly") -> "BiPoly":
        return bi_mul(self, other)

    def __str__(self) -> str:
        return bi_render(self)


def _shape(p: BiPoly) -> Tuple[int, int]:
    return len(p.coeffs), (len(p.coeffs[0]) if p.coeffs else 0)


def _bi_combine(a: BiPoly, b: BiPoly, sign: int) -> BiPoly:
    ha, wa = _shape(a)
    hb, wb = _shape(b)
    return BiPoly(
        tuple(
            tuple(a.entry(i, j) + sign * b.entry(i, j) for j in range(max(wa, wb)))
            for i in range(max(ha, hb))
        )
    )


def bi_add(a: BiPoly, b: BiPoly) -> BiPoly:
    return _bi_combine(a, b, 1)


def bi_sub(a: BiPoly, b: BiPoly) -> BiPoly:
    return _bi_combine(a, b, -1)


def bi_scale(p: BiPoly, c: Scalar) -> BiPoly:
    c = as_rational(c)
    return BiPoly(tuple(tuple(c * x for x in row) for row in p.coeffs))


def bi_mul(a: BiPoly, b: BiPoly) -> BiPoly:
    if a.is_zero() or b.is_zero():
        return BiPoly()
    ha, wa = _shape(a)
    hb, wb = _shape(b)
    out = [[ZERO] * (wa + wb - 1) for _ in range(ha + hb - 1)]
    for i, row_a in enumerate(a.coeffs):
        for j, x in enumerate(row_a):
            if x == 0:
                continue
            for k, row_b in enumerate(b.coeffs):
                target = out[i + k]
                for l, y in enumerate(row_b):
                    if y:
                        target[j + l] += x * y
    return BiPoly(tuple(tuple(row) for row in out))


def bi_eval(p: BiPoly, alpha: Scalar, beta: Scalar) -> Fraction:
    alpha = as_rational(alpha)
    beta = as_rational(beta)
    acc = ZERO
    for row in reversed(p.coeffs):
        inner = ZERO
        for c in reversed(row):
            inner = inner * beta + c
        acc = acc * alpha + inner
    return acc


def bi_rising_factorial(arg: BiPoly, n: int) -> BiPoly:
    check_index("n", n)
    result = BiPoly.constant(1)
    for j in range(n):
        result = bi_mul(result, arg + BiPoly.constant(j))
    return result


def bi_render(p: BiPoly) -> str:
    if p.is_zero():
        return "0"
    terms: List[str] = []
    for i, row in enumerate(p.coeffs):
        for j, c in enumerate(row):
            if c == 0:
                continue
            factors = [f for f in (_power("a", i), _power("b", j)) if f]
            if not factors:
                body = format_rational(c)
            elif c == 1:
                body = "*".join(factors)
            elif c == -1:
                body = "-" + "*".join(factors)
            else:
                body = "*".join([format_rational(c)] + factors)
            terms.append(body)
    return " + ".join(terms).replace("+ -", "- ")


def _power(var: str, k: int) -> str:
    if k == 0:
        return ""
    return var if k == 1 else f"{var}^{k}"
