"""Exact scalar arithmetic shared by every other module.

Rationals are `fractions.Fraction`, which is always stored in lowest terms
with a positive denominator, so equality is structural.
"""

import random
from fractions import Fraction
from typing import Union

from .errors import ConfigError, PreconditionError

Rational = Fraction
Scalar = Union[int, Fraction]

ZERO = Fraction(0)
ONE = Fraction(1)


def check_index(name: str, value: int) -> int:
    if not isinstance(value, int) or isinstance(value, bool) or value < 0:
        raise PreconditionError(f"{name} must be a nonnegative integer, got {value!r}")
    return value


def as_rational(value: Scalar) -> Fraction:
    return value if isinstance(value, Fraction) else Fraction(value)


def factorial(n: int) -> int:
    check_index("n", n)
    result = 1
    for i in range(2, n + 1):
        result *= i
    return result


def binomial(n: int, k: int) -> int:
    """C(n, k) by the multiplicative scheme; 0 when k > n."""
    check_index("n", n)
    check_index("k", k)
    if k > n:
        return 0
    k = min(k, n - k)
    result = 1
    for i in range(1, k + 1):
        # result is C(n - k + i - 1, i - 1) here, so the division is exact
        result = result * (n - k + i) // i
    return result


def falling_factorial(z: Scalar, n: int) -> Fraction:
    check_index("n", n)
    z = as_rational(z)
    result = ONE
    for j in range(n):
        result *= z - j
    return result


def rising_factorial(z: Scalar, n: int) -> Fraction:
    check_index("n", n)
    z = as_rational(z)
    result = ONE
    for j in range(n):
        result *= z + j
    return result


def gen_binomial(x: Scalar, k: int) -> Fraction:
    """Binomial coefficient with an arbitrary rational upper argument."""
    return falling_factorial(x, k) / factorial(k)


def sign(k: int) -> int:
    return -1 if k % 2 else 1


def parse_rational(text: str) -> Fraction:
    cleaned = text.strip().replace("−", "-")
    try:
        return Fraction(cleaned)
    except (ValueError, ZeroDivisionError):
        raise ConfigError(f"not a rational or decimal literal: {text!r}") from None


def format_rational(value: Scalar) -> str:
    return str(as_rational(value))


def random_rational(rng: random.Random, bound: int) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def random_positive_rational(rng: random.Random, bound: int) -> Fraction:
    return Fraction(rng.randint(1, bound), rng.randint(1, bound))
