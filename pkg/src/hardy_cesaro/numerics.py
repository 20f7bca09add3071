"""Small numerically-stable scalar helpers shared across modules."""

import math

LN2 = math.log(2.0)


def pow2m1_over(x: float) -> float:
    """(2**x - 1) / x, continuously extended to log(2) at x = 0."""
    if x == 0.0:
        return LN2
    return math.expm1(x * LN2) / x


def one_minus_pow2_over(x: float) -> float:
    """(1 - 2**(-x)) / x, continuously extended to log(2) at x = 0."""
    if x == 0.0:
        return LN2
    return -math.expm1(-x * LN2) / x


def pow2m1(x: float) -> float:
    """2**x - 1 computed without cancellation for small x."""
    return math.expm1(x * LN2)
