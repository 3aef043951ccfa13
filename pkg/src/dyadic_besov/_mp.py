"""Arbitrary-precision binary float helpers on top of gmpy2.

gmpy2 contexts are thread-local, so float evaluation never touches shared
state. Internal sums run with extra guard bits and are rounded once to the
requested precision at the end.
"""
import math
from fractions import Fraction

import gmpy2

GUARD_BITS = 32
MIN_PRECISION = 16
DEFAULT_PRECISION = 64


def check_precision(precision):
    if not isinstance(precision, int) or precision < MIN_PRECISION:
        raise ValueError(f"precision must be an integer >= {MIN_PRECISION} bits, got {precision!r}")


def working(precision):
    return gmpy2.context(gmpy2.get_context(), precision=precision + GUARD_BITS)


def to_mpfr(x):
    """Convert an exact or float value to an mpfr in the active context."""
    if isinstance(x, Fraction):
        return gmpy2.mpfr(gmpy2.mpq(x.numerator, x.denominator))
    if isinstance(x, float) and math.isinf(x):
        return gmpy2.inf(1 if x > 0 else -1)
    return gmpy2.mpfr(x)


def finish(x, precision):
    return gmpy2.mpfr(x, precision)


def decimal_digits(precision):
    return max(1, int(precision * math.log10(2)))


def fmt(x, precision):
    """Render a number as a decimal string with ``precision`` bits worth of digits."""
    if isinstance(x, int) and not isinstance(x, bool):
        return str(x)
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return str(x.numerator)
        with working(precision):
            x = to_mpfr(x)
    if isinstance(x, float) and math.isinf(x):
        return "inf"
    if gmpy2.is_infinite(x):
        return "inf" if x > 0 else "-inf"
    out = format(gmpy2.mpfr(x), f".{decimal_digits(precision)}g")
    return out[:-2] if out.endswith(".0") else out


def frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"
