"""Exact p-adic valuation, norm, digit expansion and dyadic cells.

Rationals are handled as :class:`fractions.Fraction`. A point of Z_2 is any
rational with odd denominator; only its residues mod 2^j are ever needed.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from .errors import DomainError

__all__ = [
    "INFINITY",
    "Cell",
    "DigitExpansion",
    "as_fraction",
    "cell_children",
    "cell_of",
    "digits",
    "is_prime",
    "padic_distance",
    "padic_norm",
    "valuation",
]

INFINITY = math.inf


def as_fraction(x) -> Fraction:
    """Coerce ints, Fractions and ``"num/den"`` strings to a Fraction.

    Floats are refused: they would silently bring binary rounding into an
    exact computation.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)) and not isinstance(x, bool):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational: {x!r}") from exc
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


def is_prime(p: int) -> bool:
    if not isinstance(p, int) or p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    for d in range(3, math.isqrt(p) + 1, 2):
        if p % d == 0:
            return False
    return True


def _check_prime(p):
    if not is_prime(p):
        raise ValueError(f"p must be prime, got {p!r}")


def _int_valuation(n: int, p: int) -> int:
    # n != 0
    if p == 2:
        return (n & -n).bit_length() - 1
    r = 0
    while n % p == 0:
        n //= p
        r += 1
    return r


def valuation(x, p: int = 2):
    """Return the p-adic valuation of ``x``, or ``math.inf`` for 0.

    >>> valuation(12, 2)
    2
    >>> valuation(Fraction(3, 4), 2)
    -2
    """
    _check_prime(p)
    x = as_fraction(x)
    if x == 0:
        return INFINITY
    return _int_valuation(x.numerator, p) - _int_valuation(x.denominator, p)


def padic_norm(x, p: int = 2) -> Fraction:
    """|x|_p = p^(-valuation), and 0 for x = 0."""
    g = valuation(x, p)
    if g == INFINITY:
        return Fraction(0)
    return Fraction(p) ** -g


def padic_distance(x, y, p: int = 2) -> Fraction:
    return padic_norm(as_fraction(x) - as_fraction(y), p)


@dataclass(frozen=True)
class DigitExpansion:
    """Canonical expansion ``p^valuation * (d0 + d1 p + d2 p^2 + ...)``, truncated."""

    prime: int
    valuation: int
    digits: tuple

    def truncated_value(self) -> Fraction:
        """The rational ``p^valuation * sum(d_i p^i)`` over the stored digits."""
        s = sum(d * self.prime**i for i, d in enumerate(self.digits))
        return Fraction(self.prime) ** self.valuation * s

    def agrees_with(self, x) -> bool:
        """True if ``x`` and the truncation agree modulo p^(valuation + n)."""
        diff = as_fraction(x) - self.truncated_value()
        return diff == 0 or valuation(diff, self.prime) >= self.valuation + len(self.digits)


def digits(x, p: int, n: int) -> DigitExpansion:
    """First ``n`` canonical p-adic digits of a nonzero rational.

    The unit part a/b is expanded one digit at a time: each digit is
    a * b^-1 mod p, after which a <- (a - digit * b) / p.
    """
    _check_prime(p)
    if not isinstance(n, int) or n < 1:
        raise ValueError("n must be a positive integer")
    x = as_fraction(x)
    if x == 0:
        raise DomainError("0 has no canonical digit expansion")
    g = valuation(x, p)
    unit = x / Fraction(p) ** g
    a, b = unit.numerator, unit.denominator
    if b % p == 0:
        raise AssertionError("denominator still divisible by p after removing the valuation")
    b_inv = pow(b, -1, p)
    out = []
    for _ in range(n):
        d = (a * b_inv) % p
        out.append(d)
        a = (a - d * b) // p
    assert out[0] > 0
    return DigitExpansion(prime=p, valuation=g, digits=tuple(out))


@dataclass(frozen=True, order=True)
class Cell:
    """The residue class ``index + 2^level Z_2``."""

    level: int
    index: int

    def __post_init__(self):
        if self.level < 0:
            raise ValueError("cell level must be nonnegative")
        if not 0 <= self.index < (1 << self.level):
            raise ValueError(f"cell index {self.index} out of range for level {self.level}")

    @property
    def measure(self) -> Fraction:
        return Fraction(1, 1 << self.level)

    def contains(self, x) -> bool:
        return cell_of(x, self.level) == self

    def children(self):
        return cell_children(self)


def cell_of(x, j: int) -> Cell:
    """The level-``j`` cell containing the 2-adic integer ``x``."""
    x = as_fraction(x)
    if x.denominator % 2 == 0:
        raise DomainError(f"{x} is not in Z_2 (|x|_2 > 1)")
    if j < 0:
        raise ValueError("level must be nonnegative")
    m = 1 << j
    return Cell(j, (x.numerator * pow(x.denominator, -1, m)) % m if j else 0)


def cell_children(c: Cell):
    """Split Q_{j,k} into Q_{j+1,k} and Q_{j+1,k+2^j}."""
    return Cell(c.level + 1, c.index), Cell(c.level + 1, c.index + (1 << c.level))
