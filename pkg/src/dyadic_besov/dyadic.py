"""Locally constant functions on Z_2 and their Littlewood-Paley decomposition.

A function at resolution ``J`` is constant on each cell ``Q_{J,k} = k + 2^J Z_2``
and is stored as a dense table of ``2^J`` exact rationals indexed by the
residue ``k``. With this indexing the level-``j`` cell ``Q_{j,k}`` owns the
entries ``k + m 2^j``, so reshaping the table to ``(2^(J-j), 2^j)`` puts each
cell in one column and conditional expectations become column means.

Values are held as Python-int numerators over a single positive common
denominator (numpy object arrays), which keeps every operation exact and
avoids per-entry ``Fraction`` overhead.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import gmpy2
import numpy as np

from . import _mp
from .errors import DomainError
from .padic import as_fraction, cell_of

__all__ = [
    "MAX_RESOLUTION",
    "BlockSequence",
    "LCFunction",
    "block",
    "blocks",
    "decompose",
    "inner",
    "integral",
    "linf_norm",
    "lp_norm_float",
    "lp_norm_pow",
    "project",
    "random_lc",
    "reconstruct",
    "square_function_sq",
]

MAX_RESOLUTION = 24


def _as_int_array(seq):
    arr = np.empty(len(seq), dtype=object)
    arr[:] = [int(v) for v in seq]
    return arr


class LCFunction:
    """A locally constant rational-valued function on Z_2.

    ``values[k]`` is the value on ``Q_{resolution,k}``. Instances are
    immutable; arithmetic returns new functions at the finer of the two
    resolutions.
    """

    __slots__ = ("resolution", "_num", "_den", "_values")

    def __init__(self, resolution, values):
        if not isinstance(resolution, int) or resolution < 0:
            raise ValueError("resolution must be a nonnegative integer")
        vals = [as_fraction(v) for v in values]
        if len(vals) != 1 << resolution:
            raise ValueError(f"expected {1 << resolution} values for resolution {resolution}, got {len(vals)}")
        den = math.lcm(*(v.denominator for v in vals))
        num = _as_int_array([v.numerator * (den // v.denominator) for v in vals])
        self._init(resolution, num, den)

    def _init(self, resolution, num, den):
        g = math.gcd(den, *num.tolist()) or 1
        if den < 0:
            g = -g
        if g != 1:
            num = num // g
            den //= g
        num.flags.writeable = False
        object.__setattr__(self, "resolution", resolution)
        object.__setattr__(self, "_num", num)
        object.__setattr__(self, "_den", den)
        object.__setattr__(self, "_values", None)

    @classmethod
    def _scaled(cls, resolution, num, den):
        f = cls.__new__(cls)
        f._init(resolution, num, den)
        return f

    @classmethod
    def constant(cls, c, resolution=0):
        c = as_fraction(c)
        num = np.empty(1 << resolution, dtype=object)
        num[:] = c.numerator
        return cls._scaled(resolution, num, c.denominator)

    @classmethod
    def zero(cls, resolution=0):
        return cls.constant(0, resolution)

    @classmethod
    def indicator(cls, level, index, resolution=None):
        """Indicator of ``Q_{level,index}``, stored at ``resolution`` (default ``level``)."""
        J = level if resolution is None else resolution
        if J < level:
            raise ValueError("resolution must be at least the cell level")
        num = np.zeros(1 << level, dtype=object)
        num[index] = 1
        return cls._scaled(level, num, 1).refine(J)

    def __setattr__(self, name, value):
        raise AttributeError("LCFunction is immutable")

    @property
    def values(self):
        if self._values is None:
            d = self._den
            object.__setattr__(self, "_values", tuple(Fraction(int(n), d) for n in self._num))
        return self._values

    def __len__(self):
        return len(self._num)

    def __iter__(self):
        return iter(self.values)

    def __repr__(self):
        if self.resolution <= 4:
            body = ", ".join(str(v) for v in self.values)
            return f"LCFunction({self.resolution}, [{body}])"
        return f"LCFunction(resolution={self.resolution}, den={self._den})"

    def __eq__(self, other):
        if not isinstance(other, LCFunction):
            return NotImplemented
        return (
            self.resolution == other.resolution
            and self._den == other._den
            and bool(np.array_equal(self._num, other._num))
        )

    __hash__ = None

    def __call__(self, x):
        return self.eval(x)

    def eval(self, x) -> Fraction:
        """Value at the 2-adic integer ``x`` (a rational with odd denominator)."""
        return Fraction(int(self._num[cell_of(x, self.resolution).index]), self._den)

    def is_zero(self):
        return not any(self._num)

    def refine(self, resolution):
        """The same function stored at a finer resolution."""
        if resolution < self.resolution:
            raise ValueError("refine can only increase the resolution")
        if resolution == self.resolution:
            return self
        reps = 1 << (resolution - self.resolution)
        return LCFunction._scaled(resolution, np.tile(self._num, reps), self._den)

    def coarsen(self):
        """Drop to the smallest resolution that represents the function exactly."""
        f = self
        while f.resolution > 0:
            half = 1 << (f.resolution - 1)
            if not np.array_equal(f._num[:half], f._num[half:]):
                break
            f = LCFunction._scaled(f.resolution - 1, f._num[:half].copy(), f._den)
        return f

    def _aligned(self, other):
        J = max(self.resolution, other.resolution)
        a, b = self.refine(J), other.refine(J)
        den = math.lcm(a._den, b._den)
        return J, a._num * (den // a._den), b._num * (den // b._den), den

    def __add__(self, other):
        if not isinstance(other, LCFunction):
            try:
                other = LCFunction.constant(other)
            except TypeError:
                return NotImplemented
        J, x, y, den = self._aligned(other)
        return LCFunction._scaled(J, x + y, den)

    __radd__ = __add__

    def __neg__(self):
        return LCFunction._scaled(self.resolution, -self._num, self._den)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, LCFunction):
            J = max(self.resolution, other.resolution)
            a, b = self.refine(J), other.refine(J)
            return LCFunction._scaled(J, a._num * b._num, a._den * b._den)
        try:
            c = as_fraction(other)
        except TypeError:
            return NotImplemented
        return LCFunction._scaled(self.resolution, self._num * c.numerator, self._den * c.denominator)

    __rmul__ = __mul__

    def restrict_integral(self, level, index) -> Fraction:
        """Integral of the function over the cell ``Q_{level,index}``."""
        if level > self.resolution:
            f = self.refine(level)
        else:
            f = self
        col = f._num.reshape(-1, 1 << level)[:, index]
        return Fraction(int(col.sum()), f._den << f.resolution)


@dataclass(frozen=True)
class BlockSequence:
    """``mean`` is S_0 f; ``blocks[j]`` is Delta_j f at resolution j + 1."""

    mean: Fraction
    blocks: tuple

    @property
    def resolution(self):
        return len(self.blocks)


def integral(f: LCFunction) -> Fraction:
    """Haar integral over Z_2, normalized so that Z_2 has measure 1."""
    return Fraction(int(f._num.sum()), f._den << f.resolution)


def inner(f: LCFunction, g: LCFunction) -> Fraction:
    return integral(f * g)


def lp_norm_pow(f: LCFunction, p: int) -> Fraction:
    """``||f||_p^p``, exact. ``p`` must be a positive integer."""
    if not isinstance(p, int) or p < 1:
        raise ValueError("lp_norm_pow needs an integer p >= 1")
    s = int((abs(f._num) ** p).sum()) if p > 1 else int(abs(f._num).sum())
    return Fraction(s, (f._den**p) << f.resolution)


def linf_norm(f: LCFunction) -> Fraction:
    return Fraction(int(abs(f._num).max()), f._den)


def lp_norm_float(f: LCFunction, p, precision=_mp.DEFAULT_PRECISION):
    """``||f||_p`` as an mpfr with ``precision`` bits.

    Terms are accumulated sequentially in ascending index order so the
    result does not depend on how the caller schedules work.
    """
    _mp.check_precision(precision)
    if isinstance(p, float) and math.isinf(p):
        return _mp.finish(_mp.to_mpfr(linf_norm(f)), precision)
    if p < 1:
        raise ValueError("p must be >= 1")
    with _mp.working(precision):
        pe = _mp.to_mpfr(as_fraction(p) if not isinstance(p, float) else p)
        acc = gmpy2.mpfr(0)
        for n in f._num:
            if n:
                acc += gmpy2.mpfr(abs(int(n))) ** pe
        acc = acc / (gmpy2.mpfr(f._den) ** pe) / (gmpy2.mpfr(2) ** f.resolution)
        res = acc ** (1 / pe) if acc else acc
    return _mp.finish(res, precision)


def project(f: LCFunction, j: int) -> LCFunction:
    """Conditional expectation S_j f: the average of f over each level-j cell."""
    if j < 0:
        raise ValueError("level must be nonnegative")
    if j >= f.resolution:
        return f
    sums = f._num.reshape(-1, 1 << j).sum(axis=0)
    return LCFunction._scaled(j, sums, f._den << (f.resolution - j))


def _halve(f: LCFunction) -> LCFunction:
    # S_{J-1} from S_J in one pairwise step
    half = 1 << (f.resolution - 1)
    return LCFunction._scaled(f.resolution - 1, f._num[:half] + f._num[half:], f._den * 2)


def block(f: LCFunction, j: int) -> LCFunction:
    """Dyadic block Delta_j f = S_{j+1} f - S_j f, at resolution min(j+1, J)."""
    if j < 0:
        raise ValueError("level must be nonnegative")
    if j >= f.resolution:
        return LCFunction.zero(f.resolution)
    fine = project(f, j + 1)
    return fine - _halve(fine)


def blocks(f: LCFunction):
    """All blocks Delta_0 f ... Delta_{J-1} f, computed in one coarsening sweep."""
    out = []
    cur = f
    while cur.resolution > 0:
        coarse = _halve(cur)
        out.append(cur - coarse)
        cur = coarse
    out.reverse()
    return out


def decompose(f: LCFunction) -> BlockSequence:
    """Finite Littlewood-Paley decomposition f = S_0 f + sum_j Delta_j f."""
    return BlockSequence(integral(f), tuple(blocks(f)))


def reconstruct(b: BlockSequence) -> LCFunction:
    """Inverse of :func:`decompose`."""
    cur = LCFunction.constant(b.mean)
    for j, d in enumerate(b.blocks):
        if not isinstance(d, LCFunction) or d.resolution != j + 1:
            got = getattr(d, "resolution", type(d).__name__)
            raise ValueError(f"block {j} must have resolution {j + 1}, got {got}")
        cur = cur.refine(j + 1) + d
    return cur


def square_function_sq(f: LCFunction) -> LCFunction:
    """Pointwise sum of |Delta_j f|^2 over all levels, at resolution J."""
    acc = LCFunction.zero(f.resolution)
    for d in blocks(f):
        acc = acc + (d * d).refine(f.resolution)
    return acc


def random_lc(J: int, seed, value_bound: int = 8) -> LCFunction:
    """Seeded random function with numerators in [-value_bound, value_bound]
    and denominators in [1, value_bound]."""
    if not 0 <= J <= MAX_RESOLUTION:
        raise DomainError(f"resolution must lie in [0, {MAX_RESOLUTION}]")
    if value_bound < 1:
        raise ValueError("value_bound must be positive")
    rng = np.random.default_rng(seed)
    n = 1 << J
    nums = rng.integers(-value_bound, value_bound + 1, size=n)
    dens = rng.integers(1, value_bound + 1, size=n)
    L = math.lcm(*range(1, value_bound + 1))
    scaled = _as_int_array([int(a) * (L // int(b)) for a, b in zip(nums, dens)])
    return LCFunction._scaled(J, scaled, L)
