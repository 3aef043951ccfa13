"""Besov norms built from Littlewood-Paley blocks.

For a locally constant ``f`` at resolution ``J``::

    ||f||_{B^{s,q}_p} = ||S_0 f||_p + ( sum_{j<J} (2^{js} ||Delta_j f||_p)^q )^{1/q}

with the supremum replacing the sum when ``q = inf``; the homogeneous
variant drops the ``S_0`` term. Blocks vanish for ``j >= J`` so the sum is
finite and nothing is truncated.

Each norm is returned as a :class:`NormReport`. When every ingredient is
rational (integer ``s``, ``p`` in ``{1, inf}``) the report carries an exact
value, which for finite ``q > 1`` is the ``q``-th power of the norm. The
float value is always computed separately from float terms, so the two can
be checked against each other.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

import gmpy2

from . import _mp
from .dyadic import LCFunction, blocks, integral, linf_norm, lp_norm_float, lp_norm_pow
from .errors import DomainError
from .padic import as_fraction

__all__ = [
    "INF",
    "BesovParams",
    "InterpolationReport",
    "NormReport",
    "besov_norm",
    "besov_norm_from_block_norms",
    "block_lp_norms",
    "inequality_ratio",
    "interpolation_check",
    "splitting_constant",
]

INF = math.inf


def _is_inf(x):
    return isinstance(x, float) and math.isinf(x) and x > 0


def _index(x, name):
    if isinstance(x, str):
        if x.strip().lower() in ("inf", "infinity", "+inf"):
            return INF
        x = as_fraction(x)
    if _is_inf(x):
        return INF
    if isinstance(x, float):
        if x < 1:
            raise ValueError(f"{name} must be >= 1")
        return x
    x = as_fraction(x)
    if x < 1:
        raise ValueError(f"{name} must be >= 1")
    return int(x) if x.denominator == 1 else x


@dataclass(frozen=True)
class BesovParams:
    """Selects ``B^{s,q}_p`` (or the homogeneous version).

    ``p`` and ``q`` are integers, rationals or ``math.inf``; ``s`` is rational.
    """

    s: Fraction
    p: object
    q: object
    homogeneous: bool = False

    def __post_init__(self):
        object.__setattr__(self, "s", as_fraction(self.s))
        object.__setattr__(self, "p", _index(self.p, "p"))
        object.__setattr__(self, "q", _index(self.q, "q"))

    @property
    def exact_terms(self):
        return self.s.denominator == 1 and (self.p == 1 or self.p == INF)


@dataclass(frozen=True)
class NormReport:
    """Result of a Besov norm evaluation.

    ``exact`` equals ``norm ** exact_power`` when present; ``float`` is the
    norm itself. ``terms`` are the per-level quantities 2^{js} ||Delta_j f||_p.
    """

    exact: Fraction | None
    exact_power: int
    float: object
    terms: tuple
    path: str
    note: str = ""
    precision: int = _mp.DEFAULT_PRECISION
    mean_term: object = field(default=Fraction(0))

    @property
    def value(self):
        """The norm as an exact rational when available, else the float."""
        if self.exact is not None and self.exact_power == 1:
            return self.exact
        return self.float

    def to_json(self):
        return {
            "exact": None if self.exact is None else _mp.frac_str(self.exact),
            "exact_power": self.exact_power,
            "float": _mp.fmt(self.float, self.precision),
            "terms": [
                _mp.frac_str(t) if isinstance(t, Fraction) else _mp.fmt(t, self.precision)
                for t in self.terms
            ],
            "path": self.path,
            "note": self.note,
        }

    def dumps(self):
        return json.dumps(self.to_json(), indent=2)


def block_lp_norms(f: LCFunction, p, precision=_mp.DEFAULT_PRECISION):
    """``||Delta_j f||_p`` for j < J, exact when ``p`` is 1 or inf."""
    bs = blocks(f)
    if p == 1:
        return [lp_norm_pow(d, 1) for d in bs]
    if p == INF:
        return [linf_norm(d) for d in bs]
    return [lp_norm_float(d, p, precision) for d in bs]


def _pow2(j, s):
    if s.denominator == 1:
        return Fraction(2) ** (j * int(s))
    return gmpy2.mpfr(2) ** _mp.to_mpfr(j * s)


def besov_norm_from_block_norms(block_lp_norms, params: BesovParams,
                                precision=_mp.DEFAULT_PRECISION, mean_norm=Fraction(0)):
    """Besov norm given precomputed block norms ``||Delta_j f||_p``, j = 0, 1, ...

    ``mean_norm`` is ``||S_0 f||_p`` and is ignored for homogeneous params.
    """
    _mp.check_precision(precision)
    norms = [Fraction(a) if isinstance(a, (int, Fraction)) else a for a in block_lp_norms]
    q = params.q
    mean = Fraction(0) if params.homogeneous else mean_norm
    if isinstance(mean, int):
        mean = Fraction(mean)
    exact_ok = params.s.denominator == 1 and all(isinstance(a, Fraction) for a in norms)
    exact_ok = exact_ok and isinstance(mean, Fraction)

    exact, power, note = None, 1, ""
    if exact_ok:
        terms = tuple(_pow2(j, params.s) * a for j, a in enumerate(norms))
        if q == INF:
            exact = mean + max(terms, default=Fraction(0))
        elif q == 1:
            exact = mean + sum(terms, Fraction(0))
        elif isinstance(q, int) and mean == 0:
            exact, power = sum((t**q for t in terms), Fraction(0)), q
        else:
            note = "no rational form for this (q, mean) combination; float only"
    else:
        note = "irrational ingredients (non-integer s or p outside {1, inf}); float only"

    with _mp.working(precision):
        fterms = [_mp.to_mpfr(a) * _mp.to_mpfr(_pow2(j, params.s)) for j, a in enumerate(norms)]
        if q == INF:
            tail = max(fterms, default=gmpy2.mpfr(0))
        else:
            qe = _mp.to_mpfr(q)
            acc = gmpy2.mpfr(0)
            for t in fterms:
                acc += t**qe
            tail = acc ** (1 / qe) if acc else acc
        total = _mp.to_mpfr(mean) + tail
        if not exact_ok:
            terms = tuple(_mp.finish(t, precision) for t in fterms)
    return NormReport(
        exact=exact,
        exact_power=power,
        float=_mp.finish(total, precision),
        terms=terms,
        path="exact" if exact is not None else "float",
        note=note,
        precision=precision,
        mean_term=mean,
    )


def besov_norm(f: LCFunction, params: BesovParams, precision=_mp.DEFAULT_PRECISION) -> NormReport:
    """Besov norm of ``f``; see the module docstring for the formula.

    ``||S_0 f||_p = |integral(f)|`` for every ``p`` because Z_2 has measure 1.
    """
    _mp.check_precision(precision)
    norms = block_lp_norms(f, params.p, precision)
    return besov_norm_from_block_norms(norms, params, precision, mean_norm=abs(integral(f)))


def inequality_ratio(f: LCFunction, q, precision=_mp.DEFAULT_PRECISION):
    """``||f||_2^2 / (||f||_{hom B^{1,q}_1} * ||f||_{hom B^{-1,inf}_inf})``.

    Unbounded over the counterexample family for every q > 2 (and q = inf).
    """
    q = _index(q, "q")
    if q != INF and not q > 2:
        raise ValueError("q must exceed 2")
    big = besov_norm(f, BesovParams(1, 1, q, True), precision)
    small = besov_norm(f, BesovParams(-1, INF, INF, True), precision)
    if small.exact == 0:
        raise DomainError("f has no nonzero Littlewood-Paley block")
    l2 = lp_norm_pow(f, 2)
    with _mp.working(precision):
        r = _mp.to_mpfr(l2) / (big.float * _mp.to_mpfr(small.exact))
    return _mp.finish(r, precision)


def splitting_constant(s0, s1, theta) -> float:
    """Bound C with ||f||_{B^{s,1}_p} <= C ||f||_{B^{s0,inf}_p}^{1-theta} ||f||_{B^{s1,inf}_p}^theta.

    Write a_j = ||Delta_j f||_p, A = sup 2^{j s0} a_j, B = sup 2^{j s1} a_j and
    d = |s0 - s1|. Each term obeys 2^{js} a_j <= min(A 2^{-theta d j}, B 2^{(1-theta) d j})
    (for s0 > s1; swap roles otherwise). Both bounds equal A^{1-theta} B^theta at
    the real crossover t with 2^{dt} = A/B, and from there they decay
    geometrically in opposite directions, so

        sum_j 2^{js} a_j <= A^{1-theta} B^theta (1/(1 - 2^{-theta d}) + 1/(1 - 2^{-(1-theta) d})).

    The inhomogeneous mean term m = ||S_0 f||_p is absorbed because
    (m + A)^{1-theta} (m + B)^theta >= m + A^{1-theta} B^theta (Hoelder) and C >= 1.
    For (s0, s1, theta) = (1, -1, 1/2) this gives C = 2 + 2 = 4.
    """
    d = abs(float(as_fraction(s0) - as_fraction(s1)))
    t = float(as_fraction(theta))
    return 1 / (1 - 2 ** (-t * d)) + 1 / (1 - 2 ** (-(1 - t) * d))


@dataclass(frozen=True)
class InterpolationReport:
    lhs: object
    rhs: object
    ratio: object
    bound: float
    s: Fraction

    @property
    def holds(self):
        return self.ratio <= self.bound


def interpolation_check(f: LCFunction, s0, s1, theta, p, precision=_mp.DEFAULT_PRECISION,
                        homogeneous=False) -> InterpolationReport:
    """Compare ``||f||_{B^{s,1}_p}`` with ``||f||_{B^{s0,inf}_p}^{1-theta} ||f||_{B^{s1,inf}_p}^theta``.

    ``s = (1-theta) s0 + theta s1``. The ratio lhs/rhs never exceeds
    :func:`splitting_constant`. A zero right-hand side forces a zero left-hand
    side and the ratio is reported as 0.
    """
    s0, s1, theta = as_fraction(s0), as_fraction(s1), as_fraction(theta)
    if s0 == s1:
        raise ValueError("s0 and s1 must differ")
    if not 0 < theta < 1:
        raise ValueError("theta must lie strictly between 0 and 1")
    s = (1 - theta) * s0 + theta * s1
    p = _index(p, "p")
    norms = block_lp_norms(f, p, precision)
    mean = abs(integral(f))
    lhs = besov_norm_from_block_norms(norms, BesovParams(s, p, 1, homogeneous), precision, mean)
    n0 = besov_norm_from_block_norms(norms, BesovParams(s0, p, INF, homogeneous), precision, mean)
    n1 = besov_norm_from_block_norms(norms, BesovParams(s1, p, INF, homogeneous), precision, mean)
    with _mp.working(precision):
        th = _mp.to_mpfr(theta)
        rhs = n0.float ** (1 - th) * n1.float**th
        ratio = lhs.float / rhs if rhs else gmpy2.mpfr(0)
    return InterpolationReport(
        lhs=lhs.float,
        rhs=_mp.finish(rhs, precision),
        ratio=_mp.finish(ratio, precision),
        bound=splitting_constant(s0, s1, theta),
        s=s,
    )
