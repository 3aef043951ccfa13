"""The counterexample family showing that

    ||f||_2^2 <= C ||f||_{hom B^{1,q}_1} ||f||_{hom B^{-1,inf}_inf}

fails on Z_2 for every q > 2.

Level ``j`` carries the block

    Delta_j f = +A_j on Q_{j+1,m},  -A_j on Q_{j+1,m+2^j},   m = 0 .. N_j - 1,

with amplitude ``A_j = eps_j * alpha * 2^j`` and ``N_j`` sibling pairs, where
``N_j = 2^j`` below ``j0`` and ``N_j = 2^{-j} beta/alpha`` from ``j0`` to ``j1``.
The two cells of each pair are the children of ``Q_{j,m}``, so every block
has zero mean on each level-``j`` cell and is a true martingale difference.

Integrality of ``N_j`` together with ``N_{j0} <= 2^{j0}`` pins
``beta/alpha = 4^{j0}`` and ``j1 = 2 j0``; the ratio then diverges as
``j0`` grows whenever ``eps`` is in l^q but not in l^2, e.g.
``eps_j ~ (1+j)^{-a}`` with ``1/q < a < 1/2``.

Every norm is available two ways: closed forms summed over the block
specifications, and dense evaluation of the materialized function through
:mod:`dyadic_besov.dyadic` and :mod:`dyadic_besov.besov`.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from fractions import Fraction

import gmpy2
import numpy as np

from . import _mp
from .besov import INF, BesovParams, besov_norm
from .dyadic import MAX_RESOLUTION, BlockSequence, LCFunction, blocks, integral, linf_norm, lp_norm_pow, reconstruct
from .errors import CapacityError, ValidationError
from .padic import as_fraction

__all__ = [
    "CSV_COLUMNS",
    "CROSS_VALIDATE_MAX_RESOLUTION",
    "BlockSpec",
    "ClosedFormNorms",
    "CounterexampleConfig",
    "CrossValidationReport",
    "EpsilonSpec",
    "SparseBlockFunction",
    "SweepRow",
    "build_blocks",
    "closed_form_norms",
    "cross_validate",
    "make_epsilon",
    "materialize",
    "pair_count",
    "ratio",
    "sweep",
    "write_rows",
]

CSV_COLUMNS = ("j0", "j1", "q", "exponent", "alpha", "beta", "l2_sq",
               "besov_1q1", "besov_neg1_inf_inf", "ratio")
CROSS_VALIDATE_MAX_RESOLUTION = 20


@dataclass(frozen=True)
class EpsilonSpec:
    """eps_j = (1+j)^(-exponent) rounded to the nearest multiple of 2^-precision."""

    exponent: Fraction = Fraction(0)
    precision: int = 64

    def __post_init__(self):
        a = as_fraction(self.exponent)
        if a < 0:
            raise ValueError("exponent must be nonnegative")
        if not isinstance(self.precision, int) or self.precision < 1:
            raise ValueError("precision must be a positive integer")
        object.__setattr__(self, "exponent", a)


def _rounded_power(base, a, bits):
    # nearest integer to 2^bits * base^(-a), computed with integer roots only
    n, d = a.numerator, a.denominator
    if n == 0:
        return 1 << bits
    num, den = 1 << (bits * d), base**n
    r = int(gmpy2.iroot(num // den, d)[0])
    # round up when r + 1/2 <= (num/den)^(1/d)
    if (2 * r + 1) ** d * den <= num << d:
        r += 1
    return r


def make_epsilon(spec: EpsilonSpec, jmax: int):
    """Dyadic roundings of (1+j)^(-a) for j = 0 .. jmax, clamped non-increasing."""
    out = []
    scale = Fraction(1, 1 << spec.precision)
    for j in range(jmax + 1):
        e = _rounded_power(1 + j, spec.exponent, spec.precision) * scale
        if out and e > out[-1]:
            e = out[-1]
        out.append(e)
    return tuple(out)


def _q_index(q):
    if isinstance(q, str):
        if q.strip().lower() in ("inf", "infinity"):
            return INF
        q = int(q)
    if isinstance(q, float) and math.isinf(q) and q > 0:
        return INF
    if isinstance(q, bool) or not isinstance(q, int) or q <= 2:
        raise ValueError(f"q must be an integer > 2 or inf, got {q!r}")
    return q


@dataclass(frozen=True)
class CounterexampleConfig:
    """Parameters of one member of the family.

    ``j1 = 2 j0`` and ``beta = alpha 4^j0`` are derived. ``j0 = 0`` is the
    degenerate single-block member.
    """

    j0: int
    q: object = INF
    alpha: Fraction = Fraction(1)
    eps: EpsilonSpec = EpsilonSpec()

    def __post_init__(self):
        if isinstance(self.j0, bool) or not isinstance(self.j0, int) or self.j0 < 0:
            raise ValueError(f"j0 must be a nonnegative integer, got {self.j0!r}")
        alpha = as_fraction(self.alpha)
        if alpha <= 0:
            raise ValueError("alpha must be positive")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "q", _q_index(self.q))

    @property
    def j1(self):
        return 2 * self.j0

    @property
    def beta(self):
        return self.alpha * 4**self.j0


def pair_count(j: int, config: CounterexampleConfig) -> int:
    """N_j: 2^j below j0, 2^{-j} beta/alpha = 2^{2 j0 - j} from j0 through j1."""
    if not 0 <= j <= config.j1:
        raise ValueError(f"level {j} outside [0, {config.j1}]")
    if j < config.j0:
        return 1 << j
    n = Fraction(config.beta, config.alpha) / 2**j
    assert n.denominator == 1 and 1 <= n <= 2**j
    return int(n)


@dataclass(frozen=True)
class BlockSpec:
    level: int
    epsilon: Fraction
    amplitude: Fraction
    pair_count: int

    @property
    def linf(self):
        return self.amplitude

    def l1(self, alpha):
        return self.epsilon * alpha * self.pair_count

    def l2_sq(self, alpha):
        return self.epsilon**2 * alpha**2 * 2**self.level * self.pair_count

    def dense(self) -> LCFunction:
        """The block as a table at resolution ``level + 1``."""
        j, N = self.level, self.pair_count
        num = np.zeros(1 << (j + 1), dtype=object)
        a = self.amplitude
        num[:N] = a.numerator
        num[(1 << j):(1 << j) + N] = -a.numerator
        return LCFunction._scaled(j + 1, num, a.denominator)


@dataclass(frozen=True)
class SparseBlockFunction:
    config: CounterexampleConfig
    epsilon: tuple
    blocks: tuple

    @property
    def resolution(self):
        return self.config.j1 + 1


def build_blocks(config: CounterexampleConfig) -> SparseBlockFunction:
    eps = make_epsilon(config.eps, config.j1)
    if eps[0] != 1 or any(b > a for a, b in zip(eps, eps[1:])):
        raise ValueError("epsilon must start at 1 and be non-increasing")
    specs = []
    for j in range(config.j1 + 1):
        N = pair_count(j, config)
        if not 1 <= N <= 1 << j:
            raise ValueError(f"pair count {N} at level {j} does not fit")
        specs.append(BlockSpec(j, eps[j], eps[j] * config.alpha * 2**j, N))
    return SparseBlockFunction(config, eps, tuple(specs))


def materialize(sbf: SparseBlockFunction) -> LCFunction:
    """Dense table of sum_j Delta_j at resolution j1 + 1 (mean zero)."""
    if sbf.resolution > MAX_RESOLUTION:
        raise CapacityError(
            f"resolution {sbf.resolution} exceeds {MAX_RESOLUTION}; use closed_form_norms instead"
        )
    return reconstruct(BlockSequence(Fraction(0), tuple(b.dense() for b in sbf.blocks)))


@dataclass(frozen=True)
class ClosedFormNorms:
    """Norms of one family member from the block specifications alone.

    ``besov_1q1_pow`` is the q-th power of the B^{1,q}_1 norm for finite q
    and the norm itself when q is inf.
    """

    config: CounterexampleConfig
    l2_sq: Fraction
    besov_1q1_pow: Fraction
    besov_1q1: object
    besov_neg1_inf_inf: Fraction
    ratio: object
    ratio_exact: Fraction | None
    terms_1q1: tuple
    precision: int

    @property
    def ratio_pow(self) -> Fraction:
        """Exact q-th power of the ratio (the ratio itself when q is inf)."""
        if self.config.q == INF:
            return self.ratio_exact
        q = self.config.q
        return (self.l2_sq / self.besov_neg1_inf_inf) ** q / self.besov_1q1_pow


def closed_form_norms(config: CounterexampleConfig, precision=_mp.DEFAULT_PRECISION,
                      sbf: SparseBlockFunction | None = None) -> ClosedFormNorms:
    _mp.check_precision(precision)
    sbf = sbf or build_blocks(config)
    alpha, q = config.alpha, config.q
    l2_sq = sum((b.l2_sq(alpha) for b in sbf.blocks), Fraction(0))
    terms = tuple(2**b.level * b.l1(alpha) for b in sbf.blocks)
    small = max(Fraction(b.linf, 2**b.level) for b in sbf.blocks)
    if q == INF:
        big_pow = max(terms)
    else:
        big_pow = sum((t**q for t in terms), Fraction(0))
    with _mp.working(precision):
        big = _mp.to_mpfr(big_pow)
        if q != INF:
            big = gmpy2.root(big, q)
        r = _mp.to_mpfr(l2_sq) / (big * _mp.to_mpfr(small))
    return ClosedFormNorms(
        config=config,
        l2_sq=l2_sq,
        besov_1q1_pow=big_pow,
        besov_1q1=_mp.finish(big, precision),
        besov_neg1_inf_inf=small,
        ratio=_mp.finish(r, precision),
        ratio_exact=l2_sq / (big_pow * small) if q == INF else None,
        terms_1q1=terms,
        precision=precision,
    )


def ratio(config: CounterexampleConfig, precision=_mp.DEFAULT_PRECISION):
    """||f||_2^2 / (||f||_{B^{1,q}_1} ||f||_{B^{-1,inf}_inf}) for the family member."""
    return closed_form_norms(config, precision).ratio


@dataclass(frozen=True)
class SweepRow:
    norms: ClosedFormNorms

    @property
    def config(self):
        return self.norms.config

    @property
    def ratio(self):
        return self.norms.ratio

    def fields(self):
        c, n, prec = self.config, self.norms, self.norms.precision
        return {
            "j0": str(c.j0),
            "j1": str(c.j1),
            "q": "inf" if c.q == INF else str(c.q),
            "exponent": _mp.fmt(c.eps.exponent, prec),
            "alpha": _mp.fmt(c.alpha, prec),
            "beta": _mp.fmt(c.beta, prec),
            "l2_sq": _mp.fmt(n.l2_sq, prec),
            "besov_1q1": _mp.fmt(n.besov_1q1, prec),
            "besov_neg1_inf_inf": _mp.fmt(n.besov_neg1_inf_inf, prec),
            "ratio": _mp.fmt(n.ratio, prec),
        }

    def to_json(self):
        c, n = self.config, self.norms
        exact = {
            "exponent": _mp.frac_str(c.eps.exponent),
            "alpha": _mp.frac_str(c.alpha),
            "beta": _mp.frac_str(c.beta),
            "l2_sq": _mp.frac_str(n.l2_sq),
            "besov_1q1_pow_q": _mp.frac_str(n.besov_1q1_pow),
            "besov_neg1_inf_inf": _mp.frac_str(n.besov_neg1_inf_inf),
        }
        if n.ratio_exact is not None:
            exact["besov_1q1"] = _mp.frac_str(n.besov_1q1_pow)
            exact["ratio"] = _mp.frac_str(n.ratio_exact)
        return {**self.fields(), "exact": exact}


def sweep(j0_values, q=INF, eps=EpsilonSpec(), alpha=Fraction(1), precision=_mp.DEFAULT_PRECISION):
    """One closed-form row per j0, in the order given."""
    if not isinstance(eps, EpsilonSpec):
        eps = EpsilonSpec(as_fraction(eps))
    return [SweepRow(closed_form_norms(CounterexampleConfig(j0, q, alpha, eps), precision))
            for j0 in j0_values]


def write_rows(rows, fmt="csv") -> str:
    """Serialize sweep rows as CSV (header included) or a JSON array."""
    if fmt == "json":
        return json.dumps([r.to_json() for r in rows], indent=2) + "\n"
    if fmt != "csv":
        raise ValueError(f"unknown format {fmt!r}")
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow(r.fields())
    return buf.getvalue()


@dataclass(frozen=True)
class CrossValidationReport:
    config: CounterexampleConfig
    closed: ClosedFormNorms
    dense_l2_sq: Fraction
    parseval_l2_sq: Fraction
    dense_besov_1q1_pow: Fraction
    dense_besov_neg1_inf_inf: Fraction
    levels_checked: int
    ok: bool = True

    def to_json(self):
        return {
            "status": "OK" if self.ok else "FAIL",
            "levels_checked": self.levels_checked,
            "l2_sq": _mp.frac_str(self.dense_l2_sq),
            "besov_1q1_pow_q": _mp.frac_str(self.dense_besov_1q1_pow),
            "besov_neg1_inf_inf": _mp.frac_str(self.dense_besov_neg1_inf_inf),
        }


def _require(cond, what, level=None):
    if not cond:
        where = "" if level is None else f" at level {level}"
        raise ValidationError(f"cross-validation mismatch: {what}{where}", level)


def cross_validate(config: CounterexampleConfig, precision=_mp.DEFAULT_PRECISION) -> CrossValidationReport:
    """Check the closed forms against the materialized function, exactly.

    Raises :class:`ValidationError` naming the first level that disagrees.
    """
    sbf = build_blocks(config)
    if sbf.resolution > CROSS_VALIDATE_MAX_RESOLUTION:
        raise CapacityError(
            f"resolution {sbf.resolution} exceeds {CROSS_VALIDATE_MAX_RESOLUTION} for cross-validation"
        )
    closed = closed_form_norms(config, precision, sbf)
    alpha = config.alpha
    f = materialize(sbf)
    _require(integral(f) == 0, "nonzero mean")
    extracted = blocks(f)
    _require(len(extracted) == len(sbf.blocks), "number of levels")
    parseval = Fraction(0)
    for spec, got in zip(sbf.blocks, extracted):
        j = spec.level
        _require(got == spec.dense(), "extracted block differs from its specification", j)
        _require(linf_norm(got) == spec.linf == spec.epsilon * alpha * 2**j, "L-inf block norm", j)
        _require(lp_norm_pow(got, 1) == spec.l1(alpha), "L1 block norm", j)
        l2 = lp_norm_pow(got, 2)
        _require(l2 == spec.l2_sq(alpha), "L2 block norm", j)
        parseval += l2

    dense_l2 = lp_norm_pow(f, 2)
    _require(dense_l2 == closed.l2_sq, "L2 norm (dense table)")
    _require(parseval == closed.l2_sq, "L2 norm (Parseval)")

    small = besov_norm(f, BesovParams(-1, INF, INF, True), precision)
    _require(small.exact == closed.besov_neg1_inf_inf, "B^{-1,inf}_inf norm")
    big = besov_norm(f, BesovParams(1, 1, config.q, True), precision)
    for j, (a, b) in enumerate(zip(big.terms, closed.terms_1q1)):
        _require(a == b, "B^{1,q}_1 term", j)
    _require(big.exact == closed.besov_1q1_pow, "B^{1,q}_1 norm")

    return CrossValidationReport(
        config=config,
        closed=closed,
        dense_l2_sq=dense_l2,
        parseval_l2_sq=parseval,
        dense_besov_1q1_pow=big.exact,
        dense_besov_neg1_inf_inf=small.exact,
        levels_checked=len(extracted),
    )
