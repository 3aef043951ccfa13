import json
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conftest import brute_project, exact
from dyadic_besov import (
    INF,
    BesovParams,
    DomainError,
    LCFunction,
    besov_norm,
    besov_norm_from_block_norms,
    inequality_ratio,
    interpolation_check,
    lp_norm_pow,
    random_lc,
    splitting_constant,
)

functions = st.builds(random_lc, st.integers(1, 7), st.integers(0, 2**32))
HALF = Fraction(1, 2)


def brute_block_norms(f, p):
    """||Delta_j f||_p from explicit cell averages, p in {1, inf}."""
    J, vals = f.resolution, f.values
    out = []
    for j in range(J):
        fine = brute_project(vals, J, j + 1)
        coarse = brute_project(vals, J, j)
        diff = [fine[k] - coarse[k % 2**j] for k in range(2 ** (j + 1))]
        if p == 1:
            out.append(sum(abs(d) for d in diff) / 2 ** (j + 1))
        else:
            out.append(max(abs(d) for d in diff))
    return out


def brute_besov(f, s, p, q, homogeneous):
    terms = [Fraction(2) ** (j * s) * a for j, a in enumerate(brute_block_norms(f, p))]
    mean = 0 if homogeneous else abs(sum(f.values) / len(f.values))
    if q == INF:
        return mean + max(terms, default=0), 1
    if mean == 0:
        return sum(t**q for t in terms), q
    assert q == 1
    return mean + sum(terms), 1


def test_constant_homogeneous_is_zero():
    c = LCFunction.constant(Fraction(5, 2), 4)
    for s, p, q in [(1, 1, 4), (-1, INF, INF), (HALF, 2, 3)]:
        rep = besov_norm(c, BesovParams(s, p, q, True))
        assert rep.float == 0
        assert rep.exact in (None, 0)


def test_counterexample_anchor_norms(j3):
    rep = besov_norm(j3, BesovParams(-1, INF, INF, True))
    assert rep.exact == 1 and rep.exact_power == 1
    rep = besov_norm(j3, BesovParams(1, 1, INF, True))
    assert rep.exact == 4
    assert rep.terms == (1, 4, 4)


def test_from_block_norms_examples():
    rep = besov_norm_from_block_norms([1, 2, 4], BesovParams(-1, INF, INF, True))
    assert rep.exact == 1
    assert besov_norm_from_block_norms([], BesovParams(1, 1, 3, True)).float == 0
    a = Fraction(7, 3)
    for q in (1, 2, 5):
        rep = besov_norm_from_block_norms([a], BesovParams(Fraction(3, 4), 1, q, True), 80)
        assert abs(exact(rep.float) - a) <= a * Fraction(1, 2**76)


def test_fallback_is_recorded(j3):
    rep = besov_norm(j3, BesovParams(HALF, 2, 2, False))
    assert rep.exact is None and rep.path == "float" and rep.note


def test_inhomogeneous_finite_q_with_mean_is_float_only():
    f = LCFunction(2, [1, 2, 3, 5])
    rep = besov_norm(f, BesovParams(1, 1, 3, False))
    assert rep.exact is None
    hom = besov_norm(f, BesovParams(1, 1, 3, True))
    want = exact(hom.float) + Fraction(11, 4)
    assert abs(exact(rep.float) - want) <= want * Fraction(1, 2**60)


def test_p2_against_direct_formula():
    f = LCFunction(2, [1, 2, 3, 5])
    rep = besov_norm(f, BesovParams(0, 2, 2, True), 120)
    # sum_j ||Delta_j||_2^2 = ||f||_2^2 - mean^2 (Parseval)
    want = lp_norm_pow(f, 2) - Fraction(11, 4) ** 2
    assert abs(exact(rep.float) ** 2 - want) < want * Fraction(1, 2**110)


def test_report_json(j3):
    d = besov_norm(j3, BesovParams(1, 1, 4, True)).to_json()
    assert d["exact"] == "513/1" and d["exact_power"] == 4
    assert d["terms"] == ["1/1", "4/1", "4/1"]
    json.dumps(d)


@settings(max_examples=40)
@given(functions, st.sampled_from([(1, 1), (-1, INF), (2, 1), (0, INF)]),
       st.sampled_from([1, 3, 4, INF]), st.booleans())
def test_matches_brute_force(f, sp, q, homogeneous):
    s, p = sp
    if q not in (1, INF):
        homogeneous = True
    rep = besov_norm(f, BesovParams(s, p, q, homogeneous))
    want, power = brute_besov(f, s, p, q, homogeneous)
    assert (rep.exact, rep.exact_power) == (want, power)


@settings(max_examples=40)
@given(functions, st.sampled_from([(1, 1), (-1, INF), (1, INF)]), st.sampled_from([16, 64, 150]))
def test_exact_float_agreement(f, sp, prec):
    for q in (1, 3, 4, INF):
        rep = besov_norm(f, BesovParams(sp[0], sp[1], q, True), prec)
        if rep.exact == 0:
            continue
        # compare q-th powers; relative error of x**q is about q times that of x
        got = exact(rep.float) ** rep.exact_power
        assert abs(got - rep.exact) <= rep.exact * Fraction(rep.exact_power, 2 ** (prec - 4))


@settings(max_examples=40)
@given(functions, st.sampled_from([(1, 1), (-1, INF), (0, 1)]))
def test_q_monotone(f, sp):
    s, p = sp
    vals = [exact(besov_norm(f, BesovParams(s, p, q, True), 100).float) for q in (1, 2, 3, 4, 8)]
    vals.append(exact(besov_norm(f, BesovParams(s, p, INF, True), 100).float))
    assert all(b <= a * (1 + Fraction(1, 2**90)) for a, b in zip(vals, vals[1:]))


@settings(max_examples=40)
@given(functions, st.fractions(max_denominator=30).filter(bool), st.sampled_from([1, 4, INF]))
def test_homogeneity(f, c, q):
    a = besov_norm(f, BesovParams(1, 1, q, True))
    b = besov_norm(c * f, BesovParams(1, 1, q, True))
    assert b.exact == abs(c) ** a.exact_power * a.exact


@settings(max_examples=40)
@given(functions, st.sampled_from([(1, 1), (-1, INF)]), st.sampled_from([1, INF]))
def test_inhomogeneous_adds_mean(f, sp, q):
    s, p = sp
    hom = besov_norm(f, BesovParams(s, p, q, True))
    inh = besov_norm(f, BesovParams(s, p, q, False))
    assert inh.exact == hom.exact + abs(sum(f.values) / len(f.values))


def test_inequality_ratio_anchor(j3):
    assert inequality_ratio(j3, INF) == Fraction(9, 4)
    with pytest.raises(DomainError):
        inequality_ratio(LCFunction.constant(3, 2), 4)
    with pytest.raises(ValueError):
        inequality_ratio(j3, 2)


@given(functions, st.fractions(max_denominator=30).filter(bool))
def test_inequality_ratio_scale_invariant(f, c):
    if all(v == f.values[0] for v in f.values):
        return
    for q in (3, INF):
        a, b = exact(inequality_ratio(c * f, q, 100)), exact(inequality_ratio(f, q, 100))
        assert abs(a - b) <= b * Fraction(1, 2**96)


def test_inequality_ratio_single_block():
    d = LCFunction(3, [3, 0, -1, 2, -3, 0, 1, -2])
    # single block at level 2: ||d||_2^2 / (4 ||d||_1 * ||d||_inf / 4)
    want = lp_norm_pow(d, 2) / (lp_norm_pow(d, 1) * 3)
    assert abs(exact(inequality_ratio(d, INF, 100)) - want) <= want * Fraction(1, 2**96)


def test_splitting_constant():
    assert splitting_constant(1, -1, HALF) == 4
    assert splitting_constant(-1, 1, HALF) == 4
    assert math.isclose(splitting_constant(2, 0, Fraction(1, 4)), 1 / (1 - 2**-0.5) + 1 / (1 - 2**-1.5))


def test_interpolation_single_block():
    d = LCFunction(2, [1, 1, -1, -1])
    rep = interpolation_check(d, 1, -1, HALF, 1, 100)
    assert abs(rep.ratio - 1) < 2.0**-90


def test_interpolation_constant():
    rep = interpolation_check(LCFunction.constant(3, 3), 1, -1, HALF, 1, homogeneous=True)
    assert rep.lhs == 0 and rep.rhs == 0 and rep.ratio == 0


@pytest.mark.parametrize("args", [(1, 1, HALF, 1), (1, -1, 0, 1), (1, -1, 1, 1)])
def test_interpolation_degenerate(args):
    with pytest.raises(ValueError):
        interpolation_check(LCFunction.constant(1, 1), *args)


@settings(max_examples=60)
@given(functions, st.booleans(), st.sampled_from([1, 2, INF]))
def test_interpolation_bounded(f, homogeneous, p):
    rep = interpolation_check(f, 1, -1, HALF, p, homogeneous=homogeneous)
    assert rep.ratio <= rep.bound
