from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conftest import J3_TABLE, brute_project, exact
from dyadic_besov import (
    BlockSequence,
    DomainError,
    LCFunction,
    block,
    decompose,
    integral,
    linf_norm,
    lp_norm_float,
    lp_norm_pow,
    project,
    random_lc,
    reconstruct,
    square_function_sq,
)
from dyadic_besov.dyadic import inner

functions = st.builds(random_lc, st.integers(0, 7), st.integers(0, 2**32))


def test_eval(j3):
    assert LCFunction.constant(Fraction(2, 3), 2).eval(Fraction(5, 7)) == Fraction(2, 3)
    assert j3.eval(4) == -1
    assert j3(Fraction(4, 9)) == J3_TABLE[(4 * pow(9, -1, 8)) % 8]
    assert LCFunction.indicator(2, 1).eval(5) == 1
    with pytest.raises(DomainError):
        j3.eval(Fraction(1, 2))


def test_length_mismatch():
    with pytest.raises(ValueError):
        LCFunction(2, [1, 2, 3])


def test_integral(j3):
    assert integral(LCFunction.constant(5, 3)) == 5
    for j in range(5):
        for k in range(2**j):
            assert integral(LCFunction.indicator(j, k, resolution=6)) == Fraction(1, 2**j)
    assert integral(j3) == 0


def test_lp_norms(j3):
    assert lp_norm_pow(LCFunction.indicator(3, 5), 1) == Fraction(1, 8)
    assert lp_norm_pow(j3, 2) == 9
    assert lp_norm_pow(LCFunction.zero(4), 3) == 0
    assert linf_norm(j3) == 7
    assert linf_norm(-j3) == 7
    assert linf_norm(LCFunction.constant(Fraction(-3, 2))) == Fraction(3, 2)


def test_lp_norm_float():
    half = lp_norm_float(LCFunction.indicator(1, 0), 2, 100)
    assert abs(exact(half) ** 2 - Fraction(1, 2)) < Fraction(1, 2**96)
    assert lp_norm_float(LCFunction(1, [1, -1]), 3) == 1
    with pytest.raises(ValueError):
        lp_norm_float(LCFunction.zero(), 2, 8)


@given(functions, st.sampled_from([16, 53, 64, 200]))
def test_lp_norm_float_p1_matches_exact(f, prec):
    want = lp_norm_pow(f, 1)
    approx = exact(lp_norm_float(f, 1, prec))
    assert abs(approx - want) <= want * Fraction(1, 2 ** (prec - 4))


def test_project_examples(j3):
    assert project(j3, 2) == LCFunction(2, [3, 1, -1, -3])
    assert project(j3, 0) == LCFunction.constant(integral(j3))
    assert project(LCFunction.constant(4, 5), 2) == LCFunction.constant(4, 2)
    assert project(j3, 7) == j3


def test_block_examples(j3):
    assert block(j3, 2) == LCFunction(3, [4, 0, 0, 0, -4, 0, 0, 0])
    assert block(LCFunction.constant(3, 4), 1).is_zero()
    assert block(j3, 3) == LCFunction.zero(3)


def test_decompose_examples(j3):
    b = decompose(LCFunction.constant(Fraction(2, 5), 3))
    assert b.mean == Fraction(2, 5) and all(d.is_zero() for d in b.blocks)

    b = decompose(j3)
    assert b.mean == 0
    assert [d.values for d in b.blocks] == [
        (1, -1), (2, 2, -2, -2), (4, 0, 0, 0, -4, 0, 0, 0)]
    assert reconstruct(b) == j3

    b = decompose(LCFunction.indicator(1, 0))
    assert b.mean == Fraction(1, 2)
    assert b.blocks[0] == LCFunction(1, [Fraction(1, 2), Fraction(-1, 2)])
    assert reconstruct(b) == LCFunction.indicator(1, 0)


def test_reconstruct_rejects_bad_resolutions():
    with pytest.raises(ValueError):
        reconstruct(BlockSequence(Fraction(0), (LCFunction.zero(2),)))


def test_square_function(j3):
    assert square_function_sq(LCFunction.constant(3, 3)).is_zero()
    d = LCFunction(2, [1, 1, -1, -1])
    assert square_function_sq(d) == d * d
    assert integral(square_function_sq(j3)) == 9


def test_random_lc():
    assert random_lc(6, 11) == random_lc(6, 11)
    distinct = {random_lc(5, s).values for s in range(50)}
    assert len(distinct) == 50
    f = random_lc(0, 3)
    assert f.resolution == 0
    assert all(abs(v.numerator) <= 8 * 840 and v.denominator <= 840 for v in random_lc(5, 1, 8).values)
    with pytest.raises(DomainError):
        random_lc(25, 0)


@given(functions, st.integers(0, 9))
def test_project_matches_brute_force(f, j):
    expected = brute_project(f.values, f.resolution, j)
    assert list(project(f, j).values) == expected


@given(functions)
def test_reconstruction_exact(f):
    assert reconstruct(decompose(f)) == f


@given(functions, st.integers(0, 8), st.integers(0, 8))
def test_projection_laws(f, j, k):
    assert project(project(f, j), k) == project(f, min(j, k))
    pj = project(f, j)
    assert lp_norm_pow(pj, 1) <= lp_norm_pow(f, 1)
    assert linf_norm(pj) <= linf_norm(f)


@given(functions, functions, st.fractions(max_denominator=50), st.integers(0, 8))
def test_project_linear(f, g, c, j):
    assert project(c * f + g, j) == c * project(f, j) + project(g, j)


@given(functions)
def test_martingale_and_parseval(f):
    b = decompose(f)
    for j, d in enumerate(b.blocks):
        for k in range(2**j):
            assert d.restrict_integral(j, k) == 0
    for i in range(len(b.blocks)):
        for j in range(i + 1, len(b.blocks)):
            assert inner(b.blocks[i], b.blocks[j]) == 0
    assert lp_norm_pow(f, 2) == b.mean**2 + sum(lp_norm_pow(d, 2) for d in b.blocks)
    assert integral(square_function_sq(f)) == lp_norm_pow(f, 2) - integral(f) ** 2


@settings(max_examples=30)
@given(functions, st.integers(1, 3))
def test_refinement_changes_nothing(f, extra):
    g = f.refine(f.resolution + extra)
    assert integral(g) == integral(f)
    assert lp_norm_pow(g, 2) == lp_norm_pow(f, 2)
    assert linf_norm(g) == linf_norm(f)
    assert decompose(g).blocks[: f.resolution] == decompose(f).blocks
    assert all(d.is_zero() for d in decompose(g).blocks[f.resolution:])
    assert g.coarsen().resolution <= f.resolution
