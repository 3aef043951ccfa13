"""Exact harmonic analysis on the 2-adic integers.

p-adic arithmetic, Littlewood-Paley decomposition of locally constant
functions on Z_2, Lebesgue and Besov norms, and a counterexample family for
the inequality ||f||_2^2 <= C ||f||_{hom B^{1,q}_1} ||f||_{hom B^{-1,inf}_inf}
with q > 2.
"""
from .besov import (
    INF,
    BesovParams,
    InterpolationReport,
    NormReport,
    besov_norm,
    besov_norm_from_block_norms,
    inequality_ratio,
    interpolation_check,
    splitting_constant,
)
from .counterexample import (
    BlockSpec,
    ClosedFormNorms,
    CounterexampleConfig,
    EpsilonSpec,
    SparseBlockFunction,
    build_blocks,
    closed_form_norms,
    cross_validate,
    make_epsilon,
    materialize,
    pair_count,
    ratio,
    sweep,
)
from .dyadic import (
    BlockSequence,
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
from .errors import CapacityError, DomainError, ValidationError
from .padic import Cell, DigitExpansion, cell_children, cell_of, digits, padic_distance, padic_norm, valuation

__version__ = "0.1.0"
