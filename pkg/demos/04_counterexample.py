"""
==========================================
Failure of the L^2 - Besov product bound
==========================================

For q > 2 no constant C gives

    ||f||_2^2 <= C ||f||_{hom B^{1,q}_1} ||f||_{hom B^{-1,inf}_inf}

on Z_2. This script builds the counterexample family, checks its closed-form
norms against the dense materialization, and shows the ratio growing.
"""

# %%
from fractions import Fraction

from dyadic_besov import CounterexampleConfig, EpsilonSpec, build_blocks, closed_form_norms, cross_validate, materialize
from dyadic_besov.counterexample import sweep, write_rows

config = CounterexampleConfig(1)
sbf = build_blocks(config)
for b in sbf.blocks:
    print(b)
print(materialize(sbf))
print(closed_form_norms(config).ratio_exact)

# %%
# Dual-path check
# ---------------
# Every norm is recomputed from the dense table and compared exactly.
rep = cross_validate(CounterexampleConfig(6, 4, 1, EpsilonSpec(Fraction(3, 8))))
print(rep.to_json()["status"], rep.levels_checked)

# %%
# Divergence
# ----------
# With eps_j ~ (1+j)^(-3/8), eps lies in l^4 but not l^2 and the ratio keeps
# increasing with j0. The CSV is ready for any plotting tool.
rows = sweep(range(2, 41, 2), 4, EpsilonSpec(Fraction(3, 8)))
print(write_rows(rows))

# %%
# With eps = 1 and q = inf the ratio grows roughly like j0, which is the
# failure of the BV-type bound.
print([float(r.ratio) for r in sweep(range(1, 11))])
