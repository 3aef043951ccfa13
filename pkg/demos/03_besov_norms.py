"""
============
Besov norms
============

Norms ``B^{s,q}_p`` from block norms, exact where possible, plus the
elementary interpolation estimate with its explicit constant.
"""

# %%
from fractions import Fraction

from dyadic_besov import INF, BesovParams, LCFunction, besov_norm, interpolation_check, random_lc, splitting_constant

f = LCFunction(3, [7, 1, -1, -3, -1, 1, -1, -3])
for params in (BesovParams(-1, INF, INF, True), BesovParams(1, 1, INF, True), BesovParams(1, 1, 4, True),
               BesovParams(Fraction(1, 2), 2, 2, False)):
    rep = besov_norm(f, params)
    print(params, "->", rep.exact, f"(power {rep.exact_power})", rep.float, rep.path)

# %%
# The report serializes to JSON with exact values as ``num/den`` strings.
print(besov_norm(f, BesovParams(1, 1, 4, True)).dumps())

# %%
# Interpolation
# -------------
# ||f||_{B^{0,1}_1} <= C ||f||_{B^{1,inf}_1}^{1/2} ||f||_{B^{-1,inf}_1}^{1/2}
# with C = 4 from the geometric-series splitting bound.
C = splitting_constant(1, -1, Fraction(1, 2))
worst = max(interpolation_check(random_lc(10, s), 1, -1, Fraction(1, 2), 1).ratio for s in range(20))
print(C, worst)

# A function concentrated in one block attains ratio 1.
print(interpolation_check(LCFunction(2, [1, 1, -1, -1]), 1, -1, Fraction(1, 2), 1).ratio)
