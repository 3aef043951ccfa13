"""
=====================
p-adic arithmetic
=====================

Valuations, norms, canonical digit expansions and the dyadic cells
``Q_{j,k} = k + 2^j Z_2`` that every other part of the package is built on.
"""

# %%
# Valuation and norm
# ------------------
from fractions import Fraction

from dyadic_besov import Cell, cell_children, cell_of, digits, padic_distance, padic_norm, valuation

for x in (12, Fraction(3, 4), Fraction(5, 3), 0):
    print(f"x={x!s:>5}  v_2={valuation(x, 2)!s:>4}  |x|_2={padic_norm(x, 2)}")

# %%
# The norm is non-Archimedean: 1 and 3 are both at distance 1 from 0, but at
# distance 1/2 from each other.
print(padic_distance(1, 3, 2), padic_distance(5, 1, 2))

# %%
# Digit expansions
# ----------------
# -1 is the 2-adic integer 1 + 2 + 4 + ..., and 1/3 = 1 + 2 + 8 + 32 + ...
print(digits(-1, 2, 8))
print(digits(Fraction(1, 3), 2, 8))
print(digits(Fraction(-2, 5), 3, 6))

# %%
# Cells
# -----
# ``1/3`` lies in Q_{2,3}: 3 * 3 = 9 = 1 mod 4. Each cell splits into the two
# children with indices k and k + 2^j.
c = cell_of(Fraction(1, 3), 2)
print(c, c.measure, cell_children(c))
print([cell_of(Fraction(1, 3), j).index for j in range(8)])
print(sum(Cell(6, k).measure for k in range(64)))
