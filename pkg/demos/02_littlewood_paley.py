"""
==================================
Littlewood-Paley decomposition
==================================

A locally constant function on Z_2 splits exactly into its mean plus
martingale-difference blocks ``Delta_j f = S_{j+1} f - S_j f``.
"""

# %%

from dyadic_besov import LCFunction, block, decompose, integral, lp_norm_pow, project, random_lc, reconstruct
from dyadic_besov.dyadic import inner, square_function_sq

f = LCFunction(3, [7, 1, -1, -3, -1, 1, -1, -3])
for j in range(4):
    print(f"S_{j} f =", project(f, j))

# %%
# Blocks and exact reconstruction
# -------------------------------
b = decompose(f)
print("mean", b.mean)
for j, d in enumerate(b.blocks):
    print(f"Delta_{j} f =", d)
print(reconstruct(b) == f)

# %%
# Orthogonality
# -------------
# Blocks at different levels are orthogonal, so the L^2 norm splits level by
# level and the square function reproduces it.
g = random_lc(8, seed=1)
bs = decompose(g).blocks
print(all(inner(bs[i], bs[j]) == 0 for i in range(8) for j in range(i + 1, 8)))
print(lp_norm_pow(g, 2) == integral(g) ** 2 + sum(lp_norm_pow(d, 2) for d in bs))
print(integral(square_function_sq(g)) == lp_norm_pow(g, 2) - integral(g) ** 2)

# %%
# Each block averages to zero over every cell one level up.
d = block(g, 5)
print(all(d.restrict_integral(5, k) == 0 for k in range(32)))
print(lp_norm_pow(d, 1), lp_norm_pow(d, 2))
