# %% [markdown]
# # From a covering star to a nearly orthogonal array
#
# A 2^4 factorial has 15 effects, the points of PG(3, 2).  Three rank-3
# flats that share the rank-2 flat {AB, CD, ABCD} cover all of them: a
# balanced covering star with mu = 3 rays.  Each ray becomes one 8-level
# column of a 16-run array.

# %%
import numpy as np

from starlhd import assignment_from_rays, star_to_noa, verify_strength, verify_cover

rays = [["A", "B", "ACD"], ["C", "D", "ABC"], ["AC", "BC", "AD"]]
gens = assignment_from_rays(rays, p=4)
star = gens.star
print("nucleus:", sorted(x.label for x in star.nucleus.points))
print("covering:", bool(verify_cover(star)))

# %% [markdown]
# Row i of the array is the effect with index i (D, C, CD, B, ...), and the
# entry in column j reads the inner products with the ray's generators as
# a binary number.

# %%
noa = star_to_noa(star, gens)
print(noa.values.T)

# %% [markdown]
# The array is not an OA: every pair of columns realises only 16 of the 64
# level pairs, each once.  That is a quarter of an OA(64, 8, 3, 2).

# %%
report = verify_strength(noa, 2)
print("exact strength 2:", report.is_exact)
print("fraction of level pairs present:", report.fraction_factor)

# %% [markdown]
# With an empty nucleus the star is a spread and the same construction gives
# a genuine orthogonal array.

# %%
from starlhd import construct_spread

oa = star_to_noa(construct_spread(4, 2).as_star())
print(oa.levels, "exact:", verify_strength(oa, 2).is_exact)
