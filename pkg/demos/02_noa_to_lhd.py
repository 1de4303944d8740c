# %% [markdown]
# # Latin hypercubes from an array
#
# Each level k of an s-level column is spread over n/s consecutive cells,
# in random order, then every cell gets a point.

# %%
import numpy as np

from starlhd import assignment_from_rays, expand, perturb, projection_summary, star_to_noa
from starlhd.lhd import MIDPOINT, UNIFORM

gens = assignment_from_rays([["A", "B", "ACD"], ["C", "D", "ABC"], ["AC", "BC", "AD"]], 4)
noa = star_to_noa(gens.star, gens)

levels = expand(noa, seed=1)
print(levels.values.T)
print("latin:", levels.is_latin())
print("strata recover the array:", np.array_equal(levels.stratum(), noa.values))

# %% [markdown]
# Uniform jitter gives a random LHD; midpoints give the unperturbed picture
# used when looking at the geometry of a design.

# %%
jittered = perturb(levels, UNIFORM, seed=1)
centred = perturb(levels, MIDPOINT)
for s in projection_summary(centred, 2):
    print([c + 1 for c in s.columns], f"MID={s.mid:.5f}  AID={s.aid:.4f}")

# %%
try:
    import matplotlib.pyplot as plt

    fig, axes = plt.subplots(1, 3, figsize=(10, 3.3))
    for ax, (a, b) in zip(axes, [(0, 1), (0, 2), (1, 2)]):
        ax.scatter(jittered.points[:, a], jittered.points[:, b], s=12)
        ax.set(xlim=(0, 1), ylim=(0, 1), title=f"columns {a + 1} and {b + 1}")
        ax.set_xticks(np.linspace(0, 1, 9))
        ax.set_yticks(np.linspace(0, 1, 9))
        ax.grid(True, lw=0.3)
    fig.tight_layout()
    fig.savefig("noa_lhd_projections.png", dpi=120)
except ImportError:
    pass
