# %% [markdown]
# # Choosing generators
#
# The same star admits many ordered generator lists.  The order changes the
# array and therefore the LHD.  Three guidelines flag risky choices:
#
# * G1: the first generator of a ray lies in the nucleus;
# * G2: two rays share their l-th generator;
# * G3: two rays share the sum of their l1-th and l2-th generators.

# %%
from starlhd import assignment_from_rays, check_guidelines, search_compliant

configs = {
    "G1": [["AB", "B", "ACD"], ["D", "C", "ABC"], ["AC", "BC", "CD"]],
    "G2": [["A", "B", "ABCD"], ["C", "D", "ABCD"], ["AC", "BD", "BC"]],
    "G3": [["A", "B", "ACD"], ["C", "ABD", "ABC"], ["AC", "AD", "BC"]],
    "none": [["B", "ACD", "AB"], ["D", "C", "ABC"], ["AC", "BC", "CD"]],
}
assignments = {k: assignment_from_rays(v, 4) for k, v in configs.items()}
for name, gens in assignments.items():
    report = check_guidelines(gens)
    print(f"{name:5s} violated={report.violated}")
    for l1, l2, j1, j2, s in report.g3_violations:
        print(f"      rays {j1},{j2}: generators {l1}+{l2} both give {s}")

# %% [markdown]
# A backtracking search finds a compliant list directly.

# %%
found = search_compliant(assignments["none"].star)
print(found.labels(), check_guidelines(found).compliant)

# %% [markdown]
# Some stars admit none: with rank-2 rays through a single point, G2 and G3
# together leave room for at most two rays.

# %%
from starlhd import construct_star

print(search_compliant(construct_star(4, 2, 1)))
