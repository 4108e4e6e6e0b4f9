"""Mutually unbiased bases in prime dimension and their symmetries."""

# %%
import numpy as np

from projsets import classify, mub_prime
from projsets.classify import check_symmetry, is_transitive, symmetric_witnesses

# %% Build the p + 1 bases for p = 5
s = mub_prime(5)
print(f"{s.N} vectors in {len(s.bases)} bases")

# %% Cross-basis overlaps are all 1/p
gram = np.abs(s.vectors.conj() @ s.vectors.T) ** 2
cross = gram[np.ix_(s.bases[0], s.bases[3])]
print("overlaps between bases 0 and 3:", np.unique(np.round(cross, 12)))

# %% Classification
report = classify(s)
print({k: report.to_dict()[k] for k in ("rank", "perfect", "mutually_unbiased")})

# %% Unitaries that permute the bases, and whether they reach every basis
perms = [check_symmetry(s, w).basis_permutation for w in symmetric_witnesses(s)]
for p in perms:
    print(p)
print("transitive:", is_transitive(perms, len(s.bases)))
