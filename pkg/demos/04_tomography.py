"""Reconstructing a qutrit state from simulated counts."""

# %%
import numpy as np

from projsets import mub_prime
from projsets.tomography import (
    estimate,
    probabilities,
    random_density_matrix,
    reconstruct,
    sample_counts,
    trace_distance,
)

rng = np.random.default_rng(4)
s = mub_prime(3)
rho = random_density_matrix(3, rng)

# %% Exact probabilities invert exactly
print("exact error:", np.linalg.norm(reconstruct(s, probabilities(s, rho)) - rho))

# %% Finite shots: error shrinks roughly as 1/sqrt(shots)
for shots in (100, 1_000, 10_000, 100_000):
    errs = [trace_distance(estimate(s, sample_counts(s, rho, shots, seed)), rho) for seed in range(20)]
    print(f"{shots:>7} shots/basis: mean trace distance {np.mean(errs):.4f}")
