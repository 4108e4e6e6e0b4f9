"""How much white noise makes a Bell state separable over a product set."""

# %%
import numpy as np

from projsets import compose, mub_prime
from projsets.separability import minimize_beta_lp, separable_form

pair = compose(mub_prime(2), mub_prime(2))
phi = np.array([1, 0, 0, 1]) / np.sqrt(2)
bell = np.outer(phi, phi)

# %% Constructive route: least-squares weights shifted to be nonnegative
form = separable_form(pair, bell)
print(f"constructive: alpha={form.alpha:.4f} beta={form.beta:.4f}")
print("reconstruction error:", np.linalg.norm(form.reconstruct() - bell))

# %% Linear programme over the same product projectors
beta_star, best = minimize_beta_lp(pair, bell)
print(f"optimal beta = {beta_star:.6f}")
for entry in best.to_dict()["weights"][:6]:
    print(entry)

# %% Partial transpose check at the optimum
mixed = (bell + beta_star * np.eye(4)) / (1 + 4 * beta_star)
pt = mixed.reshape(2, 2, 2, 2).transpose(0, 3, 2, 1).reshape(4, 4)
print("min eigenvalue of partial transpose:", np.linalg.eigvalsh(pt).min())
