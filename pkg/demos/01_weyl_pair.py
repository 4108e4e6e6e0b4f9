"""Clock and shift matrices, their monomials, and recovering a hidden frame."""

# %%
import numpy as np

from projsets import von_neumann_transform, weyl_pair
from projsets.weyl import WeylMonomial, commutation_exponent

np.set_printoptions(precision=3, suppress=True)

# %% The pair in dimension 3
u, v = weyl_pair(3)
print("U =\n", u.real)
print("diag(V) =", np.diag(v))
z = np.exp(2j * np.pi / 3)
print("|UV - zVU| =", np.linalg.norm(u @ v - z * v @ u))

# %% Every monomial U^k V^l has n distinct eigenvalues in prime dimension
m = WeylMonomial(5, 2, 3)
print("eigenvalues of U^2 V^3 (n=5):", np.round(m.eigenvalues, 3))

# %% Hide the pair behind a random unitary, then recover it
rng = np.random.default_rng(1)
q, _ = np.linalg.qr(rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5)))
u5, v5 = weyl_pair(5)
a = q @ np.linalg.matrix_power(u5, 2) @ q.conj().T
b = q @ v5 @ q.conj().T
print("commutation exponent:", commutation_exponent(a, b))
res = von_neumann_transform(a, b)
s = res.S
print("residual on A:", np.linalg.norm(s @ a @ s.conj().T - res.phase_a * np.linalg.matrix_power(u5, 2)))
print("residual on B:", np.linalg.norm(s @ b @ s.conj().T - res.phase_b * v5))
