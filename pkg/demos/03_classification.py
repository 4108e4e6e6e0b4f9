"""Comparing projector-set families by rank and basis structure."""

# %%
from projsets import classify, compose, mub_prime, standard_complete, standard_representative, weyl_complete

# %%
corpus = {
    "standard representative, n=3": standard_representative(3),
    "standard complete, n=3": standard_complete(3),
    "weyl complete, n=4": weyl_complete(4),
    "mub, p=3": mub_prime(3),
    "pauli x pauli": compose(mub_prime(2), mub_prime(2)),
}

# %%
cols = ("rep", "cmpl", "almost", "perfect", "mub")
header = f"{'set':32} {'N':>4} {'rank':>4} " + " ".join(f"{c:>7}" for c in cols)
print(header)
for name, s in corpus.items():
    r = classify(s)
    flags = [r.representative, r.complete, r.almost_perfect, r.perfect, r.mutually_unbiased]
    cells = ["?" if f is None else ("y" if f else "-") for f in flags]
    print(f"{name:32} {s.N:>4} {r.rank:>4} " + " ".join(f"{c:>7}" for c in cells))

# %% The product of two qubit MUB sets has orthogonal vectors in different bases
r = classify(corpus["pauli x pauli"])
i, j = r.orthogonal_pair
s = corpus["pauli x pauli"]
print("orthogonal pair", s.label(i), s.label(j))
