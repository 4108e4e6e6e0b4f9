"""Outcome probabilities, linear reconstruction, shot simulation and estimation."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .classify import from_hermitian_coordinates, measurement_map
from .errors import ValidationError
from .linalg import DEFAULT_TOL, as_matrix, is_density_matrix, is_hermitian
from .sets import ProjectorSet


def probabilities_raw(pset: ProjectorSet, h) -> np.ndarray:
    """``Tr(P_a h)`` for any Hermitian ``h``; no clipping."""
    h = as_matrix(h)
    if h.shape != (pset.dim, pset.dim):
        raise ValidationError("matrix dimension does not match the set")
    if not is_hermitian(h, 1e-8):
        raise ValidationError("matrix is not Hermitian")
    v = pset.vectors
    return np.real(np.einsum("ai,ij,aj->a", v.conj(), h, v))


def probabilities(pset: ProjectorSet, rho, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Outcome probabilities of a density matrix, clipped to ``[0, 1]``."""
    rho = as_matrix(rho)
    if not is_density_matrix(rho, tol):
        raise ValidationError("input is not a density matrix")
    return np.clip(probabilities_raw(pset, rho), 0.0, 1.0)


def reconstruct(pset: ProjectorSet, probs, return_residual: bool = False):
    """Minimum-norm least-squares Hermitian ``H`` with ``Tr(P_a H) = probs[a]``.

    Raises
    ------
    ValidationError
        If the set is not representative or ``probs`` has the wrong length.
    """
    probs = np.asarray(probs, dtype=float)
    if probs.shape != (pset.N,):
        raise ValidationError(f"expected {pset.N} probabilities, got shape {probs.shape}")
    mmap = measurement_map(pset)
    if mmap.rank < pset.dim**2:
        raise ValidationError("set not representative")
    coords = np.linalg.lstsq(mmap.matrix, probs, rcond=None)[0]
    h = from_hermitian_coordinates(coords, pset.dim)
    if return_residual:
        return h, float(np.linalg.norm(mmap.matrix @ coords - probs))
    return h


def project_to_density(h) -> np.ndarray:
    """Closest density matrix sharing the eigenvectors of ``h``.

    Eigenvalues are Euclidean-projected onto the probability simplex.
    """
    h = as_matrix(h)
    if not is_hermitian(h, 1e-8):
        raise ValidationError("matrix is not Hermitian")
    w, q = np.linalg.eigh((h + h.conj().T) / 2)
    p = simplex_projection(w)
    return (q * p) @ q.conj().T


def simplex_projection(x) -> np.ndarray:
    """Euclidean projection of a real vector onto ``{p >= 0, sum p = 1}``."""
    x = np.asarray(x, dtype=float)
    s = np.sort(x)[::-1]
    cums = np.cumsum(s) - 1.0
    k = np.arange(1, len(x) + 1)
    rho = np.nonzero(s - cums / k > 0)[0][-1]
    shift = cums[rho] / (rho + 1)
    return np.maximum(x - shift, 0.0)


@dataclass(frozen=True)
class CountsRecord:
    """Multinomial counts, one row per declared basis (ordered like its members)."""

    shots_per_basis: int
    counts: tuple[tuple[int, ...], ...]
    seed: int
    set_provenance: str = ""

    def to_dict(self) -> dict:
        return {
            "set_provenance": self.set_provenance,
            "counts": [list(c) for c in self.counts],
            "shots_per_basis": self.shots_per_basis,
            "seed": self.seed,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "CountsRecord":
        try:
            return cls(
                int(data["shots_per_basis"]),
                tuple(tuple(int(x) for x in row) for row in data["counts"]),
                int(data["seed"]),
                str(data.get("set_provenance", "")),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ValidationError(f"malformed counts JSON: {exc}") from exc


def basis_rng(seed: int, basis: int) -> np.random.Generator:
    """Independent PCG64 stream keyed by ``(seed, basis)``."""
    return np.random.default_rng(np.random.SeedSequence([seed & (2**64 - 1), basis]))


def sample_counts(pset: ProjectorSet, rho, shots_per_basis: int, seed: int) -> CountsRecord:
    """Measure ``rho`` ``shots_per_basis`` times in each declared basis."""
    if not pset.disjoint:
        raise ValidationError("sampling requires a disjoint grouping of bases")
    if shots_per_basis < 0:
        raise ValidationError("shots_per_basis must be nonnegative")
    p = probabilities(pset, rho)
    counts = []
    for b, members in enumerate(pset.bases):
        pb = p[list(members)]
        pb = pb / pb.sum()
        draw = basis_rng(seed, b).multinomial(shots_per_basis, pb)
        counts.append(tuple(int(x) for x in draw))
    return CountsRecord(shots_per_basis, tuple(counts), int(seed), pset.provenance)


def frequencies(pset: ProjectorSet, counts: CountsRecord) -> np.ndarray:
    if not pset.disjoint:
        raise ValidationError("counts can only be aligned with a disjoint grouping")
    if counts.shots_per_basis <= 0:
        raise ValidationError("need at least one shot per basis")
    if len(counts.counts) != len(pset.bases):
        raise ValidationError("counts record does not match the number of bases")
    freq = np.zeros(pset.N)
    for members, row in zip(pset.bases, counts.counts):
        if len(row) != len(members) or sum(row) != counts.shots_per_basis:
            raise ValidationError("counts row inconsistent with its basis or shot total")
        freq[list(members)] = np.asarray(row) / counts.shots_per_basis
    return freq


def estimate(pset: ProjectorSet, counts: CountsRecord) -> np.ndarray:
    """Plug-in estimate: frequencies -> reconstruct -> project_to_density."""
    return project_to_density(reconstruct(pset, frequencies(pset, counts)))


def trace_distance(a, b) -> float:
    d = as_matrix(a) - as_matrix(b)
    return 0.5 * float(np.sum(np.abs(np.linalg.eigvalsh((d + d.conj().T) / 2))))


def random_density_matrix(n: int, rng: np.random.Generator, rank: int | None = None) -> np.ndarray:
    """Ginibre-distributed density matrix (full rank unless ``rank`` given)."""
    k = n if rank is None else rank
    g = rng.standard_normal((n, k)) + 1j * rng.standard_normal((n, k))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real

