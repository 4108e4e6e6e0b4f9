"""Measurement maps, the classification taxonomy and symmetry certificates."""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np
import scipy.linalg

from .errors import NumericalError, ValidationError
from .linalg import DEFAULT_TOL, as_matrix, is_unitary, matrix_power
from .sets import PROJECTOR_TOL, ProjectorSet, fourier_matrix, projector_distance
from .weyl import is_prime, von_neumann_transform, weyl_pair

RANK_RTOL = 1e-8
_SQRT2 = np.sqrt(2.0)


def hermitian_basis(n: int) -> list[np.ndarray]:
    """Orthonormal real basis of n x n Hermitian matrices.

    Order: ``E^(kk)``, then ``(E^(kl) + E^(lk))/sqrt2`` and finally
    ``i (E^(kl) - E^(lk))/sqrt2`` for k < l.
    """
    basis = []
    for k in range(n):
        e = np.zeros((n, n), dtype=complex)
        e[k, k] = 1.0
        basis.append(e)
    rows, cols = np.triu_indices(n, 1)
    for k, l in zip(rows, cols):
        e = np.zeros((n, n), dtype=complex)
        e[k, l] = e[l, k] = 1 / _SQRT2
        basis.append(e)
    for k, l in zip(rows, cols):
        e = np.zeros((n, n), dtype=complex)
        e[k, l] = 1j / _SQRT2
        e[l, k] = -1j / _SQRT2
        basis.append(e)
    return basis


def hermitian_coordinates(h) -> np.ndarray:
    """Real coordinates ``Re Tr(B_mu h)`` in :func:`hermitian_basis`.

    Accepts a single matrix or a stack of shape ``(..., n, n)``.
    """
    h = np.asarray(h, dtype=complex)
    n = h.shape[-1]
    rows, cols = np.triu_indices(n, 1)
    diag = np.real(np.diagonal(h, axis1=-2, axis2=-1))
    upper, lower = h[..., rows, cols], h[..., cols, rows]
    sym = np.real(upper + lower) / _SQRT2
    anti = (np.imag(upper) - np.imag(lower)) / _SQRT2
    return np.concatenate([diag, sym, anti], axis=-1)


def from_hermitian_coordinates(c, n: int) -> np.ndarray:
    c = np.asarray(c, dtype=float)
    if c.shape[-1] != n * n:
        raise ValidationError(f"expected {n * n} coordinates, got {c.shape[-1]}")
    rows, cols = np.triu_indices(n, 1)
    npairs = len(rows)
    h = np.zeros(c.shape[:-1] + (n, n), dtype=complex)
    idx = np.arange(n)
    h[..., idx, idx] = c[..., :n]
    off = (c[..., n : n + npairs] + 1j * c[..., n + npairs :]) / _SQRT2
    h[..., rows, cols] = off
    h[..., cols, rows] = off.conj()
    return h


def numerical_rank(a, rtol: float = RANK_RTOL) -> int:
    """Rank from a column-pivoted QR, cutting at ``rtol * |R[0, 0]|``."""
    a = np.asarray(a)
    if a.size == 0:
        return 0
    r = scipy.linalg.qr(a, mode="r", pivoting=True)[0]
    d = np.abs(np.diag(r))
    if d.size == 0 or d[0] == 0.0:
        return 0
    return int(np.sum(d > rtol * d[0]))


@dataclass(frozen=True)
class MeasurementMap:
    """Matrix of the linear map ``H -> (Tr(P_a H))_a`` in Hermitian coordinates."""

    pset: ProjectorSet = field(repr=False)
    matrix: np.ndarray
    rank: int

    def apply(self, h) -> np.ndarray:
        return self.matrix @ hermitian_coordinates(as_matrix(h))


def measurement_map(pset: ProjectorSet, rtol: float = RANK_RTOL) -> MeasurementMap:
    m = hermitian_coordinates(pset.projectors())
    m.setflags(write=False)
    return MeasurementMap(pset, m, numerical_rank(m, rtol))


def expansion_residual(pset: ProjectorSet, target, real: bool = False) -> float:
    """Least-squares residual of ``target`` as a combination of the projectors.

    With ``real=True`` only real coefficients are allowed (``target``
    should then be Hermitian); otherwise complex coefficients are used.
    """
    target = as_matrix(target)
    if real:
        a = hermitian_coordinates(pset.projectors()).T
        b = hermitian_coordinates(target)
        coef = np.linalg.lstsq(a, b, rcond=None)[0]
        fit = np.einsum("a,aij->ij", coef, pset.projectors())
    else:
        a = pset.projectors().reshape(pset.N, -1).T
        coef = np.linalg.lstsq(a, target.ravel(), rcond=None)[0]
        fit = (a @ coef).reshape(target.shape)
    return float(np.linalg.norm(fit - target))


@dataclass
class ClassificationReport:
    """Where a projector set sits in the taxonomy.

    Flags that cannot be decided (completeness of an ungrouped set) are
    ``None``.
    """

    dim: int
    N: int
    rank: int
    representative: bool
    minimal_representative: bool
    affine_minimal: bool
    complete: bool | None
    almost_perfect: bool | None
    perfect: bool | None
    mutually_unbiased: bool | None
    orthogonal_pair: tuple[int, int] | None = None
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "dim": self.dim,
            "N": self.N,
            "rank": self.rank,
            "representative": self.representative,
            "minimal_representative": self.minimal_representative,
            "affine_minimal": self.affine_minimal,
            "complete": self.complete,
            "almost_perfect": self.almost_perfect,
            "perfect": self.perfect,
            "mutually_unbiased": self.mutually_unbiased,
            "orthogonal_pair": None if self.orthogonal_pair is None else list(self.orthogonal_pair),
            "notes": list(self.notes),
        }


def _cross_overlaps(pset: ProjectorSet) -> tuple[np.ndarray, np.ndarray]:
    """Squared overlaps and a mask of pairs lying in different bases (disjoint sets)."""
    owner = np.array([m[0] for m in pset.membership])
    gram = np.abs(pset.vectors.conj() @ pset.vectors.T) ** 2
    cross = owner[:, None] != owner[None, :]
    return gram, cross


def classify(pset: ProjectorSet, tol: float = DEFAULT_TOL) -> ClassificationReport:
    n, count = pset.dim, pset.N
    n2 = n * n
    mmap = measurement_map(pset)
    notes: list[str] = []
    representative = mmap.rank == n2
    minimal = representative and count == n2
    affine = False
    if count == n2 - 1:
        augmented = np.vstack([mmap.matrix, hermitian_coordinates(np.eye(n))])
        affine = numerical_rank(augmented) == n2
    notes.append(
        "affine_minimal uses the rank of the map augmented with the trace functional"
    )

    complete = almost = perfect = mub = None
    pair = None
    if not representative:
        complete = almost = perfect = mub = False
    elif not pset.grouped:
        notes.append("completeness unknown (no grouping declared)")
    else:
        covered = all(pset.membership)
        complete = covered
        almost = complete and pset.disjoint
        perfect = mub = False
        if almost:
            gram, cross = _cross_overlaps(pset)
            amp = np.sqrt(gram)
            bad = np.argwhere(cross & (amp <= tol))
            if len(bad):
                pair = (int(bad[0][0]), int(bad[0][1]))
                notes.append(f"vectors {pair[0]} and {pair[1]} lie in different bases but are orthogonal")
            perfect = len(bad) == 0
            if perfect:
                mub = bool(np.max(np.abs(gram[cross] - 1.0 / n), initial=0.0) < tol)
        if not covered:
            notes.append("declared bases do not cover every vector")

    if perfect and count < n2 + n:
        raise NumericalError(f"perfect set with N={count} < n^2+n={n2 + n}: inconsistent classification")
    return ClassificationReport(
        n, count, mmap.rank, representative, minimal, affine, complete, almost, perfect, mub, pair, notes
    )


class SymmetryResult(NamedTuple):
    """``P(u v_a) = P(v_permutation[a])``; bases map as ``basis_permutation``."""

    permutation: np.ndarray
    basis_permutation: tuple[int, ...] | None


def check_symmetry(pset: ProjectorSet, u, tol: float = PROJECTOR_TOL) -> SymmetryResult | None:
    """Return the permutation induced by ``u`` on the set, or None if not closed."""
    u = as_matrix(u)
    if u.shape != (pset.dim, pset.dim):
        raise ValidationError("unitary dimension does not match the set")
    if not is_unitary(u, 1e-9 * pset.dim):
        raise ValidationError("symmetry candidate is not unitary")
    images = pset.vectors @ u.T
    overlap = np.abs(pset.vectors.conj() @ images.T) ** 2  # [target, source]
    perm = np.empty(pset.N, dtype=int)
    for a in range(pset.N):
        b = int(np.argmax(overlap[:, a]))
        if projector_distance(images[a], pset.vectors[b]) >= tol:
            return None
        perm[a] = b
    if len(set(perm.tolist())) != pset.N:
        return None
    basis_perm = None
    if pset.grouped:
        lookup = {frozenset(b): i for i, b in enumerate(pset.bases)}
        mapped = [lookup.get(frozenset(perm[list(b)].tolist())) for b in pset.bases]
        if all(x is not None for x in mapped):
            basis_perm = tuple(mapped)
    perm.setflags(write=False)
    return SymmetryResult(perm, basis_perm)


_MUB_LABEL = re.compile(r"^mub_prime\((\d+)\)$")


def symmetric_witnesses(pset: ProjectorSet) -> list[np.ndarray]:
    """Fourier matrix plus the transforms ``T_k`` sending ``V U^k`` to ``V``.

    ``T_k`` is the uniqueness transform of the pair ``(U, V U^k)``.
    """
    match = _MUB_LABEL.match(pset.provenance)
    if match is None or int(match.group(1)) != pset.dim or not is_prime(pset.dim):
        raise ValidationError("symmetric_witnesses needs a set built by mub_prime")
    p = pset.dim
    u, v = weyl_pair(p)
    witnesses = [np.array(fourier_matrix(p))]
    for k in range(p):
        witnesses.append(np.array(von_neumann_transform(u, v @ matrix_power(u, k)).S))
    return witnesses


def orbit(perms: Sequence[Sequence[int]], start: int = 0) -> set[int]:
    """Orbit of ``start`` under the group generated by ``perms``."""
    seen = {start}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for p in perms:
            y = int(p[x])
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


def is_transitive(perms: Sequence[Sequence[int]], size: int) -> bool:
    return len(orbit(perms, 0)) == size
