"""Projector sets: the standard constructions, Weyl-pair bases and tensor composition."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import ValidationError
from .linalg import DEFAULT_TOL, ket
from .serialize import complex_pairs, from_pairs
from .weyl import WeylMonomial, is_prime, zeta

# Frobenius distance below which two rank-1 projectors are considered equal.
PROJECTOR_TOL = 1e-8


@dataclass(frozen=True)
class ProjectorSet:
    """A finite set of rank-1 projectors ``|v><v|`` in dimension ``dim``.

    Parameters
    ----------
    dim : int
        Hilbert-space dimension.
    vectors : ndarray, shape (N, dim)
        Unit kets, one per row.
    bases : tuple of tuple of int, optional
        Declared orthonormal bases as index lists into ``vectors``. Bases
        may share members.
    provenance : str
        Label of the constructor that produced the set.
    factor_dims, factor_sizes : tuple of int
        Tensor-factor structure for sets built by :func:`compose`. A plain
        set is its own single factor.
    """

    dim: int
    vectors: np.ndarray
    bases: tuple[tuple[int, ...], ...] | None = None
    provenance: str = ""
    factor_dims: tuple[int, ...] = ()
    factor_sizes: tuple[int, ...] = ()
    tol: float = field(default=DEFAULT_TOL, compare=False, repr=False)

    def __post_init__(self):
        vecs = np.array(self.vectors, dtype=complex)
        if vecs.ndim != 2 or vecs.shape[1] != self.dim or vecs.shape[0] == 0:
            raise ValidationError(f"vectors must have shape (N, {self.dim}), got {vecs.shape}")
        norms = np.linalg.norm(vecs, axis=1)
        if np.max(np.abs(norms - 1.0)) > 1e-8:
            raise ValidationError("all vectors must have unit norm")
        vecs.setflags(write=False)
        object.__setattr__(self, "vectors", vecs)
        if not self.factor_dims:
            object.__setattr__(self, "factor_dims", (self.dim,))
            object.__setattr__(self, "factor_sizes", (len(vecs),))
        if int(np.prod(self.factor_dims)) != self.dim or int(np.prod(self.factor_sizes)) != len(vecs):
            raise ValidationError("factor structure inconsistent with dim / N")
        if self.bases is not None:
            bases = tuple(tuple(int(i) for i in b) for b in self.bases)
            object.__setattr__(self, "bases", bases)
            self._check_bases()
        self._check_distinct()

    def _check_bases(self):
        n, count = self.dim, len(self.vectors)
        for b, members in enumerate(self.bases):
            if len(members) != n or len(set(members)) != n:
                raise ValidationError(f"basis {b} must have {n} distinct members")
            if min(members) < 0 or max(members) >= count:
                raise ValidationError(f"basis {b} has an index out of range")
            sub = self.vectors[list(members)]
            if np.max(np.abs(sub.conj() @ sub.T - np.eye(n))) > 1e-8:
                raise ValidationError(f"basis {b} is not orthonormal")

    def _check_distinct(self):
        overlap = np.abs(self.vectors.conj() @ self.vectors.T) ** 2
        np.fill_diagonal(overlap, 0.0)
        for a, b in zip(*np.nonzero(np.triu(overlap) > 0.5)):
            if projector_distance(self.vectors[a], self.vectors[b]) < PROJECTOR_TOL:
                raise ValidationError(f"vectors {a} and {b} define the same projector")

    @property
    def N(self) -> int:
        return len(self.vectors)

    @property
    def grouped(self) -> bool:
        return self.bases is not None

    @cached_property
    def membership(self) -> tuple[tuple[int, ...], ...]:
        """For every vector, the indices of the declared bases containing it."""
        out: list[list[int]] = [[] for _ in range(self.N)]
        for b, members in enumerate(self.bases or ()):
            for i in members:
                out[i].append(b)
        return tuple(tuple(x) for x in out)

    @property
    def disjoint(self) -> bool:
        """True when the declared bases partition the vectors."""
        return self.grouped and all(len(m) == 1 for m in self.membership)

    def projectors(self) -> np.ndarray:
        v = self.vectors
        return np.einsum("ai,aj->aij", v, v.conj())

    def label(self, index: int) -> tuple[int, ...]:
        """Per-factor indices of a product vector."""
        return tuple(int(i) for i in np.unravel_index(index, self.factor_sizes))

    def labels(self) -> list[tuple[int, ...]]:
        return [self.label(i) for i in range(self.N)]

    def to_dict(self) -> dict:
        out = {
            "dim": self.dim,
            "vectors": complex_pairs(self.vectors),
            "bases": None if self.bases is None else [list(b) for b in self.bases],
            "disjoint": self.disjoint,
            "provenance": self.provenance,
        }
        if len(self.factor_dims) > 1:
            out["factors"] = {"dims": list(self.factor_dims), "sizes": list(self.factor_sizes)}
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "ProjectorSet":
        try:
            dim = int(data["dim"])
            vectors = from_pairs(data["vectors"])
            bases = data.get("bases")
            factors = data.get("factors") or {}
            pset = cls(
                dim,
                vectors,
                None if bases is None else tuple(tuple(b) for b in bases),
                str(data.get("provenance", "")),
                tuple(factors.get("dims", ())),
                tuple(factors.get("sizes", ())),
            )
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"malformed projector-set JSON: {exc}") from exc
        if "disjoint" in data and bool(data["disjoint"]) != pset.disjoint:
            raise ValidationError("'disjoint' flag contradicts the declared bases")
        return pset


def projector_distance(v, w) -> float:
    """Frobenius distance between ``|v><v|`` and ``|w><w|``."""
    v, w = np.asarray(v), np.asarray(w)
    return float(np.linalg.norm(np.outer(v, v.conj()) - np.outer(w, w.conj())))


class _Collector:
    """Accumulates bases while merging repeated projectors and repeated bases."""

    def __init__(self, dim: int):
        self.dim = dim
        self.vectors: list[np.ndarray] = []
        self.bases: list[tuple[int, ...]] = []

    def _index(self, v: np.ndarray) -> int:
        for i, w in enumerate(self.vectors):
            if abs(np.vdot(w, v)) ** 2 > 0.5 and projector_distance(v, w) < PROJECTOR_TOL:
                return i
        self.vectors.append(v)
        return len(self.vectors) - 1

    def add_basis(self, vectors) -> None:
        idx = tuple(self._index(v) for v in vectors)
        if all(set(idx) != set(b) for b in self.bases):
            self.bases.append(idx)

    def build(self, provenance: str) -> ProjectorSet:
        return ProjectorSet(self.dim, np.array(self.vectors), tuple(self.bases), provenance)


def _check_dim(n: int) -> None:
    if int(n) != n or n < 2:
        raise ValidationError(f"dimension must be an integer >= 2, got {n}")


def _pairs(n: int):
    return [(k, l) for k in range(n) for l in range(k + 1, n)]


def _combo(n: int, k: int, l: int, coef: complex) -> np.ndarray:
    v = np.zeros(n, dtype=complex)
    v[k] = 1.0
    v[l] = coef
    return ket(v)


def _standard_vectors(n: int) -> dict:
    eye = np.eye(n, dtype=complex)
    return {
        "basis": [ket(eye[k]) for k in range(n)],
        "plus": [_combo(n, k, l, 1) for k, l in _pairs(n)],
        "iplus": [_combo(n, k, l, 1j) for k, l in _pairs(n)],
        "minus": [_combo(n, k, l, -1) for k, l in _pairs(n)],
        "iminus": [_combo(n, k, l, -1j) for k, l in _pairs(n)],
    }


def standard_representative(n: int) -> ProjectorSet:
    """The n^2 vectors ``|k>``, ``(|k>+|l>)/sqrt2``, ``(|k>+i|l>)/sqrt2`` (k < l)."""
    _check_dim(n)
    s = _standard_vectors(n)
    vectors = s["basis"] + s["plus"] + s["iplus"]
    return ProjectorSet(n, np.array(vectors), None, f"standard_representative({n})")


def standard_complete(n: int) -> ProjectorSet:
    """The (2n-1)n-vector complete set, grouped into its n^2-n+1 bases.

    Besides the initial basis, each pair k < l gives one basis where
    ``|k>, |l>`` are replaced by ``(|k> +- |l>)/sqrt2`` and one with
    ``(|k> +- i|l>)/sqrt2``.
    """
    _check_dim(n)
    s = _standard_vectors(n)
    vectors = s["basis"] + s["plus"] + s["iplus"] + s["minus"] + s["iminus"]
    npairs = len(_pairs(n))
    offsets = {"plus": n, "iplus": n + npairs, "minus": n + 2 * npairs, "iminus": n + 3 * npairs}
    bases = [tuple(range(n))]
    for first, second in (("plus", "minus"), ("iplus", "iminus")):
        for p, (k, l) in enumerate(_pairs(n)):
            members = list(range(n))
            members[k] = offsets[first] + p
            members[l] = offsets[second] + p
            bases.append(tuple(members))
    return ProjectorSet(n, np.array(vectors), tuple(bases), f"standard_complete({n})")


def mub_generators(p: int) -> list[WeylMonomial]:
    """``[U, V, U V, U^2 V, ..., U^(p-1) V]``."""
    return [WeylMonomial(p, 1, 0)] + [WeylMonomial(p, m, 1) for m in range(p)]


def mub_prime(p: int) -> ProjectorSet:
    """Eigenbases of ``U`` and ``U^m V`` (m = 0..p-1) for prime ``p``.

    The p + 1 bases are disjoint and mutually unbiased; N = p^2 + p.
    """
    if not is_prime(p):
        raise ValidationError(f"mub_prime needs a prime dimension, got {p}")
    vectors, bases = [], []
    for g in mub_generators(p):
        start = len(vectors)
        vectors.extend(g.spectrum.vectors())
        bases.append(tuple(range(start, start + p)))
    return ProjectorSet(p, np.array(vectors), tuple(bases), f"mub_prime({p})")


def weyl_complete(n: int) -> ProjectorSet:
    """Union of the canonical basis and the eigenbases of all n^2 - 1 monomials.

    Repeated projectors and repeated bases are merged. For composite ``n``
    degenerate eigenspaces get the deterministic elimination basis and the
    grouping is in general not disjoint.
    """
    _check_dim(n)
    coll = _Collector(n)
    coll.add_basis(list(np.eye(n, dtype=complex)))
    for k in range(n):
        for l in range(n):
            if k == 0 and l == 0:
                continue
            coll.add_basis(WeylMonomial(n, k, l).spectrum.vectors())
    return coll.build(f"weyl_complete({n})")


def trivial_set() -> ProjectorSet:
    """The one-vector set in dimension 1; the unit for :func:`compose`."""
    return ProjectorSet(1, np.ones((1, 1), dtype=complex), ((0,),), "trivial")


def compose(*sets: ProjectorSet) -> ProjectorSet:
    """Tensor products of all member vectors, in lexicographic label order.

    When every factor is grouped, the bases of the result are all products
    of factor bases.
    """
    if not sets:
        raise ValidationError("compose needs at least one set")
    vectors = sets[0].vectors
    for s in sets[1:]:
        vectors = np.einsum("ai,bj->abij", vectors, s.vectors).reshape(
            vectors.shape[0] * s.N, -1
        )
    sizes = tuple(x for s in sets for x in s.factor_sizes)
    dims = tuple(x for s in sets for x in s.factor_dims)
    bases = None
    if all(s.grouped for s in sets):
        bases = []
        for combo in itertools.product(*(s.bases for s in sets)):
            members = itertools.product(*combo)
            # flatten per-set indices into the row index of the product
            set_sizes = [s.N for s in sets]
            bases.append(tuple(int(np.ravel_multi_index(m, set_sizes)) for m in members))
        bases = tuple(bases)
    provenance = "compose(" + ", ".join(s.provenance for s in sets) + ")"
    dim = int(np.prod([s.dim for s in sets]))
    return ProjectorSet(dim, vectors, bases, provenance, dims, sizes)


def fourier_matrix(n: int) -> np.ndarray:
    """``F[j, k] = zeta**(j k) / sqrt(n)``.

    ``F^dagger U F = V`` and ``F^dagger V F = U^-1``, so conjugation by
    ``F^dagger`` sends ``U^k V^l`` to ``V^k U^-l``.
    """
    _check_dim(n)
    jk = np.outer(np.arange(n), np.arange(n)) % n
    f = zeta(n) ** jk / np.sqrt(n)
    f.setflags(write=False)
    return f
