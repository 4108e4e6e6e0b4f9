"""Dense complex linear algebra with deterministic conventions.

Matrices are plain ``complex128`` numpy arrays. Kets are 1-D arrays of unit
norm carrying a canonical global phase: the first component whose modulus is
maximal (within ``tol``) is real and positive. Eigensystems of unitary
matrices are returned with eigenvalues sorted by angle in ``[0, 2*pi)`` and
degenerate eigenspaces spanned in the order fixed by Gaussian elimination,
so every derived object is reproducible bit-for-bit.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
import scipy.linalg

from .errors import NumericalError, ValidationError

DEFAULT_TOL = 1e-9
TWO_PI = 2.0 * np.pi


def as_matrix(a, square: bool = True) -> np.ndarray:
    """Return ``a`` as a 2-D complex array, optionally checking it is square."""
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2:
        raise ValidationError(f"expected a 2-D matrix, got shape {m.shape}")
    if square and m.shape[0] != m.shape[1]:
        raise ValidationError(f"expected a square matrix, got shape {m.shape}")
    return m


def is_hermitian(m, tol: float = DEFAULT_TOL) -> bool:
    m = as_matrix(m)
    return bool(np.max(np.abs(m - m.conj().T), initial=0.0) <= tol)


def is_unitary(m, tol: float = DEFAULT_TOL) -> bool:
    m = as_matrix(m)
    n = m.shape[0]
    return bool(np.max(np.abs(m @ m.conj().T - np.eye(n)), initial=0.0) <= tol)


def is_projector(m, tol: float = DEFAULT_TOL, rank_one: bool = False) -> bool:
    """Hermitian and idempotent; with ``rank_one`` the trace must also be 1."""
    m = as_matrix(m)
    if not is_hermitian(m, tol):
        return False
    if np.max(np.abs(m @ m - m), initial=0.0) > tol:
        return False
    if rank_one and abs(np.trace(m) - 1.0) > tol:
        return False
    return True


def is_density_matrix(m, tol: float = DEFAULT_TOL) -> bool:
    m = as_matrix(m)
    if not is_hermitian(m, tol) or abs(np.trace(m) - 1.0) > tol:
        return False
    return bool(np.linalg.eigvalsh((m + m.conj().T) / 2).min() >= -tol)


def canonical_phase(v, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Rotate ``v`` so its first maximal-modulus component is real positive."""
    v = np.asarray(v, dtype=complex)
    mod = np.abs(v)
    top = mod.max()
    if top == 0.0:
        raise ValidationError("zero vector has no phase")
    k = int(np.flatnonzero(mod >= top - tol)[0])
    return v * (abs(v[k]) / v[k])


def ket(amplitudes, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Normalize ``amplitudes`` and apply the canonical phase."""
    v = np.asarray(amplitudes, dtype=complex).ravel()
    norm = np.linalg.norm(v)
    if norm <= tol:
        raise ValidationError("cannot normalize a zero vector")
    return canonical_phase(v / norm, tol)


def trace_inner(a, b) -> complex:
    """Return ``Tr(a @ b^dagger)``."""
    a, b = as_matrix(a), as_matrix(b)
    if a.shape != b.shape:
        raise ValidationError(f"dimension mismatch: {a.shape} vs {b.shape}")
    # Tr(A B^dagger) = sum_ij A_ij conj(B_ij)
    return complex(np.vdot(b, a))


def unit_cell_basis(n: int) -> list[np.ndarray]:
    """The n^2 matrices E^(kl) with a single unit entry, in row-major order."""
    if n < 1:
        raise ValidationError("n must be positive")
    basis = []
    for k in range(n):
        for l in range(n):
            e = np.zeros((n, n), dtype=complex)
            e[k, l] = 1.0
            basis.append(e)
    return basis


def tensor_product(*factors) -> np.ndarray:
    """Kronecker product of one or more matrices (or vectors)."""
    if not factors:
        raise ValidationError("tensor_product needs at least one factor")
    out = np.asarray(factors[0], dtype=complex)
    for f in factors[1:]:
        out = np.kron(out, np.asarray(f, dtype=complex))
    return out


def projector_of(v) -> np.ndarray:
    """Rank-1 projector |v><v| of a (normalized) ket."""
    v = np.asarray(v, dtype=complex).ravel()
    norm = np.linalg.norm(v)
    if norm == 0.0:
        raise ValidationError("projector of the zero vector is undefined")
    v = v / norm
    return np.outer(v, v.conj())


def matrix_power(m, p: int) -> np.ndarray:
    """``m**p`` by repeated squaring; ``p = 0`` gives the identity."""
    m = as_matrix(m)
    if p < 0:
        raise ValidationError("only nonnegative powers are supported")
    result = np.eye(m.shape[0], dtype=complex)
    base = m.copy()
    while p:
        if p & 1:
            result = result @ base
        p >>= 1
        if p:
            base = base @ base
    return result


def null_space(a, tol: float = DEFAULT_TOL, dim: int | None = None) -> list[np.ndarray]:
    """Null-space basis of ``a`` by Gauss-Jordan elimination with full pivoting.

    Parameters
    ----------
    a : array_like
        Matrix whose kernel is wanted.
    tol : float
        Pivots below ``tol * max(1, max|a|)`` are treated as zero. Ignored
        when ``dim`` is given.
    dim : int, optional
        Expected kernel dimension. Elimination stops after
        ``cols - dim`` pivots regardless of their size.

    Returns
    -------
    list of ndarray
        Unnormalized kernel vectors, one per free column, ordered by the
        original index of that column.
    """
    a = np.array(a, dtype=complex)
    rows, cols = a.shape
    scale = max(1.0, float(np.abs(a).max(initial=0.0)))
    perm = np.arange(cols)
    stop = min(rows, cols) if dim is None else cols - dim
    if stop < 0 or stop > min(rows, cols):
        raise ValidationError(f"kernel dimension {dim} impossible for shape {a.shape}")
    r = 0
    while r < stop:
        sub = np.abs(a[r:, r:])
        i, j = np.unravel_index(int(np.argmax(sub)), sub.shape)
        if dim is None and sub[i, j] <= tol * scale:
            break
        i, j = i + r, j + r
        a[[r, i]] = a[[i, r]]
        a[:, [r, j]] = a[:, [j, r]]
        perm[[r, j]] = perm[[j, r]]
        a[r] /= a[r, r]
        col = a[:, r].copy()
        col[r] = 0.0
        a -= np.outer(col, a[r])
        r += 1
    vectors = []
    for f in range(r, cols):
        x = np.zeros(cols, dtype=complex)
        x[perm[f]] = 1.0
        x[perm[:r]] = -a[:r, f]
        vectors.append((perm[f], x))
    vectors.sort(key=lambda t: t[0])
    return [x for _, x in vectors]


def gram_schmidt(vectors: Sequence, tol: float = DEFAULT_TOL) -> list[np.ndarray]:
    """Modified Gram-Schmidt in the given order; raises on linear dependence."""
    out: list[np.ndarray] = []
    for v in vectors:
        w = np.array(v, dtype=complex)
        for q in out:
            w -= np.vdot(q, w) * q
        norm = np.linalg.norm(w)
        if norm <= tol:
            raise NumericalError("vectors are linearly dependent")
        out.append(w / norm)
    return out


def _snap(v: np.ndarray, eps: float = 1e-14) -> np.ndarray:
    """Zero out real/imaginary parts that are pure rounding noise."""
    re, im = v.real.copy(), v.imag.copy()
    re[np.abs(re) < eps] = 0.0
    im[np.abs(im) < eps] = 0.0
    return re + 1j * im


def _angle_key(z: complex, tol: float) -> float:
    ang = float(np.angle(z)) % TWO_PI
    return 0.0 if ang > TWO_PI - tol else ang


@dataclass(frozen=True)
class Spectrum:
    """Eigen-decomposition of a unitary matrix.

    ``eigenvectors[:, k]`` belongs to ``eigenvalues[k]``.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def vectors(self) -> list[np.ndarray]:
        return [self.eigenvectors[:, k] for k in range(self.eigenvectors.shape[1])]

    def projectors(self) -> list[np.ndarray]:
        return [projector_of(v) for v in self.vectors()]

    def reconstruct(self, power: int = 1) -> np.ndarray:
        """``sum_k lambda_k**power |mu_k><mu_k|``."""
        q = self.eigenvectors
        return (q * self.eigenvalues**power) @ q.conj().T


def _group_values(values: np.ndarray, tol: float) -> list[tuple[complex, int]]:
    """Group unit-modulus values that agree within ``tol``; sorted by angle."""
    order = sorted(range(len(values)), key=lambda k: _angle_key(values[k], tol))
    groups: list[list[complex]] = []
    for k in order:
        z = complex(values[k])
        if groups and abs(z - groups[-1][0]) <= tol:
            groups[-1].append(z)
        else:
            groups.append([z])
    if len(groups) > 1 and abs(groups[0][0] - groups[-1][0]) <= tol:
        groups[0].extend(groups.pop())
    return [(g[0], len(g)) for g in groups]


def unitary_eigensystem(m, known_eigenvalues=None, tol: float = DEFAULT_TOL) -> Spectrum:
    """Orthonormal eigenbasis of a unitary matrix with deterministic conventions.

    With ``known_eigenvalues`` (the exact multiset) each eigenspace is the
    kernel of ``m - lambda*Id`` and its dimension must match the stated
    multiplicity. Without it, eigenvalues come from a complex Schur form,
    are clustered, and the kernels are taken with the clustered
    multiplicities.
    """
    m = as_matrix(m)
    n = m.shape[0]
    if not is_unitary(m, tol * max(1, n)):
        raise ValidationError("matrix is not unitary")

    if known_eigenvalues is not None:
        vals = np.asarray(known_eigenvalues, dtype=complex).ravel()
        if len(vals) != n:
            raise ValidationError(f"expected {n} eigenvalues, got {len(vals)}")
        groups = _group_values(vals, 1e-7)
        spaces = []
        for lam, mult in groups:
            kernel = null_space(m - lam * np.eye(n), tol=max(tol, 1e-12) * n)
            if len(kernel) != mult:
                raise NumericalError(
                    f"eigenvalue {lam:.6g}: kernel dimension {len(kernel)} != multiplicity {mult}"
                )
            spaces.append((lam, kernel))
    else:
        diag = np.diag(scipy.linalg.schur(m, output="complex")[0])
        diag = diag / np.abs(diag)
        groups = _group_values(diag, 1e-6)
        spaces = []
        for lam, mult in groups:
            lam = lam / abs(lam)
            spaces.append((lam, null_space(m - lam * np.eye(n), dim=mult)))

    eigenvalues, columns = [], []
    for lam, kernel in spaces:
        for v in gram_schmidt(kernel, tol=1e-12):
            eigenvalues.append(lam)
            columns.append(_snap(canonical_phase(v, tol)))
    vecs = np.column_stack(columns)
    vals = np.array(eigenvalues, dtype=complex)
    residual = np.max(np.abs(m @ vecs - vecs * vals))
    if residual > 1e-7:
        raise NumericalError(f"eigenvector residual {residual:.3g} too large")
    vals.setflags(write=False)
    vecs.setflags(write=False)
    return Spectrum(vals, vecs)
