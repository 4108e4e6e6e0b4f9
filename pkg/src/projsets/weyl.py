"""Weyl pair (shift/clock), monomials U^k V^l and the discrete uniqueness transform."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import gcd
from typing import NamedTuple

import numpy as np

from .errors import NumericalError, ValidationError
from .linalg import (
    DEFAULT_TOL,
    Spectrum,
    as_matrix,
    is_unitary,
    matrix_power,
    unitary_eigensystem,
)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True


def zeta(n: int) -> complex:
    return complex(np.exp(2j * np.pi / n))


def weyl_pair(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Return the shift ``U`` and clock ``V`` in dimension ``n``.

    ``U`` has ones on the superdiagonal and in the lower-left corner,
    ``V = diag(1, zeta, ..., zeta**(n-1))`` with ``zeta = exp(2*pi*i/n)``.
    They satisfy ``U V = zeta V U``.
    """
    if n < 2:
        raise ValidationError("Weyl pair needs n >= 2")
    u = np.zeros((n, n), dtype=complex)
    for i in range(n):
        u[i, (i + 1) % n] = 1.0
    v = np.diag(np.exp(2j * np.pi * np.arange(n) / n))
    return u, v


def _scalar_power(m: np.ndarray, tol: float) -> complex:
    """Scalar ``c`` with ``m**n = c Id``; raises if no such scalar exists."""
    n = m.shape[0]
    mn = matrix_power(m, n)
    c = complex(np.trace(mn) / n)
    if np.max(np.abs(mn - c * np.eye(n))) > tol * n:
        raise NumericalError("m**n is not proportional to the identity")
    return c


def root_eigenvalues(m, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Exact eigenvalue multiset of a unitary with ``m**n = c Id``.

    The spectrum lies on the n-th roots ``w * zeta**r`` of ``c``; the
    multiplicity of each root follows from the traces of the powers of
    ``m`` by a discrete Fourier sum.
    """
    m = as_matrix(m)
    n = m.shape[0]
    c = _scalar_power(m, tol)
    w = np.exp(1j * np.angle(c) / n)
    z = zeta(n)
    traces = np.empty(n, dtype=complex)
    power = np.eye(n, dtype=complex)
    for p in range(n):
        traces[p] = np.trace(power)
        power = power @ m
    values = []
    for r in range(n):
        lam = w * z**r
        mult = np.sum(traces * lam ** -np.arange(n)) / n
        k = int(round(mult.real))
        if abs(mult - k) > 1e-6:
            raise NumericalError(f"non-integer multiplicity {mult} for root {r}")
        values.extend([lam] * k)
    if len(values) != n:
        raise NumericalError("root multiplicities do not sum to the dimension")
    return np.array(values)


@dataclass(frozen=True)
class WeylMonomial:
    """The unitary ``U**u_exp @ V**v_exp`` in dimension ``dim``."""

    dim: int
    u_exp: int
    v_exp: int

    def __post_init__(self):
        if self.dim < 2:
            raise ValidationError("Weyl monomials need dim >= 2")
        if not (0 <= self.u_exp < self.dim and 0 <= self.v_exp < self.dim):
            raise ValidationError("exponents must lie in [0, dim)")

    @cached_property
    def matrix(self) -> np.ndarray:
        u, v = weyl_pair(self.dim)
        m = matrix_power(u, self.u_exp) @ matrix_power(v, self.v_exp)
        m.setflags(write=False)
        return m

    @cached_property
    def eigenvalues(self) -> np.ndarray:
        return root_eigenvalues(self.matrix)

    @cached_property
    def spectrum(self) -> Spectrum:
        return unitary_eigensystem(self.matrix, known_eigenvalues=self.eigenvalues)


class Commutation(NamedTuple):
    j: int
    gcd: int


def commutation_exponent(a, b, tol: float = DEFAULT_TOL) -> Commutation:
    """Find ``j`` in ``[0, n)`` with ``a b = zeta**j b a``.

    Every candidate is tested; exactly one must pass at ``tol`` (relative
    to the norm of ``a b``), otherwise the pair is rejected.
    """
    a, b = as_matrix(a), as_matrix(b)
    if a.shape != b.shape:
        raise ValidationError("matrices must have the same dimension")
    n = a.shape[0]
    ab, ba = a @ b, b @ a
    scale = max(1.0, float(np.linalg.norm(ab)))
    z = zeta(n)
    hits = [j for j in range(n) if np.linalg.norm(ab - z**j * ba) <= tol * scale]
    if not hits:
        raise ValidationError("not Weyl-commuting")
    if len(hits) > 1:
        raise NumericalError(f"tolerance too loose: candidates {hits} all pass")
    j = hits[0]
    return Commutation(j, gcd(j, n))


class VonNeumannResult(NamedTuple):
    """``S a S^-1 = phase_a * U**j`` and ``S b S^-1 = phase_b * V``."""

    S: np.ndarray
    j: int
    phase_a: complex
    phase_b: complex


def von_neumann_transform(a, b, tol: float = DEFAULT_TOL) -> VonNeumannResult:
    """Unitary ``S`` bringing a Weyl-commuting pair to the canonical ``(U**j, V)``.

    Rows of ``S`` are eigenvectors ``<b_k|`` of ``b`` ordered so the
    eigenvalues read ``phase_b * zeta**k``. Only ``b_0`` gets the canonical
    phase; the rest are generated as ``b_{k-j} = a b_k / w`` where ``w`` is
    the principal n-th root of ``a**n``, which makes ``S a S^-1`` a pure
    multiple of the shift.
    """
    a, b = as_matrix(a), as_matrix(b)
    n = a.shape[0]
    if not (is_unitary(a, tol * n) and is_unitary(b, tol * n)):
        raise ValidationError("inputs must be unitary")
    j, g = commutation_exponent(a, b, tol)
    if j == 0:
        raise ValidationError("commuting pair (j = 0) has no Weyl form")
    if g > 1:
        raise ValidationError(f"reducible pair: gcd(j={j}, n={n}) = {g}")

    c_b = _scalar_power(b, tol)
    lam0 = np.exp(1j * np.angle(c_b) / n)
    # eigenvalues lam0*zeta^r; pick the one of smallest angle as phase_b
    roots = lam0 * zeta(n) ** np.arange(n)
    angles = np.mod(np.angle(roots), 2 * np.pi)
    angles[angles > 2 * np.pi - 1e-9] = 0.0
    phase_b = complex(roots[int(np.argmin(angles))])
    known = phase_b * zeta(n) ** np.arange(n)
    eig = unitary_eigensystem(b, known_eigenvalues=known, tol=tol)

    w = complex(np.exp(1j * np.angle(_scalar_power(a, tol)) / n))
    basis = np.zeros((n, n), dtype=complex)
    basis[:, 0] = eig.eigenvectors[:, 0]
    k = 0
    for _ in range(n - 1):
        nxt = (k - j) % n
        basis[:, nxt] = a @ basis[:, k] / w
        k = nxt
    s = basis.conj().T
    u, v = weyl_pair(n)
    res_a = np.linalg.norm(s @ a @ basis - w * matrix_power(u, j))
    res_b = np.linalg.norm(s @ b @ basis - phase_b * v)
    if max(res_a, res_b) > 1e-7:
        raise NumericalError(f"conjugation residuals too large: {res_a:.3g}, {res_b:.3g}")
    s.setflags(write=False)
    return VonNeumannResult(s, j, w, phase_b)


class MonomialPower(NamedTuple):
    """``U**k V**l = phase**-1 * G**exponent``.

    ``G = U**m V`` when ``m`` is an int; ``m is None`` means ``G = U``.
    """

    m: int | None
    exponent: int
    phase: complex


def monomial_as_power(n: int, k: int, l: int) -> MonomialPower:
    """Express ``U**k V**l`` as a power of one of the ``n + 1`` generators.

    Uses ``(U**m V)**l = zeta**(-m l (l-1)/2) U**(m l) V**l`` with ``m``
    solving ``m l = k (mod n)``, solvable because n is prime.
    """
    if not is_prime(n):
        raise ValidationError(f"n = {n} is not prime")
    if not (0 <= k < n and 0 <= l < n):
        raise ValidationError("exponents must lie in [0, n)")
    if k == 0 and l == 0:
        raise ValidationError("the identity is not a generator power")
    if l == 0:
        return MonomialPower(None, k, 1.0 + 0j)
    m = (k * pow(l, -1, n)) % n
    phase = zeta(n) ** (-(m * l * (l - 1) // 2) % n)
    return MonomialPower(m, l, complex(phase))


def generator(n: int, m: int | None) -> np.ndarray:
    """``U`` when ``m is None``, else ``U**m V``."""
    u, v = weyl_pair(n)
    if m is None:
        return u
    return matrix_power(u, m) @ v
