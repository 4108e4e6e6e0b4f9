"""Separable decompositions ``rho = alpha * rho_s - beta * Id`` over product projector sets.

The constructive route expands ``rho`` in a complete product set with
minimum-norm real coefficients, then removes each negative coefficient by
writing ``k P = k Id + |k| (Id - P)`` and expanding ``Id - P`` over the
other members of a basis containing ``P``. The LP route minimizes ``beta``
directly over nonnegative weights on the same finite set.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import linprog

from .classify import hermitian_coordinates, measurement_map
from .errors import NumericalError, ValidationError
from .linalg import as_matrix, is_density_matrix, is_hermitian
from .sets import ProjectorSet

LP_TOL = 1e-9


def real_decomposition(pset: ProjectorSet, rho) -> np.ndarray:
    """Minimum-norm real ``k`` with ``sum_a k_a P_a = rho``."""
    rho = as_matrix(rho)
    if rho.shape != (pset.dim, pset.dim) or not is_hermitian(rho, 1e-8):
        raise ValidationError("rho must be a Hermitian matrix matching the set dimension")
    mmap = measurement_map(pset)
    if mmap.rank < pset.dim**2:
        raise ValidationError("set not representative")
    target = hermitian_coordinates(rho)
    k = np.linalg.lstsq(mmap.matrix.T, target, rcond=None)[0]
    residual = np.linalg.norm(mmap.matrix.T @ k - target)
    if residual > 1e-9:
        raise NumericalError(f"decomposition residual {residual:.3g} exceeds 1e-9")
    return k


def positive_shift(pset: ProjectorSet, k) -> tuple[np.ndarray, float]:
    """Rewrite ``sum k_a P_a`` as ``sum k'_a P_a - shift * Id`` with ``k' >= 0``.

    A negative ``k_a`` is moved onto the siblings of ``a`` in the
    lowest-indexed declared basis containing ``a``.
    """
    k = np.asarray(k, dtype=float)
    if k.shape != (pset.N,):
        raise ValidationError(f"expected {pset.N} coefficients")
    if not pset.grouped:
        raise ValidationError("positive_shift needs declared bases")
    out = np.maximum(k, 0.0)
    shift = 0.0
    for a in np.flatnonzero(k < 0):
        homes = pset.membership[a]
        if not homes:
            raise ValidationError(f"vector {a} belongs to no declared basis")
        c = -k[a]
        for b in pset.bases[homes[0]]:
            if b != a:
                out[b] += c
        shift += c
    return out, shift


@dataclass(frozen=True)
class SeparableForm:
    """``rho = alpha * rho_s - beta * Id`` with ``rho_s = sum_a (w_a / alpha) P_a``.

    ``beta`` multiplies the unnormalized identity. The conventional random
    robustness ``t`` (``(rho + t Id/d)/(1 + t)`` separable) equals
    ``beta * d``; over a fixed finite set it is only an upper bound.
    """

    alpha: float
    beta: float
    weights: np.ndarray
    total_dim: int
    pset: ProjectorSet

    @property
    def random_robustness(self) -> float:
        return self.beta * self.total_dim

    def separable_state(self) -> np.ndarray:
        return np.einsum("a,aij->ij", self.weights / self.alpha, self.pset.projectors())

    def reconstruct(self) -> np.ndarray:
        return self.alpha * self.separable_state() - self.beta * np.eye(self.total_dim)

    def to_dict(self) -> dict:
        return {
            "alpha": float(self.alpha),
            "beta": float(self.beta),
            "total_dim": self.total_dim,
            "factor_dims": list(self.pset.factor_dims),
            "weights": [
                {"label": list(self.pset.label(a)), "weight": float(w)}
                for a, w in enumerate(self.weights)
                if w > 0.0
            ],
            "random_robustness": float(self.random_robustness),
            "random_robustness_convention": "t = beta * total_dim, with (rho + t*Id/total_dim)/(1+t) separable; upper bound over this projector set",
            "set_provenance": self.pset.provenance,
        }


def _check_state(pset: ProjectorSet, rho) -> np.ndarray:
    rho = as_matrix(rho)
    if rho.shape != (pset.dim, pset.dim):
        raise ValidationError("state dimension does not match the product set")
    if not is_density_matrix(rho, 1e-8):
        raise ValidationError("state is not a density matrix")
    return rho


def separable_form(product_set: ProjectorSet, rho) -> SeparableForm:
    """Constructive separable form: real decomposition followed by the positive shift."""
    rho = _check_state(product_set, rho)
    k = real_decomposition(product_set, rho)
    weights, beta = positive_shift(product_set, k)
    weights.setflags(write=False)
    return SeparableForm(float(weights.sum()), float(beta), weights, product_set.dim, product_set)


def minimize_beta_lp(product_set: ProjectorSet, rho) -> tuple[float, SeparableForm]:
    """Smallest ``beta`` with ``sum_a w_a P_a = rho + beta Id``, ``w >= 0``.

    Solved with HiGHS in Hermitian coordinates, then polished: the weights
    on the optimal support are re-fitted by least squares so the identity
    holds to near machine precision.
    """
    rho = _check_state(product_set, rho)
    n = product_set.dim
    mmap = measurement_map(product_set)
    a_w = mmap.matrix.T
    id_coords = hermitian_coordinates(np.eye(n))
    target = hermitian_coordinates(rho)
    a_eq = np.hstack([a_w, -id_coords[:, None]])
    cost = np.zeros(product_set.N + 1)
    cost[-1] = 1.0
    res = linprog(
        cost,
        A_eq=a_eq,
        b_eq=target,
        bounds=[(0, None)] * (product_set.N + 1),
        method="highs",
        options={"primal_feasibility_tolerance": LP_TOL, "dual_feasibility_tolerance": LP_TOL},
    )
    if res.status != 0:
        raise NumericalError(f"internal inconsistency: LP failed ({res.message})")
    beta = max(float(res.x[-1]), 0.0)
    weights = _polish(a_w, target + beta * id_coords, np.maximum(res.x[:-1], 0.0))
    weights.setflags(write=False)
    form = SeparableForm(float(weights.sum()), beta, weights, n, product_set)
    return beta, form


def _polish(a: np.ndarray, b: np.ndarray, w: np.ndarray) -> np.ndarray:
    support = np.flatnonzero(w > 1e-12)
    refit = np.zeros_like(w)
    refit[support] = np.linalg.lstsq(a[:, support], b, rcond=None)[0]
    if refit.min() < 0.0 or np.linalg.norm(a @ refit - b) > np.linalg.norm(a @ w - b):
        return w
    return refit
