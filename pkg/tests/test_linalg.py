import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from projsets.errors import NumericalError, ValidationError
from projsets.linalg import (
    canonical_phase,
    gram_schmidt,
    is_hermitian,
    is_projector,
    is_unitary,
    ket,
    matrix_power,
    null_space,
    projector_of,
    tensor_product,
    trace_inner,
    unit_cell_basis,
    unitary_eigensystem,
)
from projsets.weyl import weyl_pair

from .conftest import random_unitary

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)


def _e(n, k, l):
    m = np.zeros((n, n), dtype=complex)
    m[k, l] = 1
    return m


class TestTraceInner:
    def test_unit_cells(self):
        assert trace_inner(_e(2, 0, 1), _e(2, 0, 1)) == 1
        assert trace_inner(_e(2, 0, 1), _e(2, 1, 0)) == 0

    def test_identity(self):
        assert trace_inner(np.eye(4), np.eye(4)) == 4

    def test_conjugate_symmetric_and_linear(self, rng):
        a, b, c = (rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3)) for _ in range(3))
        assert np.isclose(trace_inner(a, b), np.conj(trace_inner(b, a)))
        assert np.isclose(trace_inner(2j * a + c, b), 2j * trace_inner(a, b) + trace_inner(c, b))
        assert np.isclose(trace_inner(a, b), np.trace(a @ b.conj().T))

    def test_dimension_mismatch(self):
        with pytest.raises(ValidationError):
            trace_inner(np.eye(2), np.eye(3))

    @given(st.lists(st.complex_numbers(max_magnitude=1e3, allow_nan=False, allow_infinity=False), min_size=4, max_size=4))
    def test_positive_definite(self, entries):
        a = np.array(entries).reshape(2, 2)
        val = trace_inner(a, a)
        assert abs(val.imag) < 1e-9
        assert val.real >= 0
        if not np.any(a):
            assert val == 0
        elif np.max(np.abs(a)) > 1e-150:  # smaller entries underflow when squared
            assert val.real > 0


class TestUnitCellBasis:
    def test_n1(self):
        (e,) = unit_cell_basis(1)
        assert np.array_equal(e, [[1]])

    def test_n2_order(self):
        basis = unit_cell_basis(2)
        assert len(basis) == 4
        # linearized index (k-1)n + l with 1-based k, l: E^(12) is element 2
        assert np.array_equal(basis[1], [[0, 1], [0, 0]])

    def test_n3_gram_is_identity(self):
        basis = unit_cell_basis(3)
        gram = np.empty((9, 9), dtype=complex)
        for i, a in enumerate(basis):
            for j, b in enumerate(basis):
                # elementwise oracle, independent of the vdot path
                gram[i, j] = sum(a[r, c] * np.conj(b[r, c]) for r in range(3) for c in range(3))
        assert np.array_equal(gram, np.eye(9))
        assert np.allclose([[trace_inner(a, b) for b in basis] for a in basis], np.eye(9))


class TestTensorProduct:
    def test_identities(self):
        assert np.array_equal(tensor_product(np.eye(2), np.eye(3)), np.eye(6))

    def test_unit_cells(self):
        assert np.array_equal(tensor_product(_e(2, 0, 0), _e(2, 0, 0)), _e(4, 0, 0))

    def test_sx_sz_blocks(self):
        z = np.zeros((2, 2))
        expected = np.block([[z, SZ], [SZ, z]])
        assert np.array_equal(tensor_product(SX, SZ), expected)

    def test_mixed_product(self, rng):
        a, b, c, d = (rng.standard_normal((2, 2)) for _ in range(4))
        lhs = tensor_product(a, b) @ tensor_product(c, d)
        assert np.allclose(lhs, tensor_product(a @ c, b @ d), atol=1e-12)


class TestProjector:
    def test_basis_vector(self):
        assert np.array_equal(projector_of([1, 0]), _e(2, 0, 0))

    def test_plus(self):
        assert np.allclose(projector_of(np.array([1, 1]) / np.sqrt(2)), 0.5)

    def test_plus_i(self):
        p = projector_of(np.array([1, 1j]) / np.sqrt(2))
        assert np.allclose(p, [[0.5, -0.5j], [0.5j, 0.5]])
        assert is_projector(p, rank_one=True)

    def test_zero_vector(self):
        with pytest.raises(ValidationError):
            projector_of([0, 0])

    @settings(max_examples=50)
    @given(st.floats(0, 2 * np.pi), st.integers(0, 10_000))
    def test_phase_invariance(self, theta, seed):
        r = np.random.default_rng(seed)
        v = ket(r.standard_normal(4) + 1j * r.standard_normal(4))
        assert np.max(np.abs(projector_of(np.exp(1j * theta) * v) - projector_of(v))) < 1e-12


class TestKet:
    def test_canonical_phase(self):
        v = ket([0.3j, -0.8, 0.1])
        assert v[1].real > 0 and v[1].imag == 0
        assert np.isclose(np.linalg.norm(v), 1)

    def test_tie_picks_lowest_index(self):
        v = canonical_phase(np.array([1j, 1j]) / np.sqrt(2))
        assert v[0] == pytest.approx(1 / np.sqrt(2))

    def test_zero(self):
        with pytest.raises(ValidationError):
            ket([0, 0, 0])


class TestMatrixPower:
    def test_shift_cubed(self):
        u, _ = weyl_pair(3)
        assert np.array_equal(matrix_power(u, 3), np.eye(3))

    def test_sigma_x_squared(self):
        assert np.array_equal(matrix_power(SX, 2), np.eye(2))

    def test_uv_squared(self):
        u, v = weyl_pair(2)
        assert np.allclose(matrix_power(u @ v, 2), -np.eye(2))

    def test_power_zero(self, rng):
        assert np.array_equal(matrix_power(rng.standard_normal((4, 4)), 0), np.eye(4))

    def test_against_repeated_product(self, rng):
        m = rng.standard_normal((3, 3))
        expected = np.eye(3)
        for _ in range(11):
            expected = expected @ m
        assert np.allclose(matrix_power(m, 11), expected)


class TestNullSpace:
    def test_rank_deficient(self):
        a = np.array([[1, 2, 3], [2, 4, 6], [1, 0, 1]], dtype=complex)
        (x,) = null_space(a)
        assert np.allclose(a @ x, 0)

    def test_zero_matrix_gives_canonical_vectors(self):
        vecs = null_space(np.zeros((3, 3)))
        assert np.array_equal(np.array(vecs), np.eye(3))

    def test_forced_dimension(self, rng):
        q = random_unitary(4, rng)
        a = q @ np.diag([0, 1, 2, 3]) @ q.conj().T
        a += 1e-13 * rng.standard_normal((4, 4))
        (x,) = null_space(a, dim=1)
        assert np.linalg.norm(a @ x) / np.linalg.norm(x) < 1e-10

    def test_gram_schmidt_dependent(self):
        with pytest.raises(NumericalError):
            gram_schmidt([np.array([1, 0]), np.array([2, 0])])


class TestUnitaryEigensystem:
    def test_clock_matrix(self):
        _, v = weyl_pair(3)
        z = np.exp(2j * np.pi / 3)
        eig = unitary_eigensystem(v, known_eigenvalues=[1, z, z**2])
        assert np.allclose(eig.eigenvalues, [1, z, z**2])
        assert np.allclose(eig.eigenvectors, np.eye(3))

    def test_shift_eigenvalue_one(self):
        u, _ = weyl_pair(3)
        # oracle: (U - I) x = 0 forces x0 = x1 = x2
        eig = unitary_eigensystem(u)
        assert np.isclose(eig.eigenvalues[0], 1)
        assert np.allclose(eig.eigenvectors[:, 0], np.ones(3) / np.sqrt(3))

    def test_identity_is_canonical(self):
        eig = unitary_eigensystem(np.eye(2), known_eigenvalues=[1, 1])
        assert np.array_equal(eig.eigenvectors, np.eye(2))
        eig = unitary_eigensystem(np.eye(2))
        assert np.array_equal(eig.eigenvectors, np.eye(2))

    def test_non_unitary(self):
        with pytest.raises(ValidationError):
            unitary_eigensystem(np.array([[1, 1], [0, 1]]))

    def test_inconsistent_known_eigenvalues(self):
        with pytest.raises(NumericalError):
            unitary_eigensystem(SZ, known_eigenvalues=[1, 1])

    def test_sorted_by_angle(self, rng):
        eig = unitary_eigensystem(random_unitary(5, rng))
        angles = np.mod(np.angle(eig.eigenvalues), 2 * np.pi)
        assert np.all(np.diff(angles) > 0)

    def test_deterministic(self, rng):
        m = random_unitary(6, rng)
        a, b = unitary_eigensystem(m), unitary_eigensystem(m.copy())
        assert np.array_equal(a.eigenvectors, b.eigenvectors)

    @pytest.mark.parametrize("n", [1, 2, 3, 5, 7])
    def test_power_expansion(self, n, rng):
        for _ in range(5):
            m = random_unitary(n, rng)
            eig = unitary_eigensystem(m)
            assert np.allclose(sum(eig.projectors()), np.eye(n), atol=1e-9)
            for p in range(2 * n + 1):
                assert np.max(np.abs(matrix_power(m, p) - eig.reconstruct(p))) < 1e-8

    def test_predicates(self, rng):
        u = random_unitary(3, rng)
        assert is_unitary(u) and not is_hermitian(u)
        assert is_hermitian(u + u.conj().T)
