"""Tests for the dense few-qubit linear-algebra helpers."""

import numpy as np
import pytest
from numpy.testing import assert_allclose

from sixstate.qubits import (
    Basis,
    basis_kets,
    check_density_matrix,
    check_state,
    complete_to_unitary,
    ket,
    n_qubits,
    outer,
    partial_trace,
    single_qubit_basis_change,
    tensor,
    unitarity_defect,
)


def reference_partial_trace(rho, keep, n):
    """Independent oracle: explicit sum over traced-out bit patterns.

    Big-endian index arithmetic only, no reshapes.
    """
    traced = [q for q in range(n) if q not in keep]
    dim = 2 ** len(keep)
    out = np.zeros((dim, dim), dtype=complex)

    def full_index(kept_bits, traced_bits):
        bits = [0] * n
        for q, b in zip(keep, kept_bits):
            bits[q] = b
        for q, b in zip(traced, traced_bits):
            bits[q] = b
        idx = 0
        for b in bits:
            idx = 2 * idx + b
        return idx

    for i in range(dim):
        i_bits = [(i >> (len(keep) - 1 - k)) & 1 for k in range(len(keep))]
        for j in range(dim):
            j_bits = [(j >> (len(keep) - 1 - k)) & 1 for k in range(len(keep))]
            for t in range(2 ** len(traced)):
                t_bits = [(t >> (len(traced) - 1 - k)) & 1 for k in range(len(traced))]
                out[i, j] += rho[full_index(i_bits, t_bits), full_index(j_bits, t_bits)]
    return out


def random_density(n, seed):
    rng = np.random.default_rng(seed)
    psi = rng.normal(size=2**n) + 1j * rng.normal(size=2**n)
    psi /= np.linalg.norm(psi)
    return outer(psi)


class TestKetsAndTensor:
    def test_ket_indexing_big_endian(self):
        assert_allclose(ket(0), [1, 0])
        assert_allclose(ket(1), [0, 1])
        # leftmost bit is most significant: |10> -> index 2
        assert_allclose(ket(1, 0), [0, 0, 1, 0])
        assert_allclose(ket(0, 1, 1), np.eye(8)[3])

    def test_ket_rejects_bad_bits(self):
        with pytest.raises(ValueError):
            ket(2)
        with pytest.raises(ValueError):
            ket(0, 1, 0, 1, 0)

    def test_tensor_hand_expansion(self):
        a = np.array([1.0, 2.0j])
        b = np.array([3.0, 4.0])
        assert_allclose(tensor(a, b), [3, 4, 6j, 8j])

    def test_tensor_matches_ket_composition(self):
        assert_allclose(tensor(ket(1), ket(0), ket(1)), ket(1, 0, 1))

    def test_tensor_size_cap(self):
        with pytest.raises(ValueError):
            tensor(ket(0), ket(0), ket(0), ket(0), ket(0))

    def test_n_qubits_validation(self):
        assert n_qubits(2) == 1
        assert n_qubits(16) == 4
        for dim in (3, 1, 32):
            with pytest.raises(ValueError):
                n_qubits(dim)


class TestPartialTrace:
    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_against_index_sum_oracle(self, n):
        rho = random_density(n, seed=11 * n)
        for size in range(1, n):
            for keep in _increasing_subsets(n, size):
                got = partial_trace(rho, keep)
                want = reference_partial_trace(rho, keep, n)
                assert_allclose(got, want, atol=1e-13)

    def test_trace_preserved(self):
        rho = random_density(3, seed=5)
        for keep in [(0,), (1,), (2,), (0, 2)]:
            assert_allclose(np.trace(partial_trace(rho, keep)), 1.0, atol=1e-13)

    def test_bell_state_reduces_to_maximally_mixed(self):
        bell = (ket(0, 0) + ket(1, 1)) / np.sqrt(2.0)
        reduced = partial_trace(outer(bell), (0,))
        assert_allclose(reduced, np.eye(2) / 2.0, atol=1e-15)

    def test_product_state_factors(self):
        psi = tensor(ket(1), (ket(0) + 1j * ket(1)) / np.sqrt(2.0))
        rho = outer(psi)
        assert_allclose(partial_trace(rho, (0,)), outer(ket(1)), atol=1e-15)

    def test_keep_order_validation(self):
        rho = random_density(2, seed=1)
        with pytest.raises(ValueError):
            partial_trace(rho, (1, 0))
        with pytest.raises(ValueError):
            partial_trace(rho, (0, 2))
        with pytest.raises(ValueError):
            partial_trace(rho, ())


def _increasing_subsets(n, size):
    from itertools import combinations

    return combinations(range(n), size)


class TestBases:
    def test_all_basis_changes_unitary(self):
        for basis in Basis:
            q = single_qubit_basis_change(basis)
            assert unitarity_defect(q) < 1e-15

    def test_b2_is_hadamard(self):
        q = single_qubit_basis_change(Basis.B2)
        assert_allclose(q, np.array([[1, 1], [1, -1]]) / np.sqrt(2.0))

    def test_b3_circular_kets(self):
        k0, k1 = basis_kets(Basis.B3)
        assert_allclose(k0, np.array([1.0, 1.0j]) / np.sqrt(2.0))
        assert_allclose(k1, np.array([1.0, -1.0j]) / np.sqrt(2.0))


class TestCompleteToUnitary:
    def test_identity_from_single_column(self):
        u = complete_to_unitary([np.eye(4, dtype=complex)[0]], 4)
        assert unitarity_defect(u) < 1e-14

    def test_columns_kept_at_positions(self):
        c0 = np.zeros(8, dtype=complex)
        c0[[1, 2]] = 1.0 / np.sqrt(2.0)
        c1 = np.zeros(8, dtype=complex)
        c1[[0, 7]] = [0.6, 0.8j]
        u = complete_to_unitary([c0, c1], 8, positions=(0, 4))
        assert_allclose(u[:, 0], c0, atol=1e-15)
        assert_allclose(u[:, 4], c1, atol=1e-15)
        assert unitarity_defect(u) < 1e-14

    def test_deterministic(self):
        c = np.ones(4, dtype=complex) / 2.0
        u1 = complete_to_unitary([c], 4)
        u2 = complete_to_unitary([c], 4)
        assert np.array_equal(u1, u2)

    def test_rejects_non_orthogonal_input(self):
        c0 = np.eye(4, dtype=complex)[0]
        c1 = (np.eye(4)[0] + np.eye(4)[1]) / np.sqrt(2.0)
        with pytest.raises(ValueError):
            complete_to_unitary([c0, c1.astype(complex)], 4)

    def test_rejects_unnormalized_input(self):
        with pytest.raises(ValueError):
            complete_to_unitary([np.array([0.5, 0, 0, 0], dtype=complex)], 4)


class TestValidators:
    def test_check_state_passes_and_fails(self):
        check_state(ket(0, 1))
        with pytest.raises(ValueError):
            check_state(np.array([1.0, 1.0]))
        with pytest.raises(ValueError):
            check_state(np.ones((2, 2)))

    def test_check_density_matrix(self):
        check_density_matrix(np.eye(2) / 2.0)
        with pytest.raises(ValueError):
            check_density_matrix(np.array([[0.5, 1.0], [0.0, 0.5]]))
        with pytest.raises(ValueError):
            check_density_matrix(np.eye(2))
