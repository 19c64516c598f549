import numpy as np
import pytest

from loowit import loo, qstate
from loowit.loo import (
    LOOBasis,
    OrthogonalRotation,
    gell_mann_basis,
    haar_rotation,
    hermiticity_residual,
    operator_schmidt,
    orthonormality_residual,
    pauli_basis,
    rotate,
    transpose_basis,
)
from loowit.qstate import make_state

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)


class TestGellMann:
    def test_qubit_elements_in_documented_order(self):
        b = gell_mann_basis(2)
        assert len(b) == 4
        np.testing.assert_allclose(b[0], SX / np.sqrt(2), atol=1e-15)
        # antisymmetric element carries the opposite sign convention to sigma_y
        np.testing.assert_allclose(b[1], -SY / np.sqrt(2), atol=1e-15)
        np.testing.assert_allclose(b[2], np.diag([1.0, 0.0]), atol=1e-15)
        np.testing.assert_allclose(b[3], np.diag([0.0, 1.0]), atol=1e-15)

    @pytest.mark.parametrize("d", [2, 3, 4, 5])
    def test_trace_orthonormal_hermitian(self, d):
        b = gell_mann_basis(d)
        assert len(b) == d * d
        assert hermiticity_residual(b) < 1e-10
        assert orthonormality_residual(b) < 1e-10

    def test_block_sizes(self):
        b = gell_mann_basis(3)
        # 3 symmetric, 3 antisymmetric, 3 diagonal projectors
        for k in range(6):
            assert abs(np.trace(b[k])) < 1e-15
        for k in range(6, 9):
            assert np.trace(b[k]).real == pytest.approx(1.0)

    def test_completeness_reproduces_purity(self):
        rng = np.random.default_rng(21)
        for d in (2, 3, 4):
            rho = qstate.partial_trace(qstate.random_mixed_state(d, d, rng), "B")
            total = sum(np.trace(g @ rho).real ** 2 for g in gell_mann_basis(d))
            assert total == pytest.approx(qstate.purity(rho), abs=1e-9)

    def test_dimension_below_two_rejected(self):
        with pytest.raises(ValueError, match="at least 2"):
            gell_mann_basis(1)


class TestPauli:
    def test_normalization_and_orthogonality(self):
        b = pauli_basis()
        assert np.trace(b[0] @ b[0]).real == pytest.approx(1.0)
        assert abs(np.trace(b[0] @ b[1])) == pytest.approx(0.0, abs=1e-15)
        assert hermiticity_residual(b) < 1e-15
        assert orthonormality_residual(b) < 1e-15

    def test_flipped_variant_via_rotation(self):
        flipped = rotate(pauli_basis(), np.diag([1.0, -1.0, 1.0, 1.0]))
        expected = np.stack([SX, -SY, SZ, np.eye(2)]) / np.sqrt(2)
        np.testing.assert_allclose(flipped.observables, expected, atol=1e-15)


class TestTransposeBasis:
    def test_antisymmetric_elements_change_sign(self):
        b = gell_mann_basis(2)
        t = transpose_basis(b)
        np.testing.assert_allclose(t[0], b[0], atol=1e-15)
        np.testing.assert_allclose(t[1], -b[1], atol=1e-15)
        np.testing.assert_allclose(t[2], b[2], atol=1e-15)
        np.testing.assert_allclose(t[3], b[3], atol=1e-15)

    def test_double_application_is_identity(self):
        b = gell_mann_basis(3)
        assert np.array_equal(transpose_basis(transpose_basis(b)).observables, b.observables)

    def test_orthonormality_preserved_for_rotated_basis(self):
        rng = np.random.default_rng(22)
        rotated = rotate(gell_mann_basis(3), haar_rotation(9, rng))
        assert orthonormality_residual(transpose_basis(rotated)) < 1e-9


class TestRotate:
    def test_identity_rotation_is_noop(self):
        b = gell_mann_basis(2)
        assert np.array_equal(rotate(b, np.eye(4)).observables, b.observables)

    def test_composition(self):
        rng = np.random.default_rng(23)
        b = gell_mann_basis(2)
        o1 = haar_rotation(4, rng).matrix
        o2 = haar_rotation(4, rng).matrix
        left = rotate(rotate(b, o1), o2)
        right = rotate(b, o2 @ o1)
        np.testing.assert_allclose(left.observables, right.observables, atol=1e-10)

    def test_random_rotation_preserves_invariants(self):
        rng = np.random.default_rng(24)
        for d in (2, 3):
            rotated = rotate(gell_mann_basis(d), haar_rotation(d * d, rng))
            assert hermiticity_residual(rotated) < 1e-9
            assert orthonormality_residual(rotated) < 1e-9

    def test_non_orthogonal_matrix_rejected_with_residual(self):
        bad = np.eye(4)
        bad[0, 0] = 2.0
        with pytest.raises(ValueError, match="not orthogonal"):
            rotate(gell_mann_basis(2), bad)
        try:
            OrthogonalRotation(bad)
        except ValueError as exc:
            assert "3.0" in str(exc)  # max |O O^T - I| residual

    def test_size_mismatch_rejected(self):
        with pytest.raises(ValueError, match="does not match"):
            rotate(gell_mann_basis(3), np.eye(4))

    def test_non_square_rejected(self):
        with pytest.raises(ValueError, match="square"):
            OrthogonalRotation(np.ones((2, 3)))

    def test_local_expectation_square_sum_invariant_under_rotation(self):
        rng = np.random.default_rng(25)
        rho = qstate.random_mixed_state(3, 3, rng)
        reduced = qstate.partial_trace(rho, "B")
        basis = gell_mann_basis(3)
        rotated = rotate(basis, haar_rotation(9, rng))
        total = sum(np.trace(g @ reduced).real ** 2 for g in basis)
        total_rot = sum(np.trace(g @ reduced).real ** 2 for g in rotated)
        assert total == pytest.approx(total_rot, abs=1e-9)
        assert total == pytest.approx(qstate.purity(reduced), abs=1e-9)


class TestOperatorSchmidt:
    def test_bell_singular_values(self):
        dec = operator_schmidt(make_state("bell"))
        np.testing.assert_allclose(dec.singular_values, [0.5] * 4, atol=1e-12)
        assert dec.singular_values.sum() == pytest.approx(2.0, abs=1e-12)

    def test_pure_product_state_is_rank_one(self):
        rng = np.random.default_rng(26)
        dec = operator_schmidt(qstate.random_product_state(3, 3, rng))
        assert dec.singular_values[0] == pytest.approx(1.0, abs=1e-10)
        assert np.all(dec.singular_values[1:] < 1e-10)

    @pytest.mark.parametrize("d", [2, 3])
    def test_maximally_mixed_single_value(self, d):
        rho = qstate.DensityMatrix(d, d, np.eye(d * d) / (d * d))
        dec = operator_schmidt(rho)
        assert dec.singular_values[0] == pytest.approx(1.0 / d, abs=1e-12)
        assert np.all(dec.singular_values[1:] < 1e-12)

    def test_reconstruction_and_basis_validity(self):
        rng = np.random.default_rng(27)
        for d in (2, 3):
            rho = qstate.random_mixed_state(d, d, rng)
            dec = operator_schmidt(rho)
            rebuilt = sum(
                s * np.kron(ga, gb)
                for s, ga, gb in zip(dec.singular_values, dec.basis_a, dec.basis_b)
            )
            assert np.abs(rebuilt - rho.data).max() < 1e-8
            for basis in (dec.basis_a, dec.basis_b):
                assert hermiticity_residual(basis) < 1e-9
                assert orthonormality_residual(basis) < 1e-9
            assert np.all(dec.singular_values >= 0)
            assert np.all(np.diff(dec.singular_values) <= 1e-15)

    def test_singular_values_lu_invariant(self):
        rng = np.random.default_rng(28)
        rho = qstate.random_mixed_state(3, 3, rng)
        base = operator_schmidt(rho).singular_values
        for _ in range(3):
            ua = qstate.haar_unitary(3, rng)
            ub = qstate.haar_unitary(3, rng)
            rotated = qstate.local_unitary_conjugate(rho, ua, ub)
            np.testing.assert_allclose(
                operator_schmidt(rotated).singular_values, base, atol=1e-8
            )

    def test_rectangular_refers_to_witness_path(self):
        rho = qstate.random_mixed_state(2, 3, np.random.default_rng(29))
        with pytest.raises(ValueError, match="correlation_matrix"):
            operator_schmidt(rho)


class TestLOOBasisStructure:
    def test_wrong_shape_rejected(self):
        with pytest.raises(ValueError, match="shape"):
            LOOBasis(2, np.zeros((3, 2, 2)))

    def test_iteration_and_indexing(self):
        b = pauli_basis()
        assert len(list(b)) == 4
        np.testing.assert_allclose(b[3], np.eye(2) / np.sqrt(2))

    def test_observables_read_only(self):
        b = pauli_basis()
        with pytest.raises(ValueError):
            b.observables[0, 0, 0] = 1.0
