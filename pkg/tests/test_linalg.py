import numpy as np
import pytest

from groverlab import (DensityMatrix, DomainError, StateVector, basis_state,
                       hadamard_all, hermitian_eigenvalues, load_operator,
                       phase_marked, random_unitary, reflect_about_state,
                       save_operator, uniform_state)
from helpers import dense_hadamard, random_state


class TestBasisState:
    def test_zero_label(self):
        assert np.array_equal(basis_state(0, 2).amps, [1, 0, 0, 0])

    def test_top_label(self):
        assert np.array_equal(basis_state(3, 2).amps, [0, 0, 0, 1])

    def test_out_of_range(self):
        with pytest.raises(DomainError):
            basis_state(4, 2)
        with pytest.raises(DomainError):
            basis_state(-1, 2)


class TestHadamardAll:
    def test_uniform_superposition(self):
        out = hadamard_all(basis_state(0, 2))
        assert np.allclose(out.amps, [0.5, 0.5, 0.5, 0.5], atol=1e-15)

    def test_single_qubit(self):
        out = hadamard_all(basis_state(1, 1))
        assert np.allclose(out.amps, [1 / np.sqrt(2), -1 / np.sqrt(2)], atol=1e-15)

    def test_involution(self):
        rng = np.random.default_rng(7)
        for n in (1, 3, 6):
            psi = random_state(n, rng)
            back = hadamard_all(hadamard_all(psi))
            assert np.max(np.abs(back.amps - psi.amps)) <= 1e-12

    @pytest.mark.parametrize("n", [1, 2, 4, 6])
    def test_matches_dense_matrix(self, n):
        rng = np.random.default_rng(n)
        psi = random_state(n, rng)
        expected = dense_hadamard(n) @ psi.amps
        assert np.max(np.abs(hadamard_all(psi).amps - expected)) <= 1e-12


class TestReflectAboutState:
    def test_axis_is_negated_at_pi(self):
        rng = np.random.default_rng(0)
        psi = random_state(3, rng)
        out = reflect_about_state(psi, psi, np.pi)
        assert np.max(np.abs(out.amps + psi.amps)) <= 1e-12

    def test_orthogonal_component_unchanged(self):
        axis = basis_state(0, 2)
        psi = basis_state(2, 2)
        for beta in (0.3, np.pi, 5.1):
            out = reflect_about_state(psi, axis, beta)
            assert np.max(np.abs(out.amps - psi.amps)) <= 1e-15

    def test_two_by_two_case(self):
        # frozen from the dense formula I + (e^{i pi}-1) a a^dag applied to (1,0)
        axis = StateVector(1, np.array([1, 1]) / np.sqrt(2))
        out = reflect_about_state(basis_state(0, 1), axis, np.pi)
        assert np.max(np.abs(out.amps - np.array([0.0, -1.0]))) <= 1e-12

    def test_pi_reflection_is_involution(self):
        rng = np.random.default_rng(3)
        psi, axis = random_state(4, rng), random_state(4, rng)
        back = reflect_about_state(reflect_about_state(psi, axis, np.pi), axis, np.pi)
        assert np.max(np.abs(back.amps - psi.amps)) <= 1e-12

    def test_norm_preserved_any_angle(self):
        rng = np.random.default_rng(4)
        psi, axis = random_state(5, rng), random_state(5, rng)
        for beta in rng.uniform(0, 2 * np.pi, size=10):
            assert abs(reflect_about_state(psi, axis, beta).norm() - 1) <= 1e-10

    def test_rejects_unnormalized_axis(self):
        bad = StateVector(1, np.array([1.0 + 5e-7, 0.0]))  # passes the state gate
        with pytest.raises(DomainError):
            reflect_about_state(basis_state(0, 1), bad, np.pi)


class TestPhaseMarked:
    def test_sign_flip(self):
        out = phase_marked(uniform_state(2), {2}, np.pi)
        assert np.allclose(out.amps, [0.5, 0.5, -0.5, 0.5], atol=1e-15)

    def test_empty_marked_set(self):
        psi = uniform_state(2)
        out = phase_marked(psi, set(), 1.3)
        assert np.array_equal(out.amps, psi.amps)

    def test_quarter_turn(self):
        out = phase_marked(uniform_state(2), {0, 1}, np.pi / 2)
        assert np.allclose(out.amps, [0.5j, 0.5j, 0.5, 0.5], atol=1e-15)

    def test_out_of_range_label(self):
        with pytest.raises(DomainError):
            phase_marked(uniform_state(2), {4}, np.pi)


class TestHermitianEigenvalues:
    def test_scaled_identity(self):
        assert np.allclose(hermitian_eigenvalues(np.eye(4) / 4), [0.25] * 4)

    def test_rank_one_projector(self):
        psi = random_state(3, np.random.default_rng(5))
        proj = np.outer(psi.amps, psi.amps.conj())
        eig = hermitian_eigenvalues(proj)
        assert np.allclose(eig, [1] + [0] * 7, atol=1e-12)

    def test_diagonal(self):
        eig = hermitian_eigenvalues(np.diag([0.5, 0.3, 0.2, 0.0]))
        assert np.allclose(eig, [0.5, 0.3, 0.2, 0.0], atol=1e-14)

    def test_descending_and_trace(self):
        rng = np.random.default_rng(6)
        a = rng.standard_normal((8, 8)) + 1j * rng.standard_normal((8, 8))
        h = a + a.conj().T
        eig = hermitian_eigenvalues(h)
        assert np.all(np.diff(eig) <= 1e-12)
        assert abs(eig.sum() - np.trace(h).real) <= 1e-8

    def test_rejects_non_hermitian(self):
        with pytest.raises(DomainError):
            hermitian_eigenvalues(np.array([[0.0, 1.0], [0.0, 0.0]]))


class TestRandomUnitary:
    def test_unitarity(self):
        for seed in range(5):
            u = random_unitary(16, seed)
            dev = np.max(np.abs(u.entries.conj().T @ u.entries - np.eye(16)))
            assert dev <= 1e-10

    def test_deterministic(self):
        a, b = random_unitary(8, 42), random_unitary(8, 42)
        assert np.array_equal(a.entries, b.entries)
        c = random_unitary(8, 43)
        assert not np.array_equal(a.entries, c.entries)

    def test_dimension_one(self):
        u = random_unitary(1, 0)
        assert abs(abs(u.entries[0, 0]) - 1) <= 1e-12


class TestOperatorFile:
    def test_round_trip(self, tmp_path):
        u = random_unitary(8, 11)
        path = tmp_path / "u.op"
        save_operator(u, path)
        v = load_operator(path)
        assert np.max(np.abs(u.entries - v.entries)) <= 1e-15

    def test_rejects_non_unitary_file(self, tmp_path):
        path = tmp_path / "bad.op"
        path.write_text("2\n1,0 0,0\n0,0 0.5,0\n")
        with pytest.raises(DomainError):
            load_operator(path)

    def test_rejects_malformed_file(self, tmp_path):
        path = tmp_path / "short.op"
        path.write_text("2\n1,0 0,0\n")
        with pytest.raises(DomainError):
            load_operator(path)


class TestDensityMatrix:
    def test_rejects_bad_trace(self):
        with pytest.raises(DomainError):
            DensityMatrix(2, np.eye(2))

    def test_rejects_non_hermitian(self):
        m = np.array([[0.5, 0.5], [0.0, 0.5]], dtype=complex)
        with pytest.raises(DomainError):
            DensityMatrix(2, m)


class TestStateVector:
    def test_rejects_non_finite(self):
        with pytest.raises(DomainError):
            StateVector(1, np.array([np.nan, 0.0]))

    def test_rejects_wrong_norm(self):
        with pytest.raises(DomainError):
            StateVector(1, np.array([2.0, 0.0]))

    def test_immutable(self):
        psi = basis_state(0, 2)
        with pytest.raises(ValueError):
            psi.amps[0] = 0.0
