import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from groverlab import (DomainError, Ensemble, MMixSpec, PseudoPureSpec,
                       basis_state, ensemble_to_density, epsilon_for_entropy,
                       hadamard_all, load_ensemble, m_mix, maximally_mixed,
                       pseudo_pure, pseudo_pure_entropy_approx,
                       pseudo_pure_entropy_exact, pure_ensemble,
                       random_unitary, save_ensemble, uniform_state,
                       von_neumann_entropy)
from helpers import random_ensemble, random_state


class TestEnsembleToDensity:
    def test_pure_projector(self):
        psi = random_state(3, np.random.default_rng(0))
        rho = ensemble_to_density(pure_ensemble(psi))
        assert np.max(np.abs(rho.entries - np.outer(psi.amps, psi.amps.conj()))) <= 1e-12

    def test_maximally_mixed(self):
        rho = ensemble_to_density(maximally_mixed(3))
        assert np.max(np.abs(rho.entries - np.eye(8) / 8)) <= 1e-15

    def test_two_state_diagonal(self):
        e = Ensemble(1, ((0.5, basis_state(0, 1)), (0.5, basis_state(1, 1))))
        rho = ensemble_to_density(e)
        assert np.max(np.abs(rho.entries - np.diag([0.5, 0.5]))) <= 1e-15

    def test_mismatched_components_rejected(self):
        with pytest.raises(DomainError):
            Ensemble(2, ((0.5, basis_state(0, 2)), (0.5, basis_state(0, 1))))

    def test_random_ensembles_are_valid_densities(self):
        rng = np.random.default_rng(1)
        for _ in range(10):
            n = int(rng.integers(1, 7))
            k = int(rng.integers(1, 17))
            rho = ensemble_to_density(random_ensemble(n, k, rng))
            rho.validate_psd()  # also re-checks Hermiticity/trace on build


class TestPseudoPure:
    def test_fully_pure(self):
        psi = uniform_state(3)
        rho = ensemble_to_density(pseudo_pure(PseudoPureSpec(3, 1.0, psi)))
        assert np.max(np.abs(rho.entries - np.outer(psi.amps, psi.amps.conj()))) <= 1e-10

    def test_fully_mixed(self):
        rho = ensemble_to_density(pseudo_pure(PseudoPureSpec(3, 0.0, uniform_state(3))))
        assert np.max(np.abs(rho.entries - np.eye(8) / 8)) <= 1e-10

    def test_half_mixed_diagonal(self):
        rho = ensemble_to_density(pseudo_pure(PseudoPureSpec(2, 0.5, basis_state(0, 2))))
        assert np.max(np.abs(rho.entries - np.diag([5 / 8, 1 / 8, 1 / 8, 1 / 8]))) <= 1e-12

    def test_epsilon_out_of_range(self):
        with pytest.raises(DomainError):
            PseudoPureSpec(2, 1.5, basis_state(0, 2))

    def test_component_weights(self):
        e = pseudo_pure(PseudoPureSpec(2, 0.5, basis_state(0, 2)))
        probs = sorted(e.probabilities, reverse=True)
        assert abs(probs[0] - (0.5 + 0.5 / 4)) <= 1e-15
        assert all(abs(p - 0.5 / 4) <= 1e-15 for p in probs[1:])

    def test_density_independent_of_completion(self):
        # closed form (1-eps) I/N + eps |psi><psi| for a random base state
        rng = np.random.default_rng(2)
        psi = random_state(4, rng)
        eps = 0.37
        rho = ensemble_to_density(pseudo_pure(PseudoPureSpec(4, eps, psi)))
        target = (1 - eps) * np.eye(16) / 16 + eps * np.outer(psi.amps, psi.amps.conj())
        assert np.max(np.abs(rho.entries - target)) <= 1e-10


class TestMMix:
    def test_degenerate_is_uniform_start(self):
        e = m_mix(MMixSpec(3, 0))
        assert len(e) == 1
        assert np.max(np.abs(e.components[0][1].amps - uniform_state(3).amps)) <= 1e-12

    def test_full_mix_is_identity(self):
        rho = ensemble_to_density(m_mix(MMixSpec(3, 3)))
        assert np.max(np.abs(rho.entries - np.eye(8) / 8)) <= 1e-12

    def test_one_mixed_qubit(self):
        e = m_mix(MMixSpec(3, 1))
        assert [p for p, _ in e.components] == [0.5, 0.5]
        a, b = (psi for _, psi in e.components)
        assert np.max(np.abs(a.amps - hadamard_all(basis_state(0, 3)).amps)) <= 1e-12
        assert np.max(np.abs(b.amps - hadamard_all(basis_state(1, 3)).amps)) <= 1e-12
        assert abs(a.inner(b)) <= 1e-12

    def test_m_out_of_range(self):
        with pytest.raises(DomainError):
            MMixSpec(3, 4)


class TestVonNeumannEntropy:
    def test_pure_state_zero(self):
        assert von_neumann_entropy(pure_ensemble(uniform_state(4))) <= 1e-12

    def test_maximally_mixed(self):
        for n in (1, 3, 5):
            assert abs(von_neumann_entropy(maximally_mixed(n)) - n) <= 1e-10

    def test_m_mix_entropy_is_m(self):
        # orthogonal equiprobable components: exactly m bits
        for n, m in ((4, 2), (10, 9)):
            assert abs(von_neumann_entropy(m_mix(MMixSpec(n, m))) - m) <= 1e-9

    def test_gram_matches_dense(self):
        rng = np.random.default_rng(3)
        for _ in range(8):
            n = int(rng.integers(2, 7))
            k = int(rng.integers(1, 17))
            e = random_ensemble(n, k, rng)
            from_gram = von_neumann_entropy(e)
            lam = ensemble_to_density(e).eigenvalues()
            lam = np.clip(lam, 0.0, None)
            pos = lam[lam > 0]
            from_dense = float(-(pos * np.log2(pos)).sum())
            assert abs(from_gram - from_dense) <= 1e-9

    def test_unitary_invariance(self):
        rng = np.random.default_rng(4)
        e = random_ensemble(4, 6, rng)
        u = random_unitary(16, 99)
        rotated = Ensemble(4, tuple(
            (p, type(psi)(4, u.entries @ psi.amps)) for p, psi in e.components))
        assert abs(von_neumann_entropy(rotated) - von_neumann_entropy(e)) <= 1e-9


class TestPseudoPureEntropy:
    def test_exact_pure_limit(self):
        assert pseudo_pure_entropy_exact(1024, 1.0) == 0.0

    def test_exact_mixed_limit(self):
        assert abs(pseudo_pure_entropy_exact(1024, 0.0) - 10.0) <= 1e-12

    def test_exact_matches_ensemble_entropy(self):
        e = pseudo_pure(PseudoPureSpec(10, 0.1, uniform_state(10)))
        assert abs(von_neumann_entropy(e) - pseudo_pure_entropy_exact(1024, 0.1)) <= 1e-9

    def test_exact_matches_ensemble_entropy_small(self):
        for n, eps in ((3, 0.25), (5, 0.7)):
            e = pseudo_pure(PseudoPureSpec(n, eps, uniform_state(n)))
            assert abs(von_neumann_entropy(e)
                       - pseudo_pure_entropy_exact(1 << n, eps)) <= 1e-9

    def test_approx_near_maximal_at_inverse_log(self):
        # eps = 1/log2(N): approximation reads (1 - 1/10) * 10 - l = 9 - l
        s, rem = pseudo_pure_entropy_approx(1024, 0.1)
        assert abs(s - (9.0 - rem)) <= 1e-12
        assert abs(s - 10.0) <= 1.0  # log2(N) + O(1)

    def test_approx_mixed_limit(self):
        s, rem = pseudo_pure_entropy_approx(1 << 16, 0.0)
        assert abs(rem) <= 1e-3
        assert abs(s - 16.0) <= 1e-3

    def test_approx_close_to_exact_for_large_n(self):
        for n in (10, 12):
            dim = 1 << n
            for eps in np.linspace(0.0, 1.0, 11):
                s_exact = pseudo_pure_entropy_exact(dim, eps)
                s_approx, _ = pseudo_pure_entropy_approx(dim, eps)
                assert abs(s_exact - s_approx) <= 0.1

    @given(st.integers(1, 14), st.floats(0.0, 1.0))
    @settings(max_examples=60, deadline=None)
    def test_exact_entropy_bounds(self, n, eps):
        s = pseudo_pure_entropy_exact(1 << n, eps)
        assert -1e-12 <= s <= n + 1e-12

    @given(st.integers(1, 14), st.floats(0.0, 1.0), st.floats(0.0, 1.0))
    @settings(max_examples=60, deadline=None)
    def test_exact_entropy_monotone(self, n, e1, e2):
        lo, hi = sorted((e1, e2))
        assert pseudo_pure_entropy_exact(1 << n, lo) >= \
            pseudo_pure_entropy_exact(1 << n, hi) - 1e-12


class TestEpsilonForEntropy:
    def test_round_trip(self):
        for target in (0.5, 5.0, 9.0, 9.9):
            eps = epsilon_for_entropy(1024, target)
            assert abs(pseudo_pure_entropy_exact(1024, eps) - target) <= 1e-9

    def test_rejects_unreachable_target(self):
        with pytest.raises(DomainError):
            epsilon_for_entropy(1024, 11.0)


class TestEnsembleFile:
    def test_round_trip(self, tmp_path):
        rng = np.random.default_rng(5)
        e = random_ensemble(3, 4, rng)
        path = tmp_path / "e.ens"
        save_ensemble(e, path)
        back = load_ensemble(path)
        assert back.n == e.n and len(back) == len(e)
        for (p1, s1), (p2, s2) in zip(e.components, back.components):
            assert abs(p1 - p2) <= 1e-15
            assert np.max(np.abs(s1.amps - s2.amps)) <= 1e-15

    def test_rejects_bad_header(self, tmp_path):
        path = tmp_path / "bad.ens"
        path.write_text("what\n")
        with pytest.raises(DomainError):
            load_ensemble(path)

    def test_rejects_wrong_amplitude_count(self, tmp_path):
        path = tmp_path / "bad.ens"
        path.write_text("2 1\n1.0 1,0 0,0\n")
        with pytest.raises(DomainError):
            load_ensemble(path)

    def test_rejects_bad_probability_sum(self, tmp_path):
        path = tmp_path / "bad.ens"
        path.write_text("1 1\n0.5 1,0 0,0\n")
        with pytest.raises(DomainError):
            load_ensemble(path)


def test_probabilities_must_sum_to_one():
    with pytest.raises(DomainError):
        Ensemble(1, ((0.7, basis_state(0, 1)), (0.4, basis_state(1, 1))))


def test_negative_probability_rejected():
    with pytest.raises(DomainError):
        Ensemble(1, ((-0.1, basis_state(0, 1)), (1.1, basis_state(1, 1))))
