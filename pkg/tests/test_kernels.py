"""Parity between the compiled kernels and the NumPy fallback."""

import numpy as np
import pytest

from groverlab import _kernels_py
from groverlab.backend import active_backend
from helpers import dense_hadamard

try:
    from groverlab import _kernels_c
    BACKENDS = [_kernels_py, _kernels_c]
except ImportError:
    _kernels_c = None
    BACKENDS = [_kernels_py]

IDS = [b.BACKEND for b in BACKENDS]


def rand(shape, seed):
    rng = np.random.default_rng(seed)
    return np.ascontiguousarray(
        rng.standard_normal(shape) + 1j * rng.standard_normal(shape))


@pytest.mark.parametrize("impl", BACKENDS, ids=IDS)
class TestKernel:
    def test_hadamard_vector_matches_dense(self, impl):
        for n in (1, 3, 6):
            a = rand((1 << n,), n)
            expected = dense_hadamard(n) @ a
            out = impl.hadamard_all(a.copy())
            assert np.max(np.abs(out - expected)) <= 1e-12

    def test_hadamard_matrix_matches_dense(self, impl):
        a = rand((16, 5), 7)
        expected = dense_hadamard(4) @ a
        assert np.max(np.abs(impl.hadamard_all(a.copy()) - expected)) <= 1e-12

    def test_hadamard_in_place(self, impl):
        a = rand((8,), 0)
        assert impl.hadamard_all(a) is a

    def test_phase_rows(self, impl):
        a = rand((8, 3), 1)
        rows = np.array([1, 4], dtype=np.int64)
        expected = a.copy()
        expected[[1, 4], :] *= 1j
        assert np.max(np.abs(impl.phase_rows(a.copy(), rows, 1j) - expected)) <= 1e-15

    def test_reflect(self, impl):
        a = rand((8, 2), 2)
        axis = rand((8,), 3)
        axis /= np.linalg.norm(axis)
        factor = np.exp(1j * 0.7) - 1.0
        expected = a + factor * np.outer(axis, axis.conj() @ a)
        assert np.max(np.abs(impl.reflect(a.copy(), axis, factor) - expected)) <= 1e-13

    def test_scale(self, impl):
        a = rand((8,), 4)
        assert np.max(np.abs(impl.scale(a.copy(), -1.0) + a)) <= 1e-15

    def test_marked_prob(self, impl):
        a = rand((8, 3), 5)
        rows = np.array([0, 7], dtype=np.int64)
        expected = (np.abs(a[0]) ** 2 + np.abs(a[7]) ** 2)
        assert np.max(np.abs(impl.marked_prob(a, rows) - expected)) <= 1e-13

    def test_marked_prob_vector_input(self, impl):
        a = rand((8,), 6)
        rows = np.array([2], dtype=np.int64)
        out = impl.marked_prob(a, rows)
        assert out.shape == (1,)
        assert out[0] == pytest.approx(abs(a[2]) ** 2, abs=1e-15)


@pytest.mark.skipif(_kernels_c is None, reason="compiled kernels not built")
def test_backends_agree_on_random_sequences():
    rng = np.random.default_rng(11)
    for _ in range(20):
        n = int(rng.integers(1, 7))
        k = int(rng.integers(1, 5))
        a = rand(((1 << n), k), int(rng.integers(0, 10 ** 6)))
        b = a.copy()
        axis = rand(((1 << n),), int(rng.integers(0, 10 ** 6)))
        axis /= np.linalg.norm(axis)
        rows = np.array(sorted(set(rng.integers(0, 1 << n, size=2).tolist())),
                        dtype=np.int64)
        factor = np.exp(1j * rng.uniform(0, 2 * np.pi)) - 1.0
        phase = np.exp(1j * rng.uniform(0, 2 * np.pi))
        for impl, arr in ((_kernels_py, a), (_kernels_c, b)):
            impl.phase_rows(arr, rows, phase)
            impl.hadamard_all(arr)
            impl.reflect(arr, axis, factor)
            impl.scale(arr, -1.0)
        assert np.max(np.abs(a - b)) <= 1e-12
        assert np.max(np.abs(_kernels_py.marked_prob(a, rows)
                             - _kernels_c.marked_prob(b, rows))) <= 1e-12


def test_active_backend_name():
    assert active_backend() in ("compiled", "python")
