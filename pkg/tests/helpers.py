"""Brute-force dense oracles and random fixtures shared by the tests.

Everything here is built from plain numpy matrix algebra (kron products
and full matrix multiplies), independent of the package's structured
kernels, so it can serve as an oracle for them.
"""

import numpy as np

from groverlab import Ensemble, IterateSpec, StateVector

H1 = np.array([[1.0, 1.0], [1.0, -1.0]], dtype=complex) / np.sqrt(2.0)


def dense_hadamard(n: int) -> np.ndarray:
    out = np.array([[1.0]], dtype=complex)
    for _ in range(n):
        out = np.kron(out, H1)
    return out


def dense_phase(n: int, marked, gamma: float) -> np.ndarray:
    diag = np.ones(1 << n, dtype=complex)
    for x in marked:
        diag[x] = np.exp(1j * gamma)
    return np.diag(diag)


def dense_reflection(axis: np.ndarray, beta: float) -> np.ndarray:
    dim = axis.shape[0]
    return np.eye(dim, dtype=complex) + (np.exp(1j * beta) - 1.0) * np.outer(
        axis, axis.conj())


def dense_iterate(spec: IterateSpec) -> np.ndarray:
    """Full matrix of the iterate, assembled by brute force."""
    dim = 1 << spec.n
    if spec.unitary == "hadamard_all":
        u = dense_hadamard(spec.n)
    elif spec.unitary == "identity":
        u = np.eye(dim, dtype=complex)
    else:
        u = np.array(spec.unitary.entries)
    refl = np.eye(dim, dtype=complex)
    for axis, beta in spec.axes:
        refl = dense_reflection(np.array(axis.amps), beta) @ refl
    phase = dense_phase(spec.n, spec.marked, spec.gamma)
    return spec.global_sign * (u @ refl @ u.conj().T @ phase)


def dense_curve(spec: IterateSpec, amps: np.ndarray, horizon: int) -> np.ndarray:
    """Success curve by repeated dense matrix-vector products."""
    q = dense_iterate(spec)
    marked = list(spec.marked)
    psi = np.array(amps, dtype=complex)
    values = np.empty(horizon + 1)
    for t in range(horizon + 1):
        values[t] = float(np.sum(np.abs(psi[marked]) ** 2))
        psi = q @ psi
    return values


def random_state(n: int, rng) -> StateVector:
    amps = rng.standard_normal(1 << n) + 1j * rng.standard_normal(1 << n)
    return StateVector(n, amps / np.linalg.norm(amps))


def random_ensemble(n: int, k: int, rng) -> Ensemble:
    probs = rng.random(k)
    probs /= probs.sum()
    probs[-1] = 1.0 - probs[:-1].sum()
    return Ensemble(n, tuple((p, random_state(n, rng)) for p in probs))
