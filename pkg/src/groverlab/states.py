"""Ensembles of pure states, mixed-state family builders, and entropy.

An ensemble is a probability-weighted list of pure states; its density
matrix is the probability-weighted sum of the projectors.  Ensembles are
stored as given (never eagerly diagonalized); the density matrix is
materialized only on demand and only for small registers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .errors import DomainError
from .linalg import DensityMatrix, StateVector, basis_state
from .tolerances import DENSE_MAX_QUBITS, ENSEMBLE_MAX_QUBITS, TOL


@dataclass(frozen=True)
class Ensemble:
    """Probability-weighted collection of pure states on n qubits."""

    n: int
    components: tuple = field(repr=False)

    def __post_init__(self):
        comps = tuple((float(p), psi) for p, psi in self.components)
        object.__setattr__(self, "components", comps)
        if not comps:
            raise DomainError("ensemble needs at least one component")
        for p, psi in comps:
            if p < 0:
                raise DomainError(f"negative probability {p}")
            if psi.n != self.n:
                raise DomainError("ensemble components disagree on qubit count")
        total = math.fsum(p for p, _ in comps)
        if abs(total - 1.0) > TOL.prob_sum:
            raise DomainError(f"probabilities sum to {total!r}, not 1")

    def __len__(self) -> int:
        return len(self.components)

    @property
    def probabilities(self) -> np.ndarray:
        return np.array([p for p, _ in self.components])

    def state_matrix(self) -> np.ndarray:
        """Component states as the columns of a C-contiguous (N, K) matrix."""
        return np.ascontiguousarray(
            np.column_stack([psi.amps for _, psi in self.components]))


@dataclass(frozen=True)
class PseudoPureSpec:
    """Mixture (1-eps) I/N + eps |psi><psi|; eps interpolates mixed -> pure."""

    n: int
    epsilon: float
    base: StateVector

    def __post_init__(self):
        if not 0.0 <= self.epsilon <= 1.0:
            raise DomainError(f"epsilon {self.epsilon} outside [0, 1]")
        if self.base.n != self.n:
            raise DomainError("base state qubit count mismatch")


@dataclass(frozen=True)
class MMixSpec:
    """The m least-significant qubits are totally mixed before the Hadamards."""

    n: int
    m: int

    def __post_init__(self):
        if not 0 <= self.m <= self.n:
            raise DomainError(f"m={self.m} outside [0, {self.n}]")


def ensemble_to_density(ensemble: Ensemble) -> DensityMatrix:
    """Materialize the density matrix sum_mu p_mu |psi_mu><psi_mu|."""
    if ensemble.n > DENSE_MAX_QUBITS:
        raise DomainError(
            f"density matrices limited to {DENSE_MAX_QUBITS} qubits")
    a = ensemble.state_matrix() * np.sqrt(ensemble.probabilities)[None, :]
    rho = a @ a.conj().T
    rho = 0.5 * (rho + rho.conj().T)
    return DensityMatrix(1 << ensemble.n, rho)


def pseudo_pure(spec: PseudoPureSpec) -> Ensemble:
    """Ensemble presentation of a pseudo-pure state.

    The base state carries probability eps + (1-eps)/N; the remaining
    N-1 members of an orthonormal completion of {base} each carry
    (1-eps)/N.  The resulting density matrix does not depend on which
    completion is chosen.
    """
    if spec.n > ENSEMBLE_MAX_QUBITS:
        raise DomainError(
            f"full-basis ensembles limited to {ENSEMBLE_MAX_QUBITS} qubits")
    dim = 1 << spec.n
    rest = (1.0 - spec.epsilon) / dim
    comps = [(spec.epsilon + rest, spec.base)]
    for column in _orthonormal_completion(spec.base.amps):
        comps.append((rest, StateVector(spec.n, column)))
    return Ensemble(spec.n, tuple(comps))


def _orthonormal_completion(psi: np.ndarray):
    """Complete {psi} to an orthonormal basis.

    Gram-Schmidt over the computational basis vectors with one
    re-orthogonalization pass, skipping candidates whose residual norm
    falls below the cutoff.  Against a basis-vector candidate e_x the
    first projection coefficients are just row x of the accepted basis,
    so each candidate costs two matrix-vector products.
    """
    dim = psi.shape[0]
    basis = np.empty((dim, dim), dtype=np.complex128, order="F")
    basis[:, 0] = psi
    count = 1
    out = []
    for x in range(dim):
        if count == dim:
            break
        b = basis[:, :count]
        r = b @ (-np.conj(basis[x, :count]))
        r[x] += 1.0
        # b^dag r via the transpose view; conjugating b would copy it
        r -= b @ np.conj(b.T @ np.conj(r))
        norm = np.linalg.norm(r)
        if norm < TOL.completion_skip:
            continue
        r /= norm
        basis[:, count] = r
        count += 1
        out.append(r)
    return out


def m_mix(spec: MMixSpec) -> Ensemble:
    """Equal mixture of H|i> over the 2**m lowest basis labels i."""
    if spec.n + spec.m > 2 * ENSEMBLE_MAX_QUBITS:
        raise DomainError("m-mix ensemble too large to materialize")
    k = 1 << spec.m
    p = 1.0 / k
    comps = tuple(
        (p, linalg.hadamard_all(basis_state(i, spec.n))) for i in range(k))
    return Ensemble(spec.n, comps)


def von_neumann_entropy(ensemble: Ensemble) -> float:
    """Entropy -sum lambda_i log2 lambda_i of the ensemble's density matrix.

    Uses the K x K Gram matrix sqrt(p_mu p_nu) <psi_mu|psi_nu> when the
    component count K is below the dimension (its nonzero spectrum equals
    the density matrix's), otherwise the dense matrix.
    """
    k = len(ensemble)
    if k < (1 << ensemble.n):
        a = ensemble.state_matrix() * np.sqrt(ensemble.probabilities)[None, :]
        gram = a.conj().T @ a
        gram = 0.5 * (gram + gram.conj().T)
        eig = np.linalg.eigvalsh(gram)
    else:
        eig = ensemble_to_density(ensemble).eigenvalues()
    return _entropy_bits(eig)


def _entropy_bits(eigenvalues: np.ndarray) -> float:
    lam = np.asarray(eigenvalues, dtype=np.float64)
    if np.any(lam < -TOL.psd_slack):
        raise DomainError(f"negative eigenvalue {lam.min():.3g}")
    lam = np.clip(lam, 0.0, None)
    pos = lam[lam > 0.0]
    return float(-np.sum(pos * np.log2(pos)))


def pseudo_pure_entropy_exact(dim: int, epsilon: float) -> float:
    """Closed-form entropy of a pseudo-pure state, in bits.

    The spectrum is (1-eps)/N with multiplicity N-1 plus the single
    eigenvalue (1 + (N-1) eps)/N; no matrix is built.
    """
    _check_entropy_args(dim, epsilon)
    small = (1.0 - epsilon) / dim
    big = (1.0 + (dim - 1) * epsilon) / dim
    s = 0.0
    if small > 0.0:
        s -= (dim - 1) * small * math.log2(small)
    if big > 0.0:
        s -= big * math.log2(big)
    return s


def pseudo_pure_entropy_approx(dim: int, epsilon: float) -> tuple[float, float]:
    """Large-N entropy approximation (1-eps) log2 N - l, and the remainder l.

    l = (1-eps) log2(1-eps) + (1/N + eps) log2(1/N + eps).
    """
    _check_entropy_args(dim, epsilon)
    rem = 0.0
    if epsilon < 1.0:
        rem += (1.0 - epsilon) * math.log2(1.0 - epsilon)
    x = 1.0 / dim + epsilon
    rem += x * math.log2(x)
    return (1.0 - epsilon) * math.log2(dim) - rem, rem


def _check_entropy_args(dim: int, epsilon: float) -> None:
    if dim < 2:
        raise DomainError("dimension must be >= 2")
    if not 0.0 <= epsilon <= 1.0:
        raise DomainError(f"epsilon {epsilon} outside [0, 1]")


def epsilon_for_entropy(dim: int, target_bits: float) -> float:
    """Purity eps whose pseudo-pure state has exactly the target entropy.

    The entropy falls monotonically from log2 N at eps=0 to 0 at eps=1;
    solved by bisection on the closed form.
    """
    if not 0.0 <= target_bits <= math.log2(dim):
        raise DomainError(f"target entropy {target_bits} outside [0, log2 N]")
    lo, hi = 0.0, 1.0  # S(lo) >= target >= S(hi)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if pseudo_pure_entropy_exact(dim, mid) >= target_bits:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def save_ensemble(ensemble: Ensemble, path) -> None:
    """Write the ensemble text format: header 'n K', then K weighted rows."""
    with open(path, "w") as fh:
        fh.write(f"{ensemble.n} {len(ensemble)}\n")
        for p, psi in ensemble.components:
            amps = " ".join(f"{z.real:.17g},{z.imag:.17g}" for z in psi.amps)
            fh.write(f"{p:.17g} {amps}\n")


def load_ensemble(path) -> Ensemble:
    """Read the ensemble text format written by :func:`save_ensemble`."""
    with open(path) as fh:
        lines = [ln for ln in (raw.strip() for raw in fh) if ln]
    if not lines:
        raise DomainError(f"{path}: empty ensemble file")
    try:
        n, k = (int(tok) for tok in lines[0].split())
    except ValueError as exc:
        raise DomainError(f"{path}: bad header {lines[0]!r}") from exc
    if len(lines) != 1 + k:
        raise DomainError(f"{path}: expected {k} component lines, got {len(lines) - 1}")
    dim = 1 << n
    comps = []
    for ln in lines[1:]:
        tokens = ln.split()
        if len(tokens) != 1 + dim:
            raise DomainError(
                f"{path}: component line has {len(tokens) - 1} amplitudes, wanted {dim}")
        try:
            p = float(tokens[0])
            amps = np.array([linalg._parse_complex(tok) for tok in tokens[1:]],
                            dtype=np.complex128)
        except ValueError as exc:
            raise DomainError(f"{path}: {exc}") from exc
        comps.append((p, StateVector(n, amps)))
    return Ensemble(n, tuple(comps))


def maximally_mixed(n: int) -> Ensemble:
    """Equal mixture of all N basis states (density matrix I/N)."""
    dim = 1 << n
    return Ensemble(n, tuple((1.0 / dim, basis_state(x, n)) for x in range(dim)))


def pure_ensemble(psi: StateVector) -> Ensemble:
    """Trivial single-component ensemble {(1, psi)}."""
    return Ensemble(psi.n, ((1.0, psi),))
