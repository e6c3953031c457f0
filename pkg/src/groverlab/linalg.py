"""Complex linear-algebra substrate: states, operators, density matrices.

Values are immutable once constructed (backing arrays are marked
read-only), so they are safe to share across threads.  All operations are
pure functions returning new values; reflections and selective phases are
applied in structured O(N) form and are never materialized as matrices.

Basis labeling: index x is the integer whose binary representation gives
the qubit values, most significant qubit first.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field

import numpy as np

from .backend import kernels
from .errors import DomainError
from .tolerances import DENSE_MAX_QUBITS, TOL


def _frozen_complex(data, shape) -> np.ndarray:
    arr = np.array(data, dtype=np.complex128, order="C")
    if arr.shape != shape:
        raise DomainError(f"expected array of shape {shape}, got {arr.shape}")
    if not np.all(np.isfinite(arr.view(np.float64))):
        raise DomainError("non-finite amplitude")
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class StateVector:
    """Pure state of n qubits: 2**n complex amplitudes, unit norm."""

    n: int
    amps: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.n < 0:
            raise DomainError("qubit count must be nonnegative")
        arr = _frozen_complex(self.amps, (1 << self.n,))
        object.__setattr__(self, "amps", arr)
        if abs(self.norm() - 1.0) > TOL.state_norm_gate:
            raise DomainError(f"state norm {self.norm():.3g} is not 1")

    @property
    def dim(self) -> int:
        return 1 << self.n

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def normalized(self) -> "StateVector":
        return StateVector(self.n, self.amps / self.norm())

    def inner(self, other: "StateVector") -> complex:
        """<self|other>."""
        return complex(np.vdot(self.amps, other.amps))


@dataclass(frozen=True)
class DenseOperator:
    """Dense complex matrix; validated as unitary when ``unitary`` is set."""

    dim: int
    entries: np.ndarray = field(repr=False)
    unitary: bool = True

    def __post_init__(self):
        arr = _frozen_complex(self.entries, (self.dim, self.dim))
        object.__setattr__(self, "entries", arr)
        if self.unitary:
            dev = np.max(np.abs(arr.conj().T @ arr - np.eye(self.dim)))
            if dev > TOL.unitary:
                raise DomainError(f"matrix is not unitary (deviation {dev:.3g})")

    def apply(self, work: np.ndarray, adjoint: bool = False) -> np.ndarray:
        """Matrix-vector or matrix-matrix product; returns a new array."""
        mat = self.entries.conj().T if adjoint else self.entries
        return np.ascontiguousarray(mat @ work.reshape(self.dim, -1)).reshape(work.shape)


@dataclass(frozen=True)
class DensityMatrix:
    """Trace-1 Hermitian positive-semidefinite matrix."""

    dim: int
    entries: np.ndarray = field(repr=False)

    def __post_init__(self):
        arr = _frozen_complex(self.entries, (self.dim, self.dim))
        object.__setattr__(self, "entries", arr)
        herm = np.max(np.abs(arr - arr.conj().T))
        if herm > TOL.hermitian:
            raise DomainError(f"density matrix not Hermitian (deviation {herm:.3g})")
        tr = complex(np.trace(arr))
        if abs(tr - 1.0) > TOL.trace_one:
            raise DomainError(f"density matrix trace {tr:.6g} is not 1")

    def eigenvalues(self) -> np.ndarray:
        return hermitian_eigenvalues(self)

    def validate_psd(self) -> None:
        """Full positive-semidefiniteness check (O(N^3), used by tests)."""
        lo = float(self.eigenvalues()[-1])
        if lo < -TOL.psd_slack:
            raise DomainError(f"negative eigenvalue {lo:.3g}")


def basis_state(x: int, n: int) -> StateVector:
    """Computational basis state |x> on n qubits."""
    if not 0 <= x < (1 << n):
        raise DomainError(f"basis label {x} out of range for {n} qubits")
    amps = np.zeros(1 << n, dtype=np.complex128)
    amps[x] = 1.0
    return StateVector(n, amps)


def uniform_state(n: int) -> StateVector:
    """The uniform superposition H|0> on n qubits."""
    dim = 1 << n
    return StateVector(n, np.full(dim, 1.0 / np.sqrt(dim), dtype=np.complex128))


def hadamard_all(state: StateVector) -> StateVector:
    """Apply the Hadamard transform to every qubit (O(N log N) butterfly)."""
    work = state.amps.copy()
    kernels.hadamard_all(work)
    return StateVector(state.n, work)


def reflect_about_state(state: StateVector, axis: StateVector,
                        angle: float) -> StateVector:
    """Rotate the component of ``state`` along ``axis`` by a phase.

    Returns psi + (e^{i angle} - 1) <axis|psi> axis in O(N); at angle pi
    this is the standard reflection I - 2|s><s|.
    """
    if state.n != axis.n:
        raise DomainError("state and axis dimensions differ")
    if abs(axis.norm() - 1.0) > TOL.axis_norm:
        raise DomainError(f"axis norm {axis.norm():.3g} is not 1")
    work = state.amps.copy()
    kernels.reflect(work, axis.amps, cmath.exp(1j * angle) - 1.0)
    return StateVector(state.n, work)


def phase_marked(state: StateVector, marked, gamma: float) -> StateVector:
    """Multiply the amplitudes of the marked basis labels by e^{i gamma}."""
    rows = marked_labels(marked, state.n)
    work = state.amps.copy()
    kernels.phase_rows(work, rows, cmath.exp(1j * gamma))
    return StateVector(state.n, work)


def marked_labels(marked, n: int) -> np.ndarray:
    """Validate a marked set and return it as a sorted int64 array."""
    rows = np.array(sorted(set(int(x) for x in marked)), dtype=np.int64)
    if rows.size and (rows[0] < 0 or rows[-1] >= (1 << n)):
        raise DomainError(f"marked label out of range for {n} qubits")
    return rows


def hermitian_eigenvalues(matrix) -> np.ndarray:
    """Real eigenvalues of a Hermitian matrix, descending."""
    arr = matrix.entries if isinstance(matrix, DensityMatrix) else np.asarray(
        matrix, dtype=np.complex128)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise DomainError("expected a square matrix")
    dev = np.max(np.abs(arr - arr.conj().T)) if arr.size else 0.0
    if dev > TOL.hermitian_eig:
        raise DomainError(f"matrix is not Hermitian (deviation {dev:.3g})")
    return np.linalg.eigvalsh(arr)[::-1]


def random_unitary(dim: int, seed: int) -> DenseOperator:
    """Haar-distributed unitary, deterministic for a fixed seed.

    QR factorization of a complex Ginibre matrix with the R-diagonal
    phases divided out.
    """
    if dim < 1:
        raise DomainError("dimension must be >= 1")
    if dim > (1 << DENSE_MAX_QUBITS):
        raise DomainError(f"dense unitaries limited to dim {1 << DENSE_MAX_QUBITS}")
    rng = np.random.default_rng(seed)
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim)))
    z /= np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    q = q * (d / np.abs(d))
    return DenseOperator(dim, q)


def save_operator(op: DenseOperator, path) -> None:
    """Write a dense operator: first line N, then N rows of 're,im' entries."""
    with open(path, "w") as fh:
        fh.write(f"{op.dim}\n")
        for row in op.entries:
            fh.write(" ".join(f"{z.real:.17g},{z.imag:.17g}" for z in row) + "\n")


def load_operator(path) -> DenseOperator:
    """Read the dense-operator text format; validates unitarity."""
    with open(path) as fh:
        tokens = fh.read().split()
    if not tokens:
        raise DomainError(f"{path}: empty operator file")
    try:
        dim = int(tokens[0])
        if len(tokens) != 1 + dim * dim:
            raise DomainError(
                f"{path}: expected {dim * dim} entries, got {len(tokens) - 1}")
        entries = np.array([_parse_complex(tok) for tok in tokens[1:]],
                           dtype=np.complex128).reshape(dim, dim)
    except ValueError as exc:
        raise DomainError(f"{path}: {exc}") from exc
    return DenseOperator(dim, entries)


def _parse_complex(token: str) -> complex:
    re_s, _, im_s = token.partition(",")
    if not im_s:
        raise ValueError(f"bad complex entry {token!r} (want 're,im')")
    return complex(float(re_s), float(im_s))
