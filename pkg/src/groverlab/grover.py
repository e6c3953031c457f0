"""Construction and exact application of the (generalized) search iterate.

The iterate is sign * U * R * U^dag * P, where P rotates the marked basis
labels by gamma, R rotates the component along each axis state by its
angle, and the leading sign (-1 for the textbook iterate) is kept as an
explicit scalar so every factor is individually testable.  Everything is
applied in structured form: O(N log N) for the all-qubit Hadamard, O(N)
per reflection and per phase; dense unitaries cost one matrix product.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .backend import kernels
from .errors import DomainError
from .linalg import DenseOperator, DensityMatrix, StateVector, basis_state, marked_labels
from .states import Ensemble
from .tolerances import DENSE_MAX_QUBITS, MAX_HORIZON, TOL

HADAMARD = "hadamard_all"
IDENTITY = "identity"


@dataclass(frozen=True)
class IterateSpec:
    """Full description of one search iterate.

    ``unitary`` is either a structured name ('hadamard_all', 'identity')
    or a DenseOperator; ``axes`` is a tuple of (state, angle) pairs, a
    singleton for the standard generalized form.  Multi-axis specs must
    have pairwise-orthogonal axes and are supported in simulation only.
    """

    n: int
    unitary: object
    axes: tuple
    marked: tuple
    gamma: float
    global_sign: float = -1.0

    def __post_init__(self):
        dim = 1 << self.n
        if isinstance(self.unitary, DenseOperator):
            if self.unitary.dim != dim:
                raise DomainError("unitary dimension does not match qubit count")
            if self.n > DENSE_MAX_QUBITS:
                raise DomainError(
                    f"dense unitaries limited to {DENSE_MAX_QUBITS} qubits")
        elif self.unitary not in (HADAMARD, IDENTITY):
            raise DomainError(f"unknown structured unitary {self.unitary!r}")
        axes = tuple((s, float(b)) for s, b in self.axes)
        object.__setattr__(self, "axes", axes)
        if not axes:
            raise DomainError("iterate needs at least one axis")
        for s, _ in axes:
            if s.n != self.n:
                raise DomainError("axis qubit count mismatch")
            if abs(s.norm() - 1.0) > TOL.axis_norm:
                raise DomainError("axis state is not normalized")
        for i in range(len(axes)):
            for j in range(i + 1, len(axes)):
                if abs(axes[i][0].inner(axes[j][0])) > TOL.axis_orthogonal:
                    raise DomainError("multi-axis states must be orthogonal")
        rows = marked_labels(self.marked, self.n)
        if rows.size == 0:
            raise DomainError("marked set must not be empty")
        object.__setattr__(self, "marked", tuple(int(x) for x in rows))

    @property
    def single_axis(self) -> bool:
        return len(self.axes) == 1


@dataclass(frozen=True)
class SuccessCurve:
    """Probability of measuring a marked state after t = 0..horizon iterations."""

    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        arr = np.array(self.values, dtype=np.float64)
        if arr.ndim != 1 or arr.size == 0:
            raise DomainError("curve must be a nonempty 1-d array")
        if arr.min() < -TOL.curve_slack or arr.max() > 1.0 + TOL.curve_slack:
            raise DomainError("curve values outside [0, 1]")
        arr.flags.writeable = False
        object.__setattr__(self, "values", arr)

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, idx):
        return self.values[idx]

    @property
    def horizon(self) -> int:
        return len(self.values) - 1


def original_iterate(n: int, marked) -> IterateSpec:
    """The textbook iterate: all-qubit Hadamards around a pi rotation of |0>,
    after a pi rotation of the marked labels."""
    return IterateSpec(n, HADAMARD, ((basis_state(0, n), math.pi),),
                       tuple(marked), math.pi)


def generalized_iterate(n: int, unitary, axis: StateVector, beta: float,
                        marked, gamma: float) -> IterateSpec:
    """Single-axis iterate with arbitrary unitary, axis and angles."""
    return IterateSpec(n, unitary, ((axis, beta),), tuple(marked), gamma)


def multi_angle_iterate(n: int, unitary, axes, marked,
                        gamma: float) -> IterateSpec:
    """Iterate whose rotation acts on a set of orthogonal axes, one angle each.

    Supported by the simulator only; the closed-form predictor refuses it.
    """
    return IterateSpec(n, unitary, tuple(axes), tuple(marked), gamma)


def _apply_unitary(spec: IterateSpec, work: np.ndarray, adjoint: bool) -> np.ndarray:
    if spec.unitary == HADAMARD:
        return kernels.hadamard_all(work)  # self-adjoint
    if spec.unitary == IDENTITY:
        return work
    out = spec.unitary.apply(work, adjoint=adjoint)
    work[...] = out
    return work


def _apply_inplace(spec: IterateSpec, work: np.ndarray,
                   rows: np.ndarray) -> np.ndarray:
    """One iterate applied to a (N,) state or the columns of a (N, K) matrix."""
    kernels.phase_rows(work, rows, cmath.exp(1j * spec.gamma))
    _apply_unitary(spec, work, adjoint=True)
    for axis, beta in spec.axes:
        kernels.reflect(work, axis.amps, cmath.exp(1j * beta) - 1.0)
    _apply_unitary(spec, work, adjoint=False)
    if spec.global_sign != 1.0:
        kernels.scale(work, complex(spec.global_sign))
    return work


def apply_iterate(spec: IterateSpec, state: StateVector) -> StateVector:
    """One application of the iterate to a pure state."""
    if state.n != spec.n:
        raise DomainError("state dimension does not match iterate")
    work = state.amps.copy()
    _apply_inplace(spec, work, np.array(spec.marked, dtype=np.int64))
    return StateVector(spec.n, work)


def _check_horizon(horizon: int) -> int:
    horizon = int(horizon)
    if horizon < 0:
        raise DomainError("horizon must be >= 0")
    if horizon > MAX_HORIZON:
        raise DomainError(f"horizon {horizon} exceeds the cap {MAX_HORIZON}")
    return horizon


def _evolve_probs(spec: IterateSpec, mat: np.ndarray, horizon: int) -> np.ndarray:
    """Marked-state probability per column for t = 0..horizon; shape (T+1, K)."""
    rows = np.array(spec.marked, dtype=np.int64)
    work = np.array(mat, dtype=np.complex128, order="C")
    probs = np.empty((horizon + 1, work.reshape(work.shape[0], -1).shape[1]))
    probs[0] = kernels.marked_prob(work, rows)
    for t in range(1, horizon + 1):
        _apply_inplace(spec, work, rows)
        probs[t] = kernels.marked_prob(work, rows)
    return probs


def evolve_pure(spec: IterateSpec, init: StateVector, horizon: int) -> SuccessCurve:
    """Success probability of repeated iteration from a pure state."""
    horizon = _check_horizon(horizon)
    if init.n != spec.n:
        raise DomainError("state dimension does not match iterate")
    return SuccessCurve(_evolve_probs(spec, init.amps, horizon)[:, 0])


def evolve_mixed(spec: IterateSpec, init: Ensemble, horizon: int) -> SuccessCurve:
    """Probability-weighted success curve of an ensemble.

    Each component evolves independently (columns of one batched matrix,
    same kernel sequence as :func:`apply_iterate`); the curve is the
    fixed-order probability-weighted sum.
    """
    horizon = _check_horizon(horizon)
    if init.n != spec.n:
        raise DomainError("ensemble dimension does not match iterate")
    probs = _evolve_probs(spec, init.state_matrix(), horizon)
    return SuccessCurve(probs @ init.probabilities)


def evolve_density(spec: IterateSpec, rho: DensityMatrix, horizon: int) -> SuccessCurve:
    """Success curve through the density-matrix route.

    Conjugates rho by the iterate each step and reads off the marked
    diagonal; an independent check on :func:`evolve_mixed`.
    """
    horizon = _check_horizon(horizon)
    if rho.dim != (1 << spec.n):
        raise DomainError("density matrix dimension does not match iterate")
    rows = np.array(spec.marked, dtype=np.int64)
    work = rho.entries.copy()
    values = np.empty(horizon + 1)
    values[0] = float(np.sum(work.real[rows, rows]))
    for t in range(1, horizon + 1):
        _apply_inplace(spec, work, rows)                    # Q rho
        work = np.ascontiguousarray(work.conj().T)
        _apply_inplace(spec, work, rows)                    # Q (Q rho)^dag
        work = np.ascontiguousarray(work.conj().T)          # Q rho Q^dag
        values[t] = float(np.sum(work.real[rows, rows]))
    return SuccessCurve(values)
