"""All numerical tolerance constants, centralized in one record."""

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    unit_norm: float = 1e-10        # operators must preserve norm to this
    state_norm_gate: float = 1e-6   # acceptance gate for stored state vectors
    axis_norm: float = 1e-8         # reflection axes must be unit to this
    axis_orthogonal: float = 1e-8   # pairwise overlap bound for multi-axis specs
    hermitian: float = 1e-10        # density-matrix Hermiticity
    hermitian_eig: float = 1e-8     # eigensolver input gate
    trace_one: float = 1e-10
    psd_slack: float = 1e-10        # eigenvalues may dip to -psd_slack
    unitary: float = 1e-10          # max |U^dag U - I| for flagged unitaries
    prob_sum: float = 1e-10         # ensemble probabilities sum to one
    completion_skip: float = 1e-8   # Gram-Schmidt residual cutoff
    eig_clamp: float = 1e-10        # clamp window for entropy eigenvalues
    omega_match: float = 1e-10      # shared-frequency gate when combining
    omega_degenerate: float = 1e-6  # distance from k*pi/2 that poisons the 3-point solve
    fit_residual: float = 1e-6      # 3-point fit acceptance over the check window
    p_max_useless: float = 1e-12    # below this the search never succeeds
    curve_slack: float = 1e-10      # probabilities live in [-slack, 1+slack]


TOL = Tolerances()

# Hard cap on iteration counts; curves beyond this are refused.
MAX_HORIZON = 10 ** 6

# Dense operators, density matrices and full-basis ensembles are refused
# above this register size (memory/runtime envelope).
DENSE_MAX_QUBITS = 10
ENSEMBLE_MAX_QUBITS = 12
