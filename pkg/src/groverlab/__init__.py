"""groverlab: quantum-search simulation and prediction for mixed initial states.

Evolves pure states, ensembles and density matrices under the
(generalized) Grover iterate exactly, predicts the success-probability
sinusoid in closed form, and relates the speedup over classical search
to the von Neumann entropy of the initial state.
"""

from .backend import active_backend
from .errors import (ComputationError, DomainError, GroverLabError,
                     NoOscillationError, UnsupportedSpecError,
                     UselessInitialStateError)
from .grover import (IterateSpec, SuccessCurve, apply_iterate, evolve_density,
                     evolve_mixed, evolve_pure, generalized_iterate,
                     multi_angle_iterate, original_iterate)
from .linalg import (DenseOperator, DensityMatrix, StateVector, basis_state,
                     hadamard_all, hermitian_eigenvalues, load_operator,
                     phase_marked, random_unitary, reflect_about_state,
                     save_operator, uniform_state)
from .predictor import (MixedPrediction, SinusoidParams, UsefulnessRow,
                        angular_frequency, classical_expected_queries,
                        combine_ensemble, counterexample_cases,
                        entropy_usefulness_report, expected_total_queries,
                        extract_sinusoid, optimal_iterations, predict_mixed,
                        reduced_expected_queries, speedup_ratio,
                        validate_prediction)
from .states import (Ensemble, MMixSpec, PseudoPureSpec, ensemble_to_density,
                     epsilon_for_entropy, load_ensemble, m_mix,
                     maximally_mixed, pseudo_pure, pseudo_pure_entropy_approx,
                     pseudo_pure_entropy_exact, pure_ensemble, save_ensemble,
                     von_neumann_entropy)

__version__ = "0.1.0"
