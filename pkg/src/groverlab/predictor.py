"""Closed-form analytics for the success-probability sinusoid.

For a single-axis iterate the success probability follows
P(t) = mean - amplitude * cos(2 omega t + 2 phase), with the angular
frequency omega fixed by the iterate alone.  This module extracts the
per-component parameters numerically (exact 3-point solve with a
least-squares fallback), combines ensemble components as rotating
vectors, and derives the optimal stopping time, the repeat-until-success
query cost, and the quantum/classical speedup ratio.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .backend import kernels
from .errors import (DomainError, NoOscillationError, UnsupportedSpecError,
                     UselessInitialStateError)
from .grover import HADAMARD, IterateSpec, _evolve_probs, original_iterate
from .linalg import StateVector, basis_state, hadamard_all, uniform_state
from .states import (Ensemble, MMixSpec, PseudoPureSpec, epsilon_for_entropy,
                     m_mix, pseudo_pure, pure_ensemble, von_neumann_entropy)
from .tolerances import MAX_HORIZON, TOL

# Residual windows cover ~2 oscillation periods but never exceed this.
_MAX_FIT_WINDOW = 65536
_MIN_LSQ_POINTS = 16
_OMEGA_FLOOR = 1e-9


@dataclass(frozen=True)
class SinusoidParams:
    """Mean, amplitude, phase and angular frequency of one success curve.

    ``fit_residual`` is the largest deviation between the fitted sinusoid
    and the simulated curve over the check window (zero when the model is
    exact).
    """

    mean: float
    amplitude: float
    phase: float
    omega: float
    fit_residual: float = 0.0

    def __post_init__(self):
        if self.amplitude < 0:
            raise DomainError("amplitude must be >= 0")
        if self.mean - self.amplitude < -1e-8 or self.mean + self.amplitude > 1 + 1e-8:
            raise DomainError(
                f"sinusoid leaves [0, 1]: mean={self.mean}, amplitude={self.amplitude}")
        if not (-math.pi / 2 - 1e-12 < self.phase <= math.pi / 2 + 1e-12):
            raise DomainError(f"phase {self.phase} outside (-pi/2, pi/2]")

    def value(self, t):
        """Predicted success probability after t iterations."""
        return self.mean - self.amplitude * np.cos(
            2.0 * self.omega * np.asarray(t, dtype=np.float64) + 2.0 * self.phase)


@dataclass(frozen=True)
class MixedPrediction:
    """Combined sinusoid of an ensemble plus derived cost figures.

    Query-cost fields are None until filled in by the corresponding
    operations (predict_mixed populates everything).
    """

    mean: float
    amplitude: float
    phase: float
    omega: float
    p_max: float
    t_real: float | None = None
    t_star: int | None = None
    t_q: float | None = None
    t_q_reduced: float | None = None
    t_c: float | None = None
    speedup: float | None = None
    advantage: bool | None = None

    def __post_init__(self):
        if abs(self.p_max - (self.mean + self.amplitude)) > 1e-12:
            raise DomainError("p_max must equal mean + amplitude")
        if self.p_max < -1e-12 or self.p_max > 1 + 1e-8:
            raise DomainError(f"p_max {self.p_max} outside [0, 1]")
        if self.t_q is not None and self.t_q < 0:
            raise DomainError("t_q must be nonnegative")

    def value(self, t):
        """Predicted combined success probability after t iterations."""
        return self.mean - self.amplitude * np.cos(
            2.0 * self.omega * np.asarray(t, dtype=np.float64) + 2.0 * self.phase)


def angular_frequency(spec: IterateSpec) -> float:
    """Angular frequency of the success sinusoid; independent of the state.

    cos omega weighs cos((beta+gamma)/2) by the marked-state mass of the
    rotated axis image and cos((beta-gamma)/2) by the rest.
    """
    _require_single_axis(spec)
    axis, beta = spec.axes[0]
    image = axis.amps.copy()
    if spec.unitary == HADAMARD:
        kernels.hadamard_all(image)
    elif spec.unitary != "identity":
        image = spec.unitary.apply(image)
    weights = np.abs(image) ** 2
    marked_mass = float(weights[list(spec.marked)].sum())
    # the unmarked mass is 1 - marked_mass since U|s> is a unit vector
    unmarked_cos = math.cos((beta - spec.gamma) / 2.0)
    cos_w = unmarked_cos + marked_mass * (
        math.cos((beta + spec.gamma) / 2.0) - unmarked_cos)
    return math.acos(min(1.0, max(-1.0, cos_w)))


def _require_single_axis(spec: IterateSpec) -> None:
    if not spec.single_axis:
        raise UnsupportedSpecError(
            "multi-axis iterates are simulation-only; no closed form is available")


def _normalize_two_phi(x: float) -> float:
    y = math.remainder(x, 2.0 * math.pi)
    if y <= -math.pi:
        y += 2.0 * math.pi
    return y


def _fit_window(omega: float) -> int:
    """Sample count for the residual check: about two periods."""
    if omega < _OMEGA_FLOOR:
        return _MIN_LSQ_POINTS
    return min(int(math.ceil(4.0 * math.pi / omega)), _MAX_FIT_WINDOW)


def _omega_degenerate(omega: float) -> bool:
    k = round(omega / (math.pi / 2.0))
    return abs(omega - k * math.pi / 2.0) < TOL.omega_degenerate


def _fit_curves(probs: np.ndarray, omega: float) -> list[SinusoidParams]:
    """Fit every column of a (T+1, K) probability table at one frequency.

    Solves P(t) = mean - C cos(2wt) - S sin(2wt) from the first three
    samples (C = amp cos(2 phi), S = -amp sin(2 phi)); any column whose
    residual over the window exceeds the acceptance bound, and every
    column when omega sits near a multiple of pi/2 (singular 3-point
    system), is refit by least squares over the full window.
    """
    t = np.arange(probs.shape[0], dtype=np.float64)
    if omega < _OMEGA_FLOOR:
        mean = probs.mean(axis=0)
        resid = np.abs(probs - mean[None, :]).max(axis=0)
        return [SinusoidParams(float(m), 0.0, 0.0, omega, float(r))
                for m, r in zip(mean, resid)]
    design = np.column_stack(
        [np.ones_like(t), -np.cos(2.0 * omega * t), -np.sin(2.0 * omega * t)])
    if _omega_degenerate(omega):
        coef = np.linalg.lstsq(design, probs, rcond=None)[0]
    else:
        coef = np.linalg.solve(design[:3], probs[:3])
        resid = np.abs(design @ coef - probs).max(axis=0)
        bad = resid > TOL.fit_residual
        if np.any(bad):
            coef[:, bad] = np.linalg.lstsq(design, probs[:, bad], rcond=None)[0]
    resid = np.abs(design @ coef - probs).max(axis=0)
    out = []
    for (mean, c, s), r in zip(coef.T, resid):
        amp = math.hypot(c, s)
        two_phi = _normalize_two_phi(math.atan2(-s, c)) if amp > 0 else 0.0
        out.append(SinusoidParams(float(mean), float(amp), two_phi / 2.0,
                                  omega, float(r)))
    return out


def extract_sinusoid(spec: IterateSpec, init: StateVector) -> SinusoidParams:
    """Sinusoid parameters of the success curve started from a pure state."""
    _require_single_axis(spec)
    if init.n != spec.n:
        raise DomainError("state dimension does not match iterate")
    omega = angular_frequency(spec)
    probs = _evolve_probs(spec, init.amps, _fit_window(omega))
    return _fit_curves(probs, omega)[0]


def combine_ensemble(components) -> MixedPrediction:
    """Combine per-component sinusoids into the ensemble prediction.

    The oscillating parts add like projections of rotating vectors: the
    combined amplitude is the length of the probability-weighted vector
    sum and the combined phase its direction (two-argument arctangent,
    which fixes the quadrant).  Zero-amplitude components contribute the
    zero vector.
    """
    comps = list(components)
    if not comps:
        raise DomainError("nothing to combine")
    p = np.array([float(w) for w, _ in comps])
    if abs(p.sum() - 1.0) > TOL.prob_sum:
        raise DomainError(f"weights sum to {p.sum()!r}, not 1")
    if p.min() < 0:
        raise DomainError("negative weight")
    omegas = np.array([s.omega for _, s in comps])
    if omegas.max() - omegas.min() > TOL.omega_match:
        raise DomainError("components disagree on the angular frequency")
    omega = float(omegas[0])
    mean = float(p @ np.array([s.mean for _, s in comps]))
    amps = np.array([s.amplitude for _, s in comps])
    two_phi_each = 2.0 * np.array([s.phase for _, s in comps])
    x = float(p @ (amps * np.cos(two_phi_each)))
    y = float(p @ (amps * np.sin(two_phi_each)))
    amplitude = math.hypot(x, y)
    two_phi = _normalize_two_phi(math.atan2(y, x)) if amplitude > 0 else 0.0
    t_real = None
    if omega > 0:
        t_real = (math.pi - two_phi) / (2.0 * omega)
    return MixedPrediction(mean=mean, amplitude=amplitude, phase=two_phi / 2.0,
                           omega=omega, p_max=mean + amplitude, t_real=t_real)


def optimal_iterations(pred: MixedPrediction) -> tuple[float, int]:
    """Real first-maximum time (pi - 2 phase) / (2 omega) and its best
    integer neighbor (ties toward the smaller count)."""
    if pred.omega <= 0:
        raise NoOscillationError("zero angular frequency; the curve never peaks")
    t_real = (math.pi - 2.0 * pred.phase) / (2.0 * pred.omega)
    lo = max(int(math.floor(t_real)), 0)
    hi = int(math.ceil(t_real))
    if hi == lo or pred.value(hi) <= pred.value(lo):
        return t_real, lo
    return t_real, hi


def expected_total_queries(pred: MixedPrediction) -> float:
    """Expected queries under repeat-until-success with t_real per attempt.

    The attempt count is geometric with the peak probability as its
    parameter, so the cost is t_real / p_max.
    """
    t_real, _ = optimal_iterations(pred)
    if pred.p_max <= TOL.p_max_useless:
        raise UselessInitialStateError(
            "success probability never leaves zero; the search cannot succeed")
    return t_real / pred.p_max


def reduced_expected_queries(pred: MixedPrediction, dim: int) -> float:
    """sqrt(N) form of the expected query count, (pi - 2 phase) sqrt(N) / (4 p_max).

    Valid for the textbook iterate with a single marked state, where the
    frequency is approximately 2/sqrt(N).
    """
    if pred.p_max <= TOL.p_max_useless:
        raise UselessInitialStateError(
            "success probability never leaves zero; the search cannot succeed")
    return (math.pi - 2.0 * pred.phase) * math.sqrt(dim) / (4.0 * pred.p_max)


def classical_expected_queries(dim: int, marked_count: int) -> float:
    """Expected classical queries: N/2 for one target, else exact uniform
    search without replacement, (N+1)/(|M|+1)."""
    if marked_count < 1 or marked_count > dim:
        raise DomainError("marked count outside [1, N]")
    if marked_count == 1:
        return dim / 2.0
    return (dim + 1.0) / (marked_count + 1.0)


def speedup_ratio(pred: MixedPrediction, dim: int,
                  marked_count: int) -> tuple[float, bool]:
    """Classical-to-quantum query ratio and whether it exceeds one.

    A zero quantum cost (the curve peaks at t = 0) counts as an infinite
    speedup.
    """
    t_c = classical_expected_queries(dim, marked_count)
    t_q = expected_total_queries(pred)
    ratio = t_c / t_q if t_q > 0 else math.inf
    return ratio, ratio > 1.0


def _is_textbook_form(spec: IterateSpec) -> bool:
    if spec.unitary != HADAMARD or not spec.single_axis or len(spec.marked) != 1:
        return False
    axis, beta = spec.axes[0]
    if abs(beta - math.pi) > 1e-12 or abs(spec.gamma - math.pi) > 1e-12:
        return False
    zero = np.zeros(axis.dim)
    zero[0] = 1.0
    return bool(np.max(np.abs(axis.amps - zero)) <= 1e-12)


def predict_mixed(spec: IterateSpec, init: Ensemble) -> MixedPrediction:
    """Full prediction pipeline for an ensemble initial state.

    Extracts one sinusoid per component (batched over one evolution),
    combines them, and fills in stopping time, query costs and the
    speedup ratio.
    """
    pred = _predict_sinusoid(spec, init)
    t_real, t_star = optimal_iterations(pred)
    t_q = expected_total_queries(pred)
    dim = 1 << spec.n
    t_q_reduced = reduced_expected_queries(pred, dim) if _is_textbook_form(spec) else None
    t_c = classical_expected_queries(dim, len(spec.marked))
    ratio, adv = speedup_ratio(pred, dim, len(spec.marked))
    return replace(pred, t_real=t_real, t_star=t_star, t_q=t_q,
                   t_q_reduced=t_q_reduced, t_c=t_c, speedup=ratio, advantage=adv)


def _predict_sinusoid(spec: IterateSpec, init: Ensemble) -> MixedPrediction:
    _require_single_axis(spec)
    if init.n != spec.n:
        raise DomainError("ensemble dimension does not match iterate")
    omega = angular_frequency(spec)
    probs = _evolve_probs(spec, init.state_matrix(), _fit_window(omega))
    params = _fit_curves(probs, omega)
    return combine_ensemble(list(zip(init.probabilities, params)))


def validate_prediction(spec: IterateSpec, init: Ensemble, horizon: int) -> float:
    """Largest |predicted - simulated| success probability up to the horizon.

    The simulated reference is the component-weighted curve of
    :func:`evolve_mixed`; one evolution covers both the fit window and
    the comparison range.
    """
    horizon = int(horizon)
    if not 0 <= horizon <= MAX_HORIZON:
        raise DomainError(f"horizon {horizon} outside [0, {MAX_HORIZON}]")
    _require_single_axis(spec)
    if init.n != spec.n:
        raise DomainError("ensemble dimension does not match iterate")
    omega = angular_frequency(spec)
    window = _fit_window(omega)
    probs = _evolve_probs(spec, init.state_matrix(), max(window, horizon))
    params = _fit_curves(probs[:window + 1], omega)
    pred = combine_ensemble(list(zip(init.probabilities, params)))
    oracle = probs[:horizon + 1] @ init.probabilities
    t = np.arange(horizon + 1, dtype=np.float64)
    return float(np.max(np.abs(pred.value(t) - oracle)))


@dataclass(frozen=True)
class UsefulnessRow:
    """One line of the entropy-versus-usefulness table."""

    label: str
    entropy_bits: float | None = None
    mean: float | None = None
    amplitude: float | None = None
    phase: float | None = None
    p_max: float | None = None
    speedup: float | None = None
    advantage: bool | None = None
    error: str | None = None


def entropy_usefulness_report(cases) -> list[UsefulnessRow]:
    """Entropy next to predicted performance, one row per (ensemble, iterate).

    Cases are (ensemble, iterate) pairs or (label, ensemble, iterate)
    triples; per-case failures land in the row's error field instead of
    aborting the table.
    """
    rows = []
    for idx, case in enumerate(cases):
        if len(case) == 3:
            label, ensemble, spec = case
        else:
            ensemble, spec = case
            label = f"case-{idx}"
        try:
            entropy = von_neumann_entropy(ensemble)
            pred = predict_mixed(spec, ensemble)
            rows.append(UsefulnessRow(
                label=label, entropy_bits=entropy, mean=pred.mean,
                amplitude=pred.amplitude, phase=pred.phase, p_max=pred.p_max,
                speedup=pred.speedup, advantage=pred.advantage))
        except Exception as exc:
            rows.append(UsefulnessRow(label=label, error=f"{type(exc).__name__}: {exc}"))
    return rows


def counterexample_cases(n: int, marked) -> list[tuple[str, Ensemble, IterateSpec]]:
    """The two flagship equal-entropy comparisons, as named scenarios.

    Pair one: a pseudo-pure state whose purity is solved so its entropy
    equals n-1 bits exactly, against the (n-1)-mix state of the same
    entropy; the first keeps a quantum advantage, the second is as good
    as guessing.  Pair two: the uniform start against the uniform start
    built over |1>, both pure (entropy zero) with opposite usefulness.
    """
    spec = original_iterate(n, marked)
    dim = 1 << n
    eps = epsilon_for_entropy(dim, n - 1.0)
    return [
        ("pseudo-pure-entropy-matched",
         pseudo_pure(PseudoPureSpec(n, eps, uniform_state(n))), spec),
        ("m-mix-n-minus-1", m_mix(MMixSpec(n, n - 1)), spec),
        ("uniform-start", pure_ensemble(uniform_state(n)), spec),
        ("shifted-uniform-start",
         pure_ensemble(hadamard_all(basis_state(1, n))), spec),
    ]
