"""Born-rule probability calculus.

Transition and outcome probabilities, collapse, sequential chains,
expectations, likelihood effects, generalized probability measures and
density-operator reconstruction from effect probabilities.

States are rays: two state vectors are the same state when their
transition probability is 1, never by componentwise comparison.
"""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass

import numpy as np

from . import tolerances as tol
from .errors import (
    DimensionMismatch,
    InconsistentSamples,
    InsufficientSpan,
    InvalidEffect,
    InvariantViolation,
    UnknownDataLabel,
    UnknownValue,
    ZeroProbabilityOutcome,
)
from .linalg import (
    DensityOperator,
    Effect,
    HermitianOperator,
    Projector,
    StateVector,
    matrix_of,
    spectral_function,
)
from .variables import DecisionVariable, round_value

__all__ = [
    "OutcomeDistribution",
    "LikelihoodTable",
    "GPMSample",
    "DensityReconstruction",
    "transition_probability",
    "event_probability",
    "collapse_onto",
    "collapse",
    "outcome_distribution",
    "sequential_probability",
    "sequential_event_probability",
    "expectation",
    "expectation_of_function",
    "likelihood_effect",
    "gpm_evaluate",
    "ic_effect_basis",
    "reconstruct_density",
]

State = StateVector | DensityOperator


def _state_dim(state: State) -> int:
    return state.dim


def _check_dims(state_dim: int, other_dim: int) -> None:
    if state_dim != other_dim:
        raise DimensionMismatch(f"dimensions differ: {state_dim} vs {other_dim}")


def transition_probability(from_state: StateVector, to_state: StateVector) -> float:
    """Born's formula, simple version: |<from|to>|^2."""
    p = abs(from_state.inner(to_state)) ** 2
    return min(float(p), 1.0)


def event_probability(state: State, projector: Projector | Effect) -> float:
    """Probability of the event carried by a projector (or effect).

    ``<psi|M|psi>`` for a vector state (equal to ``||P psi||^2`` when M is
    a projector), ``trace(rho M)`` for a density.
    """
    m = projector.matrix
    if isinstance(state, StateVector):
        _check_dims(state.dim, m.shape[0])
        return float(np.vdot(state.amplitudes, m @ state.amplitudes).real)
    _check_dims(state.dim, m.shape[0])
    return float(np.trace(state.matrix @ m).real)


def collapse_onto(
    state: StateVector,
    projector: Projector,
    *,
    zero_prob_tol: float = tol.ZERO_PROB_TOL,
) -> StateVector:
    """Post-measurement state P psi / ||P psi|| after the event occurred."""
    _check_dims(state.dim, projector.dim)
    phi = projector.matrix @ state.amplitudes
    p = float(np.linalg.norm(phi) ** 2)
    if p <= zero_prob_tol:
        raise ZeroProbabilityOutcome(
            f"cannot condition on an outcome of probability {p:.3e}"
        )
    return StateVector(phi / np.sqrt(p))


def collapse(
    state: StateVector,
    v: DecisionVariable,
    value: float,
    *,
    zero_prob_tol: float = tol.ZERO_PROB_TOL,
) -> StateVector:
    """State after a perfect measurement of ``v`` returned ``value``."""
    return collapse_onto(state, v.projector_for(value), zero_prob_tol=zero_prob_tol)


@dataclass(frozen=True)
class OutcomeDistribution:
    """Values with their Born probabilities; sums to one."""

    values: tuple[float, ...]
    probabilities: tuple[float, ...]

    def __post_init__(self):
        probs = np.asarray(self.probabilities)
        if len(self.values) != probs.size:
            raise DimensionMismatch("values and probabilities differ in length")
        if probs.size and float(probs.min()) < -tol.PROB_FLOOR:
            raise InvariantViolation(f"negative probability {float(probs.min()):.3e}")
        total = float(probs.sum())
        if abs(total - 1.0) > tol.PROB_SUM_TOL:
            raise InvariantViolation(f"probabilities sum to {total!r}, expected 1")

    def probability_of(self, value: float) -> float:
        key = round_value(value)
        for u, p in zip(self.values, self.probabilities):
            if round_value(u) == key:
                return p
        raise UnknownValue(f"{value!r} is not among the outcome values")


def outcome_distribution(state: State, v: DecisionVariable) -> OutcomeDistribution:
    """Born probabilities of every value of ``v`` in the given state."""
    _check_dims(_state_dim(state), v.dim)
    probs = [event_probability(state, p) for p in v.eigenprojectors]
    return OutcomeDistribution(v.values, tuple(probs))


def sequential_event_probability(state: StateVector, projectors: Sequence[Projector]) -> float:
    """Probability of an ordered chain of events: ||P_n ... P_1 psi||^2.

    Zero is a valid result here (the chain simply never happens); only
    explicit conditioning on a null event is an error, and that lives in
    ``collapse``.
    """
    phi = state.amplitudes
    for p in projectors:
        _check_dims(phi.size, p.dim)
        phi = p.matrix @ phi
    return float(np.linalg.norm(phi) ** 2)


def sequential_probability(
    state: StateVector,
    steps: Sequence[tuple[DecisionVariable, float]],
) -> float:
    """Probability that measuring each variable in order gives each value."""
    projectors = [v.projector_for(value) for v, value in steps]
    return sequential_event_probability(state, projectors)


def expectation(state: State, v: DecisionVariable) -> float:
    """Expected value <psi|A|psi> or trace(rho A) of a perfect measurement."""
    a = v.operator.matrix
    if isinstance(state, StateVector):
        _check_dims(state.dim, v.dim)
        return float(np.vdot(state.amplitudes, a @ state.amplitudes).real)
    _check_dims(state.dim, v.dim)
    return float(np.trace(state.matrix @ a).real)


def expectation_of_function(state: State, v: DecisionVariable, f) -> float:
    """Expected value of f(v): trace(rho f(A)), computed through the spectrum."""
    fa = spectral_function(v.operator, f).matrix
    if isinstance(state, StateVector):
        _check_dims(state.dim, v.dim)
        return float(np.vdot(state.amplitudes, fa @ state.amplitudes).real)
    _check_dims(state.dim, v.dim)
    return float(np.trace(state.matrix @ fa).real)


class LikelihoodTable:
    """Per-value likelihoods p(z | v = u_j) for a finite set of data labels.

    ``entries`` maps each data label to a sequence of probabilities, one per
    value of the variable, in value order. For every value the label
    probabilities must sum to one.
    """

    def __init__(
        self,
        variable: DecisionVariable,
        entries: Mapping[str, Sequence[float]],
        *,
        row_tol: float = tol.LIKELIHOOD_ROW_TOL,
    ):
        m = len(variable.values)
        table: dict[str, np.ndarray] = {}
        for label, row in entries.items():
            arr = np.asarray(row, dtype=float)
            if arr.size != m:
                raise DimensionMismatch(
                    f"label {label!r} has {arr.size} entries, expected {m}"
                )
            if float(arr.min()) < 0.0 or float(arr.max()) > 1.0:
                raise InvariantViolation(
                    f"label {label!r} has likelihoods outside [0, 1]"
                )
            arr.setflags(write=False)
            table[str(label)] = arr
        if not table:
            raise InvariantViolation("likelihood table has no data labels")
        col_sums = np.sum(list(table.values()), axis=0)
        if float(np.abs(col_sums - 1.0).max()) > row_tol:
            raise InvariantViolation(
                f"likelihoods must sum to 1 over labels for every value, got {col_sums}"
            )
        self.variable = variable
        self.entries = table

    @property
    def data_values(self) -> tuple[str, ...]:
        return tuple(self.entries)


def likelihood_effect(table: LikelihoodTable, z: str) -> Effect:
    """Evidence from observing ``z``, packaged as the effect sum_j p(z|u_j) P_j."""
    try:
        row = table.entries[str(z)]
    except KeyError:
        raise UnknownDataLabel(
            f"{z!r} is not a data label of the table (labels: {list(table.entries)})"
        ) from None
    out = sum(
        p * proj.matrix for p, proj in zip(row, table.variable.eigenprojectors)
    )
    return Effect((out + out.conj().T) / 2.0)


def _as_effect(f) -> Effect:
    if isinstance(f, Effect):
        return f
    try:
        return Effect(matrix_of(f))
    except InvalidEffect:
        raise
    except InvariantViolation as exc:
        raise InvalidEffect(str(exc)) from exc


def gpm_evaluate(rho: DensityOperator, f) -> float:
    """Generalized probability measure: trace(rho F) for an effect F."""
    eff = _as_effect(f)
    _check_dims(rho.dim, eff.dim)
    return float(np.trace(rho.matrix @ eff.matrix).real)


@dataclass(frozen=True)
class GPMSample:
    """One observed effect probability."""

    effect: Effect
    probability: float

    def __post_init__(self):
        if not -tol.PROB_FLOOR <= self.probability <= 1.0 + tol.PROB_FLOOR:
            raise InvariantViolation(
                f"sample probability {self.probability!r} outside [0, 1]"
            )


def ic_effect_basis(r: int) -> list[Effect]:
    """Informationally complete family of r^2 rank-one projector effects.

    Projectors onto e_j, onto (e_j + e_k)/sqrt(2) and onto (e_j + i e_k)/sqrt(2)
    for j < k. Linearly independent as Hermitian matrices, so exact
    probabilities on this family determine the density operator.
    """
    if r < 2:
        raise DimensionMismatch(f"informational completeness needs dimension >= 2, got {r}")
    eye = np.eye(r, dtype=complex)
    effects = [Effect(np.outer(eye[:, j], eye[:, j].conj())) for j in range(r)]
    for j in range(r):
        for k in range(j + 1, r):
            for phase in (1.0, 1.0j):
                v = (eye[:, j] + phase * eye[:, k]) / np.sqrt(2.0)
                effects.append(Effect(np.outer(v, v.conj())))
    return effects


def _hermitian_coords(m: np.ndarray, r: int) -> np.ndarray:
    """Coefficients of trace(rho M) against the real Hermitian parameters."""
    row = [m[i, i].real for i in range(r)]
    for i in range(r):
        for j in range(i + 1, r):
            row.append(2.0 * m[i, j].real)
            row.append(2.0 * m[i, j].imag)
    return np.array(row)


def _hermitian_from_coords(x: np.ndarray, r: int) -> np.ndarray:
    out = np.zeros((r, r), dtype=complex)
    for i in range(r):
        out[i, i] = x[i]
    idx = r
    for i in range(r):
        for j in range(i + 1, r):
            out[i, j] = x[idx] + 1j * x[idx + 1]
            out[j, i] = x[idx] - 1j * x[idx + 1]
            idx += 2
    return out


@dataclass(frozen=True)
class DensityReconstruction:
    """Result of a density reconstruction.

    ``clipped`` reports whether the least-squares minimizer had to be
    projected back to the positive cone; ``min_eigenvalue`` is the smallest
    eigenvalue of the raw minimizer before any clipping.
    """

    rho: DensityOperator
    residual: float
    clipped: bool
    min_eigenvalue: float


def reconstruct_density(
    samples: Sequence[GPMSample],
    *,
    noise_bound: float = tol.NOISE_BOUND,
    clip_tol: float = tol.PSD_CLIP_TOL,
) -> DensityReconstruction:
    """Least-squares inversion of effect probabilities to a density operator.

    Solves ``min_rho sum_i (trace(rho F_i) - mu_i)^2`` over Hermitian
    matrices with the trace pinned to 1 by a linear constraint (KKT system).
    If the minimizer has eigenvalues below ``-clip_tol`` it is projected to
    the positive cone by eigenvalue clipping plus trace renormalization and
    the adjustment is reported on the result.

    Raises:
        InsufficientSpan: the effects do not span the Hermitian space.
        InconsistentSamples: the residual exceeds ``noise_bound``.
    """
    if not samples:
        raise InsufficientSpan("no samples given")
    r = samples[0].effect.dim
    for s in samples:
        _check_dims(r, s.effect.dim)

    design = np.array([_hermitian_coords(s.effect.matrix, r) for s in samples])
    mu = np.array([s.probability for s in samples])
    n_params = r * r
    if np.linalg.matrix_rank(design) < n_params:
        raise InsufficientSpan(
            f"effects span only {np.linalg.matrix_rank(design)} of {n_params} Hermitian dimensions"
        )

    # trace(rho) = sum of the r diagonal parameters
    constraint = np.concatenate([np.ones(r), np.zeros(n_params - r)])
    gram = design.T @ design
    kkt = np.block([
        [2.0 * gram, constraint[:, None]],
        [constraint[None, :], np.zeros((1, 1))],
    ])
    rhs = np.concatenate([2.0 * design.T @ mu, [1.0]])
    solution = np.linalg.solve(kkt, rhs)
    raw = _hermitian_from_coords(solution[:n_params], r)

    residual = float(np.linalg.norm(design @ solution[:n_params] - mu))
    if residual > noise_bound:
        raise InconsistentSamples(
            f"least-squares residual {residual:.3e} exceeds noise bound {noise_bound:.1e}"
        )

    w, v = np.linalg.eigh(raw)
    min_eig = float(w.min())
    clipped = min_eig < -clip_tol
    if min_eig < -tol.DENSITY_EIG_FLOOR:
        # clip below the density validity floor as well, but only eigenvalues
        # past clip_tol count as a reported adjustment
        w = np.clip(w, 0.0, None)
        w = w / w.sum()
        raw = (v * w) @ v.conj().T
        raw = (raw + raw.conj().T) / 2.0
    rho = DensityOperator(raw)
    return DensityReconstruction(rho=rho, residual=residual, clipped=clipped, min_eigenvalue=min_eig)
