"""Planar hidden-direction spin model and its quantum counterpart.

A single inaccessible direction phi lives on the unit circle; the binary
spin answer along direction a is sign(cos(a - phi)). Sampling phi uniformly
reproduces the fair +1/-1 marginals of every direction, while the joint
behaviour of two directions differs from the Born-rule conditional; the
comparison report puts both side by side.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .engine import transition_probability
from .errors import DegenerateConditioning
from .linalg import StateVector

__all__ = [
    "Direction",
    "SpinComparison",
    "spin_component",
    "midline_reflection",
    "sample_phi",
    "classical_conditional",
    "classical_conditional_analytic",
    "quantum_conditional",
    "comparison_report",
    "angular_separation",
]

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class Direction:
    """Direction on the circle, normalized to [0, 2*pi)."""

    angle: float

    def __post_init__(self):
        object.__setattr__(self, "angle", float(self.angle) % TWO_PI)

    @classmethod
    def from_degrees(cls, degrees: float) -> "Direction":
        return cls(math.radians(degrees))


def _angle(d) -> float:
    return d.angle if isinstance(d, Direction) else float(d)


def angular_separation(a, b) -> float:
    """Separation of two directions in [0, pi]."""
    d = abs(_angle(a) - _angle(b)) % TWO_PI
    return min(d, TWO_PI - d)


def spin_component(a, phi):
    """sign(cos(a - phi)) with the tie cos = 0 resolved to +1.

    Accepts a scalar phi or an array of phi samples.
    """
    c = np.cos(_angle(a) - np.asarray(phi, dtype=float))
    out = np.where(c >= 0.0, 1, -1)
    return int(out) if out.ndim == 0 else out


def midline_reflection(phi, a, b):
    """Reflect phi about the midline of a and b: (a + b) - phi mod 2*pi.

    An involution that swaps the half-circles defining the two spin
    answers, so the b-answer at phi equals the a-answer at the reflection.
    """
    return ((_angle(a) + _angle(b)) - np.asarray(phi, dtype=float)) % TWO_PI


def sample_phi(n: int, seed: int, chunk_size: int | None = None) -> np.ndarray:
    """Deterministic pseudo-uniform samples of phi on [0, 2*pi).

    The seed is split into one independent child stream per chunk, so
    chunks can be generated in any order (or in parallel) and the result
    for a given (seed, n, chunk_size) triple is always the same. The
    default is a single chunk.
    """
    if n < 1:
        raise ValueError(f"need at least one sample, got {n}")
    if chunk_size is None:
        chunk_size = n
    if chunk_size < 1:
        raise ValueError(f"chunk_size must be positive, got {chunk_size}")
    n_chunks = -(-n // chunk_size)
    children = np.random.SeedSequence(seed).spawn(n_chunks)
    out = np.empty(n, dtype=float)
    for i, child in enumerate(children):
        lo = i * chunk_size
        hi = min(lo + chunk_size, n)
        out[lo:hi] = np.random.default_rng(child).uniform(0.0, TWO_PI, hi - lo)
    return out


def classical_conditional(a, b, n: int, seed: int) -> float:
    """Monte Carlo estimate of P(spin_b = +1 | spin_a = +1) under uniform phi."""
    phi = sample_phi(n, seed)
    plus_a = np.cos(_angle(a) - phi) >= 0.0
    count_a = int(plus_a.sum())
    if count_a == 0:
        raise DegenerateConditioning("no sample produced spin +1 along the first direction")
    plus_b = np.cos(_angle(b) - phi) >= 0.0
    return float(np.count_nonzero(plus_a & plus_b) / count_a)


def classical_conditional_analytic(a, b) -> float:
    """Exact half-circle overlap (pi - delta) / pi."""
    return (math.pi - angular_separation(a, b)) / math.pi


def _spin_up_state(direction) -> StateVector:
    half = _angle(direction) / 2.0
    return StateVector([math.cos(half), math.sin(half)])


def quantum_conditional(a, b) -> float:
    """Born conditional P(spin_b = +1 | spin_a = +1) for qubit spin states.

    Built from the explicit spin eigenvectors and the transition
    probability; the closed form cos^2(delta / 2) is left to the tests.
    """
    return transition_probability(_spin_up_state(a), _spin_up_state(b))


@dataclass(frozen=True)
class SpinComparison:
    classical_estimate: float
    classical_analytic: float
    quantum: float
    gap: float


def comparison_report(a, b, n: int, seed: int) -> SpinComparison:
    """Classical (sampled and exact) against quantum conditionals."""
    estimate = classical_conditional(a, b, n, seed)
    analytic = classical_conditional_analytic(a, b)
    quantum = quantum_conditional(a, b)
    return SpinComparison(
        classical_estimate=estimate,
        classical_analytic=analytic,
        quantum=quantum,
        gap=quantum - analytic,
    )
