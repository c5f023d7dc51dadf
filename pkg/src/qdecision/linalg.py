"""Dense complex linear algebra with validated quantum types.

Everything downstream computes on the types defined here: state vectors,
self-adjoint operators, projectors, density operators and effects. All
invariants are enforced at construction (hard errors, not warnings) and all
values are immutable afterwards, so they can be shared freely.
"""

from __future__ import annotations

from collections.abc import Callable, Mapping, Sequence
from dataclasses import dataclass

import numpy as np

from . import tolerances as tol
from .errors import (
    DegenerateSpan,
    DimensionMismatch,
    InvalidEffect,
    InvariantViolation,
    NoConvergence,
    NotHermitian,
)

__all__ = [
    "StateVector",
    "HermitianOperator",
    "Projector",
    "DensityOperator",
    "Effect",
    "SpectralDecomposition",
    "as_complex_matrix",
    "matrix_of",
    "adjoint",
    "matmul",
    "trace",
    "frobenius_norm",
    "tensor_product",
    "hermitian_eig",
    "spectral_function",
    "projector_onto_span",
]


def as_complex_matrix(data, name: str = "matrix") -> np.ndarray:
    """Copy ``data`` into a 2-d complex array, rejecting NaN/Inf entries."""
    arr = np.array(data, dtype=complex)
    if arr.ndim != 2:
        raise DimensionMismatch(f"{name} must be two-dimensional, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InvariantViolation(f"{name} contains non-finite entries")
    return arr


def matrix_of(m) -> np.ndarray:
    """Unwrap an operator type (or coerce raw data) to its ndarray."""
    inner = getattr(m, "matrix", None)
    if isinstance(inner, np.ndarray):
        return inner
    return as_complex_matrix(m)


def adjoint(m) -> np.ndarray:
    """Conjugate transpose."""
    return matrix_of(m).conj().T.copy()


def matmul(a, b) -> np.ndarray:
    ma, mb = matrix_of(a), matrix_of(b)
    if ma.shape[1] != mb.shape[0]:
        raise DimensionMismatch(f"cannot multiply {ma.shape} by {mb.shape}")
    return ma @ mb


def trace(m) -> complex:
    arr = matrix_of(m)
    if arr.shape[0] != arr.shape[1]:
        raise DimensionMismatch(f"trace requires a square matrix, got {arr.shape}")
    return complex(np.trace(arr))


def frobenius_norm(m) -> float:
    return float(np.linalg.norm(matrix_of(m), "fro"))


def tensor_product(a, b) -> np.ndarray:
    """Kronecker product; dimensions multiply."""
    return np.kron(matrix_of(a), matrix_of(b))


class StateVector:
    """Unit complex vector; a pure state up to global phase."""

    def __init__(self, amplitudes, *, norm_tol: float = tol.UNIT_NORM_TOL):
        arr = np.array(amplitudes, dtype=complex).reshape(-1)
        if arr.size == 0:
            raise DimensionMismatch("state vector cannot be empty")
        if not np.all(np.isfinite(arr)):
            raise InvariantViolation("state vector contains non-finite entries")
        nrm = float(np.linalg.norm(arr))
        if abs(nrm - 1.0) > norm_tol:
            raise InvariantViolation(
                f"state vector violates the unit-norm invariant: ||psi|| = {nrm!r}"
            )
        arr.setflags(write=False)
        self.amplitudes = arr
        self.norm_tol = norm_tol

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def inner(self, other: "StateVector") -> complex:
        """Hermitian inner product <self|other>."""
        if self.dim != other.dim:
            raise DimensionMismatch(f"dimensions differ: {self.dim} vs {other.dim}")
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def __repr__(self) -> str:
        return f"StateVector(dim={self.dim})"


class HermitianOperator:
    """r x r complex self-adjoint matrix."""

    def __init__(self, matrix, *, herm_tol: float = tol.HERMITIAN_ENTRY_TOL):
        arr = as_complex_matrix(matrix, type(self).__name__)
        if arr.shape[0] != arr.shape[1]:
            raise DimensionMismatch(f"{type(self).__name__} must be square, got {arr.shape}")
        dev = float(np.abs(arr - arr.conj().T).max()) if arr.size else 0.0
        if dev > herm_tol:
            raise NotHermitian(
                f"{type(self).__name__} is not self-adjoint: "
                f"max |A - A^dag| entry = {dev:.3e} > {herm_tol:.1e}"
            )
        arr.setflags(write=False)
        self.matrix = arr
        self.herm_tol = herm_tol

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def __add__(self, other) -> "HermitianOperator":
        return HermitianOperator(self.matrix + matrix_of(other))

    def __sub__(self, other) -> "HermitianOperator":
        return HermitianOperator(self.matrix - matrix_of(other))

    def __mul__(self, scalar: float) -> "HermitianOperator":
        return HermitianOperator(self.matrix * float(scalar))

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return f"{type(self).__name__}(dim={self.dim})"


class Projector(HermitianOperator):
    """Idempotent Hermitian operator; ``rank`` is its trace rounded."""

    def __init__(
        self,
        matrix,
        *,
        idem_tol: float = tol.PROJECTOR_IDEM_TOL,
        trace_tol: float = tol.PROJECTOR_TRACE_TOL,
        herm_tol: float = tol.HERMITIAN_ENTRY_TOL,
    ):
        super().__init__(matrix, herm_tol=herm_tol)
        m = self.matrix
        idem_dev = float(np.linalg.norm(m @ m - m, "fro"))
        if idem_dev > idem_tol:
            raise InvariantViolation(
                f"projector violates idempotence: ||P@P - P||_F = {idem_dev:.3e} > {idem_tol:.1e}"
            )
        tr = float(np.trace(m).real)
        rank = round(tr)
        if rank < 1 or abs(tr - rank) > trace_tol:
            raise InvariantViolation(
                f"projector trace {tr!r} is not a positive integer rank within {trace_tol:.1e}"
            )
        self.rank = rank


class DensityOperator(HermitianOperator):
    """Positive semidefinite, trace-one operator; a possibly mixed state."""

    def __init__(
        self,
        matrix,
        *,
        eig_floor: float = tol.DENSITY_EIG_FLOOR,
        trace_tol: float = tol.DENSITY_TRACE_TOL,
        herm_tol: float = tol.HERMITIAN_ENTRY_TOL,
    ):
        super().__init__(matrix, herm_tol=herm_tol)
        tr = float(np.trace(self.matrix).real)
        if abs(tr - 1.0) > trace_tol:
            raise InvariantViolation(f"density operator trace {tr!r} differs from 1")
        lo = float(np.linalg.eigvalsh(self.matrix).min())
        if lo < -eig_floor:
            raise InvariantViolation(
                f"density operator has negative eigenvalue {lo:.3e} below -{eig_floor:.1e}"
            )

    @classmethod
    def from_state(cls, psi: StateVector) -> "DensityOperator":
        """Rank-one density |psi><psi|."""
        return cls(np.outer(psi.amplitudes, psi.amplitudes.conj()))


class Effect(HermitianOperator):
    """Hermitian operator with spectrum in [0, 1]; a generalized event."""

    def __init__(
        self,
        matrix,
        *,
        eig_tol: float = tol.EFFECT_EIG_TOL,
        herm_tol: float = tol.HERMITIAN_ENTRY_TOL,
    ):
        super().__init__(matrix, herm_tol=herm_tol)
        w = np.linalg.eigvalsh(self.matrix)
        if w.size and (w[0] < -eig_tol or w[-1] > 1.0 + eig_tol):
            raise InvalidEffect(
                f"effect spectrum [{w[0]:.3e}, {w[-1]:.3e}] is not within [0, 1]"
            )


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigenvalues ascending, orthonormal eigenvector columns, degeneracy groups.

    ``groups`` partitions the index range; indices land in the same group
    when their eigenvalues differ by less than the degeneracy tolerance used
    at decomposition time.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    groups: tuple[tuple[int, ...], ...]

    @property
    def dim(self) -> int:
        return self.eigenvalues.size

    @property
    def is_simple(self) -> bool:
        """True when every eigenvalue is non-degenerate."""
        return all(len(g) == 1 for g in self.groups)

    def group_value(self, g: int) -> float:
        """Representative eigenvalue (mean) of group ``g``."""
        idx = list(self.groups[g])
        return float(self.eigenvalues[idx].mean())

    def group_projector(self, g: int) -> Projector:
        """Orthogonal projector onto the eigenspace of group ``g``."""
        cols = self.eigenvectors[:, list(self.groups[g])]
        p = cols @ cols.conj().T
        return Projector((p + p.conj().T) / 2.0)

    def projectors(self) -> list[Projector]:
        return [self.group_projector(g) for g in range(len(self.groups))]


def _fix_column_phases(v: np.ndarray, zero_tol: float = 1e-12) -> np.ndarray:
    """Rotate each column so its first non-negligible entry is real positive."""
    v = v.copy()
    for k in range(v.shape[1]):
        col = v[:, k]
        nz = np.flatnonzero(np.abs(col) > zero_tol)
        if nz.size:
            lead = col[nz[0]]
            v[:, k] = col * (lead.conj() / abs(lead))
    return v


def _column_sort_key(col: np.ndarray) -> tuple:
    nz = np.flatnonzero(np.abs(col) > 1e-12)
    first = int(nz[0]) if nz.size else col.size
    rounded = np.round(np.concatenate([col.real, col.imag]), 10)
    return (first, tuple(-rounded))


def hermitian_eig(a, degeneracy_tol: float | None = None) -> SpectralDecomposition:
    """Eigendecomposition of a Hermitian matrix with a fixed output convention.

    Eigenvalues are sorted ascending. Each eigenvector's global phase is
    fixed (first non-negligible component real positive) and columns inside
    a degeneracy group are deterministically ordered, so repeated runs on
    the same input produce identical output.

    Args:
        a: Hermitian matrix (``HermitianOperator`` or array-like).
        degeneracy_tol: gap under which adjacent eigenvalues are grouped;
            defaults to ``1e-8 * max(1, spectral range)``.

    Raises:
        NotHermitian: relative asymmetry above ``HERMITIAN_REL_TOL``.
        NoConvergence: the solver failed or missed its residual contract.
    """
    arr = matrix_of(a)
    if arr.shape[0] != arr.shape[1]:
        raise DimensionMismatch(f"eigendecomposition requires a square matrix, got {arr.shape}")
    nrm = float(np.linalg.norm(arr, "fro"))
    asym = float(np.linalg.norm(arr - arr.conj().T, "fro"))
    if asym > tol.HERMITIAN_REL_TOL * max(nrm, np.finfo(float).tiny):
        raise NotHermitian(
            f"matrix is not Hermitian: ||A - A^dag||_F = {asym:.3e} vs ||A||_F = {nrm:.3e}"
        )
    try:
        w, v = np.linalg.eigh(arr)
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(f"eigensolver did not converge: {exc}") from exc

    if degeneracy_tol is None:
        spread = float(w[-1] - w[0]) if w.size else 0.0
        degeneracy_tol = tol.DEGENERACY_TOL_SCALE * max(1.0, spread)

    groups: list[list[int]] = []
    for i in range(w.size):
        if groups and w[i] - w[groups[-1][-1]] < degeneracy_tol:
            groups[-1].append(i)
        else:
            groups.append([i])

    v = _fix_column_phases(v)
    w = w.copy()
    for g in groups:
        if len(g) > 1:
            # reorder eigenpairs jointly so pairing stays exact
            order = sorted(g, key=lambda i: _column_sort_key(v[:, i]))
            v[:, g] = v[:, order]
            w[g] = w[order]

    residual = float(np.linalg.norm(arr - (v * w) @ v.conj().T, "fro"))
    if residual > tol.EIG_RESIDUAL_TOL * max(1.0, nrm):
        raise NoConvergence(
            f"eigendecomposition residual {residual:.3e} exceeds contract"
        )
    w.setflags(write=False)
    v.setflags(write=False)
    return SpectralDecomposition(w, v, tuple(tuple(g) for g in groups))


def _apply_value_map(f, values: np.ndarray) -> np.ndarray:
    """Evaluate a callable or a value table on each eigenvalue."""
    if isinstance(f, Mapping):
        table = {float(f"{float(k):.{tol.VALUE_SIG_DIGITS}g}"): float(val) for k, val in f.items()}

        def lookup(x: float) -> float:
            key = float(f"{x:.{tol.VALUE_SIG_DIGITS}g}")
            if key not in table:
                raise InvariantViolation(f"value table has no entry for eigenvalue {x!r}")
            return table[key]

        return np.array([lookup(float(x)) for x in values])
    return np.array([float(f(float(x))) for x in values])


def spectral_function(
    a,
    f: Callable[[float], float] | Mapping[float, float],
    degeneracy_tol: float | None = None,
) -> HermitianOperator:
    """Apply a real function to a Hermitian operator through its spectrum.

    Returns ``sum_i f(lambda_i) v_i v_i^dag``; commutes with the input.
    ``f`` may be a callable or a value table (eigenvalue -> result).
    """
    sd = hermitian_eig(a, degeneracy_tol)
    fvals = _apply_value_map(f, sd.eigenvalues)
    out = (sd.eigenvectors * fvals) @ sd.eigenvectors.conj().T
    return HermitianOperator((out + out.conj().T) / 2.0)


def projector_onto_span(
    vectors: Sequence[StateVector | np.ndarray],
    *,
    rank_tol: float = tol.SPAN_RANK_TOL,
) -> Projector:
    """Orthogonal projector onto the span of the given vectors.

    Raises ``DegenerateSpan`` if the vectors are linearly dependent within
    ``rank_tol`` (smallest singular value of the stacked columns).
    """
    if not vectors:
        raise DegenerateSpan("cannot project onto the span of an empty list")
    cols = np.column_stack(
        [v.amplitudes if isinstance(v, StateVector) else np.asarray(v, dtype=complex) for v in vectors]
    )
    if cols.shape[1] > cols.shape[0]:
        raise DegenerateSpan(f"{cols.shape[1]} vectors cannot be independent in dimension {cols.shape[0]}")
    sing = np.linalg.svd(cols, compute_uv=False)
    if sing.min() <= rank_tol:
        raise DegenerateSpan(
            f"vectors are linearly dependent: smallest singular value {sing.min():.3e}"
        )
    q, _ = np.linalg.qr(cols)
    p = q @ q.conj().T
    return Projector((p + p.conj().T) / 2.0)
