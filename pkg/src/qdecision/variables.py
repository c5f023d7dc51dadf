"""Decision variables as operators with spectral data.

A decision variable is a named question with finitely many answer values;
it is carried as a self-adjoint operator together with one eigenprojector
per value. Maximality, functions of variables and unitary conjugation are
all expressed on that spectral data.
"""

from __future__ import annotations

from collections.abc import Callable, Sequence

import numpy as np

from . import tolerances as tol
from .errors import (
    DimensionMismatch,
    DuplicateValues,
    NonOrthonormalBasis,
    NotUnitary,
    UnknownValue,
)
from .linalg import (
    HermitianOperator,
    Projector,
    StateVector,
    matrix_of,
    projector_onto_span,
)

__all__ = [
    "UnitaryOperator",
    "DecisionVariable",
    "variable_from_spectrum",
    "is_maximal",
    "apply_function",
    "conjugate",
    "is_one_to_one_related",
    "are_complementary",
    "round_value",
]


def round_value(x: float) -> float:
    """Round to the significant digits used for value identification."""
    return float(f"{float(x):.{tol.VALUE_SIG_DIGITS}g}")


class UnitaryOperator:
    """r x r matrix with W^dag W = I within tolerance."""

    def __init__(self, matrix, *, unitary_tol: float = tol.UNITARY_TOL):
        arr = matrix_of(matrix).copy()
        if arr.shape[0] != arr.shape[1]:
            raise DimensionMismatch(f"unitary must be square, got {arr.shape}")
        dev = float(np.linalg.norm(arr.conj().T @ arr - np.eye(arr.shape[0]), "fro"))
        if dev > unitary_tol:
            raise NotUnitary(f"||W^dag W - I||_F = {dev:.3e} > {unitary_tol:.1e}")
        arr.setflags(write=False)
        self.matrix = arr

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


class DecisionVariable:
    """Named variable with strictly increasing values and eigenprojectors.

    Invariants (checked here): values strictly increasing; projectors
    mutually orthogonal and resolving the identity; operator equal to
    ``sum_j u_j P_j`` within the resolution tolerance.
    """

    def __init__(
        self,
        name: str,
        values: Sequence[float],
        projectors: Sequence[Projector],
        *,
        resolution_tol: float = tol.ORTHONORMALITY_TOL,
    ):
        vals = [float(v) for v in values]
        if len(vals) != len(projectors):
            raise DimensionMismatch(
                f"{len(vals)} values but {len(projectors)} projectors"
            )
        if len(set(round_value(v) for v in vals)) != len(vals):
            raise DuplicateValues(f"variable {name!r} has repeated values: {vals}")
        if any(b <= a for a, b in zip(vals, vals[1:])):
            raise DuplicateValues(f"variable {name!r} values must be strictly increasing: {vals}")

        dims = {p.dim for p in projectors}
        if len(dims) != 1:
            raise DimensionMismatch(f"projector dimensions disagree: {sorted(dims)}")
        r = dims.pop()
        if sum(p.rank for p in projectors) != r:
            raise DimensionMismatch(
                f"projector ranks sum to {sum(p.rank for p in projectors)}, expected {r}"
            )
        total = sum(p.matrix for p in projectors)
        if float(np.linalg.norm(total - np.eye(r), "fro")) > resolution_tol:
            raise NonOrthonormalBasis(
                f"eigenprojectors of {name!r} do not resolve the identity"
            )
        for i in range(len(projectors)):
            for j in range(i + 1, len(projectors)):
                cross = float(np.linalg.norm(projectors[i].matrix @ projectors[j].matrix, "fro"))
                if cross > resolution_tol:
                    raise NonOrthonormalBasis(
                        f"eigenprojectors {i} and {j} of {name!r} are not orthogonal"
                    )

        op = sum(u * p.matrix for u, p in zip(vals, projectors))
        self.name = str(name)
        self.values = tuple(vals)
        self.eigenprojectors = tuple(projectors)
        self.operator = HermitianOperator((op + op.conj().T) / 2.0)

    @property
    def dim(self) -> int:
        return self.operator.dim

    def value_index(self, value: float) -> int:
        key = round_value(value)
        for j, u in enumerate(self.values):
            if round_value(u) == key:
                return j
        raise UnknownValue(f"{value!r} is not a value of variable {self.name!r}")

    def projector_for(self, value: float) -> Projector:
        return self.eigenprojectors[self.value_index(value)]

    def __repr__(self) -> str:
        return f"DecisionVariable({self.name!r}, values={self.values}, dim={self.dim})"


def variable_from_spectrum(
    name: str,
    values: Sequence[float],
    eigenbasis: Sequence[Sequence[StateVector | np.ndarray]],
    *,
    ortho_tol: float = tol.ORTHONORMALITY_TOL,
) -> DecisionVariable:
    """Assemble a variable from values and orthonormal eigenvector groups.

    ``eigenbasis[j]`` spans the eigenspace of ``values[j]``; the groups must
    jointly form an orthonormal basis of the full space.
    """
    if len(values) != len(eigenbasis):
        raise DimensionMismatch(
            f"{len(values)} values but {len(eigenbasis)} eigenvector groups"
        )
    vals = [float(v) for v in values]
    if len(set(round_value(v) for v in vals)) != len(vals):
        raise DuplicateValues(f"values must be distinct: {vals}")

    columns = []
    for group in eigenbasis:
        for v in group:
            columns.append(
                v.amplitudes if isinstance(v, StateVector) else np.asarray(v, dtype=complex).reshape(-1)
            )
    if not columns:
        raise DimensionMismatch("eigenbasis is empty")
    r = columns[0].size
    if any(c.size != r for c in columns):
        raise DimensionMismatch("eigenvectors have inconsistent dimensions")
    if len(columns) != r:
        raise DimensionMismatch(
            f"total eigenvector count {len(columns)} must equal the dimension {r}"
        )
    basis = np.column_stack(columns)
    gram_dev = float(np.linalg.norm(basis.conj().T @ basis - np.eye(r), "fro"))
    if gram_dev > ortho_tol:
        raise NonOrthonormalBasis(
            f"eigenbasis is not orthonormal: ||V^dag V - I||_F = {gram_dev:.3e}"
        )

    order = sorted(range(len(vals)), key=lambda j: vals[j])
    projectors = [projector_onto_span(list(eigenbasis[j])) for j in order]
    return DecisionVariable(name, [vals[j] for j in order], projectors)


def is_maximal(v: DecisionVariable) -> bool:
    """A variable is maximal iff every eigenvalue is simple (all ranks 1)."""
    return all(p.rank == 1 for p in v.eigenprojectors)


def apply_function(v: DecisionVariable, f: Callable[[float], float]) -> DecisionVariable:
    """The variable f(v): values mapped through f, equal images merged.

    Projectors of values with the same image are summed, so the result is
    always below ``v`` in the coarsening order.
    """
    merged: dict[float, np.ndarray] = {}
    for u, p in zip(v.values, v.eigenprojectors):
        key = round_value(f(u))
        if key in merged:
            merged[key] = merged[key] + p.matrix
        else:
            merged[key] = p.matrix.copy()
    new_values = sorted(merged)
    projectors = [Projector(merged[u]) for u in new_values]
    return DecisionVariable(v.name, new_values, projectors)


def conjugate(v: DecisionVariable, w: UnitaryOperator | np.ndarray) -> DecisionVariable:
    """Transport a variable through a unitary: operator W^-1 A W.

    Values are unchanged; each eigenprojector becomes W^-1 P W.
    """
    if not isinstance(w, UnitaryOperator):
        w = UnitaryOperator(w)
    if w.dim != v.dim:
        raise DimensionMismatch(f"unitary dim {w.dim} does not match variable dim {v.dim}")
    wd = w.matrix.conj().T
    projectors = []
    for p in v.eigenprojectors:
        m = wd @ p.matrix @ w.matrix
        projectors.append(Projector((m + m.conj().T) / 2.0))
    return DecisionVariable(v.name, v.values, projectors)


def is_one_to_one_related(
    v1: DecisionVariable,
    v2: DecisionVariable,
    *,
    match_tol: float = tol.PROJECTOR_MATCH_TOL,
) -> bool:
    """True iff the two variables share eigenprojectors up to pairing.

    A bijection between the projector lists with per-pair Frobenius
    distance below ``match_tol`` must exist; values may differ (the
    variables are then invertible relabelings of each other).
    """
    if v1.dim != v2.dim:
        raise DimensionMismatch(f"dimensions differ: {v1.dim} vs {v2.dim}")
    if len(v1.eigenprojectors) != len(v2.eigenprojectors):
        return False
    unused = list(v2.eigenprojectors)
    for p in v1.eigenprojectors:
        for k, q in enumerate(unused):
            if float(np.linalg.norm(p.matrix - q.matrix, "fro")) <= match_tol:
                del unused[k]
                break
        else:
            return False
    return True


def are_complementary(v1: DecisionVariable, v2: DecisionVariable) -> bool:
    """Both maximal and not in one-to-one correspondence."""
    return is_maximal(v1) and is_maximal(v2) and not is_one_to_one_related(v1, v2)
