"""Scenario documents: parsing, validation, execution and re-emission.

A scenario is a single UTF-8 JSON document:

    {
      "context": "label",
      "dimension": 2,
      "state": {"vector": [[1.0, 0.0], [0.0, 0.0]]},
      "variables": [
        {"name": "a", "values": [0, 1], "basis_angle_degrees": 40.0},
        {"name": "b", "values": [0, 1],
         "eigenvectors": [[[[0.94, 0.0], [-0.34, 0.0]]], [[[0.34, 0.0], [0.94, 0.0]]]]}
      ],
      "queries": [{"kind": "distribution", "variable": "a"}, ...]
    }

Complex numbers are two-element arrays [re, im]. A state is either a
"vector" (list of complex amplitudes) or a "density" (square matrix of
complex entries). Variables list their eigenvector groups outermost by
value; the r = 2 shorthand ``basis_angle_degrees: alpha`` places the
eigenvector of the *larger* value at angle alpha and the smaller at
alpha + 90 degrees, so indicator variables aim their "yes" direction
at alpha.

Events in queries are ``[variable_name, value]`` pairs. Every query starts
from the scenario's initial state; collapsed states never leak across
query boundaries.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any

import numpy as np

from ._version import __version__
from .engine import (
    GPMSample,
    expectation,
    gpm_evaluate,
    ic_effect_basis,
    outcome_distribution,
    reconstruct_density,
    sequential_probability,
)
from .errors import (
    EngineError,
    ScenarioSyntaxError,
    ScenarioValidationError,
)
from .linalg import DensityOperator, StateVector
from .phenomena import (
    conjunction_report,
    sure_thing_check,
    total_probability_report,
)
from .report import QueryResult, Report, format_number
from .variables import DecisionVariable, round_value, variable_from_spectrum

__all__ = [
    "Query",
    "Scenario",
    "parse_scenario",
    "scenario_to_document",
    "run_scenario",
]

QUERY_KINDS = (
    "distribution",
    "sequence",
    "expectation",
    "conjunction",
    "total_probability",
    "sure_thing",
    "reconstruct_check",
)


@dataclass(frozen=True)
class Query:
    kind: str
    params: tuple[tuple[str, Any], ...]

    def get(self, key: str) -> Any:
        for k, v in self.params:
            if k == key:
                return v
        raise KeyError(key)


@dataclass(frozen=True)
class Scenario:
    context: str
    dimension: int
    initial_state: StateVector | DensityOperator
    variables: tuple[DecisionVariable, ...]
    queries: tuple[Query, ...]

    def variable(self, name: str) -> DecisionVariable:
        for v in self.variables:
            if v.name == name:
                return v
        raise KeyError(name)


# ---------------------------------------------------------------------------
# parsing helpers


def _fail(location: str, message: str):
    raise ScenarioValidationError(location, message)


def _require(node: dict, key: str, location: str):
    if key not in node:
        _fail(location, f"missing required key {key!r}")
    return node[key]


def _as_object(node, location: str) -> dict:
    if not isinstance(node, dict):
        _fail(location, f"expected an object, got {type(node).__name__}")
    return node


def _as_array(node, location: str) -> list:
    if not isinstance(node, list):
        _fail(location, f"expected an array, got {type(node).__name__}")
    return node


def _as_number(node, location: str) -> float:
    if isinstance(node, bool) or not isinstance(node, (int, float)):
        _fail(location, f"expected a number, got {type(node).__name__}")
    return float(node)


def _as_complex(node, location: str) -> complex:
    arr = _as_array(node, location)
    if len(arr) != 2:
        _fail(location, f"a complex number is a [re, im] pair, got {len(arr)} entries")
    return complex(_as_number(arr[0], location + "[0]"), _as_number(arr[1], location + "[1]"))


def _complex_vector(node, location: str) -> np.ndarray:
    arr = _as_array(node, location)
    return np.array([_as_complex(x, f"{location}[{i}]") for i, x in enumerate(arr)])


def _complex_matrix(node, location: str) -> np.ndarray:
    arr = _as_array(node, location)
    rows = [_complex_vector(row, f"{location}[{i}]") for i, row in enumerate(arr)]
    if not rows or any(r.size != rows[0].size for r in rows):
        _fail(location, "matrix rows are empty or ragged")
    return np.vstack(rows)


def _parse_state(node, dimension: int) -> StateVector | DensityOperator:
    obj = _as_object(node, "state")
    keys = set(obj)
    if keys == {"vector"}:
        amplitudes = _complex_vector(obj["vector"], "state.vector")
        if amplitudes.size != dimension:
            _fail("state.vector", f"has {amplitudes.size} amplitudes, dimension is {dimension}")
        try:
            return StateVector(amplitudes)
        except EngineError as exc:
            _fail("state.vector", str(exc))
    if keys == {"density"}:
        matrix = _complex_matrix(obj["density"], "state.density")
        if matrix.shape != (dimension, dimension):
            _fail("state.density", f"has shape {matrix.shape}, dimension is {dimension}")
        try:
            return DensityOperator(matrix)
        except EngineError as exc:
            _fail("state.density", str(exc))
    _fail("state", f"must contain exactly one of 'vector' or 'density', got {sorted(keys)}")


def _parse_variable(node, index: int, dimension: int) -> DecisionVariable:
    loc = f"variables[{index}]"
    obj = _as_object(node, loc)
    name = _require(obj, "name", loc)
    if not isinstance(name, str) or not name:
        _fail(loc + ".name", "variable name must be a non-empty string")
    values = [_as_number(v, f"{loc}.values[{i}]") for i, v in enumerate(_as_array(_require(obj, "values", loc), loc + ".values"))]
    has_vectors = "eigenvectors" in obj
    has_angle = "basis_angle_degrees" in obj
    if has_vectors == has_angle:
        _fail(loc, "give exactly one of 'eigenvectors' or 'basis_angle_degrees'")

    if has_angle:
        if dimension != 2 or len(values) != 2:
            _fail(
                loc + ".basis_angle_degrees",
                "the angle shorthand needs dimension 2 and exactly two values",
            )
        alpha = np.deg2rad(_as_number(obj["basis_angle_degrees"], loc + ".basis_angle_degrees"))
        hi = np.array([np.cos(alpha), np.sin(alpha)])
        lo = np.array([-np.sin(alpha), np.cos(alpha)])
        ordered = sorted(range(2), key=lambda j: values[j])
        groups = [None, None]
        groups[ordered[0]] = [lo.astype(complex)]
        groups[ordered[1]] = [hi.astype(complex)]
        eigenbasis = groups
    else:
        groups_node = _as_array(obj["eigenvectors"], loc + ".eigenvectors")
        if len(groups_node) != len(values):
            _fail(loc + ".eigenvectors", f"{len(groups_node)} groups for {len(values)} values")
        eigenbasis = []
        for g, group in enumerate(groups_node):
            gloc = f"{loc}.eigenvectors[{g}]"
            vectors = [
                _complex_vector(vec, f"{gloc}[{k}]")
                for k, vec in enumerate(_as_array(group, gloc))
            ]
            if any(v.size != dimension for v in vectors):
                _fail(gloc, f"eigenvectors must have {dimension} components")
            eigenbasis.append(vectors)

    try:
        return variable_from_spectrum(name, values, eigenbasis)
    except EngineError as exc:
        _fail(loc, str(exc))


def _parse_event(node, location: str, scenario_vars: dict[str, DecisionVariable]) -> tuple[str, float]:
    arr = _as_array(node, location)
    if len(arr) != 2 or not isinstance(arr[0], str):
        _fail(location, "an event is a [variable_name, value] pair")
    name, value = arr[0], _as_number(arr[1], location + "[1]")
    if name not in scenario_vars:
        _fail(location, f"query references undeclared variable {name!r}")
    v = scenario_vars[name]
    if round_value(value) not in {round_value(u) for u in v.values}:
        _fail(location, f"{value!r} is not a value of variable {name!r} (values: {list(v.values)})")
    return name, value


_QUERY_KEYS = {
    "distribution": {"variable"},
    "sequence": {"steps"},
    "expectation": {"variable"},
    "conjunction": {"first", "second"},
    "total_probability": {"partition", "target"},
    "sure_thing": {"condition", "choice", "threshold"},
    "reconstruct_check": set(),
}


def _parse_query(node, index: int, scenario_vars: dict[str, DecisionVariable]) -> Query:
    loc = f"queries[{index}]"
    obj = _as_object(node, loc)
    kind = _require(obj, "kind", loc)
    if kind not in QUERY_KINDS:
        _fail(loc + ".kind", f"unknown query kind {kind!r} (choose from {QUERY_KINDS})")
    extra = set(obj) - _QUERY_KEYS[kind] - {"kind"}
    if extra:
        _fail(loc, f"unexpected keys for kind {kind!r}: {sorted(extra)}")

    def var_name(key: str) -> str:
        name = _require(obj, key, loc)
        if not isinstance(name, str) or name not in scenario_vars:
            _fail(f"{loc}.{key}", f"query references undeclared variable {name!r}")
        return name

    params: list[tuple[str, Any]] = []
    if kind in ("distribution", "expectation"):
        params.append(("variable", var_name("variable")))
    elif kind == "sequence":
        steps_node = _as_array(_require(obj, "steps", loc), loc + ".steps")
        if not steps_node:
            _fail(loc + ".steps", "a sequence needs at least one step")
        steps = tuple(
            _parse_event(step, f"{loc}.steps[{i}]", scenario_vars)
            for i, step in enumerate(steps_node)
        )
        params.append(("steps", steps))
    elif kind == "conjunction":
        params.append(("first", _parse_event(_require(obj, "first", loc), loc + ".first", scenario_vars)))
        params.append(("second", _parse_event(_require(obj, "second", loc), loc + ".second", scenario_vars)))
    elif kind == "total_probability":
        params.append(("partition", var_name("partition")))
        params.append(("target", _parse_event(_require(obj, "target", loc), loc + ".target", scenario_vars)))
    elif kind == "sure_thing":
        condition = var_name("condition")
        if len(scenario_vars[condition].values) != 2:
            _fail(loc + ".condition", f"condition variable {condition!r} must have exactly two values")
        params.append(("condition", condition))
        params.append(("choice", _parse_event(_require(obj, "choice", loc), loc + ".choice", scenario_vars)))
        threshold = obj.get("threshold", 0.5)
        params.append(("threshold", _as_number(threshold, loc + ".threshold")))
    return Query(kind, tuple(params))


def parse_scenario(text: str) -> Scenario:
    """Parse and fully validate a scenario document.

    Raises ``ScenarioSyntaxError`` (with line/column) for malformed JSON and
    ``ScenarioValidationError`` (with an object path) for anything that
    violates the schema or the engine's invariants.
    """
    try:
        root = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioSyntaxError(exc.msg, exc.lineno, exc.colno) from exc
    root = _as_object(root, "document")
    known = {"context", "dimension", "state", "variables", "queries"}
    extra = set(root) - known
    if extra:
        _fail("document", f"unknown keys: {sorted(extra)}")

    context = root.get("context", "default")
    if not isinstance(context, str):
        _fail("context", "context label must be a string")
    dimension = _require(root, "dimension", "document")
    if isinstance(dimension, bool) or not isinstance(dimension, int) or dimension < 2:
        _fail("dimension", f"dimension must be an integer >= 2, got {dimension!r}")

    state = _parse_state(_require(root, "state", "document"), dimension)

    variables = []
    seen = set()
    for i, node in enumerate(_as_array(_require(root, "variables", "document"), "variables")):
        v = _parse_variable(node, i, dimension)
        if v.name in seen:
            _fail(f"variables[{i}].name", f"duplicate variable name {v.name!r}")
        seen.add(v.name)
        variables.append(v)
    var_map = {v.name: v for v in variables}

    queries = [
        _parse_query(node, i, var_map)
        for i, node in enumerate(_as_array(_require(root, "queries", "document"), "queries"))
    ]
    if isinstance(state, DensityOperator):
        for i, q in enumerate(queries):
            if q.kind in ("sequence", "conjunction", "total_probability", "sure_thing"):
                _fail(
                    f"queries[{i}]",
                    f"{q.kind!r} queries need a vector initial state, not a density",
                )
    return Scenario(context, dimension, state, tuple(variables), tuple(queries))


# ---------------------------------------------------------------------------
# re-emission


def _complex_to_doc(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def scenario_to_document(s: Scenario) -> str:
    """Serialize a scenario back to its document form.

    Eigenvector groups are written explicitly (the angle shorthand is not
    reconstructed) and floats keep full precision, so parse -> emit ->
    parse reproduces states and operators to rounding error.
    """

    def vec_doc(amplitudes: np.ndarray) -> list:
        return [_complex_to_doc(complex(z)) for z in amplitudes]

    if isinstance(s.initial_state, StateVector):
        state_doc: dict[str, Any] = {"vector": vec_doc(s.initial_state.amplitudes)}
    else:
        state_doc = {"density": [vec_doc(row) for row in s.initial_state.matrix]}

    variables_doc = []
    for v in s.variables:
        groups = []
        for p in v.eigenprojectors:
            w, vecs = np.linalg.eigh(p.matrix)
            cols = [vecs[:, k] for k in range(p.dim) if w[k] > 0.5]
            groups.append([vec_doc(c) for c in cols])
        variables_doc.append(
            {
                "name": v.name,
                "values": [float(u) for u in v.values],
                "eigenvectors": groups,
            }
        )

    queries_doc = []
    for q in s.queries:
        node: dict[str, Any] = {"kind": q.kind}
        for key, value in q.params:
            if key == "steps":
                node[key] = [[name, float(u)] for name, u in value]
            elif key in ("first", "second", "target", "choice"):
                node[key] = [value[0], float(value[1])]
            elif key == "threshold":
                node[key] = float(value)
            else:
                node[key] = value
        queries_doc.append(node)

    tree = {
        "context": s.context,
        "dimension": s.dimension,
        "state": state_doc,
        "variables": variables_doc,
        "queries": queries_doc,
    }
    return json.dumps(tree, indent=2) + "\n"


# ---------------------------------------------------------------------------
# execution


def _run_query(s: Scenario, q: Query, index: int, seed: int) -> QueryResult:
    state = s.initial_state

    if q.kind == "distribution":
        v = s.variable(q.get("variable"))
        dist = outcome_distribution(state, v)
        outputs = []
        for j, (u, p) in enumerate(zip(dist.values, dist.probabilities), start=1):
            outputs.append((f"value_{j}", u))
            outputs.append((f"p_{j}", p))
        return QueryResult(index, q.kind, (("variable", v.name),), tuple(outputs))

    if q.kind == "expectation":
        v = s.variable(q.get("variable"))
        return QueryResult(
            index, q.kind, (("variable", v.name),), (("expectation", expectation(state, v)),)
        )

    if q.kind == "sequence":
        steps = [(s.variable(name), value) for name, value in q.get("steps")]
        echo = tuple(
            (f"step_{i}", f"{v.name}={format_number(value)}")
            for i, (v, value) in enumerate(steps, start=1)
        )
        if not isinstance(state, StateVector):
            raise EngineError("sequence queries need a vector initial state")
        return QueryResult(
            index, q.kind, echo, (("probability", sequential_probability(state, steps)),)
        )

    if q.kind == "conjunction":
        first_name, first_value = q.get("first")
        second_name, second_value = q.get("second")
        proj_a = s.variable(first_name).projector_for(first_value)
        proj_b = s.variable(second_name).projector_for(second_value)
        if not isinstance(state, StateVector):
            raise EngineError("conjunction queries need a vector initial state")
        rep = conjunction_report(state, proj_a, proj_b)
        echo = (
            ("first", f"{first_name}={format_number(first_value)}"),
            ("second", f"{second_name}={format_number(second_value)}"),
        )
        outputs = (
            ("p_first", rep.p_a),
            ("p_second", rep.p_b),
            ("p_first_then_second", rep.p_a_then_b),
            ("p_second_then_first", rep.p_b_then_a),
            ("order_asymmetry", rep.order_asymmetry),
        )
        return QueryResult(index, q.kind, echo, outputs, (("conjunction_flag", rep.conjunction_flag),))

    if q.kind == "total_probability":
        partition = s.variable(q.get("partition"))
        target_name, target_value = q.get("target")
        proj = s.variable(target_name).projector_for(target_value)
        if not isinstance(state, StateVector):
            raise EngineError("total_probability queries need a vector initial state")
        rep = total_probability_report(state, partition, proj)
        echo = (
            ("partition", partition.name),
            ("target", f"{target_name}={format_number(target_value)}"),
        )
        outputs = [
            ("p_direct", rep.p_direct),
            ("p_via_partition", rep.p_via_partition),
            ("interference", rep.interference),
        ]
        for u, term in zip(rep.partition_values, rep.partition_terms):
            outputs.append((f"term[{format_number(u)}]", term))
        return QueryResult(index, q.kind, echo, tuple(outputs))

    if q.kind == "sure_thing":
        condition = s.variable(q.get("condition"))
        choice_name, choice_value = q.get("choice")
        proj = s.variable(choice_name).projector_for(choice_value)
        threshold = q.get("threshold")
        if not isinstance(state, StateVector):
            raise EngineError("sure_thing queries need a vector initial state")
        rep = sure_thing_check(state, condition, proj, threshold)
        echo = (
            ("condition", condition.name),
            ("choice", f"{choice_name}={format_number(choice_value)}"),
            ("threshold", threshold),
        )
        outputs = (
            (f"p_choice_given[{format_number(rep.condition_values[0])}]", rep.conditionals[0]),
            (f"p_choice_given[{format_number(rep.condition_values[1])}]", rep.conditionals[1]),
            ("p_choice_unconditional", rep.p_unconditional),
            ("interference", rep.interference),
        )
        return QueryResult(index, q.kind, echo, outputs, (("violation_flag", rep.violation_flag),))

    if q.kind == "reconstruct_check":
        if isinstance(state, StateVector):
            rho = DensityOperator.from_state(state)
        else:
            rho = state
        effects = ic_effect_basis(s.dimension)
        samples = [GPMSample(f, gpm_evaluate(rho, f)) for f in effects]
        rec = reconstruct_density(samples)
        err = float(np.linalg.norm(rec.rho.matrix - rho.matrix, "fro"))
        outputs = (
            ("roundtrip_error", err),
            ("residual", rec.residual),
            ("effect_count", len(effects)),
        )
        return QueryResult(index, q.kind, (), outputs, (("psd_clipped", rec.clipped),))

    raise EngineError(f"unhandled query kind {q.kind!r}")


def run_scenario(s: Scenario, *, seed: int = 0) -> Report:
    """Execute every query in order, each starting from the initial state."""
    results = []
    for i, q in enumerate(s.queries, start=1):
        try:
            results.append(_run_query(s, q, i, seed))
        except EngineError as exc:
            raise type(exc)(f"query {i} ({q.kind}): {exc}") from exc
    return Report(
        engine_version=__version__,
        context=s.context,
        dimension=s.dimension,
        seed=seed,
        results=tuple(results),
    )
