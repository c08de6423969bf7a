"""
Layered RY / controlled-phase circuits.

Layer ``j`` applies ``RY(thetas[i][j])`` to every qubit ``i`` and then one
``CP(phi)`` per entangling edge. Depth 0 is the empty circuit.

Circuit description files are JSON::

    {
      "n_qubits": 3,
      "depth": 2,
      "topology": {"kind": "chain"},
      "thetas": [[t00, t01], [t10, t11], [t20, t21]],
      "phis": ...
    }

``topology.kind`` is ``chain``, ``star`` (with ``center``), ``complete`` or
``explicit`` (with ``edges``, a list of ``[a, b]`` pairs). ``thetas`` is
qubit-major (``n_qubits`` rows, ``depth`` columns). ``phis`` is one of

* a number, used for every edge in every layer;
* a list of ``depth`` numbers, one uniform phase per layer;
* a list of ``depth`` lists, one phase per edge in topology order;
* an object mapping ``"a-b"`` to a list of ``depth`` phases.

:func:`circuit_to_dict` always writes the explicit edge list and the
per-layer, per-edge phase matrix, so ``circuit_from_dict(circuit_to_dict(c))``
reproduces ``c`` exactly.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np

from .errors import ConfigurationError
from .statevector import (
    MAX_QUBITS,
    StateVector,
    apply_cp,
    apply_ry,
    init_zero_state,
)


@dataclass(frozen=True)
class EntanglingEdge:
    a: int
    b: int
    phi: float

    @property
    def pair(self) -> tuple[int, int]:
        return (min(self.a, self.b), max(self.a, self.b))


@dataclass(frozen=True)
class Layer:
    thetas: tuple[float, ...]
    edges: tuple[EntanglingEdge, ...] = ()


@dataclass(frozen=True)
class Circuit:
    n_qubits: int
    layers: tuple[Layer, ...] = ()

    def __post_init__(self):
        if not isinstance(self.n_qubits, (int, np.integer)) or not 1 <= self.n_qubits <= MAX_QUBITS:
            raise ConfigurationError(f"n_qubits must be in [1, {MAX_QUBITS}], got {self.n_qubits!r}")
        for j, layer in enumerate(self.layers):
            if len(layer.thetas) != self.n_qubits:
                raise ConfigurationError(
                    f"layer {j}: {len(layer.thetas)} rotation angles for {self.n_qubits} qubits"
                )
            seen = set()
            for edge in layer.edges:
                if edge.a == edge.b or not (0 <= edge.a < self.n_qubits and 0 <= edge.b < self.n_qubits):
                    raise ConfigurationError(f"layer {j}: invalid edge ({edge.a}, {edge.b})")
                if edge.pair in seen:
                    raise ConfigurationError(f"layer {j}: duplicate edge {edge.pair}")
                seen.add(edge.pair)
            for value in (*layer.thetas, *(e.phi for e in layer.edges)):
                if not math.isfinite(value):
                    raise ConfigurationError(f"layer {j}: non-finite angle {value}")

    @property
    def depth(self) -> int:
        return len(self.layers)


@dataclass(frozen=True)
class Topology:
    kind: str = "chain"
    center: int = 0
    explicit_edges: tuple[tuple[int, int], ...] = field(default=())

    def edges(self, n_qubits: int) -> list[tuple[int, int]]:
        if self.kind == "chain":
            out = [(i, i + 1) for i in range(n_qubits - 1)]
        elif self.kind == "star":
            if not 0 <= self.center < n_qubits:
                raise ConfigurationError(f"star center {self.center} out of range for {n_qubits} qubits")
            out = [(self.center, i) for i in range(n_qubits) if i != self.center]
        elif self.kind == "complete":
            out = [(i, j) for i in range(n_qubits) for j in range(i + 1, n_qubits)]
        elif self.kind == "explicit":
            out = [(int(a), int(b)) for a, b in self.explicit_edges]
            pairs = set()
            for a, b in out:
                if a == b or not (0 <= a < n_qubits and 0 <= b < n_qubits):
                    raise ConfigurationError(f"edge ({a}, {b}) invalid for {n_qubits} qubits")
                key = (min(a, b), max(a, b))
                if key in pairs:
                    raise ConfigurationError(f"duplicate edge {key}")
                pairs.add(key)
        else:
            raise ConfigurationError(f"unknown topology kind {self.kind!r}")
        return out

    @classmethod
    def chain(cls):
        return cls("chain")

    @classmethod
    def star(cls, center: int = 0):
        return cls("star", center=center)

    @classmethod
    def complete(cls):
        return cls("complete")

    @classmethod
    def explicit(cls, edges):
        return cls("explicit", explicit_edges=tuple((int(a), int(b)) for a, b in edges))

    def to_dict(self) -> dict:
        if self.kind == "star":
            return {"kind": "star", "center": self.center}
        if self.kind == "explicit":
            return {"kind": "explicit", "edges": [list(e) for e in self.explicit_edges]}
        return {"kind": self.kind}

    @classmethod
    def from_dict(cls, data: Any) -> Topology:
        if isinstance(data, str):
            data = {"kind": data}
        if not isinstance(data, dict) or "kind" not in data:
            raise ConfigurationError("topology: expected an object with a 'kind' field")
        kind = data["kind"]
        if kind == "star":
            return cls.star(int(data.get("center", 0)))
        if kind == "explicit":
            edges = data.get("edges")
            if not isinstance(edges, list) or not all(isinstance(e, list) and len(e) == 2 for e in edges):
                raise ConfigurationError("topology.edges: expected a list of [a, b] pairs")
            return cls.explicit(edges)
        if kind in ("chain", "complete"):
            return cls(kind)
        raise ConfigurationError(f"topology.kind: unknown value {kind!r}")


def _phase_matrix(phis, depth: int, edges: list[tuple[int, int]]) -> np.ndarray:
    m = len(edges)
    if np.isscalar(phis):
        return np.full((depth, m), float(phis))
    if isinstance(phis, dict):
        out = np.empty((depth, m))
        lookup = {}
        for key, values in phis.items():
            a, b = (int(x) for x in str(key).split("-")) if isinstance(key, str) else key
            lookup[(min(a, b), max(a, b))] = values
        for e, (a, b) in enumerate(edges):
            key = (min(a, b), max(a, b))
            if key not in lookup:
                raise ConfigurationError(f"phis: no phase given for edge {a}-{b}")
            values = lookup.pop(key)
            values = [values] * depth if np.isscalar(values) else list(values)
            if len(values) != depth:
                raise ConfigurationError(f"phis[{a}-{b}]: expected {depth} layer phases, got {len(values)}")
            out[:, e] = values
        if lookup:
            raise ConfigurationError(f"phis: edges {sorted(lookup)} are not in the topology")
        return out
    arr = np.asarray(phis, dtype=float)
    if arr.shape == (depth,):
        return np.repeat(arr[:, None], m, axis=1)
    if arr.shape == (depth, m):
        return arr
    if depth == 0 and arr.size == 0:
        return np.zeros((0, m))
    raise ConfigurationError(
        f"phis: shape {arr.shape} does not match depth {depth} and {m} edges"
    )


def build_variational_circuit(
    n_qubits: int,
    depth: int,
    thetas,
    phis=math.pi,
    topology: Topology | None = None,
) -> Circuit:
    """
    Build a ``depth``-layer circuit.

    ``thetas`` has shape ``(n_qubits, depth)``; a scalar is broadcast. ``phis``
    takes any of the forms listed in the module docstring.
    """
    if depth < 0:
        raise ConfigurationError(f"depth must be >= 0, got {depth}")
    topology = topology or Topology.chain()
    edges = topology.edges(n_qubits)
    th = np.asarray(thetas, dtype=float)
    if th.ndim == 0:
        th = np.full((n_qubits, depth), float(th))
    if th.shape != (n_qubits, depth):
        if depth == 0 and th.size == 0:
            th = np.zeros((n_qubits, 0))
        else:
            raise ConfigurationError(f"thetas: shape {th.shape}, expected ({n_qubits}, {depth})")
    ph = _phase_matrix(phis, depth, edges)
    layers = tuple(
        Layer(
            thetas=tuple(float(x) for x in th[:, j]),
            edges=tuple(EntanglingEdge(a, b, float(ph[j, e])) for e, (a, b) in enumerate(edges)),
        )
        for j in range(depth)
    )
    return Circuit(n_qubits, layers)


def build_qgan_circuit(n_qubits: int, depth: int, thetas) -> Circuit:
    """Chain circuit with every entangling phase fixed at pi (controlled-Z)."""
    return build_variational_circuit(n_qubits, depth, thetas, math.pi, Topology.chain())


def apply_layer(state: StateVector, layer: Layer) -> None:
    for qubit, theta in enumerate(layer.thetas):
        apply_ry(state, qubit, theta)
    for edge in layer.edges:
        apply_cp(state, edge.a, edge.b, edge.phi)


def run(circuit: Circuit) -> StateVector:
    state = init_zero_state(circuit.n_qubits)
    for layer in circuit.layers:
        apply_layer(state, layer)
    return state


def circuit_to_dict(circuit: Circuit) -> dict:
    edge_sets = {tuple((e.a, e.b) for e in layer.edges) for layer in circuit.layers}
    if len(edge_sets) > 1:
        raise ConfigurationError("layers with different edge lists cannot be serialized")
    edges = next(iter(edge_sets)) if edge_sets else ()
    return {
        "n_qubits": circuit.n_qubits,
        "depth": circuit.depth,
        "topology": {"kind": "explicit", "edges": [list(e) for e in edges]},
        "thetas": [[layer.thetas[i] for layer in circuit.layers] for i in range(circuit.n_qubits)],
        "phis": [[e.phi for e in layer.edges] for layer in circuit.layers],
    }


def circuit_from_dict(data: Any) -> Circuit:
    if not isinstance(data, dict):
        raise ConfigurationError("circuit: expected a JSON object")
    for key in ("n_qubits", "depth", "thetas"):
        if key not in data:
            raise ConfigurationError(f"circuit: missing field '{key}'")
    n, depth = data["n_qubits"], data["depth"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ConfigurationError(f"n_qubits: expected a positive integer, got {n!r}")
    if not isinstance(depth, int) or isinstance(depth, bool) or depth < 0:
        raise ConfigurationError(f"depth: expected a nonnegative integer, got {depth!r}")
    topology = Topology.from_dict(data.get("topology", {"kind": "chain"}))
    try:
        thetas = np.asarray(data["thetas"], dtype=float)
    except (TypeError, ValueError) as exc:
        raise ConfigurationError(f"thetas: {exc}") from None
    try:
        return build_variational_circuit(n, depth, thetas, data.get("phis", math.pi), topology)
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ConfigurationError):
            raise
        raise ConfigurationError(f"phis: {exc}") from None


def load_circuit(path) -> Circuit:
    """Read a circuit description file, reporting the line and column of JSON syntax errors."""
    with open(path) as fh:
        text = fh.read()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigurationError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    try:
        return circuit_from_dict(data)
    except ConfigurationError as exc:
        raise ConfigurationError(f"{path}: {exc}") from None


def save_circuit(circuit: Circuit, path) -> None:
    with open(path, "w") as fh:
        json.dump(circuit_to_dict(circuit), fh, indent=2)
        fh.write("\n")


def random_circuit(rng: np.random.Generator, n_qubits: int, depth: int, topology: Topology | None = None) -> Circuit:
    """Uniform random angles in ``[0, 2pi)`` with independent per-edge phases."""
    topology = topology or Topology.chain()
    m = len(topology.edges(n_qubits))
    return build_variational_circuit(
        n_qubits,
        depth,
        rng.uniform(0, 2 * math.pi, (n_qubits, depth)),
        rng.uniform(0, 2 * math.pi, (depth, m)),
        topology,
    )


def uniform_layers(n_qubits: int, thetas: Sequence[float], phis: Sequence[float], topology: Topology | None = None) -> Circuit:
    """Circuit with one uniform rotation angle and one uniform phase per layer."""
    depth = len(thetas)
    if len(phis) != depth:
        raise ConfigurationError(f"{depth} layer angles but {len(phis)} layer phases")
    th = np.tile(np.asarray(thetas, dtype=float), (n_qubits, 1))
    return build_variational_circuit(n_qubits, depth, th, list(phis), topology)
