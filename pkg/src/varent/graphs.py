"""
Graph states: undirected graphs lowered to one-layer circuits.

Each vertex is a qubit rotated by ``RY(theta)``; each edge becomes ``CP(phi)``.
For a uniform ``(theta, phi)`` the entanglement of vertex ``l`` depends only on
its degree ``n_l``::

    E_l = 1/2 - 1/2 sqrt( sin^2(theta) (cos^2(phi/2) + sin^2(phi/2) cos^2(theta))^n_l
                          + cos^2(theta) )

Two-vertex check (one edge, degree 1). With ``c = cos(theta/2)``,
``s = sin(theta/2)`` the state is ``c^2|00> + cs|01> + cs|10> + s^2 e^{i phi}|11>``.
Tracing out vertex 1 gives ``rho_00 = c^2``, ``rho_11 = s^2`` and
``rho_01 = cs (c^2 + s^2 e^{-i phi})``, whose Bloch norm squared is
``cos^2(theta) + sin^2(theta) (1 - sin^2(phi/2) sin^2(theta))``: the formula
above at ``n_l = 1``.

Edge-list files::

    n 4
    0 1
    1 2   # comments and blank lines are ignored
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .circuits import Circuit, Topology, build_variational_circuit, run
from .entanglement import closed_form_graph, entanglement_schmidt_oracle
from .errors import ConfigurationError, QubitIndexError


@dataclass(frozen=True)
class Graph:
    n_vertices: int
    edges: frozenset[tuple[int, int]] = frozenset()

    def __post_init__(self):
        if self.n_vertices < 1:
            raise ConfigurationError(f"graph needs at least one vertex, got {self.n_vertices}")
        normalized = set()
        for a, b in self.edges:
            if a == b:
                raise ConfigurationError(f"self-loop at vertex {a}")
            if not (0 <= a < self.n_vertices and 0 <= b < self.n_vertices):
                raise ConfigurationError(f"edge ({a}, {b}) out of range for {self.n_vertices} vertices")
            normalized.add((min(a, b), max(a, b)))
        object.__setattr__(self, "edges", frozenset(normalized))

    @classmethod
    def from_edges(cls, n_vertices: int, edges) -> Graph:
        edges = [(int(a), int(b)) for a, b in edges]
        keys = [(min(a, b), max(a, b)) for a, b in edges]
        if len(set(keys)) != len(keys):
            raise ConfigurationError("duplicate edge in edge list")
        return cls(n_vertices, frozenset(edges))

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)


@dataclass(frozen=True)
class VertexRecord:
    vertex: int
    degree: int
    e_closed_form: float
    e_simulated: float
    abs_difference: float


@dataclass(frozen=True)
class VertexEntanglementReport:
    theta: float
    phi: float
    records: tuple[VertexRecord, ...]

    @property
    def max_difference(self) -> float:
        return max(r.abs_difference for r in self.records)


def degree(graph: Graph, vertex: int) -> int:
    if not 0 <= vertex < graph.n_vertices:
        raise QubitIndexError(f"vertex {vertex} out of range for {graph.n_vertices} vertices")
    return sum(vertex in e for e in graph.edges)


def graph_to_circuit(graph: Graph, theta: float, phi: float) -> Circuit:
    return build_variational_circuit(
        graph.n_vertices,
        1,
        float(theta),
        float(phi),
        Topology.explicit(graph.sorted_edges()),
    )


def verify_degree_formula(graph: Graph, theta: float, phi: float) -> VertexEntanglementReport:
    state = run(graph_to_circuit(graph, theta, phi))
    records = []
    for v in range(graph.n_vertices):
        d = degree(graph, v)
        closed = closed_form_graph(theta, phi, d)
        simulated = entanglement_schmidt_oracle(state, v)
        records.append(VertexRecord(v, d, closed, simulated, abs(closed - simulated)))
    return VertexEntanglementReport(float(theta), float(phi), tuple(records))


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ConfigurationError(f"cycle needs at least 3 vertices, got {n}")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(n: int, center: int = 0) -> Graph:
    return Graph.from_edges(n, [(center, i) for i in range(n) if i != center])


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def random_graph(n: int, p: float, rng: np.random.Generator) -> Graph:
    """Each of the ``n(n-1)/2`` possible edges is present independently with probability ``p``."""
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return Graph.from_edges(n, edges)


def parse_edge_list(text: str, source: str = "<edges>") -> Graph:
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if n is None:
            if len(fields) != 2 or fields[0] != "n":
                raise ConfigurationError(f"{source}:{lineno}: expected header 'n <count>'")
            try:
                n = int(fields[1])
            except ValueError:
                raise ConfigurationError(f"{source}:{lineno}: vertex count {fields[1]!r} is not an integer") from None
            continue
        if len(fields) != 2:
            raise ConfigurationError(f"{source}:{lineno}: expected 'a b', got {line!r}")
        try:
            a, b = int(fields[0]), int(fields[1])
        except ValueError:
            raise ConfigurationError(f"{source}:{lineno}: vertex indices must be integers") from None
        if a == b or not (0 <= a < n and 0 <= b < n):
            raise ConfigurationError(f"{source}:{lineno}: invalid edge ({a}, {b}) for {n} vertices")
        if (min(a, b), max(a, b)) in {(min(x, y), max(x, y)) for x, y in edges}:
            raise ConfigurationError(f"{source}:{lineno}: duplicate edge ({a}, {b})")
        edges.append((a, b))
    if n is None:
        raise ConfigurationError(f"{source}: empty edge list, expected header 'n <count>'")
    return Graph.from_edges(n, edges)


def load_edge_list(path) -> Graph:
    with open(path) as fh:
        return parse_edge_list(fh.read(), str(path))


def format_edge_list(graph: Graph) -> str:
    lines = [f"n {graph.n_vertices}"] + [f"{a} {b}" for a, b in graph.sorted_edges()]
    return "\n".join(lines) + "\n"
