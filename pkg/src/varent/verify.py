"""Seeded invariant suites, each returning a JSON-serialisable report."""
from __future__ import annotations

import math

import numpy as np

from .circuits import Topology, random_circuit, run, build_variational_circuit
from .entanglement import entanglement, entanglement_schmidt_oracle
from .graphs import (
    complete_graph,
    cycle_graph,
    path_graph,
    random_graph,
    star_graph,
    verify_degree_formula,
)
from .measurement import estimate_entanglement

EQUIVALENCE_TOL = 1e-10
GRAPH_TOL = 1e-10
LOCALITY_TOL = 1e-12
SCALING_BOUNDS = (-0.65, -0.35)


def svd_entanglement(amplitudes: np.ndarray, n_qubits: int, qubit: int) -> float:
    """``1 - sigma_max^2`` of the qubit-vs-rest amplitude matrix, by full SVD."""
    t = amplitudes.reshape(1 << (n_qubits - 1 - qubit), 2, 1 << qubit)
    m = np.moveaxis(t, 1, 0).reshape(2, -1)
    return 1.0 - np.linalg.svd(m, compute_uv=False)[0] ** 2


def _random_topology(rng: np.random.Generator, n: int) -> Topology:
    kind = rng.choice(["chain", "star", "complete", "explicit"])
    if kind == "star":
        return Topology.star(int(rng.integers(n)))
    if kind == "explicit":
        edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < 0.5]
        return Topology.explicit(edges)
    return Topology(str(kind))


def oracle_equivalence(n_circuits: int = 200, seed: int = 2024) -> dict:
    """Spin-mean entanglement against the Schmidt oracle (and a full-SVD check) on random circuits."""
    rng = np.random.default_rng(seed)
    max_dev = 0.0
    max_dev_svd = 0.0
    in_range = True
    checks = 0
    for _ in range(n_circuits):
        n = int(rng.integers(2, 9))
        k = int(rng.integers(1, 4))
        state = run(random_circuit(rng, n, k, _random_topology(rng, n)))
        for q in range(n):
            e_spin = entanglement(state, q)
            e_schmidt = entanglement_schmidt_oracle(state, q)
            e_svd = svd_entanglement(state.amplitudes, n, q)
            max_dev = max(max_dev, abs(e_spin - e_schmidt))
            max_dev_svd = max(max_dev_svd, abs(e_schmidt - e_svd))
            in_range &= 0.0 <= e_spin <= 0.5 + 1e-10
            checks += 1
    return {
        "suite": "oracle-equivalence",
        "passed": bool(max_dev < EQUIVALENCE_TOL and max_dev_svd < EQUIVALENCE_TOL and in_range),
        "tolerance": EQUIVALENCE_TOL,
        "circuits": n_circuits,
        "checks": checks,
        "max_deviation": max_dev,
        "max_deviation_svd": max_dev_svd,
    }


def graph_corpus(rng: np.random.Generator, n_random: int = 60):
    """Fixture families for n = 3..8 followed by ``n_random`` seeded random graphs."""
    corpus = []
    for n in range(3, 9):
        corpus += [path_graph(n), cycle_graph(n), star_graph(n), complete_graph(n)]
    for _ in range(n_random):
        n = int(rng.integers(2, 9))
        corpus.append(random_graph(n, float(rng.uniform(0.2, 0.8)), rng))
    return corpus


def graph_formula(n_random: int = 60, seed: int = 7) -> dict:
    rng = np.random.default_rng(seed)
    max_dev = 0.0
    graphs = graph_corpus(rng, n_random)
    for g in graphs:
        theta, phi = rng.uniform(0, 2 * math.pi, 2)
        max_dev = max(max_dev, verify_degree_formula(g, theta, phi).max_difference)
    return {
        "suite": "graph-formula",
        "passed": bool(max_dev < GRAPH_TOL),
        "tolerance": GRAPH_TOL,
        "graphs": len(graphs),
        "max_deviation": max_dev,
    }


def locality(trials: int = 100, seed: int = 11, n_qubits: int = 6) -> dict:
    """Perturbing rotations outside qubit 1's neighbourhood leaves its entanglement unchanged."""
    rng = np.random.default_rng(seed)
    max_dev = 0.0
    for _ in range(trials):
        thetas = rng.uniform(0, 2 * math.pi, (n_qubits, 1))
        phis = rng.uniform(0, 2 * math.pi, (1, n_qubits - 1))
        base = entanglement(run(build_variational_circuit(n_qubits, 1, thetas, phis)), 1)
        perturbed = thetas.copy()
        perturbed[3:, 0] += rng.uniform(-math.pi, math.pi, n_qubits - 3)
        moved = entanglement(run(build_variational_circuit(n_qubits, 1, perturbed, phis)), 1)
        max_dev = max(max_dev, abs(moved - base))
    return {
        "suite": "locality",
        "passed": bool(max_dev < LOCALITY_TOL),
        "tolerance": LOCALITY_TOL,
        "trials": trials,
        "max_deviation": max_dev,
    }


def shot_scaling(shot_counts=(100, 1000, 10000), n_seeds: int = 100, seed: int = 5) -> dict:
    """
    Fit ``log(std) = slope * log(shots) + c`` for the entanglement estimator of
    the middle qubit of the 3-qubit controlled-Z chain at theta = pi/4.
    """
    circuit = build_variational_circuit(3, 1, math.pi / 4, math.pi)
    stds = []
    for shots in shot_counts:
        values = [estimate_entanglement(circuit, 1, shots, seed + 3 * t).value for t in range(n_seeds)]
        stds.append(float(np.std(values, ddof=1)))
    slope = float(np.polyfit(np.log(shot_counts), np.log(stds), 1)[0])
    ratios = [stds[i] / stds[i + 1] for i in range(len(stds) - 1)]
    lo, hi = SCALING_BOUNDS
    return {
        "suite": "shot-scaling",
        "passed": bool(lo <= slope <= hi),
        "bounds": list(SCALING_BOUNDS),
        "shots": list(shot_counts),
        "seeds": n_seeds,
        "std": stds,
        "decade_ratios": ratios,
        "exponent": slope,
    }


SUITES = {
    "oracle-equivalence": oracle_equivalence,
    "graph-formula": graph_formula,
    "locality": locality,
    "shot-scaling": shot_scaling,
}
