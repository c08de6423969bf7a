"""
Geometric measure of entanglement of one qubit with the rest of a pure state.

Three independent routes:

* spin mean: ``E = (1 - |<sigma>|) / 2`` from the qubit's Bloch vector;
* Schmidt oracle: ``E = 1 - lambda_max`` of the 2x2 reduced density matrix,
  with the eigenvalue taken from trace and determinant;
* grid oracle: direct minimisation of the squared Fubini-Study distance over
  product states, scanning the qubit factor on a Bloch-sphere grid and using
  the optimal rest-of-register factor for each grid point.

Closed-form evaluators for the circuit families studied here are collected at
the bottom.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError, ConsistencyError
from .statevector import StateVector, _check_qubit, inner_product, reduced_density_1q

CLAMP_TOL = 1e-10
NORM_TOL = 1e-8
DEFAULT_GRID_RESOLUTION = 128


@dataclass(frozen=True)
class SpinMean:
    sx: float
    sy: float
    sz: float

    @property
    def norm(self) -> float:
        return math.sqrt(self.sx * self.sx + self.sy * self.sy + self.sz * self.sz)

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.sx, self.sy, self.sz)


def _clamp(value: float) -> float:
    if value < -CLAMP_TOL or value > 0.5 + CLAMP_TOL:
        raise ConsistencyError(f"entanglement {value!r} outside [0, 1/2]")
    return min(max(value, 0.0), 0.5) + 0.0


def mean_spin(state: StateVector, qubit: int) -> SpinMean:
    """Pauli expectations of ``qubit`` read off its reduced density matrix."""
    rho = reduced_density_1q(state, qubit)
    r01 = rho[0, 1]
    return SpinMean(2.0 * r01.real, -2.0 * r01.imag, float(rho[0, 0].real - rho[1, 1].real))


def entanglement_from_spin(spin: SpinMean) -> float:
    norm = spin.norm
    if norm > 1.0 + NORM_TOL:
        raise ConsistencyError(f"Bloch vector norm {norm!r} exceeds 1")
    return _clamp(0.5 * (1.0 - norm))


def entanglement(state: StateVector, qubit: int) -> float:
    return entanglement_from_spin(mean_spin(state, qubit))


def max_eigenvalue_2x2(rho: np.ndarray) -> float:
    """Largest eigenvalue of a 2x2 Hermitian matrix from its trace and determinant."""
    tr = float(rho[0, 0].real + rho[1, 1].real)
    det = float((rho[0, 0] * rho[1, 1] - rho[0, 1] * rho[1, 0]).real)
    disc = max(0.25 * tr * tr - det, 0.0)
    return 0.5 * tr + math.sqrt(disc)


def entanglement_schmidt_oracle(state: StateVector, qubit: int) -> float:
    return _clamp(1.0 - max_eigenvalue_2x2(reduced_density_1q(state, qubit)))


def fubini_study_distance(a: StateVector, b: StateVector) -> float:
    overlap = abs(inner_product(a, b)) ** 2
    return math.sqrt(min(max(1.0 - overlap, 0.0), 1.0))


def bloch_grid(resolution: int) -> tuple[np.ndarray, np.ndarray]:
    """
    Polar angles ``pi*j/resolution`` (j = 0..resolution) and azimuths
    ``pi*k/resolution`` (k = 0..2*resolution-1).

    Doubling ``resolution`` keeps every previous grid point.
    """
    alphas = math.pi * np.arange(resolution + 1) / resolution
    betas = math.pi * np.arange(2 * resolution) / resolution
    return alphas, betas


def entanglement_grid_oracle(
    state: StateVector, qubit: int, grid_resolution: int = DEFAULT_GRID_RESOLUTION
) -> float:
    """
    Minimise ``1 - |<chi (x) Phi|psi>|^2`` over a Bloch-sphere grid of ``chi``.

    For a fixed qubit factor ``chi`` the best rest-of-register factor is the
    normalised partial overlap ``v = <chi|psi>``, which makes the squared
    overlap equal ``|v|^2``. The grid has ``grid_resolution + 1`` polar and
    ``2 * grid_resolution`` azimuthal points, so the result approaches the
    exact minimum from above.
    """
    qubit = _check_qubit(state, qubit)
    if not isinstance(grid_resolution, (int, np.integer)) or grid_resolution < 8:
        raise ConfigurationError(f"grid_resolution must be an integer >= 8, got {grid_resolution!r}")
    n = state.n_qubits
    # rows: amplitudes with the qubit's bit 0 / bit 1, columns: rest-of-register configurations
    t = state.amplitudes.reshape(1 << (n - 1 - qubit), 2, 1 << qubit)
    psi0 = t[:, 0, :].ravel()
    psi1 = t[:, 1, :].ravel()
    alphas, betas = bloch_grid(int(grid_resolution))
    c = np.cos(alphas / 2)
    s = np.sin(alphas / 2)
    phase = np.exp(-1j * betas)
    best = -1.0
    # v(alpha, beta) = cos(alpha/2) psi0 + exp(-i beta) sin(alpha/2) psi1
    for ca, sa in zip(c, s):
        v = ca * psi0[None, :] + (sa * phase)[:, None] * psi1[None, :]
        overlap = np.einsum("ij,ij->i", v.conj(), v).real
        best = max(best, float(overlap.max()))
    return _clamp(max(1.0 - best, 0.0))


def closed_form_graph(theta: float, phi: float, degree: int) -> float:
    """Entanglement of a vertex of the given degree in a uniform-angle graph state."""
    if degree < 0:
        raise ValueError(f"degree must be >= 0, got {degree}")
    s2 = math.sin(theta) ** 2
    c2 = math.cos(theta) ** 2
    base = math.cos(phi / 2) ** 2 + math.sin(phi / 2) ** 2 * c2
    return 0.5 - 0.5 * math.sqrt(s2 * base**degree + c2)


def closed_form_qgan_k1(theta00: float, theta10: float, theta20: float) -> float:
    """Middle qubit of a 3-qubit controlled-Z chain after one rotation layer."""
    radicand = (
        math.cos(theta00) ** 2 * math.cos(theta20) ** 2 * math.sin(theta10) ** 2
        + math.cos(theta10) ** 2
    )
    return 0.5 * (1.0 - math.sqrt(radicand))


def closed_form_k2(theta01: float, theta11: float, theta21: float) -> float:
    """Middle qubit, two controlled-Z layers, first rotation layer fixed at pi/2."""
    total = (
        math.cos(theta01 + theta11 - theta21)
        + math.cos(theta01 - theta11 + theta21)
        + math.cos(-theta01 + theta11 + theta21)
        + math.cos(theta01 + theta11 + theta21)
    )
    return 0.5 * (1.0 - 0.25 * abs(total))


def closed_form_theta1_k2(theta1: float) -> float:
    """``closed_form_k2`` with all three second-layer angles equal."""
    return 0.5 * (1.0 - abs(math.cos(theta1) ** 3))


def closed_form_phi_k1(phi: float) -> float:
    """Middle qubit of a 3-qubit chain, rotation angles pi/2, uniform phase ``phi``."""
    return 0.5 * (1.0 - math.cos(phi / 2) ** 2)
