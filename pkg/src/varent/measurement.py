"""
Shot-based estimation of a qubit's spin components and its entanglement.

Each axis is measured by rotating the target qubit so that the wanted Pauli
operator becomes sigma^z, then sampling the standard-basis outcome. Only the
target's marginal enters the estimator, so one binomial draw with the exact
outcome probability replaces per-shot sampling of the whole register.

The three axes use generators seeded with ``seed``, ``seed + 1`` and
``seed + 2`` (numpy PCG64 via ``default_rng``).
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .circuits import Circuit, run
from .errors import ConfigurationError
from .statevector import StateVector, _check_qubit, apply_rx, apply_ry, reduced_density_1q

DEFAULT_SHOTS = 1024


class MeasurementAxis(enum.Enum):
    X = "X"
    Y = "Y"
    Z = "Z"


AXES = (MeasurementAxis.X, MeasurementAxis.Y, MeasurementAxis.Z)


@dataclass(frozen=True)
class ShotCounts:
    shots: int
    count0: int
    count1: int

    def __post_init__(self):
        if self.shots < 1 or self.count0 < 0 or self.count1 < 0 or self.count0 + self.count1 != self.shots:
            raise ConfigurationError(f"inconsistent counts {self}")


@dataclass(frozen=True)
class SpinEstimate:
    mean: float
    std_error: float
    shots: int


@dataclass(frozen=True)
class EntanglementEstimate:
    value: float
    std_error: float
    components: tuple[SpinEstimate, SpinEstimate, SpinEstimate]


def basis_rotation(axis: MeasurementAxis):
    """Gate that maps ``axis`` onto the measurement basis, as ``(kind, angle)`` or ``None``."""
    axis = MeasurementAxis(axis)
    if axis is MeasurementAxis.X:
        return ("ry", -math.pi / 2)
    if axis is MeasurementAxis.Y:
        return ("rx", math.pi / 2)
    return None


def _apply_rotation(state: StateVector, qubit: int, rotation) -> None:
    if rotation is None:
        return
    kind, angle = rotation
    (apply_ry if kind == "ry" else apply_rx)(state, qubit, angle)


def outcome_probability0(state: StateVector, qubit: int, axis: MeasurementAxis) -> float:
    """Probability of reading 0 on ``qubit`` after the basis rotation for ``axis``."""
    qubit = _check_qubit(state, qubit)
    rotation = basis_rotation(axis)
    if rotation is not None:
        state = state.copy()
        _apply_rotation(state, qubit, rotation)
    p0 = float(reduced_density_1q(state, qubit)[0, 0].real)
    return min(max(p0, 0.0), 1.0)


def sample_counts(state: StateVector, qubit: int, axis: MeasurementAxis, shots: int, seed: int) -> ShotCounts:
    if not isinstance(shots, (int, np.integer)) or shots < 1:
        raise ConfigurationError(f"shots must be a positive integer, got {shots!r}")
    p0 = outcome_probability0(state, qubit, axis)
    return _draw(p0, int(shots), seed)


def _draw(p0: float, shots: int, seed: int) -> ShotCounts:
    rng = np.random.default_rng(seed)
    count0 = int(rng.binomial(shots, p0))
    return ShotCounts(shots, count0, shots - count0)


def estimate_spin_component(counts: ShotCounts) -> SpinEstimate:
    mean = (counts.count0 - counts.count1) / counts.shots
    return SpinEstimate(mean, math.sqrt(max(1.0 - mean * mean, 0.0) / counts.shots), counts.shots)


def entanglement_from_estimates(components) -> tuple[float, float]:
    """
    Combine three spin-component estimates into ``(E, std_error)``.

    Sampled Bloch vectors may come out longer than 1; E is then reported as 0.
    Errors propagate to first order through the Bloch norm; at the zero vector,
    where the norm has no gradient, the bound ``sqrt(sum err_i^2) / 2`` is used.
    """
    means = np.array([c.mean for c in components])
    errs = np.array([c.std_error for c in components])
    norm = float(np.sqrt(np.dot(means, means)))
    value = min(max(0.5 * (1.0 - norm), 0.0), 0.5) + 0.0
    if norm == 0.0:
        std_error = 0.5 * float(np.sqrt(np.dot(errs, errs)))
    else:
        std_error = 0.5 * float(np.sqrt(np.dot((means / norm) ** 2, errs**2)))
    return value, std_error


def estimate_state_entanglement(state: StateVector, qubit: int, shots_per_axis: int = DEFAULT_SHOTS, seed: int = 0) -> EntanglementEstimate:
    components = tuple(
        estimate_spin_component(sample_counts(state, qubit, axis, shots_per_axis, seed + offset))
        for offset, axis in enumerate(AXES)
    )
    value, std_error = entanglement_from_estimates(components)
    return EntanglementEstimate(value, std_error, components)


def estimate_entanglement(circuit: Circuit, qubit: int, shots_per_axis: int = DEFAULT_SHOTS, seed: int = 0) -> EntanglementEstimate:
    """Run ``circuit`` once and estimate the entanglement of ``qubit`` from sampled counts."""
    return estimate_state_entanglement(run(circuit), qubit, shots_per_axis, seed)
