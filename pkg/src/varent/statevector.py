"""
Dense statevector with in-place RY, RX and controlled-phase kernels.

Amplitude index ``i`` encodes the computational basis label with qubit 0 as
the least significant bit: ``|q[n-1] ... q[1] q[0]>``.

Rotations use the half-angle convention ``R(theta) = exp(-i theta sigma / 2)``.
Kernels are numba-compiled loops over bit-inserted index pairs; they touch each
amplitude once and never allocate.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numba import njit

from .errors import QubitIndexError, SizeError

MAX_QUBITS = 24


@njit(cache=True, nogil=True)
def _rotate_real(amps, qubit, c, s):
    # [[c, -s], [s, c]] on every (bit=0, bit=1) pair
    mask = 1 << qubit
    low = mask - 1
    for g in range(amps.shape[0] >> 1):
        i0 = ((g >> qubit) << (qubit + 1)) | (g & low)
        i1 = i0 | mask
        a = amps[i0]
        b = amps[i1]
        amps[i0] = c * a - s * b
        amps[i1] = s * a + c * b


@njit(cache=True, nogil=True)
def _rotate_x(amps, qubit, c, s):
    # [[c, -i s], [-i s, c]]
    mask = 1 << qubit
    low = mask - 1
    ms = -1j * s
    for g in range(amps.shape[0] >> 1):
        i0 = ((g >> qubit) << (qubit + 1)) | (g & low)
        i1 = i0 | mask
        a = amps[i0]
        b = amps[i1]
        amps[i0] = c * a + ms * b
        amps[i1] = ms * a + c * b


@njit(cache=True, nogil=True)
def _phase_both_set(amps, lo, hi, phase):
    # visit only indices with bits lo and hi both set
    lo_mask = (1 << lo) - 1
    hi_mask = (1 << hi) - 1
    both = (1 << lo) | (1 << hi)
    for g in range(amps.shape[0] >> 2):
        i = ((g >> lo) << (lo + 1)) | (g & lo_mask)
        i = ((i >> hi) << (hi + 1)) | (i & hi_mask)
        amps[i | both] *= phase


@njit(cache=True, nogil=True)
def _reduced_1q(amps, qubit):
    mask = 1 << qubit
    low = mask - 1
    r00 = 0.0
    r11 = 0.0
    r01 = 0j
    for g in range(amps.shape[0] >> 1):
        i0 = ((g >> qubit) << (qubit + 1)) | (g & low)
        a = amps[i0]
        b = amps[i0 | mask]
        r00 += a.real * a.real + a.imag * a.imag
        r11 += b.real * b.real + b.imag * b.imag
        r01 += a * b.conjugate()
    return r00, r11, r01


@dataclass(eq=False)
class StateVector:
    """Amplitudes of an ``n_qubits`` register; mutated in place by the gate functions."""

    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.ascontiguousarray(self.amplitudes, dtype=np.complex128)
        if amps.ndim != 1 or amps.size < 2 or amps.size & (amps.size - 1):
            raise SizeError(f"amplitude array length {amps.size} is not 2**n with n >= 1")
        self.amplitudes = amps

    @property
    def n_qubits(self) -> int:
        return self.amplitudes.size.bit_length() - 1

    def copy(self) -> StateVector:
        return StateVector(self.amplitudes.copy())

    def norm_squared(self) -> float:
        return float(np.vdot(self.amplitudes, self.amplitudes).real)

    def __len__(self):
        return self.amplitudes.size


def _check_angle(theta) -> float:
    theta = float(theta)
    if not math.isfinite(theta):
        raise ValueError(f"gate angle must be finite, got {theta}")
    return theta


def _check_qubit(state: StateVector, qubit) -> int:
    n = state.n_qubits
    if not isinstance(qubit, (int, np.integer)) or not 0 <= qubit < n:
        raise QubitIndexError(f"qubit {qubit!r} out of range for {n}-qubit state")
    return int(qubit)


def init_zero_state(n_qubits: int, max_qubits: int = MAX_QUBITS) -> StateVector:
    """Return ``|0...0>`` on ``n_qubits`` qubits."""
    if not isinstance(n_qubits, (int, np.integer)) or not 1 <= n_qubits <= max_qubits:
        raise SizeError(f"n_qubits must be in [1, {max_qubits}], got {n_qubits!r}")
    amps = np.zeros(1 << int(n_qubits), dtype=np.complex128)
    amps[0] = 1.0
    return StateVector(amps)


def apply_ry(state: StateVector, qubit: int, theta: float) -> None:
    qubit = _check_qubit(state, qubit)
    half = 0.5 * _check_angle(theta)
    _rotate_real(state.amplitudes, qubit, math.cos(half), math.sin(half))


def apply_rx(state: StateVector, qubit: int, theta: float) -> None:
    qubit = _check_qubit(state, qubit)
    half = 0.5 * _check_angle(theta)
    _rotate_x(state.amplitudes, qubit, math.cos(half), math.sin(half))


def apply_cp(state: StateVector, qubit_a: int, qubit_b: int, phi: float) -> None:
    """Multiply amplitudes whose ``qubit_a`` and ``qubit_b`` bits are both 1 by ``exp(i phi)``."""
    qubit_a = _check_qubit(state, qubit_a)
    qubit_b = _check_qubit(state, qubit_b)
    if qubit_a == qubit_b:
        raise QubitIndexError(f"controlled phase needs two distinct qubits, got {qubit_a} twice")
    phi = _check_angle(phi)
    lo, hi = sorted((qubit_a, qubit_b))
    _phase_both_set(state.amplitudes, lo, hi, complex(math.cos(phi), math.sin(phi)))


def inner_product(a: StateVector, b: StateVector) -> complex:
    """``<a|b>``, conjugating the first argument."""
    if len(a) != len(b):
        raise SizeError(f"dimension mismatch: {len(a)} vs {len(b)}")
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def reduced_density_1q(state: StateVector, qubit: int) -> np.ndarray:
    """
    Reduced 2x2 density matrix of one qubit, tracing out the rest.

    ``rho[s, t] = sum_c a(s, c) conj(a(t, c))`` over configurations ``c`` of the
    other qubits.
    """
    qubit = _check_qubit(state, qubit)
    r00, r11, r01 = _reduced_1q(state.amplitudes, qubit)
    return np.array([[r00, r01], [np.conj(r01), r11]], dtype=np.complex128)
