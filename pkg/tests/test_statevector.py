import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from varent import (
    QubitIndexError,
    SizeError,
    StateVector,
    apply_cp,
    apply_rx,
    apply_ry,
    init_zero_state,
    inner_product,
    reduced_density_1q,
)
from dense import lift, random_state, reduced, rx_matrix, ry_matrix, cp_matrix

S2 = 1 / math.sqrt(2)
angles = st.floats(-20, 20, allow_nan=False)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_zero_state(n):
    s = init_zero_state(n)
    expected = np.zeros(2**n)
    expected[0] = 1
    np.testing.assert_array_equal(s.amplitudes, expected)
    assert s.n_qubits == n


@pytest.mark.parametrize("n", [0, 25, -1])
def test_zero_state_size_error(n):
    with pytest.raises(SizeError):
        init_zero_state(n)


def test_cap_is_configurable():
    assert init_zero_state(3, max_qubits=3).n_qubits == 3
    with pytest.raises(SizeError):
        init_zero_state(4, max_qubits=3)


def test_bad_amplitude_length():
    with pytest.raises(SizeError):
        StateVector(np.ones(3))


def test_ry_pi_flips():
    s = init_zero_state(1)
    apply_ry(s, 0, math.pi)
    np.testing.assert_allclose(s.amplitudes, [0, 1], atol=1e-15)


def test_ry_half_pi():
    s = init_zero_state(1)
    apply_ry(s, 0, math.pi / 2)
    np.testing.assert_allclose(s.amplitudes, [S2, S2], atol=1e-15)


def test_ry_on_high_qubit_sets_msb():
    s = init_zero_state(2)
    apply_ry(s, 1, math.pi)
    np.testing.assert_allclose(abs(s.amplitudes[2]), 1, atol=1e-15)


def test_rx_pi():
    s = init_zero_state(1)
    apply_rx(s, 0, math.pi)
    np.testing.assert_allclose(s.amplitudes, [0, -1j], atol=1e-15)


def test_rx_half_pi_maps_y_eigenstates_to_poles():
    plus_y = StateVector(np.array([S2, 1j * S2]))
    apply_rx(plus_y, 0, math.pi / 2)
    assert abs(abs(plus_y.amplitudes[0]) - 1) < 1e-12
    minus_y = StateVector(np.array([S2, -1j * S2]))
    apply_rx(minus_y, 0, math.pi / 2)
    assert abs(abs(minus_y.amplitudes[1]) - 1) < 1e-12


def test_cp_pi_on_11():
    s = StateVector(np.array([0, 0, 0, 1], dtype=complex))
    apply_cp(s, 0, 1, math.pi)
    np.testing.assert_allclose(s.amplitudes, [0, 0, 0, -1], atol=1e-15)


@pytest.mark.parametrize("phi", [0.3, math.pi, 5.0])
def test_cp_leaves_10_alone(phi):
    s = StateVector(np.array([0, 0, 1, 0], dtype=complex))
    apply_cp(s, 0, 1, phi)
    np.testing.assert_array_equal(s.amplitudes, [0, 0, 1, 0])


def test_cp_symmetric(rng):
    a = random_state(rng, 4)
    b = a.copy()
    apply_cp(a, 1, 3, 0.77)
    apply_cp(b, 3, 1, 0.77)
    np.testing.assert_array_equal(a.amplitudes, b.amplitudes)


@pytest.mark.parametrize("call", [
    lambda s: apply_ry(s, 3, 0.1),
    lambda s: apply_rx(s, -1, 0.1),
    lambda s: apply_cp(s, 0, 0, 0.1),
    lambda s: apply_cp(s, 0, 3, 0.1),
    lambda s: reduced_density_1q(s, 5),
])
def test_index_errors(call):
    with pytest.raises(QubitIndexError):
        call(init_zero_state(3))


def test_non_finite_angle():
    with pytest.raises(ValueError):
        apply_ry(init_zero_state(1), 0, float("nan"))


@pytest.mark.parametrize("n", [1, 3, 5])
def test_kernels_match_dense_matrices(rng, n):
    s = random_state(rng, n)
    psi = s.amplitudes.copy()
    for q in range(n):
        t1, t2 = rng.uniform(-7, 7, 2)
        apply_ry(s, q, t1)
        psi = lift(ry_matrix(t1), q, n) @ psi
        apply_rx(s, q, t2)
        psi = lift(rx_matrix(t2), q, n) @ psi
    for a in range(n):
        for b in range(a + 1, n):
            phi = rng.uniform(-7, 7)
            apply_cp(s, b, a, phi)
            psi = cp_matrix(a, b, phi, n) @ psi
    np.testing.assert_allclose(s.amplitudes, psi, atol=1e-12)


def test_inverse_rotations(rng):
    s = random_state(rng, 3)
    orig = s.amplitudes.copy()
    apply_ry(s, 1, 1.234)
    apply_ry(s, 1, -1.234)
    np.testing.assert_allclose(s.amplitudes, orig, atol=1e-12)
    apply_rx(s, 2, 0.4)
    apply_rx(s, 2, -0.4)
    np.testing.assert_allclose(s.amplitudes, orig, atol=1e-12)


def test_inner_products(rng):
    zero = init_zero_state(1)
    one = StateVector(np.array([0, 1], dtype=complex))
    plus = StateVector(np.array([S2, S2], dtype=complex))
    assert inner_product(zero, one) == 0
    assert abs(inner_product(zero, plus) - S2) < 1e-15
    psi = random_state(rng, 4)
    assert abs(inner_product(psi, psi) - 1) < 1e-12
    with pytest.raises(SizeError):
        inner_product(zero, psi)


def test_inner_product_conjugates_first():
    a = StateVector(np.array([S2, 1j * S2]))
    b = StateVector(np.array([0, 1], dtype=complex))
    assert abs(inner_product(a, b) - (-1j * S2)) < 1e-15


def test_reduced_density_examples():
    s = init_zero_state(3)
    np.testing.assert_allclose(reduced_density_1q(s, 0), [[1, 0], [0, 0]])
    bell = StateVector(np.array([S2, 0, 0, S2]))
    np.testing.assert_allclose(reduced_density_1q(bell, 0), np.eye(2) / 2, atol=1e-15)
    theta = 0.9
    s = init_zero_state(2)
    apply_ry(s, 0, theta)
    rho = reduced_density_1q(s, 0)
    bloch = (2 * rho[0, 1].real, -2 * rho[0, 1].imag, (rho[0, 0] - rho[1, 1]).real)
    np.testing.assert_allclose(bloch, (math.sin(theta), 0, math.cos(theta)), atol=1e-15)


@pytest.mark.parametrize("n", [1, 2, 4])
def test_reduced_density_matches_brute_force(rng, n):
    s = random_state(rng, n)
    for q in range(n):
        np.testing.assert_allclose(reduced_density_1q(s, q), reduced(s.amplitudes, q, n), atol=1e-13)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.sampled_from("yxc"), st.integers(0, 3), st.integers(0, 3), angles), max_size=30))
def test_norm_preserved(ops):
    s = init_zero_state(4)
    for kind, a, b, t in ops:
        if kind == "y":
            apply_ry(s, a, t)
        elif kind == "x":
            apply_rx(s, a, t)
        elif a != b:
            apply_cp(s, a, b, t)
    assert abs(s.norm_squared() - 1) < 1e-12
    rho = reduced_density_1q(s, 2)
    assert abs(np.trace(rho) - 1) < 1e-12
    np.testing.assert_allclose(rho, rho.conj().T, atol=1e-15)
    eig = np.linalg.eigvalsh(rho)
    assert eig.min() > -1e-10 and eig.max() < 1 + 1e-10


@settings(max_examples=30, deadline=None)
@given(st.permutations([(0, 1, 0.3), (1, 2, 1.1), (0, 3, 2.5), (2, 3, -0.8), (1, 3, 4.0)]))
def test_cp_gates_commute(order):
    base = init_zero_state(4)
    for q in range(4):
        apply_ry(base, q, 0.4 + q)
    ref = base.copy()
    for a, b, phi in sorted(order):
        apply_cp(ref, a, b, phi)
    for a, b, phi in order:
        apply_cp(base, a, b, phi)
    np.testing.assert_allclose(base.amplitudes, ref.amplitudes, atol=1e-15)


def test_ry_two_pi_periodicity(rng):
    s1 = random_state(rng, 3)
    s2 = s1.copy()
    apply_ry(s1, 1, 0.6)
    apply_ry(s2, 1, 0.6 + 2 * math.pi)
    np.testing.assert_allclose(s2.amplitudes, -s1.amplitudes, atol=1e-12)
    np.testing.assert_allclose(reduced_density_1q(s1, 0), reduced_density_1q(s2, 0), atol=1e-12)
