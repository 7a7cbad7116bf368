import numpy as np
import pytest

from latticeweyl import (DimMismatch, NotDensityMatrix, QubitModeUnsupported,
                         characteristic, clock_z, delta_projector,
                         delta_projector_momentum, dft_matrix, displacement,
                         from_symbol, make_space, qubit_paulis, shift_x,
                         smoothed_distribution, weyl_symbol, wigner_function)


def rand_density(rng, n):
    A = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    rho = A @ A.conj().T
    return rho / np.trace(rho).real


def test_shift_clock_weyl_relation():
    for N in (3, 5, 7):
        space = make_space(N)
        X, Z = shift_x(space), clock_z(space)
        assert np.abs(Z @ X - space.omega[1] * X @ Z).max() < 1e-13
        assert np.abs(np.linalg.matrix_power(X, N) - np.eye(N)).max() < 1e-12
        assert np.abs(np.linalg.matrix_power(Z, N) - np.eye(N)).max() < 1e-12


def test_displacement_composition_exhaustive_n3():
    space = make_space(3)
    for u1 in range(3):
        for v1 in range(3):
            for u2 in range(3):
                for v2 in range(3):
                    lhs = displacement(space, u1, v1) @ displacement(space, u2, v2)
                    phase = space.phase((u1 * v2 - v1 * u2) * space.inv2)
                    rhs = phase * displacement(space, u1 + u2, v1 + v2)
                    assert np.abs(lhs - rhs).max() < 1e-13


def test_displacement_traces():
    space = make_space(5)
    for u in range(5):
        for v in range(5):
            tr = np.trace(displacement(space, u, v))
            want = 5.0 if (u % 5 == 0 and v % 5 == 0) else 0.0
            assert abs(tr - want) < 1e-12


def test_delta_two_forms_agree():
    for N in (3, 5, 7):
        space = make_space(N)
        for p in range(N):
            for q in range(N):
                a = delta_projector(space, p, q)
                b = delta_projector_momentum(space, p, q)
                assert np.abs(a - b).max() < 1e-12


def test_round_trip_and_hermiticity_transfer():
    rng = np.random.default_rng(21)
    space = make_space(7)
    A = rng.normal(size=(7, 7)) + 1j * rng.normal(size=(7, 7))
    assert np.abs(from_symbol(weyl_symbol(A, space)) - A).max() < 1e-12
    H = (A + A.conj().T) / 2
    assert np.abs(weyl_symbol(H, space).grid.imag).max() < 1e-10


def test_translation_covariance_exhaustive_n5():
    rng = np.random.default_rng(22)
    space = make_space(5)
    A = rng.normal(size=(5, 5)) + 1j * rng.normal(size=(5, 5))
    sym = weyl_symbol(A, space).grid
    for a in range(5):
        X = shift_x(space, a)
        shifted = weyl_symbol(X @ A @ X.conj().T, space).grid
        for p in range(5):
            for q in range(5):
                assert abs(shifted[p, q] - sym[p, (q - a) % 5]) < 1e-11


def test_wigner_rejects_non_density():
    space = make_space(5)
    with pytest.raises(NotDensityMatrix):
        wigner_function(np.eye(5, dtype=complex), space)  # trace 5
    with pytest.raises(DimMismatch):
        weyl_symbol(np.eye(3, dtype=complex), space)


def test_position_state_wigner_is_strip():
    space = make_space(7)
    rho = np.zeros((7, 7), dtype=complex)
    rho[2, 2] = 1.0
    W = wigner_function(rho, space).grid
    want = np.zeros((7, 7))
    want[:, 2] = 1.0 / 7.0
    assert np.abs(W - want).max() < 1e-12


def test_characteristic_cross_ordering_operator_oracle():
    rng = np.random.default_rng(23)
    space = make_space(5)
    A = rng.normal(size=(5, 5)) + 1j * rng.normal(size=(5, 5))
    cn = characteristic(A, space, "normal").grid
    ca = characteristic(A, space, "antinormal").grid
    for u in range(5):
        for v in range(5):
            opn = shift_x(space, 2 * v) @ clock_z(space, 2 * u)
            opa = clock_z(space, 2 * u) @ shift_x(space, 2 * v)
            assert abs(cn[u, v] - np.trace(A @ opn)) < 1e-12
            assert abs(ca[u, v] - np.trace(A @ opa)) < 1e-12


def test_smoothing_with_unit_filter_recovers_symbol():
    rng = np.random.default_rng(24)
    space = make_space(7)
    A = rng.normal(size=(7, 7)) + 1j * rng.normal(size=(7, 7))
    f = smoothed_distribution(A, space, lambda u, v: 1.0)
    assert np.abs(f.grid - weyl_symbol(A, space).grid).max() < 1e-10


def test_smoothing_gaussian_sum_preserved():
    # g(0,0) = 1 fixes the total mass: sum of the smoothed distribution
    # of a density matrix equals N * 1 regardless of the filter width
    rng = np.random.default_rng(25)
    space = make_space(5)
    rho = rand_density(rng, 5)
    f = smoothed_distribution(rho, space,
                              lambda u, v: np.exp(-0.3 * (u * u + v * v)))
    assert abs(f.grid.sum() - 5.0) < 1e-10


def test_qubit_mode():
    space = make_space(2)
    with pytest.raises(QubitModeUnsupported):
        displacement(space, 1, 1)
    X, Z, H = qubit_paulis()
    assert np.abs(H @ H - np.eye(2)).max() < 1e-15
    assert np.abs(H @ Z @ H - X).max() < 1e-15
    assert np.abs(X @ Z + Z @ X).max() == 0.0
    assert np.abs(H - dft_matrix(space)).max() < 1e-15
