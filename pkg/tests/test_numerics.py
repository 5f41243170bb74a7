import unittest
import math

import numpy as np
from numpy.testing import assert_allclose

from quantum_sensing_simulator.numerics import (
    IDENTITY_2,
    IDENTITY_4,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    InvalidOperator,
    NotHermitian,
    NotUnitary,
    as_operator,
    check_hermitian,
    check_unitary,
    dagger,
    distance_to_identity,
    eig_hermitian,
    electron_operator,
    expm,
    kron,
    nuclear_operator,
)
from quantum_sensing_simulator.evolution import DriveParams, target_unitary, two_spin_hamiltonian


def taylor_expm(h: np.ndarray, scale: complex, order: int = 30) -> np.ndarray:
    """exp(scale * h) by a truncated Taylor series on a scaled-down argument, squared back up."""
    x = scale * np.asarray(h, dtype=complex)
    squarings = max(0, int(np.ceil(np.log2(max(np.linalg.norm(x, 2), 1e-300) / 0.5))))
    x = x / 2**squarings
    result = np.eye(x.shape[0], dtype=complex)
    term = np.eye(x.shape[0], dtype=complex)
    for k in range(1, order + 1):
        term = term @ x / k
        result = result + term
    for _ in range(squarings):
        result = result @ result
    return result


def random_hermitian(rng: np.random.Generator, size: int = 4) -> np.ndarray:
    m = rng.normal(size=(size, size)) + 1j * rng.normal(size=(size, size))
    return (m + m.conj().T) / 2


class TestOperators(unittest.TestCase):
    def test_as_operator(self):
        op = as_operator([[1, 0], [0, 1]])
        self.assertEqual(op.dtype, np.complex128)
        assert_allclose(op, IDENTITY_2)
        with self.assertRaises(InvalidOperator):
            as_operator([[1, 0, 0], [0, 1, 0]])
        with self.assertRaises(InvalidOperator):
            as_operator(np.eye(5))
        with self.assertRaises(InvalidOperator):
            as_operator([[1, np.nan], [0, 1]])

    def test_pauli_algebra(self):
        assert_allclose(SIGMA_X @ SIGMA_Y, 1j * SIGMA_Z)
        for sigma in (SIGMA_X, SIGMA_Y, SIGMA_Z):
            assert_allclose(sigma @ sigma, IDENTITY_2)
            assert_allclose(dagger(sigma), sigma)

    def test_embedding(self):
        assert_allclose(electron_operator(SIGMA_Z), np.diag([1, 1, -1, -1]))
        assert_allclose(nuclear_operator(SIGMA_Z), np.diag([1, -1, 1, -1]))
        assert_allclose(kron(IDENTITY_2, IDENTITY_2), IDENTITY_4)

    def test_checks(self):
        check_hermitian(SIGMA_Y)
        with self.assertRaises(NotHermitian):
            check_hermitian(np.array([[0, 1], [0, 0]], dtype=complex))
        check_unitary(SIGMA_X)
        with self.assertRaises(NotUnitary):
            check_unitary(2 * IDENTITY_2)

    def test_eig_hermitian(self):
        h = electron_operator(SIGMA_X) + 0.5 * nuclear_operator(SIGMA_Z)
        eigenvalues, vectors = eig_hermitian(h)
        self.assertTrue(np.all(np.diff(eigenvalues) >= 0))
        assert_allclose(vectors @ np.diag(eigenvalues) @ dagger(vectors), h, atol=1e-12)

    def test_expm_rotation(self):
        t = 0.7
        u = expm(SIGMA_Z, -1j * t)
        assert_allclose(u, np.diag([np.exp(-1j * t), np.exp(1j * t)]), atol=1e-14)
        # e^{-iθσx} = cosθ I - i sinθ σx
        assert_allclose(
            expm(SIGMA_X, -1j * t), math.cos(t) * IDENTITY_2 - 1j * math.sin(t) * SIGMA_X, atol=1e-14
        )

    def test_expm_paths_agree(self):
        h = kron(SIGMA_X, SIGMA_Y) + 0.3 * electron_operator(SIGMA_Z)
        assert_allclose(expm(h, -0.4j), expm(h, -0.4j, hermitian=False), atol=1e-12)
        check_unitary(expm(h, -123.4j))

    def test_expm_rejects_non_hermitian(self):
        with self.assertRaises(NotHermitian):
            expm(np.array([[0, 1], [0, 0]], dtype=complex), -1j)
        # the general path accepts it: exp of a nilpotent matrix is I + N
        assert_allclose(
            expm(np.array([[0, 1], [0, 0]], dtype=complex), 1.0, hermitian=False),
            np.array([[1, 1], [0, 1]]),
            atol=1e-14,
        )

    def test_distance_to_identity(self):
        self.assertAlmostEqual(distance_to_identity(np.exp(0.3j) * IDENTITY_4), 0.0, places=14)
        self.assertAlmostEqual(distance_to_identity(-IDENTITY_2), 0.0, places=14)
        self.assertGreater(distance_to_identity(SIGMA_Z), 0.5)

    def test_eig_hermitian_reconstructs_random_operators(self):
        rng = np.random.default_rng(7)
        for _ in range(20):
            h = random_hermitian(rng)
            eigenvalues, vectors = eig_hermitian(h)
            assert_allclose(vectors @ np.diag(eigenvalues) @ dagger(vectors), h, atol=1e-9)


class TestTaylorReference(unittest.TestCase):
    def test_reference_on_known_rotation(self):
        t = 1.3
        assert_allclose(
            taylor_expm(SIGMA_X, -1j * t), math.cos(t) * IDENTITY_2 - 1j * math.sin(t) * SIGMA_X, atol=1e-13
        )

    def test_expm_matches_taylor_series(self):
        rng = np.random.default_rng(11)
        for t in (0.05, 0.7, 3.0):
            for _ in range(10):
                h = random_hermitian(rng)
                u = expm(h, -1j * t)
                assert_allclose(u, taylor_expm(h, -1j * t), atol=1e-10)
                check_unitary(u)
                assert_allclose(expm(h, -1j * t, hermitian=False), taylor_expm(h, -1j * t), atol=1e-10)

    def test_target_unitary_matches_taylor_series(self):
        rng = np.random.default_rng(13)
        for _ in range(10):
            p = DriveParams(
                float(rng.uniform(1.0, 80.0)), float(rng.uniform(-20.0, 20.0)), float(rng.uniform(-math.pi, math.pi))
            )
            A = float(rng.uniform(-15.0, 15.0))
            t = float(rng.uniform(0.005, 0.05))
            expected = taylor_expm(electron_operator(SIGMA_Z), 1j * p.delta * t / 2) @ taylor_expm(
                two_spin_hamiltonian(p, A), -1j * t
            )
            assert_allclose(target_unitary(p, A, t), expected, atol=1e-10)
