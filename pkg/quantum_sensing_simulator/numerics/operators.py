"""Dense complex operators of dimension 2, 3 or 4 and the few linear algebra routines built on them."""

from __future__ import annotations
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt
import scipy.linalg

from quantum_sensing_simulator.settings.settings import Settings

Operator = npt.NDArray[np.complex128]

SUPPORTED_DIMENSIONS = (2, 3, 4)

IDENTITY_2: Operator = np.eye(2, dtype=complex)
IDENTITY_4: Operator = np.eye(4, dtype=complex)
SIGMA_X: Operator = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y: Operator = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z: Operator = np.array([[1, 0], [0, -1]], dtype=complex)


@dataclass
class InvalidOperator(ValueError):
    shape: tuple[int, ...]
    reason: str

    def __repr__(self):
        return f"InvalidOperator: operator of shape {self.shape} rejected: {self.reason}"


@dataclass
class NotHermitian(ValueError):
    deviation: float
    tolerance: float

    def __repr__(self):
        return f"NotHermitian: max |h - h^dagger| = {self.deviation:.3e} exceeds tolerance {self.tolerance:.1e}"


@dataclass
class NotUnitary(ValueError):
    deviation: float
    tolerance: float

    def __repr__(self):
        return f"NotUnitary: max |u u^dagger - I| = {self.deviation:.3e} exceeds tolerance {self.tolerance:.1e}"


def as_operator(entries: npt.ArrayLike) -> Operator:
    """Converts entries to a complex square operator and checks the dimension and finiteness.

    Args:
        entries (npt.ArrayLike): Row-major square matrix.

    Raises:
        InvalidOperator: If the matrix is not square, has an unsupported dimension or non-finite entries.

    Returns:
        Operator: The entries as complex ndarray.
    """
    matrix = np.asarray(entries, dtype=complex)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise InvalidOperator(shape=matrix.shape, reason="not a square matrix")
    if matrix.shape[0] not in SUPPORTED_DIMENSIONS:
        raise InvalidOperator(shape=matrix.shape, reason="unsupported dimension")
    if not np.all(np.isfinite(matrix)):
        raise InvalidOperator(shape=matrix.shape, reason="non-finite entries")
    return matrix


def dagger(a: Operator) -> Operator:
    return a.conj().T


def kron(a: Operator, b: Operator) -> Operator:
    """Kronecker product a ⊗ b, the first factor being the electron (sensor) spin."""
    return np.kron(a, b)


def electron_operator(op: Operator) -> Operator:
    """Embeds a single-spin operator into the electron factor, op ⊗ I."""
    return kron(op, IDENTITY_2)


def nuclear_operator(op: Operator) -> Operator:
    """Embeds a single-spin operator into the nuclear factor, I ⊗ op."""
    return kron(IDENTITY_2, op)


def hermiticity_deviation(h: Operator) -> float:
    return float(np.max(np.abs(h - dagger(h))))


def unitarity_deviation(u: Operator) -> float:
    return float(np.max(np.abs(u @ dagger(u) - np.eye(u.shape[0]))))


def check_hermitian(
    h: Operator, tolerance: float = Settings().get()["hermitian_tolerance"]
):
    deviation = hermiticity_deviation(h)
    if deviation > tolerance:
        raise NotHermitian(deviation=deviation, tolerance=tolerance)


def check_unitary(u: Operator, tolerance: float = Settings().get()["unitary_tolerance"]):
    deviation = unitarity_deviation(u)
    if deviation > tolerance:
        raise NotUnitary(deviation=deviation, tolerance=tolerance)


def eig_hermitian(h: Operator) -> tuple[npt.NDArray[np.float64], Operator]:
    """Eigendecomposition of a Hermitian operator.

    Args:
        h (Operator): Hermitian operator.

    Raises:
        NotHermitian: If h deviates from its adjoint by more than the Hermiticity tolerance.

    Returns:
        tuple[npt.NDArray[np.float64], Operator]: Ascending eigenvalues and the unitary whose columns are the eigenvectors.
    """
    check_hermitian(h)
    # symmetrize so that eigh sees an exactly Hermitian input
    eigenvalues, eigenvectors = np.linalg.eigh((h + dagger(h)) / 2)
    return eigenvalues, eigenvectors


def expm(h: Operator, scale: complex, hermitian: bool = True) -> Operator:
    """Matrix exponential exp(scale * h).

    The Hermitian path goes through the spectral decomposition, so exp(-i t h) is unitary to machine precision.
    The general path (hermitian=False) delegates to scipy.linalg.expm.

    Args:
        h (Operator): The generator.
        scale (complex): Factor multiplying h in the exponent, e.g. -1j * t.
        hermitian (bool, optional): Whether to use the Hermitian fast path. Defaults to True.

    Raises:
        NotHermitian: If the Hermitian path is requested for a non-Hermitian h.

    Returns:
        Operator: exp(scale * h).
    """
    if not hermitian:
        return scipy.linalg.expm(scale * np.asarray(h, dtype=complex))
    eigenvalues, eigenvectors = eig_hermitian(h)
    return (eigenvectors * np.exp(scale * eigenvalues)) @ dagger(eigenvectors)


def distance_to_identity(u: Operator) -> float:
    """Largest entry of |u - e^{iγ} I| for the global phase γ closest to u."""
    trace = np.trace(u)
    phase = trace / abs(trace) if abs(trace) > 0 else 1.0
    return float(np.max(np.abs(u - phase * np.eye(u.shape[0]))))
