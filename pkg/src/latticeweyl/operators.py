"""Dense complex-matrix helpers: products, brackets, exponentials, tensors."""

import numpy as np
import scipy.linalg

from .errors import ConvergenceFailure, DimMismatch

# Pauli matrices, used throughout the transformation zoo.
SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
SIGMA_PLUS = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
SIGMA_MINUS = np.array([[0.0, 0.0], [1.0, 0.0]], dtype=complex)


def _check_same_shape(A: np.ndarray, B: np.ndarray):
    if A.shape != B.shape or A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DimMismatch(f"incompatible operator shapes {A.shape} vs {B.shape}")


def commutator(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """[A, B] = AB - BA."""
    _check_same_shape(A, B)
    return A @ B - B @ A


def anticommutator(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """{A, B} = AB + BA."""
    _check_same_shape(A, B)
    return A @ B + B @ A


def dagger(A: np.ndarray) -> np.ndarray:
    return A.conj().T


def tensor(*ops: np.ndarray) -> np.ndarray:
    """Kronecker product of any number of operators, left to right."""
    out = np.asarray(ops[0], dtype=complex)
    for op in ops[1:]:
        out = np.kron(out, op)
    return out


def mat_exp(A: np.ndarray, tolerance: float = 1e-12) -> np.ndarray:
    """Matrix exponential with a residual check against the defining ODE.

    Uses an eigendecomposition for normal matrices and scaling-and-squaring
    (scipy expm) otherwise.
    """
    A = np.asarray(A, dtype=complex)
    if not np.all(np.isfinite(A)):
        raise ConvergenceFailure("non-finite entries in matrix exponent")
    if np.allclose(A @ dagger(A), dagger(A) @ A, atol=1e-13):
        w, V = np.linalg.eig(A)
        E = (V * np.exp(w)) @ np.linalg.inv(V)
    else:
        E = scipy.linalg.expm(A)
    # exp(A) exp(-A) = I is a cheap independent residual; only meaningful
    # at moderate norms where the product is well conditioned
    if np.linalg.norm(A) <= 10.0:
        resid = np.abs(E @ scipy.linalg.expm(-A) - np.eye(A.shape[0])).max()
        if resid > max(tolerance, 1e-10):
            raise ConvergenceFailure(f"matrix exponential residual {resid:.3e}")
    return E


def is_hermitian(A: np.ndarray, tol: float = 1e-10) -> bool:
    return bool(np.abs(A - dagger(A)).max() <= tol)


def is_unitary(A: np.ndarray, tol: float = 1e-10) -> bool:
    return bool(np.abs(A @ dagger(A) - np.eye(A.shape[0])).max() <= tol)
