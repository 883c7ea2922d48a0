"""Dense complex matrix helpers.

Matrices are plain ``numpy.ndarray`` objects of dtype ``complex128``. The
two-party space is always ordered control ⊗ system, so the control index
selects ``dim_system``-sized blocks.
"""
from typing import Literal, NamedTuple

import numpy as np

from . import kernels
from .errors import DomainError, ShapeError

__all__ = [
    "Spectrum",
    "as_matrix",
    "matmul",
    "adjoint",
    "kron",
    "partial_trace",
    "hermitian_spectrum",
    "eigvals_hermitian",
    "is_hermitian",
    "PAULI_X",
    "PAULI_Y",
    "PAULI_Z",
]

PAULI_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)

# Jacobi stops once the off-diagonal Frobenius mass is below this fraction of
# the total; 1e-15 keeps reconstruction under 1e-12 up to side 128.
_JACOBI_REL_TOL = 1e-15
_JACOBI_MAX_SWEEPS = 60


class Spectrum(NamedTuple):
    """Eigenvalues in descending order, with eigenvectors as columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def as_matrix(a) -> np.ndarray:
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2:
        raise ShapeError(f"expected a 2-d matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise DomainError("matrix has non-finite entries")
    return m


def matmul(a, b) -> np.ndarray:
    a, b = as_matrix(a), as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise ShapeError(f"cannot multiply {a.shape} by {b.shape}")
    return a @ b


def adjoint(a) -> np.ndarray:
    return as_matrix(a).conj().T


def kron(a, b) -> np.ndarray:
    """Kronecker product; ``a`` indexes the outer (block) factor."""
    return np.kron(as_matrix(a), as_matrix(b))


def partial_trace(
    a,
    dim_control: int,
    dim_system: int,
    keep: Literal["control", "system"] = "system",
) -> np.ndarray:
    """Reduce a control ⊗ system operator to one factor.

    Args:
        a: square matrix of side ``dim_control * dim_system``.
        dim_control: dimension of the outer (block-index) factor.
        dim_system: dimension of the inner factor.
        keep: which factor survives.
    """
    a = as_matrix(a)
    side = dim_control * dim_system
    if a.shape != (side, side):
        raise ShapeError(
            f"matrix of shape {a.shape} is not {side}x{side} "
            f"(= {dim_control} x {dim_system})"
        )
    t = a.reshape(dim_control, dim_system, dim_control, dim_system)
    if keep == "system":
        return np.einsum("iaib->ab", t)
    if keep == "control":
        return np.einsum("iaja->ij", t)
    raise ValueError(f"keep must be 'control' or 'system', not {keep!r}")


def is_hermitian(a, tol: float = 1e-10) -> bool:
    a = as_matrix(a)
    if a.shape[0] != a.shape[1]:
        return False
    return bool(np.max(np.abs(a - a.conj().T), initial=0.0) <= tol)


def _symmetrized(a) -> np.ndarray:
    a = as_matrix(a)
    if a.shape[0] != a.shape[1]:
        raise ShapeError(f"expected a square matrix, got {a.shape}")
    scale = max(1.0, float(np.max(np.abs(a), initial=0.0)))
    dev = float(np.max(np.abs(a - a.conj().T), initial=0.0))
    if dev > 1e-10 * scale:
        raise DomainError(f"matrix is not Hermitian (max |A - A^H| = {dev:.3e})")
    return np.ascontiguousarray(0.5 * (a + a.conj().T))


def hermitian_spectrum(a) -> Spectrum:
    """Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.

    The input is symmetrised as (A + A^H)/2 after checking it is Hermitian to
    1e-10 (relative to max(1, max|A_ij|)). Eigenvalues come back in
    descending order. The result depends only on the input bits.
    """
    h = _symmetrized(a)
    w, v, _ = kernels.jacobi_eigh(h, _JACOBI_REL_TOL, _JACOBI_MAX_SWEEPS)
    order = np.argsort(-w, kind="stable")
    return Spectrum(w[order], v[:, order])


def eigvals_hermitian(a) -> np.ndarray:
    """Descending eigenvalues of a Hermitian matrix."""
    return hermitian_spectrum(a).eigenvalues
