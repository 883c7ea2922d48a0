"""Computational and Fourier bases, their projective measurements, and the
mutual-unbiasedness check."""
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DomainError, ShapeError

__all__ = [
    "BasisSet",
    "MeasurementSet",
    "computational_basis",
    "fourier_basis",
    "projectors",
    "check_unbiased",
]


@dataclass(frozen=True, eq=False)
class BasisSet:
    """Orthonormal basis stored as the columns of a ``dim x dim`` unitary."""

    dim: int
    label: str
    vectors: np.ndarray

    def vector(self, n: int) -> np.ndarray:
        return self.vectors[:, n]


@dataclass(frozen=True, eq=False)
class MeasurementSet:
    """Rank-1 projectors ``elements[n] = |v_n><v_n|`` in basis order."""

    dim: int
    label: str
    elements: np.ndarray  # shape (dim, dim, dim)
    vectors: Optional[np.ndarray] = None  # columns |v_n>, when rank-1

    def __len__(self) -> int:
        return self.elements.shape[0]

    def __getitem__(self, n: int) -> np.ndarray:
        return self.elements[n]

    def __iter__(self):
        return iter(self.elements)


def _check_dim(d: int) -> int:
    if isinstance(d, bool) or int(d) != d or d < 1:
        raise DomainError(f"dimension must be a positive integer, got {d!r}")
    return int(d)


def computational_basis(d: int) -> BasisSet:
    d = _check_dim(d)
    return BasisSet(d, "computational", np.eye(d, dtype=np.complex128))


def fourier_basis(d: int) -> BasisSet:
    """|f_j> = d^{-1/2} sum_k w^{jk} |k>, w = exp(-2 pi i / d), j, k = 0..d-1."""
    d = _check_dim(d)
    jk = np.outer(np.arange(d), np.arange(d)) % d  # reduce before scaling the phase
    vectors = _roots_of_unity(d)[jk] / np.sqrt(d)
    return BasisSet(d, "fourier", vectors)


def _roots_of_unity(d: int) -> np.ndarray:
    """exp(-2 pi i m / d), m = 0..d-1, exact at the quarter turns."""
    m = np.arange(d)
    roots = np.exp(-2j * np.pi * m / d)
    exact = {0: 1.0, 1: -1j, 2: -1.0, 3: 1j}
    for k in m[(4 * m) % d == 0]:
        roots[k] = exact[4 * k // d]
    return roots


def projectors(b: BasisSet) -> MeasurementSet:
    v = b.vectors
    elements = np.einsum("in,jn->nij", v, v.conj())
    return MeasurementSet(b.dim, b.label, elements, b.vectors)


def check_unbiased(a: BasisSet, b: BasisSet, tol: float = 1e-10) -> bool:
    """True iff every overlap |<a_i|b_j>| equals 1/sqrt(d) within ``tol``."""
    if a.dim != b.dim:
        raise ShapeError(f"basis dimensions differ: {a.dim} vs {b.dim}")
    overlaps = np.abs(a.vectors.conj().T @ b.vectors)
    return bool(np.all(np.abs(overlaps - 1.0 / np.sqrt(a.dim)) <= tol))
