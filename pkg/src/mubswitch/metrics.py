"""Distances and information measures on density matrices.

Entropies are in bits. Eigenvalues in [-1e-10, 0) are treated as zero.
"""
import math
from dataclasses import asdict, dataclass
from typing import Optional

import numpy as np

from .errors import ShapeError
from .linalg import as_matrix, eigvals_hermitian, hermitian_spectrum

__all__ = [
    "MetricsRecord",
    "trace_norm",
    "trace_distance",
    "l1_coherence",
    "purity",
    "von_neumann_entropy",
    "relative_entropy",
]

SUPPORT_TOL = 1e-12
CLAMP_TOL = 1e-10


def _same_shape(rho, sigma):
    rho, sigma = as_matrix(rho), as_matrix(sigma)
    if rho.shape != sigma.shape or rho.shape[0] != rho.shape[1]:
        raise ShapeError(f"shapes {rho.shape} and {sigma.shape} are not equal square matrices")
    return rho, sigma


def _clamp(w: np.ndarray) -> np.ndarray:
    w = w.copy()
    w[(w < 0.0) & (w >= -CLAMP_TOL)] = 0.0
    return w


def trace_norm(a) -> float:
    """Sum of absolute eigenvalues of a Hermitian matrix."""
    return float(np.sum(np.abs(eigvals_hermitian(a))))


def trace_distance(rho, sigma) -> float:
    rho, sigma = _same_shape(rho, sigma)
    return 0.5 * trace_norm(rho - sigma)


def l1_coherence(rho) -> float:
    """Sum of off-diagonal moduli in the computational basis."""
    rho = as_matrix(rho)
    off = ~np.eye(rho.shape[0], rho.shape[1], dtype=bool)
    return float(np.abs(rho[off]).sum())


def purity(rho) -> float:
    rho = as_matrix(rho)
    # tr(rho^2) = sum |rho_ij|^2 for Hermitian rho
    return float(np.sum(np.abs(rho) ** 2))


def von_neumann_entropy(rho) -> float:
    w = _clamp(eigvals_hermitian(rho))
    w = w[w > SUPPORT_TOL]
    return float(-np.sum(w * np.log2(w)))


def relative_entropy(rho, sigma) -> float:
    """tr rho (log2 rho - log2 sigma), or ``math.inf`` when the support of
    ``rho`` is not contained in that of ``sigma``."""
    rho, sigma = _same_shape(rho, sigma)
    w_rho = _clamp(eigvals_hermitian(rho))
    w_rho = w_rho[w_rho > SUPPORT_TOL]
    neg_entropy = float(np.sum(w_rho * np.log2(w_rho)))

    mu, vecs = hermitian_spectrum(sigma)
    mu = _clamp(mu)
    # weight of rho along each eigenvector of sigma
    weights = np.einsum("ik,ij,jk->k", vecs.conj(), rho, vecs).real
    inside = mu > SUPPORT_TOL
    if np.any(weights[~inside] > SUPPORT_TOL):
        return math.inf
    cross = float(np.sum(weights[inside] * np.log2(mu[inside])))
    value = neg_entropy - cross
    return 0.0 if -1e-12 < value < 0.0 else value


@dataclass
class MetricsRecord:
    """One evaluated sweep point.

    ``theta``/``phi`` are set for qubit sweeps only; ``state_id`` names the
    input (``bloch`` for qubit points, ``basis-n`` / ``random-n`` for qudit
    points).
    """

    d: int
    p: float
    control_kind: str
    theta: Optional[float]
    phi: Optional[float]
    state_id: str
    trace_distance: float
    l1_coherence: float
    purity: float
    relative_entropy: float
    reduced_system_distance: float

    FIELDS = (
        "d",
        "p",
        "control_kind",
        "theta",
        "phi",
        "state_id",
        "trace_distance",
        "l1_coherence",
        "purity",
        "relative_entropy",
        "reduced_system_distance",
    )

    def validate(self) -> None:
        for name in ("trace_distance", "l1_coherence", "purity", "reduced_system_distance"):
            value = getattr(self, name)
            if not math.isfinite(value) or value < 0.0:
                raise ValueError(f"{name} = {value} is not a finite non-negative number")
        if math.isnan(self.relative_entropy) or self.relative_entropy < 0.0:
            raise ValueError(f"relative_entropy = {self.relative_entropy} is invalid")
        if not 0.0 < self.purity <= 1.0 + 1e-12:
            raise ValueError(f"purity = {self.purity} outside (0, 1]")

    def as_dict(self) -> dict:
        return asdict(self)
