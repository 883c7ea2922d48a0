"""Quantum-switch Kraus families for two projective measurements, and the
incoherent (sequential / single-order) channels they are compared against.

Kraus operators act on control ⊗ system. For measurement sets ``mk`` and
``ml`` the switch operator with outcome pair ``(i, j)`` is

    W_ij = |0><0| ⊗ mk[i] @ ml[j]  +  |1><1| ⊗ ml[j] @ mk[i]

so control ``|0>`` runs ``ml`` first then ``mk``, and control ``|1>`` the
reverse (operator products act right to left).
"""
from dataclasses import dataclass
from typing import Literal, Optional, Sequence, Tuple, Union

import numpy as np

from . import kernels
from .bases import MeasurementSet
from .errors import ConsistencyError, DomainError, ShapeError
from .linalg import as_matrix, eigvals_hermitian

__all__ = [
    "ControlState",
    "SwitchKrausSet",
    "check_density_matrix",
    "random_density_matrix",
    "switch_operators",
    "switch_kraus",
    "completeness_residual",
    "apply_kraus",
    "switch_apply",
    "switch_outcome",
    "sequential_apply",
    "single_measurement_probs",
]

DM_TOL = 1e-10
COMPLETENESS_TOL = 1e-12

ControlKind = Literal["coherent", "classical"]


def check_density_matrix(rho, tol: float = DM_TOL, *, check_positive: bool = True) -> np.ndarray:
    """Return ``rho`` as an array after checking it is a density matrix.

    Hermitian and unit trace to ``tol``; smallest eigenvalue >= -tol unless
    ``check_positive`` is off.
    """
    rho = as_matrix(rho)
    if rho.shape[0] != rho.shape[1]:
        raise ShapeError(f"density matrix must be square, got {rho.shape}")
    herm = float(np.max(np.abs(rho - rho.conj().T), initial=0.0))
    if herm > tol:
        raise DomainError(f"not Hermitian (max |rho - rho^H| = {herm:.3e})")
    tr = np.trace(rho)
    if abs(tr - 1.0) > tol:
        raise DomainError(f"trace is {tr.real:.12g}, expected 1")
    if check_positive:
        lowest = eigvals_hermitian(rho)[-1]
        if lowest < -tol:
            raise DomainError(f"negative eigenvalue {lowest:.3e}")
    return rho


def random_density_matrix(d: int, rng: np.random.Generator) -> np.ndarray:
    """G G^H / tr(G G^H) with G an i.i.d. complex Gaussian ``d x d`` matrix."""
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    m = g @ g.conj().T
    return m / np.trace(m).real


@dataclass(frozen=True)
class ControlState:
    """Control qubit: ``sqrt(p)|0> + sqrt(1-p)|1>`` if coherent, or the
    mixture ``diag(p, 1-p)`` if classical."""

    p: float
    kind: ControlKind = "coherent"

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise DomainError(f"control parameter p must lie in [0, 1], got {self.p}")
        if self.kind not in ("coherent", "classical"):
            raise DomainError(f"control kind must be 'coherent' or 'classical', got {self.kind!r}")

    @property
    def matrix(self) -> np.ndarray:
        p = float(self.p)
        if self.kind == "classical":
            return np.diag([p, 1.0 - p]).astype(np.complex128)
        psi = np.array([np.sqrt(p), np.sqrt(1.0 - p)], dtype=np.complex128)
        return np.outer(psi, psi.conj())


@dataclass(frozen=True, eq=False)
class SwitchKrausSet:
    """The ``d**2`` switch operators, stored flat with index ``i * d + j``.

    ``factors`` holds the two bases (as unitary column matrices) when both
    measurements are rank-1; :func:`switch_apply` then uses a factorised sum.
    """

    dim_system: int
    operators: np.ndarray  # shape (d*d, 2d, 2d)
    factors: Optional[Tuple[np.ndarray, np.ndarray]] = None

    def __getitem__(self, ij) -> np.ndarray:
        i, j = ij
        return self.operators[i * self.dim_system + j]

    def __len__(self) -> int:
        return self.operators.shape[0]


def _check_pair(mk: MeasurementSet, ml: MeasurementSet) -> int:
    if mk.dim != ml.dim:
        raise ShapeError(f"measurement dimensions differ: {mk.dim} vs {ml.dim}")
    return mk.dim


def switch_operators(mk: MeasurementSet, ml: MeasurementSet) -> np.ndarray:
    """Raw ``(d*d, 2d, 2d)`` stack of switch operators, unchecked."""
    d = _check_pair(mk, ml)
    a = np.asarray(mk.elements)
    b = np.asarray(ml.elements)
    ops = np.zeros((d * d, 2 * d, 2 * d), dtype=np.complex128)
    ab = np.einsum("iab,jbc->ijac", a, b).reshape(d * d, d, d)
    ba = np.einsum("jab,ibc->ijac", b, a).reshape(d * d, d, d)
    ops[:, :d, :d] = ab
    ops[:, d:, d:] = ba
    return ops


def completeness_residual(ops) -> float:
    """max |sum_k K_k^H K_k - I| over entries."""
    ops = np.asarray(ops)
    total = np.einsum("kji,kjl->il", ops.conj(), ops)
    return float(np.max(np.abs(total - np.eye(ops.shape[-1]))))


def switch_kraus(mk: MeasurementSet, ml: MeasurementSet) -> SwitchKrausSet:
    ops = switch_operators(mk, ml)
    residual = completeness_residual(ops)
    if residual > COMPLETENESS_TOL:
        raise ConsistencyError(f"switch Kraus family is not complete (residual {residual:.3e})")
    factors = None
    if mk.vectors is not None and ml.vectors is not None:
        factors = (np.asarray(mk.vectors), np.asarray(ml.vectors))
    return SwitchKrausSet(mk.dim, ops, factors)


def _switch_sum_rank1(u: np.ndarray, v: np.ndarray, joint: np.ndarray) -> np.ndarray:
    """sum_ij W_ij joint W_ij^H for rank-1 projectors.

    With c_ij = <u_i|v_j>, the blocks of W_ij are c_ij |u_i><v_j| and
    conj(c_ij) |v_j><u_i|, so every output block reduces to d x d products.
    """
    d = u.shape[0]
    uh, vh = u.conj().T, v.conj().T
    c = uh @ v
    w = np.abs(c) ** 2
    r00, r01 = joint[:d, :d], joint[:d, d:]
    r10, r11 = joint[d:, :d], joint[d:, d:]
    out = np.empty_like(joint)
    y = np.einsum("ij,ji->i", vh, r00 @ v)
    out[:d, :d] = (u * (w @ y)) @ uh
    x = np.einsum("ij,ji->i", uh, r11 @ u)
    out[d:, d:] = (v * (x @ w)) @ vh
    out[:d, d:] = u @ (c**2 * (vh @ r01 @ u).T) @ vh
    out[d:, :d] = v @ (np.conj(c) ** 2 * (uh @ r10 @ v)).T @ uh
    return out


KrausLike = Union[SwitchKrausSet, Sequence[np.ndarray], np.ndarray]


def _kraus_stack(k: KrausLike) -> np.ndarray:
    if isinstance(k, SwitchKrausSet):
        return k.operators
    ops = np.asarray(k, dtype=np.complex128)
    if ops.ndim == 2:
        ops = ops[None]
    if ops.ndim != 3 or ops.shape[1] != ops.shape[2]:
        raise ShapeError(f"Kraus operators must be square matrices, got stack {ops.shape}")
    return ops


def apply_kraus(k: KrausLike, rho) -> np.ndarray:
    """``sum_K K rho K^H``; raises ConsistencyError if trace drifts past 1e-10."""
    ops = _kraus_stack(k)
    rho = as_matrix(rho)
    if rho.shape != ops.shape[1:]:
        raise ShapeError(f"state of shape {rho.shape} does not match operators {ops.shape[1:]}")
    out = kernels.kraus_sum(np.ascontiguousarray(ops), np.ascontiguousarray(rho))
    drift = abs(np.trace(out) - np.trace(rho))
    if abs(np.trace(rho) - 1.0) <= DM_TOL and drift > DM_TOL:
        raise ConsistencyError(f"channel is not trace preserving (drift {drift:.3e})")
    return out


def switch_apply(
    control: ControlState,
    rho_s,
    mk: MeasurementSet,
    ml: MeasurementSet,
    *,
    kraus: SwitchKrausSet = None,
) -> np.ndarray:
    """Output of the switch on ``rho_c ⊗ rho_s``, a ``2d x 2d`` matrix.

    Pass a prebuilt ``kraus`` (from :func:`switch_kraus` on the same pair) to
    skip rebuilding it across many inputs.
    """
    d = _check_pair(mk, ml)
    rho_s = check_density_matrix(rho_s)
    if rho_s.shape[0] != d:
        raise ShapeError(f"state dimension {rho_s.shape[0]} does not match measurements ({d})")
    if kraus is None:
        kraus = switch_kraus(mk, ml)
    elif kraus.dim_system != d:
        raise ShapeError("prebuilt Kraus set has the wrong dimension")
    joint = np.kron(control.matrix, rho_s)
    if kraus.factors is None:
        return apply_kraus(kraus, joint)
    out = _switch_sum_rank1(*kraus.factors, joint)
    drift = abs(np.trace(out) - 1.0)
    if drift > DM_TOL:
        raise ConsistencyError(f"switch output trace drifted by {drift:.3e}")
    return out


def switch_outcome(kraus: SwitchKrausSet, rho, i: int, j: int):
    """Debug helper: probability of outcome ``(i, j)`` and the normalised
    post-measurement state (``None`` when the probability is zero)."""
    w = kraus[i, j]
    unnorm = w @ as_matrix(rho) @ w.conj().T
    prob = float(np.trace(unnorm).real)
    if prob <= 0.0:
        return 0.0, None
    return prob, unnorm / prob


def sequential_apply(first: MeasurementSet, second: MeasurementSet, rho) -> np.ndarray:
    """Measure with ``first``, then with ``second``, forgetting both outcomes.

    Kraus operators are ``second[j] @ first[i]``; note the product order is
    the reverse of the time order.
    """
    d = _check_pair(first, second)
    rho = check_density_matrix(rho)
    if rho.shape[0] != d:
        raise ShapeError(f"state dimension {rho.shape[0]} does not match measurements ({d})")
    ops = np.einsum("jab,ibc->ijac", second.elements, first.elements).reshape(d * d, d, d)
    return apply_kraus(ops, rho)


def single_measurement_probs(m: MeasurementSet, rho) -> np.ndarray:
    rho = check_density_matrix(rho)
    if rho.shape[0] != m.dim:
        raise ShapeError(f"state dimension {rho.shape[0]} does not match measurement ({m.dim})")
    probs = np.einsum("nij,ji->n", m.elements, rho).real
    return probs
