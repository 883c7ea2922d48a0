"""Qubit Bloch states and the closed-form switch output for the
computational / Hadamard measurement pair.

The closed form is an independent analytic oracle for
:func:`mubswitch.channels.switch_apply` at d = 2 with a coherent control.
With ``a = sqrt(p (1 - p)) / 4``, ``c = cos(theta)``, ``s = sin(theta)`` and
``e = exp(i phi)`` it reads::

    [[ p/2,     0,        a (c+1),  a s e    ],
     [ 0,       p/2,      a s / e,  a (1-c)  ],
     [ a (c+1), a s e,    (1-p)/2,  0        ],
     [ a s / e, a (1-c),  0,        (1-p)/2  ]]

Phases were confirmed entry by entry against the Kraus sum under the
``bloch_state`` convention ``rho[1, 0] = sin(theta) e^{i phi} / 2``.
"""
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

__all__ = ["BlochVector", "bloch_state", "switch_output_closed_form", "coherence_amplitude"]

TWO_PI = 2.0 * np.pi


def _check_angles(theta: float, phi: float) -> None:
    if not 0.0 <= theta <= np.pi:
        raise DomainError(f"theta must lie in [0, pi], got {theta}")
    if not 0.0 <= phi < TWO_PI:
        raise DomainError(f"phi must lie in [0, 2 pi), got {phi}")


@dataclass(frozen=True)
class BlochVector:
    theta: float
    phi: float
    r: float = 1.0

    def __post_init__(self):
        _check_angles(self.theta, self.phi)
        if not 0.0 <= self.r <= 1.0:
            raise DomainError(f"Bloch radius must lie in [0, 1], got {self.r}")

    @property
    def cartesian(self) -> np.ndarray:
        st = np.sin(self.theta)
        return self.r * np.array([np.cos(self.phi) * st, np.sin(self.phi) * st, np.cos(self.theta)])


def bloch_state(b: BlochVector) -> np.ndarray:
    """(I + r . sigma) / 2 as a 2x2 complex matrix."""
    ct, st = np.cos(b.theta), np.sin(b.theta)
    off = b.r * st * np.exp(1j * b.phi)
    return 0.5 * np.array(
        [[1.0 + b.r * ct, np.conj(off)], [off, 1.0 - b.r * ct]], dtype=np.complex128
    )


def coherence_amplitude(p: float) -> float:
    return float(np.sqrt((1.0 - p) * p) / 4.0)


def switch_output_closed_form(p: float, theta: float, phi: float) -> np.ndarray:
    """Closed-form 4x4 switch output for a pure qubit input and coherent control."""
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"p must lie in [0, 1], got {p}")
    _check_angles(theta, phi)
    a = coherence_amplitude(p)
    c, s = np.cos(theta), np.sin(theta)
    e = np.exp(1j * phi)
    ec = np.conj(e)
    return np.array(
        [
            [p / 2, 0, a * (c + 1), a * s * e],
            [0, p / 2, a * s * ec, -a * (c - 1)],
            [a * (c + 1), a * s * e, (1 - p) / 2, 0],
            [a * s * ec, -a * (c - 1), 0, (1 - p) / 2],
        ],
        dtype=np.complex128,
    )
