"""Quantum switch over two mutually unbiased projective measurements."""
from .bases import (
    BasisSet,
    MeasurementSet,
    check_unbiased,
    computational_basis,
    fourier_basis,
    projectors,
)
from .channels import (
    ControlState,
    SwitchKrausSet,
    apply_kraus,
    check_density_matrix,
    random_density_matrix,
    sequential_apply,
    single_measurement_probs,
    switch_apply,
    switch_kraus,
)
from .errors import ConsistencyError, DomainError, ShapeError
from .kernels import USE_NUMBA
from .linalg import Spectrum, adjoint, hermitian_spectrum, kron, matmul, partial_trace
from .metrics import (
    MetricsRecord,
    l1_coherence,
    purity,
    relative_entropy,
    trace_distance,
    von_neumann_entropy,
)
from .qubit import BlochVector, bloch_state, switch_output_closed_form

__version__ = "0.1.0"
