"""Invariant checks across all modules, run by ``mubswitch verify``.

Every check records its worst residual and the bound it is held to. Checks
marked ``lower`` pass when the residual exceeds the bound (they certify that
something is non-zero); all others pass when residual <= bound.
"""
import json
from dataclasses import asdict, dataclass, field
from typing import Callable, List, Optional

import numpy as np

from . import kernels
from .bases import check_unbiased, computational_basis, fourier_basis, projectors
from .channels import (
    ControlState,
    apply_kraus,
    completeness_residual,
    random_density_matrix,
    sequential_apply,
    switch_apply,
    switch_kraus,
    switch_operators,
)
from .linalg import eigvals_hermitian, hermitian_spectrum, kron, partial_trace
from .metrics import l1_coherence, relative_entropy, trace_distance, trace_norm
from .qubit import BlochVector, bloch_state, switch_output_closed_form
from .reference import naive_switch_output

SELF_TOL = 1e-12
FAULTS = ("kraus",)


@dataclass
class CheckResult:
    name: str
    residual: float
    bound: float
    lower: bool = False

    @property
    def passed(self) -> bool:
        if self.lower:
            return self.residual > self.bound
        return bool(self.residual <= self.bound)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        rel = ">" if self.lower else "<="
        return f"{status}  {self.name:<44} residual={self.residual:.6e}  ({rel} {self.bound:.1e})"


@dataclass
class VerificationReport:
    dim_max: int
    seed: int
    tolerance: float
    n_states: int
    checks: List[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def n_failed(self) -> int:
        return sum(not c.passed for c in self.checks)

    def to_text(self) -> str:
        lines = [c.line() for c in self.checks]
        lines.append(
            f"verify: {len(self.checks)} checks, {self.n_failed} failed "
            f"(dim_max={self.dim_max}, seed={self.seed}, states={self.n_states}, tol={self.tolerance:g})"
        )
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        doc = {
            "dim_max": self.dim_max,
            "seed": self.seed,
            "tolerance": self.tolerance,
            "n_states": self.n_states,
            "passed": self.passed,
            "checks": [dict(asdict(c), passed=c.passed) for c in self.checks],
        }
        return json.dumps(doc, indent=2) + "\n"


def _rng(seed: int, *key: int) -> np.random.Generator:
    return np.random.default_rng([seed, *key])


def _rand_matrix(rng, n, m=None):
    m = n if m is None else m
    return rng.standard_normal((n, m)) + 1j * rng.standard_normal((n, m))


def _rand_hermitian(rng, n):
    g = _rand_matrix(rng, n)
    return (g + g.conj().T) / 2


def _pair(d):
    return projectors(computational_basis(d)), projectors(fourier_basis(d))


def _offdiag_max(a) -> float:
    return float(np.max(np.abs(a - np.diag(np.diag(a)))))


# ---------------------------------------------------------------- linalg


def _check_linalg(report, seed, dims):
    rng = _rng(seed, 1)
    worst = 0.0
    for _ in range(20):
        a, b = _rand_matrix(rng, 8), _rand_matrix(rng, 8)
        worst = max(worst, abs(np.trace(a @ b) - np.trace(b @ a)))
    report.append(CheckResult("linalg.trace_cyclic", worst, SELF_TOL))

    worst = 0.0
    for _ in range(10):
        a, b, c = _rand_matrix(rng, 2), _rand_matrix(rng, 3), _rand_matrix(rng, 2)
        b2 = _rand_matrix(rng, 3)
        x, y = complex(rng.standard_normal(), rng.standard_normal()), rng.standard_normal()
        worst = max(
            worst,
            np.max(np.abs(kron(kron(a, b), c) - kron(a, kron(b, c)))),
            np.max(np.abs(kron(a, x * b + y * b2) - (x * kron(a, b) + y * kron(a, b2)))),
            np.max(np.abs(kron(x * a + y * c, b) - (x * kron(a, b) + y * kron(c, b)))),
        )
    report.append(CheckResult("linalg.kron_assoc_bilinear", float(worst), SELF_TOL))

    worst = 0.0
    for d in dims:
        a, b = _rand_matrix(rng, 2), _rand_matrix(rng, d)
        worst = max(worst, np.max(np.abs(partial_trace(kron(a, b), 2, d, "control") - np.trace(b) * a)))
        worst = max(worst, np.max(np.abs(partial_trace(kron(a, b), 2, d, "system") - np.trace(a) * b)))
    report.append(CheckResult("linalg.partial_trace_product", float(worst), SELF_TOL))

    sizes = sorted({n for d in dims for n in (d, 2 * d) if n <= 64})
    for n in sizes:
        a = _rand_hermitian(rng, n)
        w, v = hermitian_spectrum(a)
        scale = max(1.0, float(np.max(np.abs(a))))
        rec = float(np.max(np.abs(a - (v * w) @ v.conj().T))) / scale
        uni = float(np.max(np.abs(v.conj().T @ v - np.eye(n))))
        desc = float(max(0.0, np.max(np.diff(w), initial=0.0)))
        report.append(CheckResult(f"linalg.spectrum[n={n}]", max(rec, uni, desc), SELF_TOL))


# ---------------------------------------------------------------- bases


def _check_bases(report, dims):
    for d in dims:
        comp, four = computational_basis(d), fourier_basis(d)
        v = four.vectors
        report.append(
            CheckResult(f"bases.fourier_unitary[d={d}]", float(np.max(np.abs(v.conj().T @ v - np.eye(d)))), SELF_TOL)
        )
        overlaps = np.abs(comp.vectors.conj().T @ v)
        dev = float(np.max(np.abs(overlaps - 1 / np.sqrt(d))))
        ok = check_unbiased(comp, four, 1e-10)
        report.append(CheckResult(f"bases.unbiased[d={d}]", dev if ok else np.inf, 1e-10))
        worst = 0.0
        for basis in (comp, four):
            m = projectors(basis).elements
            worst = max(worst, np.max(np.abs(m.sum(axis=0) - np.eye(d))))
            for a in range(d):
                worst = max(worst, np.max(np.abs(m[a] @ m[a] - m[a])), np.max(np.abs(m[a] - m[a].conj().T)))
                for b in range(d):
                    if a != b:
                        worst = max(worst, np.max(np.abs(m[a] @ m[b])))
        report.append(CheckResult(f"bases.projectors[d={d}]", float(worst), SELF_TOL))


# ---------------------------------------------------------------- channels


def _check_channels(report, seed, dims, n_states, tol, fault):
    for d in dims:
        mk, ml = _pair(d)
        ops = switch_operators(mk, ml)
        if fault == "kraus":
            ops = ops.copy()
            ops[0] *= 1.01
        report.append(CheckResult(f"channels.completeness[d={d}]", completeness_residual(ops), SELF_TOL))

        kraus = switch_kraus(mk, ml)
        rng = _rng(seed, 2, d)
        tp_worst = erase_worst = 0.0
        erase_half = 0.0
        for _ in range(n_states):
            kind = "coherent" if rng.random() < 0.5 else "classical"
            control = ControlState(float(rng.random()), kind)
            rho = random_density_matrix(d, rng)
            out = switch_apply(control, rho, mk, ml, kraus=kraus)
            w = eigvals_hermitian(out)
            tp_worst = max(tp_worst, abs(np.trace(out) - 1.0), -w[-1], np.max(np.abs(out - out.conj().T)))
            reduced = partial_trace(out, 2, d, "system")
            erase_worst = max(erase_worst, trace_norm(reduced - np.eye(d) / d))
            out_half = switch_apply(ControlState(0.5), rho, mk, ml, kraus=kraus)
            erase_half = max(erase_half, trace_norm(partial_trace(out_half, 2, d, "system") - np.eye(d) / d))
        report.append(CheckResult(f"channels.trace_positive[d={d}]", float(tp_worst), tol))
        report.append(CheckResult(f"channels.reduced_erasure[d={d}]", float(max(erase_worst, erase_half)), SELF_TOL))

        inputs = [np.diag(np.eye(d)[n]).astype(complex) for n in range(d)]
        inputs += [random_density_matrix(d, rng) for _ in range(3)]
        controls = [ControlState(0.0), ControlState(1.0)]
        controls += [ControlState(p, "classical") for p in (0.0, 0.25, 0.5, 0.75, 1.0)]
        worst = 0.0
        for control in controls:
            for rho in inputs:
                worst = max(worst, _offdiag_max(switch_apply(control, rho, mk, ml, kraus=kraus)))
        report.append(CheckResult(f"channels.incoherent_diagonal[d={d}]", worst, SELF_TOL))

        retained = np.inf
        for p in (0.25, 0.5, 0.75):
            best = max(
                l1_coherence(switch_apply(ControlState(p), rho, mk, ml, kraus=kraus)) for rho in inputs[:d]
            )
            retained = min(retained, best)
        report.append(CheckResult(f"channels.coherent_retention[d={d}]", float(retained), 1e-6, lower=True))

        worst = 0.0
        for rho in inputs:
            for first, second in ((mk, ml), (ml, mk)):
                worst = max(worst, trace_norm(sequential_apply(first, second, rho) - np.eye(d) / d))
        report.append(CheckResult(f"channels.sequential_erasure[d={d}]", float(worst), SELF_TOL))

        # identical measurements: no order superposition effect, control untouched
        same = switch_kraus(mk, mk)
        worst = 0.0
        for p in (0.25, 0.5):
            control = ControlState(p)
            for rho in inputs:
                out = switch_apply(control, rho, mk, mk, kraus=same)
                expected = np.kron(control.matrix, sequential_apply(mk, mk, rho))
                worst = max(worst, np.max(np.abs(out - expected)))
        report.append(CheckResult(f"channels.commuting_pair[d={d}]", float(worst), SELF_TOL))

        worst = 0.0
        for p in (0.3, 0.5):
            control = ControlState(p)
            for rho in inputs[d:]:
                fast = switch_apply(control, rho, mk, ml, kraus=kraus)
                generic = apply_kraus(kraus.operators, np.kron(control.matrix, rho))
                worst = max(worst, np.max(np.abs(fast - generic)))
        report.append(CheckResult(f"channels.kraus_routes[d={d}]", float(worst), SELF_TOL))

        if d <= 4:
            worst = 0.0
            for p in (0.0, 0.3, 0.5):
                control = ControlState(p)
                for rho in inputs[d:]:
                    fast = switch_apply(control, rho, mk, ml, kraus=kraus)
                    slow = np.array(naive_switch_output(control.matrix.tolist(), rho.tolist(), d))
                    worst = max(worst, np.max(np.abs(fast - slow)))
            report.append(CheckResult(f"channels.brute_force[d={d}]", float(worst), SELF_TOL))


# ---------------------------------------------------------------- qubit


def _check_qubit(report):
    mk, ml = _pair(2)
    kraus = switch_kraus(mk, ml)
    agree = valid = 0.0
    dist_min = np.inf
    edge = 0.0
    for p in np.linspace(0, 1, 11):
        control = ControlState(float(p))
        for theta in np.linspace(0, np.pi, 13):
            for phi in np.linspace(0, 2 * np.pi, 13, endpoint=False):
                closed = switch_output_closed_form(p, theta, phi)
                out = switch_apply(control, bloch_state(BlochVector(theta, phi)), mk, ml, kraus=kraus)
                agree = max(agree, np.max(np.abs(out - closed)))
                valid = max(valid, -eigvals_hermitian(closed)[-1], abs(np.trace(closed) - 1))
                dist = trace_distance(out, np.kron(control.matrix, np.eye(2) / 2))
                if 0.0 < p < 1.0:
                    dist_min = min(dist_min, dist)
                else:
                    edge = max(edge, np.max(np.abs(closed[:2, 2:])), dist)
    report.append(CheckResult("qubit.closed_form_agreement", float(agree), SELF_TOL))
    report.append(CheckResult("qubit.closed_form_valid", float(valid), 1e-10))
    report.append(CheckResult("qubit.incoherent_edges_zero", float(edge), SELF_TOL))
    report.append(CheckResult("qubit.coherent_distance_positive", float(dist_min), 0.0, lower=True))


# ---------------------------------------------------------------- metrics


def _check_metrics(report, seed, dims):
    for d in [d for d in dims if d <= 8]:
        rng = _rng(seed, 3, d)
        sym = tri = ident = 0.0
        klein = 0.0
        for _ in range(20):
            a, b, c = (random_density_matrix(d, rng) for _ in range(3))
            ab, ba = trace_distance(a, b), trace_distance(b, a)
            sym = max(sym, abs(ab - ba))
            tri = max(tri, ab - (trace_distance(a, c) + trace_distance(c, b)))
            ident = max(ident, trace_distance(a, a))
            klein = max(klein, -relative_entropy(a, b))
        report.append(CheckResult(f"metrics.trace_distance_axioms[d={d}]", float(max(sym, tri, ident)), SELF_TOL))
        report.append(CheckResult(f"metrics.klein[d={d}]", float(max(klein, 0.0)), SELF_TOL))

        mk, ml = _pair(d)
        kraus = switch_kraus(mk, ml)
        worst = 0.0
        for p in (0.0, 0.25, 0.5, 0.75, 1.0):
            rho = random_density_matrix(d, rng)
            worst = max(worst, l1_coherence(switch_apply(ControlState(p, "classical"), rho, mk, ml, kraus=kraus)))
        report.append(CheckResult(f"metrics.l1_classical_zero[d={d}]", float(worst), SELF_TOL))


def run_verify(
    dim_max: int = 8,
    tolerance: float = 1e-10,
    seed: int = 0,
    n_states: int = 100,
    fault: Optional[str] = None,
    progress: Optional[Callable[[str], None]] = None,
) -> VerificationReport:
    """Run every invariant suite for d = 2..dim_max.

    ``fault="kraus"`` corrupts the Kraus family seen by the completeness check;
    it exists to confirm the suite can fail.
    """
    if int(dim_max) != dim_max or not 2 <= dim_max <= 64:
        raise ValueError(f"dim_max must be an integer in [2, 64], got {dim_max}")
    if fault is not None and fault not in FAULTS:
        raise ValueError(f"unknown fault {fault!r}")
    dims = list(range(2, int(dim_max) + 1))
    report = VerificationReport(int(dim_max), int(seed), float(tolerance), int(n_states))
    steps = [
        ("linalg", lambda: _check_linalg(report.checks, seed, dims)),
        ("bases", lambda: _check_bases(report.checks, dims)),
        ("channels", lambda: _check_channels(report.checks, seed, dims, n_states, tolerance, fault)),
        ("qubit", lambda: _check_qubit(report.checks)),
        ("metrics", lambda: _check_metrics(report.checks, seed, dims)),
    ]
    for name, step in steps:
        if progress:
            progress(name)
        step()
    return report


def backend_name() -> str:
    return "numba" if kernels.USE_NUMBA else "numpy"
