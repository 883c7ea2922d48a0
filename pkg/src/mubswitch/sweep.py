"""Parameter sweeps over the switch output and record serialisation."""
import csv
import io
import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .bases import computational_basis, fourier_basis, projectors
from .channels import ControlState, random_density_matrix, switch_apply, switch_kraus
from .errors import ConsistencyError, DomainError
from .linalg import partial_trace
from .metrics import MetricsRecord, l1_coherence, purity, relative_entropy, trace_distance
from .qubit import TWO_PI, BlochVector, bloch_state, switch_output_closed_form

__all__ = [
    "Grid",
    "SweepConfig",
    "parse_grid",
    "evaluate_point",
    "run_qubit_sweep",
    "run_qudit_sweep",
    "format_records",
    "write_records",
]

ORACLE_TOL = 1e-12
MAX_QUDIT_DIM = 16

Grid = Tuple[float, float, int]


def parse_grid(text: str) -> Grid:
    """``"start:stop:steps"`` -> ``(start, stop, steps)``; a bare number is a
    one-point grid."""
    parts = str(text).split(":")
    try:
        if len(parts) == 1:
            v = float(parts[0])
            return (v, v, 1)
        if len(parts) != 3:
            raise ValueError
        start, stop, steps = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise DomainError(f"grid must look like start:stop:steps, got {text!r}") from None
    if steps < 1:
        raise DomainError(f"grid needs at least one step, got {steps}")
    return (start, stop, steps)


def grid_points(grid: Grid) -> np.ndarray:
    start, stop, steps = grid
    return np.linspace(start, stop, int(steps))


def _check_range(name: str, values: np.ndarray, lo: float, hi: float) -> None:
    if np.any(values < lo) or np.any(values > hi):
        raise DomainError(f"{name} grid leaves [{lo:g}, {hi:g}]")


@dataclass
class SweepConfig:
    mode: str = "qubit-sweep"
    d: int = 2
    p_grid: Grid = (0.0, 1.0, 11)
    theta_grid: Grid = (0.0, 0.0, 1)
    phi_grid: Grid = (0.0, 0.0, 1)
    control_kind: str = "coherent"
    seed: int = 0
    n_states: int = 10
    output_path: Optional[str] = None
    output_format: str = "csv"
    tolerance: float = 1e-10

    def __post_init__(self):
        if self.mode not in ("verify", "qubit-sweep", "qudit-sweep", "single"):
            raise DomainError(f"unknown mode {self.mode!r}")
        if self.control_kind not in ("coherent", "classical"):
            raise DomainError(f"control kind must be coherent or classical, got {self.control_kind!r}")
        if self.output_format not in ("csv", "json"):
            raise DomainError(f"output format must be csv or json, got {self.output_format!r}")
        if not self.tolerance > 0:
            raise DomainError("tolerance must be positive")
        if not 0 <= self.seed < 2**64:
            raise DomainError("seed must be an unsigned 64-bit integer")
        if self.n_states < 0:
            raise DomainError("number of random states must be non-negative")
        for grid in (self.p_grid, self.theta_grid, self.phi_grid):
            if grid[2] < 1:
                raise DomainError("grid steps must be >= 1")
        _check_range("p", grid_points(self.p_grid), 0.0, 1.0)
        _check_range("theta", grid_points(self.theta_grid), 0.0, np.pi)
        _check_range("phi", grid_points(self.phi_grid), 0.0, TWO_PI)


def evaluate_point(control: ControlState, output: np.ndarray, d: int) -> dict:
    """Metrics of one switch output against ``rho_c ⊗ I/d``."""
    reference = np.kron(control.matrix, np.eye(d) / d)
    reduced = partial_trace(output, 2, d, keep="system")
    return dict(
        trace_distance=trace_distance(output, reference),
        l1_coherence=l1_coherence(output),
        purity=purity(output),
        relative_entropy=relative_entropy(output, reference),
        reduced_system_distance=trace_distance(reduced, np.eye(d) / d),
    )


def _qubit_oracle(control: ControlState, theta: float, phi: float) -> np.ndarray:
    expected = switch_output_closed_form(control.p, theta, phi)
    if control.kind == "classical":
        # a classical control simply drops the cross-order blocks
        expected[:2, 2:] = 0.0
        expected[2:, :2] = 0.0
    return expected


def run_qubit_sweep(cfg: SweepConfig) -> List[MetricsRecord]:
    """One record per (p, theta, phi), sorted; each point is also checked
    against the closed-form output."""
    mk = projectors(computational_basis(2))
    ml = projectors(fourier_basis(2))
    kraus = switch_kraus(mk, ml)
    records = []
    for p in grid_points(cfg.p_grid):
        control = ControlState(float(p), cfg.control_kind)
        for theta in grid_points(cfg.theta_grid):
            for phi in grid_points(cfg.phi_grid):
                phi = float(phi) % TWO_PI
                theta = float(theta)
                out = switch_apply(control, bloch_state(BlochVector(theta, phi)), mk, ml, kraus=kraus)
                err = float(np.max(np.abs(out - _qubit_oracle(control, theta, phi))))
                if err > ORACLE_TOL:
                    raise ConsistencyError(
                        f"closed-form mismatch {err:.3e} at p={p}, theta={theta}, phi={phi}"
                    )
                rec = MetricsRecord(
                    d=2, p=float(p), control_kind=cfg.control_kind, theta=theta, phi=phi,
                    state_id="bloch", **evaluate_point(control, out, 2),
                )
                rec.validate()
                records.append(rec)
    records.sort(key=lambda r: (r.p, r.theta, r.phi))
    return records


def qudit_inputs(d: int, n_random: int, seed: int):
    """Basis states ``|n><n|`` followed by ``n_random`` seeded random states."""
    states = []
    for n in range(d):
        rho = np.zeros((d, d), dtype=np.complex128)
        rho[n, n] = 1.0
        states.append((f"basis-{n}", rho))
    rng = np.random.default_rng(seed)
    for k in range(n_random):
        states.append((f"random-{k}", random_density_matrix(d, rng)))
    return states


def run_qudit_sweep(cfg: SweepConfig) -> List[MetricsRecord]:
    d = cfg.d
    if isinstance(d, bool) or int(d) != d or not 2 <= d <= MAX_QUDIT_DIM:
        raise DomainError(f"qudit dimension must be an integer in [2, {MAX_QUDIT_DIM}], got {d}")
    mk = projectors(computational_basis(d))
    ml = projectors(fourier_basis(d))
    kraus = switch_kraus(mk, ml)
    inputs = qudit_inputs(d, cfg.n_states, cfg.seed)
    records = []
    for p in grid_points(cfg.p_grid):
        control = ControlState(float(p), cfg.control_kind)
        for state_id, rho in inputs:
            out = switch_apply(control, rho, mk, ml, kraus=kraus)
            metrics = evaluate_point(control, out, d)
            if metrics["reduced_system_distance"] >= cfg.tolerance:
                raise ConsistencyError(
                    f"reduced system state is not maximally mixed "
                    f"(distance {metrics['reduced_system_distance']:.3e}) at p={p}, {state_id}"
                )
            rec = MetricsRecord(
                d=d, p=float(p), control_kind=cfg.control_kind, theta=None, phi=None,
                state_id=state_id, **metrics,
            )
            rec.validate()
            records.append(rec)
    order = {sid: k for k, (sid, _) in enumerate(inputs)}
    records.sort(key=lambda r: (r.p, order[r.state_id]))
    return records


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
        return str(int(value))
    value = float(value)
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return f"{value + 0.0:.12g}"


def _json_value(value):
    if value is None or isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
        return int(value)
    value = float(value)
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return float(f"{value + 0.0:.12g}")


def format_records(records: Sequence[MetricsRecord], fmt: str = "csv") -> str:
    if not records:
        raise ValueError("no records to write")
    fields = MetricsRecord.FIELDS
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(fields)
        for rec in records:
            writer.writerow([_fmt(getattr(rec, f)) for f in fields])
        return buf.getvalue()
    if fmt == "json":
        rows = [{f: _json_value(getattr(rec, f)) for f in fields} for rec in records]
        return json.dumps(rows, indent=2) + "\n"
    raise DomainError(f"unknown output format {fmt!r}")


def write_records(records: Sequence[MetricsRecord], path, fmt: str = "csv") -> None:
    text = format_records(records, fmt)
    with open(Path(path), "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
