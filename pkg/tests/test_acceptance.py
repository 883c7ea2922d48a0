"""Acceptance criteria, one test each, at their stated tolerances.

Each test appends a PASS/FAIL line that the conftest prints in the terminal
summary. Norms here use numpy/LAPACK so they stay independent of the
package's own Jacobi eigensolver.
"""
import math
import subprocess
import sys
import time

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES, mub_pair
from mubswitch.channels import (
    ControlState,
    random_density_matrix,
    sequential_apply,
    single_measurement_probs,
    switch_apply,
    switch_kraus,
)
from mubswitch.linalg import partial_trace
from mubswitch.metrics import l1_coherence, trace_distance
from mubswitch.qubit import BlochVector, bloch_state, switch_output_closed_form
from mubswitch.reference import naive_switch_output

SEED = 8128


def record(number, title, ok, detail):
    ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] criterion {number:>2}: {title} ({detail})")
    assert ok, detail


def nuclear(a):
    return float(np.linalg.norm(a, "nuc"))


def test_01_closed_form_reproduction(qubit_pair):
    mk, ml = qubit_pair
    kraus = switch_kraus(mk, ml)
    switch_apply(ControlState(0.5), np.eye(2) / 2, mk, ml, kraus=kraus)  # warm up kernels
    start = time.perf_counter()
    worst = 0.0
    n = 0
    for p in np.linspace(0, 1, 11):
        control = ControlState(float(p))
        for theta in np.linspace(0, math.pi, 13):
            for phi in np.linspace(0, 2 * math.pi, 13, endpoint=False):
                out = switch_apply(control, bloch_state(BlochVector(theta, phi)), mk, ml, kraus=kraus)
                worst = max(worst, float(np.max(np.abs(out - switch_output_closed_form(p, theta, phi)))))
                n += 1
    elapsed = time.perf_counter() - start
    record(1, "closed-form output reproduction", n == 1859 and worst <= 1e-12 and elapsed < 1.0,
           f"{n} points, max dev {worst:.2e} <= 1e-12, {elapsed:.3f} s < 1 s")


def test_02_kraus_completeness():
    worst = 0.0
    for d in range(2, 17):
        ops = switch_kraus(*mub_pair(d)).operators
        total = sum(w.conj().T @ w for w in ops)
        worst = max(worst, float(np.max(np.abs(total - np.eye(2 * d)))))
    record(2, "Kraus completeness d=2..16", worst <= 1e-12, f"max dev {worst:.2e} <= 1e-12")


def test_03_reduced_state_erasure():
    rng = np.random.default_rng(SEED)
    worst = 0.0
    for d in range(2, 9):
        mk, ml = mub_pair(d)
        kraus = switch_kraus(mk, ml)
        for _ in range(100):
            out = switch_apply(ControlState(0.5), random_density_matrix(d, rng), mk, ml, kraus=kraus)
            worst = max(worst, nuclear(partial_trace(out, 2, d, "system") - np.eye(d) / d))
    record(3, "reduced system maximally mixed", worst < 1e-12, f"max trace norm {worst:.2e} < 1e-12")


def test_04_incoherent_control_no_retention():
    rng = np.random.default_rng(SEED + 4)
    controls = [ControlState(0.0), ControlState(1.0)]
    controls += [ControlState(p, "classical") for p in (0.0, 0.25, 0.5, 0.75, 1.0)]
    worst = 0.0
    for d in range(2, 9):
        mk, ml = mub_pair(d)
        kraus = switch_kraus(mk, ml)
        inputs = [np.diag(row).astype(complex) for row in np.eye(d)]
        inputs += [random_density_matrix(d, rng) for _ in range(5)]
        for control in controls:
            for rho in inputs:
                worst = max(worst, l1_coherence(switch_apply(control, rho, mk, ml, kraus=kraus)))
    record(4, "incoherent control gives zero l1-coherence", worst < 1e-12, f"max l1 {worst:.2e} < 1e-12")


def test_05_point_trace_distance(qubit_pair):
    control = ControlState(0.5)
    out = switch_apply(control, bloch_state(BlochVector(0.0, 0.0)), *qubit_pair)
    dist = trace_distance(out, np.kron(control.matrix, np.eye(2) / 2))
    record(5, "trace distance at p=1/2, theta=phi=0", abs(dist - 0.25) <= 1e-12,
           f"{dist:.15f} vs 0.25 +- 1e-12")


def test_06_sequential_erasure():
    rng = np.random.default_rng(SEED + 6)
    worst = 0.0
    for d in range(2, 9):
        mk, ml = mub_pair(d)
        for _ in range(100):
            rho = random_density_matrix(d, rng)
            for first, second in ((mk, ml), (ml, mk)):
                worst = max(worst, nuclear(sequential_apply(first, second, rho) - np.eye(d) / d))
    record(6, "sequential complementary measurements erase", worst <= 1e-12, f"max trace norm {worst:.2e} <= 1e-12")


def test_07_born_rule(qubit_pair):
    z, _ = qubit_pair
    worst = 0.0
    for theta in np.linspace(0, math.pi, 25):
        for phi in (0.0, 1.0, 4.0):
            probs = single_measurement_probs(z, bloch_state(BlochVector(theta, phi)))
            expected = [math.cos(theta / 2) ** 2, math.sin(theta / 2) ** 2]
            worst = max(worst, float(np.max(np.abs(probs - expected))))
    record(7, "Born rule for Z measurement", worst <= 1e-12, f"max dev {worst:.2e} <= 1e-12")


def test_08_qudit_off_diagonality():
    coherent_min = math.inf
    classical_max = 0.0
    for d in range(3, 9):
        mk, ml = mub_pair(d)
        kraus = switch_kraus(mk, ml)
        best = classical = 0.0
        for n in range(d):
            rho = np.zeros((d, d), complex)
            rho[n, n] = 1.0
            best = max(best, l1_coherence(switch_apply(ControlState(0.5), rho, mk, ml, kraus=kraus)))
            classical = max(classical, l1_coherence(switch_apply(ControlState(0.5, "classical"), rho, mk, ml, kraus=kraus)))
        coherent_min = min(coherent_min, best)
        classical_max = max(classical_max, classical)
    ok = coherent_min > 1e-6 and classical_max < 1e-12
    record(8, "qudit switch output off-diagonal", ok,
           f"min over d of best l1 {coherent_min:.3e} > 1e-6; classical max {classical_max:.2e} < 1e-12")


def test_09_brute_force_equivalence():
    rng = np.random.default_rng(SEED + 9)
    worst = 0.0
    for d in (2, 3, 4):
        mk, ml = mub_pair(d)
        for p in (0.0, 0.25, 0.5, 0.8, 1.0):
            for kind in ("coherent", "classical"):
                control = ControlState(p, kind)
                rho = random_density_matrix(d, rng)
                fast = switch_apply(control, rho, mk, ml)
                slow = np.array(naive_switch_output(control.matrix.tolist(), rho.tolist(), d))
                worst = max(worst, float(np.max(np.abs(fast - slow))))
    record(9, "agreement with naive loop Kraus sum", worst <= 1e-12, f"max dev {worst:.2e} <= 1e-12")


@pytest.mark.slow
def test_10_verify_end_to_end(tmp_path):
    cmd = [sys.executable, "-m", "mubswitch", "verify", "--dim-max", "16", "--seed", "0"]
    runs = []
    for k in range(2):
        report = tmp_path / f"report{k}.json"
        start = time.perf_counter()
        proc = subprocess.run(cmd + ["--report", str(report)], capture_output=True)
        runs.append((time.perf_counter() - start, proc.returncode, proc.stdout, report.read_bytes()))
    slowest = max(r[0] for r in runs)
    same = runs[0][2] == runs[1][2] and runs[0][3] == runs[1][3]
    ok = all(r[1] == 0 for r in runs) and slowest < 10.0 and same
    record(10, "verify --dim-max 16", ok,
           f"exit codes {[r[1] for r in runs]}, slowest {slowest:.2f} s < 10 s, byte-identical={same}")
