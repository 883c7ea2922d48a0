"""Compare the numba kernels with the pure-numpy fallbacks.

    python benchmarks/bench_kernels.py [--repeat N] [--no-e2e]

Kernel timings run in-process (numba variants compiled explicitly, so the
environment flag does not matter here). The end-to-end section runs
``mubswitch verify`` twice in subprocesses, once with
MUBSWITCH_DISABLE_NUMBA=1, to show what the flag costs.
"""
import argparse
import os
import subprocess
import sys
import time

import numba
import numpy as np

from mubswitch import kernels
from mubswitch._accel import ENV_FLAG
from mubswitch.bases import computational_basis, fourier_basis, projectors
from mubswitch.channels import switch_operators

jacobi_nb = numba.njit(cache=True)(kernels._jacobi_eigh_loops)
kraus_nb = numba.njit(cache=True)(kernels._kraus_sum_loop)


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def bench_jacobi(repeat):
    rng = np.random.default_rng(0)
    print(f"{'jacobi n':>10} {'numba ms':>10} {'numpy ms':>10} {'speedup':>8}")
    for n in (4, 8, 16, 32, 64):
        g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        a = np.ascontiguousarray((g + g.conj().T) / 2)
        jacobi_nb(a, 1e-15, 60)
        t_nb = best_of(lambda: jacobi_nb(a, 1e-15, 60), repeat)
        t_np = best_of(lambda: kernels._jacobi_eigh(a, 1e-15, 60), max(1, repeat // 3))
        print(f"{n:>10} {1e3 * t_nb:>10.3f} {1e3 * t_np:>10.3f} {t_np / t_nb:>8.1f}")


def bench_kraus(repeat):
    rng = np.random.default_rng(1)
    print(f"{'kraus d':>10} {'numba ms':>10} {'numpy ms':>10} {'speedup':>8}")
    for d in (2, 4, 8, 16):
        ops = switch_operators(projectors(computational_basis(d)), projectors(fourier_basis(d)))
        g = rng.standard_normal((2 * d, 2 * d)) + 1j * rng.standard_normal((2 * d, 2 * d))
        rho = np.ascontiguousarray(g @ g.conj().T)
        kraus_nb(ops, rho)
        t_nb = best_of(lambda: kraus_nb(ops, rho), repeat)
        t_np = best_of(lambda: kernels._kraus_sum_numpy(ops, rho), repeat)
        print(f"{d:>10} {1e3 * t_nb:>10.3f} {1e3 * t_np:>10.3f} {t_np / t_nb:>8.1f}")


def bench_e2e(dim_max):
    cmd = [sys.executable, "-m", "mubswitch", "verify", "--dim-max", str(dim_max)]
    print(f"verify --dim-max {dim_max}")
    for label, flag in (("numba", "0"), ("numpy", "1")):
        env = dict(os.environ, **{ENV_FLAG: flag})
        t0 = time.perf_counter()
        proc = subprocess.run(cmd, env=env, capture_output=True, text=True)
        elapsed = time.perf_counter() - t0
        summary = proc.stdout.strip().splitlines()[-1] if proc.stdout else proc.stderr.strip()
        print(f"  {label:<6} {elapsed:7.2f} s  exit={proc.returncode}  {summary}")


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=9)
    parser.add_argument("--dim-max", type=int, default=8)
    parser.add_argument("--no-e2e", action="store_true")
    args = parser.parse_args()
    bench_jacobi(args.repeat)
    print()
    bench_kraus(args.repeat)
    if not args.no_e2e:
        print()
        bench_e2e(args.dim_max)


if __name__ == "__main__":
    main()
