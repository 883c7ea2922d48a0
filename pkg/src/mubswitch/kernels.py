"""Hot numeric kernels.

Each kernel has a vectorised numpy form and a scalar-loop form; when numba
is enabled (see :mod:`mubswitch._accel`) the loop form is compiled with
``@njit``, otherwise the numpy form is used. The rest of the package calls
the dispatch names ``jacobi_eigh`` and ``kraus_sum``.
"""
import numpy as np

from ._accel import USE_NUMBA, njit

__all__ = ["jacobi_eigh", "kraus_sum", "USE_NUMBA"]


def _jacobi_eigh(a, rel_tol, max_sweeps):
    """Cyclic complex Jacobi eigensolver for a Hermitian matrix.

    Each rotation first removes the phase of ``a[p, q]`` with a diagonal
    unitary, then applies a real Givens rotation that annihilates it.
    Row and column updates are vectorised slices so the same source runs
    under numba and under plain numpy.

    Returns ``(eigenvalues, eigenvectors, sweeps)``; eigenvalues unsorted.
    """
    n = a.shape[0]
    a = a.copy()
    v = np.eye(n, dtype=np.complex128)
    scale = 0.0
    for i in range(n):
        for j in range(n):
            scale += abs(a[i, j]) ** 2
    threshold = (rel_tol * rel_tol) * scale
    sweeps = 0
    while sweeps < max_sweeps:
        off = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                off += abs(a[p, q]) ** 2
        if off <= threshold or off == 0.0:
            break
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag == 0.0:
                    continue
                phase = apq / mag
                theta = (a[q, q].real - a[p, p].real) / (2.0 * mag)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = 1.0 / (abs(theta) + np.sqrt(theta * theta + 1.0))
                    if theta < 0.0:
                        t = -t
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                # columns: A <- A J, J = diag(.., e^{-i arg}, ..) R
                cp = a[:, p].copy()
                cq = a[:, q] * np.conj(phase)
                a[:, p] = c * cp - s * cq
                a[:, q] = s * cp + c * cq
                # rows: A <- J^H A
                rp = a[p, :].copy()
                rq = a[q, :] * phase
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                vp = v[:, p].copy()
                vq = v[:, q] * np.conj(phase)
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
    w = np.empty(n)
    for i in range(n):
        w[i] = a[i, i].real
    return w, v, sweeps


def _jacobi_eigh_loops(a, rel_tol, max_sweeps):
    # same rotation sequence as _jacobi_eigh, scalar loops for numba
    n = a.shape[0]
    a = a.copy()
    v = np.eye(n, dtype=np.complex128)
    scale = 0.0
    for i in range(n):
        for j in range(n):
            scale += abs(a[i, j]) ** 2
    threshold = (rel_tol * rel_tol) * scale
    sweeps = 0
    while sweeps < max_sweeps:
        off = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                off += abs(a[p, q]) ** 2
        if off <= threshold or off == 0.0:
            break
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag == 0.0:
                    continue
                phase = apq / mag
                cphase = np.conj(phase)
                theta = (a[q, q].real - a[p, p].real) / (2.0 * mag)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = 1.0 / (abs(theta) + np.sqrt(theta * theta + 1.0))
                    if theta < 0.0:
                        t = -t
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                for k in range(n):
                    xp = a[k, p]
                    xq = a[k, q] * cphase
                    a[k, p] = c * xp - s * xq
                    a[k, q] = s * xp + c * xq
                for k in range(n):
                    xp = a[p, k]
                    xq = a[q, k] * phase
                    a[p, k] = c * xp - s * xq
                    a[q, k] = s * xp + c * xq
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                for k in range(n):
                    xp = v[k, p]
                    xq = v[k, q] * cphase
                    v[k, p] = c * xp - s * xq
                    v[k, q] = s * xp + c * xq
    w = np.empty(n)
    for i in range(n):
        w[i] = a[i, i].real
    return w, v, sweeps


def _kraus_sum_loop(ops, rho):
    # i-l-j order keeps the inner loop contiguous; zero entries are skipped
    # since switch operators are block diagonal with rank-1 blocks
    m = rho.shape[0]
    out = np.zeros((m, m), dtype=np.complex128)
    tmp = np.empty((m, m), dtype=np.complex128)
    for k in range(ops.shape[0]):
        op = ops[k]
        tmp[:, :] = 0.0
        for i in range(m):
            for l in range(m):
                x = op[i, l]
                if x == 0.0:
                    continue
                for j in range(m):
                    tmp[i, j] += x * rho[l, j]
        for j in range(m):
            for l in range(m):
                y = np.conj(op[j, l])
                if y == 0.0:
                    continue
                for i in range(m):
                    out[i, j] += tmp[i, l] * y
    return out


def _kraus_sum_numpy(ops, rho):
    return np.einsum("kij,jl,kml->im", ops, rho, ops.conj(), optimize=True)


jacobi_eigh_numpy = _jacobi_eigh
kraus_sum_numpy = _kraus_sum_numpy

if USE_NUMBA:
    jacobi_eigh = njit(_jacobi_eigh_loops)
    kraus_sum = njit(_kraus_sum_loop)
else:
    jacobi_eigh = _jacobi_eigh
    kraus_sum = _kraus_sum_numpy
