"""Slow, loop-only reimplementation of the switch channel.

Shares no code with the numpy path: bases, projectors, Kronecker products
and matrix products are all built from nested Python lists. Used as a
brute-force cross-check for small dimensions only.
"""
import cmath
import math


def _zeros(n, m):
    return [[0j] * m for _ in range(n)]


def naive_matmul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    out = _zeros(n, m)
    for i in range(n):
        for j in range(m):
            acc = 0j
            for l in range(k):
                acc += a[i][l] * b[l][j]
            out[i][j] = acc
    return out


def naive_dagger(a):
    return [[a[j][i].conjugate() for j in range(len(a))] for i in range(len(a[0]))]


def naive_kron(a, b):
    n, m = len(a), len(b)
    out = _zeros(n * m, n * m)
    for i in range(n):
        for j in range(n):
            for k in range(m):
                for l in range(m):
                    out[i * m + k][j * m + l] = a[i][j] * b[k][l]
    return out


def naive_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def naive_projectors(d, kind):
    """Rank-1 projectors of the computational or Fourier basis."""
    out = []
    for n in range(d):
        if kind == "computational":
            vec = [1.0 + 0j if k == n else 0j for k in range(d)]
        else:
            vec = [cmath.exp(-2j * math.pi * n * k / d) / math.sqrt(d) for k in range(d)]
        out.append([[vec[r] * vec[c].conjugate() for c in range(d)] for r in range(d)])
    return out


def naive_switch_output(rho_c, rho_s, d):
    """sum_ij W_ij (rho_c ⊗ rho_s) W_ij^H with computational-then-Fourier
    pair, all arithmetic in explicit loops. Inputs are nested lists."""
    e = naive_projectors(d, "computational")
    f = naive_projectors(d, "fourier")
    p0 = [[1 + 0j, 0j], [0j, 0j]]
    p1 = [[0j, 0j], [0j, 1 + 0j]]
    joint = naive_kron(rho_c, rho_s)
    total = _zeros(2 * d, 2 * d)
    for i in range(d):
        for j in range(d):
            w = naive_add(
                naive_kron(p0, naive_matmul(e[i], f[j])),
                naive_kron(p1, naive_matmul(f[j], e[i])),
            )
            term = naive_matmul(naive_matmul(w, joint), naive_dagger(w))
            total = naive_add(total, term)
    return total
