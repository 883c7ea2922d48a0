import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mubswitch.errors import DomainError, ShapeError
from mubswitch.linalg import (
    PAULI_X,
    PAULI_Y,
    PAULI_Z,
    adjoint,
    hermitian_spectrum,
    kron,
    matmul,
    partial_trace,
)

I2 = np.eye(2)
KET0 = np.array([[1, 0], [0, 0]])
PLUS = np.full((2, 2), 0.5)


def rand_complex(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def test_matmul_pauli_algebra():
    np.testing.assert_allclose(matmul(PAULI_X, PAULI_X), I2, atol=1e-15)
    np.testing.assert_allclose(matmul(PAULI_X, PAULI_Z), -1j * PAULI_Y, atol=1e-15)


def test_matmul_projector_product():
    np.testing.assert_allclose(matmul(KET0, PLUS), [[0.5, 0.5], [0, 0]], atol=1e-15)


def test_matmul_shape_error():
    with pytest.raises(ShapeError):
        matmul(np.ones((2, 3)), np.ones((2, 3)))


def test_adjoint(rng):
    np.testing.assert_array_equal(adjoint(PAULI_Y), PAULI_Y)
    np.testing.assert_array_equal(adjoint([[0, 1], [0, 0]]), [[0, 0], [1, 0]])
    a = rand_complex(rng, 3, 5)
    np.testing.assert_array_equal(adjoint(adjoint(a)), a)


def test_kron_examples(rng):
    np.testing.assert_array_equal(kron(I2, I2), np.eye(4))
    a = rand_complex(rng, 2, 2)
    block = kron(KET0, a)
    np.testing.assert_array_equal(block[:2, :2], a)
    assert not block[2:].any() and not block[:, 2:].any()
    p = 0.3
    np.testing.assert_allclose(kron(np.diag([p, 1 - p]), I2), np.diag([p, p, 1 - p, 1 - p]))


def test_trace_cyclic(rng):
    for _ in range(20):
        a, b = rand_complex(rng, 8, 8), rand_complex(rng, 8, 8)
        assert abs(np.trace(matmul(a, b)) - np.trace(matmul(b, a))) <= 1e-12


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), x=st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False))
def test_kron_associative_bilinear(seed, x):
    rng = np.random.default_rng(seed)
    a, b, c, b2 = rand_complex(rng, 2, 2), rand_complex(rng, 3, 3), rand_complex(rng, 2, 2), rand_complex(rng, 3, 3)
    np.testing.assert_allclose(kron(kron(a, b), c), kron(a, kron(b, c)), atol=1e-12)
    np.testing.assert_allclose(kron(a, x * b + b2), x * kron(a, b) + kron(a, b2), atol=1e-12)


def test_partial_trace_product(rng):
    for d in (1, 2, 3, 5):
        a, b = rand_complex(rng, 2, 2), rand_complex(rng, d, d)
        np.testing.assert_allclose(partial_trace(kron(a, b), 2, d, keep="control"), np.trace(b) * a, atol=1e-12)
        np.testing.assert_allclose(partial_trace(kron(a, b), 2, d, keep="system"), np.trace(a) * b, atol=1e-12)


def test_partial_trace_matches_loop(rng):
    # index-by-index definition, block (i, j) of side d
    d = 3
    a = rand_complex(rng, 2 * d, 2 * d)
    sys_ = sum(a[i * d:(i + 1) * d, i * d:(i + 1) * d] for i in range(2))
    ctl = np.array([[np.trace(a[i * d:(i + 1) * d, j * d:(j + 1) * d]) for j in range(2)] for i in range(2)])
    np.testing.assert_allclose(partial_trace(a, 2, d, "system"), sys_, atol=1e-13)
    np.testing.assert_allclose(partial_trace(a, 2, d, "control"), ctl, atol=1e-13)


def test_partial_trace_shape_error():
    with pytest.raises(ShapeError):
        partial_trace(np.eye(5), 2, 2)


@pytest.mark.parametrize(
    "a, expected",
    [(PAULI_Z, [1, -1]), (PAULI_X, [1, -1]), (np.eye(4) / 4, [0.25] * 4), (PAULI_Y, [1, -1])],
)
def test_spectrum_examples(a, expected):
    w, v = hermitian_spectrum(a)
    np.testing.assert_allclose(w, expected, atol=1e-14)
    np.testing.assert_allclose(v.conj().T @ v, np.eye(len(w)), atol=1e-14)


@pytest.mark.parametrize("n", [1, 2, 3, 7, 16, 33, 64])
def test_spectrum_contract_random(n, rng):
    g = rand_complex(rng, n, n)
    a = (g + g.conj().T) / 2
    w, v = hermitian_spectrum(a)
    scale = max(1.0, np.max(np.abs(a)))
    assert np.max(np.abs(a - v @ np.diag(w) @ v.conj().T)) <= 1e-12 * scale
    assert np.max(np.abs(v.conj().T @ v - np.eye(n))) <= 1e-12
    assert np.all(np.diff(w) <= 0)
    np.testing.assert_allclose(w, np.linalg.eigvalsh(a)[::-1], atol=1e-11)


def test_spectrum_degenerate_and_deterministic(rng):
    u, _ = np.linalg.qr(rand_complex(rng, 6, 6))
    a = u @ np.diag([2, 2, 2, -1, -1, 0.5]) @ u.conj().T
    a = (a + a.conj().T) / 2
    w1, v1 = hermitian_spectrum(a)
    w2, v2 = hermitian_spectrum(a.copy())
    np.testing.assert_allclose(w1, [2, 2, 2, 0.5, -1, -1], atol=1e-12)
    np.testing.assert_array_equal(w1, w2)
    np.testing.assert_array_equal(v1, v2)


def test_spectrum_errors():
    with pytest.raises(ShapeError):
        hermitian_spectrum(np.ones((2, 3)))
    with pytest.raises(DomainError):
        hermitian_spectrum([[0, 1], [0, 0]])


def test_non_finite_rejected():
    with pytest.raises(DomainError):
        adjoint([[np.nan, 0], [0, 1]])
