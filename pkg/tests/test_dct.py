import math

import numpy as np
import pytest

from freqgene import (
    BadAxisError,
    EmptySignalError,
    TooLargeError,
    dct_1d,
    dct_nd,
    dct_nd_naive,
    frobenius_norm,
    idct_1d,
    idct_nd,
    idct_nd_naive,
)


def direct_dct_1d(x):
    """Independent double-loop evaluation of the forward transform."""
    m = len(x)
    out = np.zeros(m)
    for k in range(m):
        alpha = math.sqrt(1.0 / m) if k == 0 else math.sqrt(2.0 / m)
        acc = 0.0
        for n in range(m):
            acc += x[n] * math.cos(math.pi * (2 * n + 1) * k / (2 * m))
        out[k] = alpha * acc
    return out


# --- 1-D ----------------------------------------------------------------


def test_dct_1d_constant_signal():
    for m in (1, 2, 5, 16):
        c = 2.5
        out = dct_1d(np.full(m, c))
        assert out[0] == pytest.approx(c * math.sqrt(m), rel=1e-14)
        assert np.max(np.abs(out[1:])) < 1e-12 if m > 1 else True


def test_dct_1d_single_sample():
    assert dct_1d([1.0]) == pytest.approx([1.0])


def test_dct_1d_matches_direct_sum(rng):
    x = rng.standard_normal(7)
    assert np.max(np.abs(dct_1d(x) - direct_dct_1d(x))) < 1e-12


def test_idct_1d_roundtrip(rng):
    x = rng.standard_normal(16)
    assert np.max(np.abs(idct_1d(dct_1d(x)) - x)) < 1e-12


def test_idct_1d_dc_reconstruction():
    m, c = 6, -1.75
    coeffs = np.zeros(m)
    coeffs[0] = c * math.sqrt(m)
    assert np.max(np.abs(idct_1d(coeffs) - c)) < 1e-12


def test_idct_1d_impulse_basis():
    # a unit coefficient at k=1, M=4 reconstructs one cosine basis vector
    coeffs = np.array([0.0, 1.0, 0.0, 0.0])
    alpha = math.sqrt(2.0 / 4)
    expected = [alpha * math.cos(math.pi * (2 * n + 1) / 8) for n in range(4)]
    assert np.max(np.abs(idct_1d(coeffs) - expected)) < 1e-12


def test_empty_signal_rejected():
    with pytest.raises(EmptySignalError):
        dct_1d([])
    with pytest.raises(EmptySignalError):
        idct_1d(np.array([]))


# --- N-D ----------------------------------------------------------------


def test_dct_nd_matches_naive_rank3(rng):
    t = rng.standard_normal((3, 4, 5))
    assert np.max(np.abs(dct_nd(t) - dct_nd_naive(t))) < 1e-10


def test_dct_nd_zero_tensor():
    assert np.all(dct_nd(np.zeros((2, 3))) == 0.0)


def test_dct_nd_identity_matrix_hand_sum():
    # X[k,l] = a(k)a(l) * [cos(pi k/4)cos(pi l/4) + cos(3pi k/4)cos(3pi l/4)]
    # evaluates to the identity matrix again
    t = np.eye(2)
    expected = np.eye(2)
    assert np.max(np.abs(dct_nd(t) - expected)) < 1e-14


def test_dct_nd_constant_rank3():
    c = 0.75
    out = dct_nd(np.full((2, 2, 2), c))
    assert out[0, 0, 0] == pytest.approx(c * math.sqrt(8), rel=1e-13)
    out[0, 0, 0] = 0.0
    assert np.max(np.abs(out)) < 1e-13


def test_idct_nd_roundtrip(rng):
    t = rng.standard_normal((8, 16, 16))
    assert np.max(np.abs(idct_nd(dct_nd(t)) - t)) < 1e-10


def test_idct_nd_rank4_roundtrip_and_naive_inverse(rng):
    t = rng.standard_normal((2, 3, 4, 5))
    spec = dct_nd(t)
    assert np.max(np.abs(idct_nd(spec) - t)) < 1e-10
    assert np.max(np.abs(idct_nd_naive(spec) - t)) < 1e-10


def test_padded_constant_spectrum_reconstructs_constant():
    c = 3.25
    spec = np.zeros((4, 6))
    spec[0, 0] = c * math.sqrt(4 * 6)
    out = idct_nd(spec)
    assert np.max(np.abs(out - c)) < 1e-12


def test_parseval(rng):
    for shape in [(9,), (5, 7), (3, 4, 5), (2, 3, 2, 4)]:
        t = rng.standard_normal(shape)
        assert frobenius_norm(dct_nd(t)) == pytest.approx(
            frobenius_norm(t), rel=1e-9
        )


def test_linearity(rng):
    x = rng.standard_normal((4, 6))
    y = rng.standard_normal((4, 6))
    a, b = -1.3, 0.7
    lhs = dct_nd(a * x + b * y)
    rhs = a * dct_nd(x) + b * dct_nd(y)
    assert np.max(np.abs(lhs - rhs)) < 1e-10


def test_naive_agreement_random_shapes(rng):
    for _ in range(12):
        rank = int(rng.integers(1, 5))
        shape = tuple(int(rng.integers(1, 9)) for _ in range(rank))
        t = rng.standard_normal(shape)
        assert np.max(np.abs(dct_nd(t) - dct_nd_naive(t))) < 1e-10


def test_axis_order_independence(rng):
    t = rng.standard_normal((4, 5, 6))
    assert np.array_equal(dct_nd(t, axes=(0, 1)), dct_nd(t, axes=(1, 0)))
    # manual per-axis application commutes to within round-off
    ab = dct_nd(dct_nd(t, axes=(0,)), axes=(1,))
    ba = dct_nd(dct_nd(t, axes=(1,)), axes=(0,))
    assert np.max(np.abs(ab - ba)) < 1e-12
    assert np.max(np.abs(ab - dct_nd(t, axes=(0, 1)))) < 1e-12


def test_subset_axes_equals_per_fiber_1d(rng):
    t = rng.standard_normal((3, 5))
    out = dct_nd(t, axes=(1,))
    for i in range(3):
        assert np.max(np.abs(out[i] - dct_1d(t[i]))) < 1e-13


def test_bad_axes():
    t = np.zeros((2, 2))
    with pytest.raises(BadAxisError):
        dct_nd(t, axes=())
    with pytest.raises(BadAxisError):
        dct_nd(t, axes=(0, 0))
    with pytest.raises(BadAxisError):
        dct_nd(t, axes=(2,))
    with pytest.raises(BadAxisError):
        idct_nd(t, axes=(-1,))


def test_naive_size_limit():
    with pytest.raises(TooLargeError):
        dct_nd_naive(np.zeros(10_001))


def test_naive_identity_on_unit_shape():
    t = np.array([[[2.0]]])
    assert np.array_equal(dct_nd_naive(t), t)


def test_worker_env_bit_identical(rng, monkeypatch):
    t = rng.standard_normal((4, 6, 8))
    monkeypatch.delenv("FRONT_THREADS", raising=False)
    base = dct_nd(t)
    monkeypatch.setenv("FRONT_THREADS", "3")
    assert np.array_equal(dct_nd(t), base)


def test_worker_env_validation(rng, monkeypatch):
    monkeypatch.setenv("FRONT_THREADS", "0")
    with pytest.raises(ValueError):
        dct_nd(np.zeros((2, 2)))
    monkeypatch.setenv("FRONT_THREADS", "abc")
    with pytest.raises(ValueError):
        dct_nd(np.zeros((2, 2)))
