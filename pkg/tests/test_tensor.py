import math

import numpy as np
import pytest

from freqgene import (
    InvalidShapeError,
    LengthMismatchError,
    NonFiniteError,
    frobenius_norm,
    new_tensor,
)


def test_row_major_layout():
    t = new_tensor([2, 2], [1, 2, 3, 4])
    assert t[1, 0] == 3
    assert t[0, 1] == 2


def test_length_mismatch():
    with pytest.raises(LengthMismatchError):
        new_tensor([3], [0, 0])


def test_non_finite_rejected():
    with pytest.raises(NonFiniteError):
        new_tensor([1, 1, 1], [float("nan")])
    with pytest.raises(NonFiniteError):
        new_tensor([2], [1.0, float("inf")])


def test_shape_validation():
    with pytest.raises(InvalidShapeError):
        new_tensor([2, 0], [])
    with pytest.raises(InvalidShapeError):
        new_tensor([2, 2, 2, 2, 2], list(range(32)))


def test_data_is_copied():
    data = np.ones(4)
    t = new_tensor([4], data)
    data[0] = 99.0
    assert t[0] == 1.0


def test_indexing_bijection():
    # every multi-index maps to the expected flat position and back
    for shape in [(3,), (2, 3), (2, 3, 4), (2, 2, 2, 3)]:
        n = int(np.prod(shape))
        t = new_tensor(shape, np.arange(n, dtype=float))
        strides = np.cumprod((1,) + shape[:0:-1])[::-1]
        for idx in np.ndindex(*shape):
            flat = int(np.dot(idx, strides))
            assert t[idx] == flat


def test_norm_345():
    assert frobenius_norm(new_tensor([2], [3, 4])) == 5.0


def test_norm_zero():
    assert frobenius_norm(np.zeros((3, 3))) == 0.0


def test_norm_matches_scalar_loop(rng):
    t = rng.standard_normal((4, 5))
    acc = 0.0
    for i in range(4):
        for j in range(5):
            acc += t[i, j] ** 2
    assert frobenius_norm(t) == pytest.approx(math.sqrt(acc), rel=1e-12)


def test_norm_absolutely_homogeneous(rng):
    t = rng.standard_normal((3, 4, 2))
    for a in [-2.5, 0.0, 0.125, 7.0]:
        assert frobenius_norm(a * t) == pytest.approx(
            abs(a) * frobenius_norm(t), rel=1e-12, abs=1e-300
        )
