"""Orthonormal DCT-II (forward) and DCT-III (inverse) along axis subsets.

For a signal x of length M the forward transform is

    X[k] = a(k) * sum_n x[n] * cos(pi * (2n+1) * k / (2M)),
    a(0) = sqrt(1/M),  a(k>=1) = sqrt(2/M).

With these scale factors the transform matrix is orthogonal, so the
inverse is its transpose (the identically scaled DCT-III) and the flat
L2 norm is preserved.  Multi-axis transforms are separable: the 1-D
transform is applied along each requested axis in ascending order.

The fast path delegates to scipy's pocketfft (``norm="ortho"`` matches
the scaling above exactly).  Fibers along a transform axis are
independent, so results do not depend on the worker count.
``dct_nd_naive`` / ``idct_nd_naive`` evaluate the full nested sum
directly, one output coefficient at a time; they are O(N^2) reference
implementations kept as independent test oracles.
"""

import math
import os

import numpy as np
from scipy import fft as _fft

from .errors import BadAxisError, EmptySignalError, TooLargeError

NAIVE_SIZE_LIMIT = 10_000

_WORKERS_ENV = "FRONT_THREADS"


def _workers() -> int:
    raw = os.environ.get(_WORKERS_ENV)
    if raw is None:
        return 1
    try:
        n = int(raw)
    except ValueError:
        n = 0
    if n < 1:
        raise ValueError(f"{_WORKERS_ENV} must be a positive integer, got {raw!r}")
    return n


def _check_axes(ndim: int, axes) -> tuple[int, ...]:
    if axes is None:
        return tuple(range(ndim))
    axes = tuple(int(a) for a in axes)
    if not axes:
        raise BadAxisError("axes must be nonempty")
    if len(set(axes)) != len(axes):
        raise BadAxisError(f"duplicate axis in {axes}")
    for a in axes:
        if not 0 <= a < ndim:
            raise BadAxisError(f"axis {a} out of range for rank {ndim}")
    return tuple(sorted(axes))


def dct_1d(signal) -> np.ndarray:
    """Forward orthonormal DCT-II of a 1-D signal."""
    x = np.asarray(signal, dtype=np.float64)
    if x.ndim != 1:
        raise BadAxisError(f"expected a 1-D signal, got rank {x.ndim}")
    if x.size == 0:
        raise EmptySignalError("cannot transform an empty signal")
    return _fft.dct(x, type=2, norm="ortho")


def idct_1d(coeffs) -> np.ndarray:
    """Inverse of dct_1d (orthonormal DCT-III)."""
    x = np.asarray(coeffs, dtype=np.float64)
    if x.ndim != 1:
        raise BadAxisError(f"expected a 1-D signal, got rank {x.ndim}")
    if x.size == 0:
        raise EmptySignalError("cannot transform an empty signal")
    return _fft.idct(x, type=2, norm="ortho")


def dct_nd(t, axes=None) -> np.ndarray:
    """Separable forward DCT along ``axes`` (default: all axes)."""
    t = np.asarray(t, dtype=np.float64)
    axes = _check_axes(t.ndim, axes)
    return _fft.dctn(t, type=2, norm="ortho", axes=axes, workers=_workers())


def idct_nd(s, axes=None) -> np.ndarray:
    """Separable inverse DCT along ``axes`` (default: all axes)."""
    s = np.asarray(s, dtype=np.float64)
    axes = _check_axes(s.ndim, axes)
    return _fft.idctn(s, type=2, norm="ortho", axes=axes, workers=_workers())


def _cos_table(m: int) -> np.ndarray:
    # C[k, n] = cos(pi * (2n+1) * k / (2M))
    k = np.arange(m)[:, None]
    n = np.arange(m)[None, :]
    return np.cos(np.pi * (2 * n + 1) * k / (2 * m))


def _alphas(m: int) -> np.ndarray:
    a = np.full(m, math.sqrt(2.0 / m))
    a[0] = math.sqrt(1.0 / m)
    return a


def _check_naive_input(t) -> np.ndarray:
    t = np.asarray(t, dtype=np.float64)
    if t.size > NAIVE_SIZE_LIMIT:
        raise TooLargeError(
            f"naive transform is O(N^2); refusing {t.size} > {NAIVE_SIZE_LIMIT} elements"
        )
    if t.ndim > 4:
        raise BadAxisError(f"rank {t.ndim} not supported")
    return t


def dct_nd_naive(t) -> np.ndarray:
    """Full-axes forward DCT by direct summation (test oracle).

    Each output coefficient is the complete nested sum over every input
    element, with no reuse of per-axis partial results.
    """
    t = _check_naive_input(t)
    tables = [_cos_table(m) for m in t.shape]
    alphas = [_alphas(m) for m in t.shape]
    out = np.empty_like(t)
    for idx in np.ndindex(*t.shape):
        basis = np.float64(1.0)
        scale = 1.0
        for d, k in enumerate(idx):
            row_shape = [1] * t.ndim
            row_shape[d] = t.shape[d]
            basis = basis * tables[d][k].reshape(row_shape)
            scale *= alphas[d][k]
        out[idx] = scale * float(np.sum(t * basis))
    return out


def idct_nd_naive(s) -> np.ndarray:
    """Full-axes inverse DCT by direct summation (test oracle)."""
    s = _check_naive_input(s)
    tables = [_cos_table(m) for m in s.shape]
    alphas = [_alphas(m) for m in s.shape]
    out = np.empty_like(s)
    for idx in np.ndindex(*s.shape):
        # fix the output position, sum over all coefficient indices
        basis = np.float64(1.0)
        for d, n in enumerate(idx):
            col_shape = [1] * s.ndim
            col_shape[d] = s.shape[d]
            col = alphas[d] * tables[d][:, n]
            basis = basis * col.reshape(col_shape)
        out[idx] = float(np.sum(s * basis))
    return out
