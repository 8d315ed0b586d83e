"""Dense N-dimensional float64 tensors.

The package works on plain C-contiguous (row-major, last axis fastest)
numpy arrays of rank 1 to 4.  ``new_tensor`` is the validating
constructor used at external boundaries; arrays produced internally by
the transforms are trusted.
"""

import numpy as np

from .errors import InvalidShapeError, LengthMismatchError, NonFiniteError

MAX_RANK = 4


def new_tensor(shape, data) -> np.ndarray:
    """Build a rank-1..4 float64 tensor from a shape and flat row-major data.

    The data is copied.  Raises LengthMismatchError if the flat length
    disagrees with the shape, NonFiniteError on NaN/Inf, and
    InvalidShapeError for empty axes or unsupported rank.
    """
    shape = tuple(int(d) for d in shape)
    if not 1 <= len(shape) <= MAX_RANK:
        raise InvalidShapeError(f"rank must be 1..{MAX_RANK}, got {len(shape)}")
    if any(d < 1 for d in shape):
        raise InvalidShapeError(f"all extents must be >= 1, got {shape}")
    flat = np.array(data, dtype=np.float64).reshape(-1)
    expected = int(np.prod(shape))
    if flat.size != expected:
        raise LengthMismatchError(
            f"shape {shape} needs {expected} values, got {flat.size}"
        )
    if not np.all(np.isfinite(flat)):
        raise NonFiniteError("tensor data contains NaN or Inf")
    return flat.reshape(shape)


def check_tensor(a) -> np.ndarray:
    """Coerce to float64 and re-check the tensor invariants."""
    a = np.asarray(a, dtype=np.float64)
    return new_tensor(a.shape, a.ravel())


def frobenius_norm(t) -> float:
    """sqrt of the sum of squared elements."""
    return float(np.linalg.norm(np.asarray(t, dtype=np.float64).ravel()))
