"""Frequency-domain resizing: zero-pad or truncate a spectrum per axis,
then inverse-transform to get spatial weights of the target size.

Padding and truncation are pure copies, decided independently per axis,
so mixed grow/shrink targets work and padding followed by truncation
back to the original extents is exactly the identity.  No amplitude
compensation is applied: the orthonormal inverse transform rescales
values with size on its own.
"""

import numpy as np

from .dct import idct_nd
from .errors import InvalidShapeError, RankMismatchError


def resize_spectrum(block, target) -> np.ndarray:
    """Fit a coefficient block into a target shape.

    Per axis: if the target is larger, the block occupies the leading
    indices and the rest is zero; if smaller, trailing (high-frequency)
    coefficients are dropped.
    """
    block = np.asarray(block, dtype=np.float64)
    target = tuple(int(d) for d in target)
    if len(target) != block.ndim:
        raise RankMismatchError(
            f"target rank {len(target)} != block rank {block.ndim}"
        )
    if any(d < 1 for d in target):
        raise InvalidShapeError(f"target extents must be >= 1, got {target}")
    out = np.zeros(target, dtype=np.float64)
    corner = tuple(slice(0, min(b, t)) for b, t in zip(block.shape, target))
    out[corner] = block[corner]
    return out


def reconstruct(block, target) -> np.ndarray:
    """Resize a spectrum block to the target shape and inverse-transform."""
    return idct_nd(resize_spectrum(block, target))
