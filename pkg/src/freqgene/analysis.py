"""Spectral diagnostics: energy histograms, compaction, and cosine
similarity between low-frequency blocks.

The "radial" frequency of coefficient index i in a spectrum with
extents E is max_d(i_d / E_d), which matches the rectangular corner
geometry used for extraction (an index is low-frequency iff every
coordinate is).
"""

import numpy as np

from .dct import dct_nd
from .errors import ShapeMismatchError
from .gene import build_mask


def _radial_bins(shape, bins: int) -> np.ndarray:
    rho = np.zeros(shape, dtype=np.float64)
    for d, extent in enumerate(shape):
        axis_shape = [1] * len(shape)
        axis_shape[d] = extent
        frac = (np.arange(extent, dtype=np.float64) / extent).reshape(axis_shape)
        rho = np.maximum(rho, frac)
    return np.minimum((rho * bins).astype(np.int64), bins - 1)


def energy_spectrum(t, bins: int) -> np.ndarray:
    """Fraction of spectral energy per radial-frequency bin.

    Fractions sum to 1; a zero tensor gives an all-zero histogram.
    """
    bins = int(bins)
    if bins < 1:
        raise ValueError(f"bins must be >= 1, got {bins}")
    spectrum = dct_nd(np.asarray(t, dtype=np.float64))
    energy = spectrum * spectrum
    idx = _radial_bins(spectrum.shape, bins)
    hist = np.bincount(idx.ravel(), weights=energy.ravel(), minlength=bins)
    total = hist.sum()
    if total == 0.0:
        return np.zeros(bins)
    return hist / total


def _corner(spectrum: np.ndarray, ratio: float) -> np.ndarray:
    keep = build_mask(spectrum.shape, ratio)
    return spectrum[tuple(slice(0, k) for k in keep)]


def compaction(t, ratio: float) -> float:
    """Share of spectral energy inside the kept low-frequency corner.

    Defined as 1.0 for an all-zero tensor.
    """
    spectrum = dct_nd(np.asarray(t, dtype=np.float64))
    total = float(np.sum(spectrum * spectrum))
    if total == 0.0:
        # ratio still validated even though the answer is fixed
        build_mask(spectrum.shape, ratio)
        return 1.0
    corner = _corner(spectrum, ratio)
    return float(np.sum(corner * corner)) / total


def lowfreq_similarity(a, b, ratio: float) -> float:
    """Cosine similarity between the low-frequency corners of two tensors.

    Returns 0.0 if either corner has zero norm.
    """
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise ShapeMismatchError(f"shapes differ: {a.shape} vs {b.shape}")
    ca = _corner(dct_nd(a), ratio).ravel()
    cb = _corner(dct_nd(b), ratio).ravel()
    na = float(np.linalg.norm(ca))
    nb = float(np.linalg.norm(cb))
    if na == 0.0 or nb == 0.0:
        return 0.0
    return float(np.dot(ca, cb)) / (na * nb)
