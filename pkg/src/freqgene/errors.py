"""Exception types for contract violations.

Everything derives from FreqGeneError (a ValueError), so callers can
catch the whole family in one clause; the CLI maps it to exit code 1.
"""


class FreqGeneError(ValueError):
    """Base class for all errors raised by this package."""


# --- tensors ---------------------------------------------------------------

class LengthMismatchError(FreqGeneError):
    """Flat data length does not match the product of the shape."""


class NonFiniteError(FreqGeneError):
    """A tensor contains NaN or infinity."""


class InvalidShapeError(FreqGeneError):
    """Shape has a non-positive extent or unsupported rank."""


# --- transforms ------------------------------------------------------------

class EmptySignalError(FreqGeneError):
    """Transform requested on a zero-length signal."""


class BadAxisError(FreqGeneError):
    """Axis list is empty, repeated, or out of range."""


class TooLargeError(FreqGeneError):
    """Input exceeds the size limit of the O(N^2) reference transform."""


# --- grouping / extraction -------------------------------------------------

class MissingTensorError(FreqGeneError):
    """A group member name is absent from the tensor map."""


class ShapeMismatchError(FreqGeneError):
    """Tensors that must share a shape do not."""


class RankMismatchError(FreqGeneError):
    """Target dimensionality differs from the block's rank."""


# --- regularizer -----------------------------------------------------------

class NonPositiveGammaError(FreqGeneError):
    """Penalty-mask decay rate must be strictly positive."""


class BadLambdaError(FreqGeneError):
    """Loss mixing weight must lie in [0, 1]."""


# --- container file format -------------------------------------------------

class DuplicateNameError(FreqGeneError):
    """Two tensors claim the same name in one container."""


class BadMagicError(FreqGeneError):
    """File does not start with the container magic bytes."""


class UnsupportedVersionError(FreqGeneError):
    """Container version is not supported by this reader."""


class CorruptManifestError(FreqGeneError):
    """Container manifest is unreadable or internally inconsistent."""


class TruncatedPayloadError(FreqGeneError):
    """Manifest references bytes beyond the end of the file."""


class UnresolvedNameError(FreqGeneError):
    """A grouping rule references a tensor that does not exist."""


class OverlapError(FreqGeneError):
    """Two grouping rules claim the same tensor."""
