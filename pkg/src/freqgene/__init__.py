"""freqgene: frequency-domain extraction, resizing, and regularization
of neural-network weight spectra.

Weights are transformed with an orthonormal DCT, the low-frequency
corner of each group's spectrum is kept as a compact "learngene", and
target models of any depth or width are initialized by zero-padding or
truncating that corner before the inverse transform.  A soft spectral
penalty (value + analytic gradient) is provided for regularized
refinement training.
"""

from .analysis import compaction, energy_spectrum, lowfreq_similarity
from .container import (
    Container,
    GroupingConfig,
    GroupRule,
    load_grouping_config,
    passthrough_names,
    read_container,
    resolve_groups,
    write_container,
)
from .dct import (
    dct_1d,
    dct_nd,
    dct_nd_naive,
    idct_1d,
    idct_nd,
    idct_nd_naive,
)
from .errors import (
    BadAxisError,
    BadLambdaError,
    BadMagicError,
    CorruptManifestError,
    DuplicateNameError,
    EmptySignalError,
    FreqGeneError,
    InvalidShapeError,
    LengthMismatchError,
    MissingTensorError,
    NonFiniteError,
    NonPositiveGammaError,
    OverlapError,
    RankMismatchError,
    ShapeMismatchError,
    TooLargeError,
    TruncatedPayloadError,
    UnresolvedNameError,
    UnsupportedVersionError,
)
from .gene import (
    Learngene,
    WeightGroupSpec,
    build_mask,
    extract_learngene,
    load_learngene,
    save_learngene,
    stack_group,
)
from .regularizer import (
    DEFAULT_GAMMA,
    DEFAULT_LAMBDA,
    RefineReport,
    RegConfig,
    build_penalty_mask,
    refine_demo,
    reg_gradient,
    reg_loss,
    reg_loss_from_weights,
    total_loss,
)
from .resize import reconstruct, resize_spectrum
from .tensor import frobenius_norm, new_tensor

__version__ = "0.1.0"

__all__ = [
    "BadAxisError",
    "BadLambdaError",
    "BadMagicError",
    "Container",
    "CorruptManifestError",
    "DEFAULT_GAMMA",
    "DEFAULT_LAMBDA",
    "DuplicateNameError",
    "EmptySignalError",
    "FreqGeneError",
    "GroupRule",
    "GroupingConfig",
    "InvalidShapeError",
    "Learngene",
    "LengthMismatchError",
    "MissingTensorError",
    "NonFiniteError",
    "NonPositiveGammaError",
    "OverlapError",
    "RankMismatchError",
    "RefineReport",
    "RegConfig",
    "ShapeMismatchError",
    "TooLargeError",
    "TruncatedPayloadError",
    "UnresolvedNameError",
    "UnsupportedVersionError",
    "WeightGroupSpec",
    "build_mask",
    "build_penalty_mask",
    "compaction",
    "dct_1d",
    "dct_nd",
    "dct_nd_naive",
    "energy_spectrum",
    "extract_learngene",
    "frobenius_norm",
    "idct_1d",
    "idct_nd",
    "idct_nd_naive",
    "load_grouping_config",
    "load_learngene",
    "lowfreq_similarity",
    "new_tensor",
    "passthrough_names",
    "read_container",
    "reconstruct",
    "reg_gradient",
    "reg_loss",
    "reg_loss_from_weights",
    "refine_demo",
    "resize_spectrum",
    "resolve_groups",
    "save_learngene",
    "stack_group",
    "total_loss",
    "write_container",
]
