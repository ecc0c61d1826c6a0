"""Third-order tensor completion via truncated tensor nuclear norm
minimization with DCT-domain sparse regularization, built on the t-product."""

from .errors import (
    DimensionError,
    DivergenceError,
    FormatError,
    ParameterError,
    SpectralConsistencyError,
    SrtdError,
)
from .tensor_core import (
    Tensor3,
    bcirc,
    fold,
    fro_norm,
    identity_tensor,
    inner_product,
    l1_norm,
    ttrace,
    ttranspose,
    unfold,
)
from .transforms import dct3, dft_mode3, idct3, idft_mode3
from .t_algebra import (
    TSvdFactors,
    svt,
    tnn,
    tnn_via_tsvd,
    tproduct,
    trace_bound_check,
    trace_pair,
    tsvd,
    ttnn,
    tubal_rank,
)
from .solver import (
    SolveReport,
    SolverConfig,
    SolverState,
    admm_solve,
    soft_threshold,
    srtd_complete,
    truncate_factors,
)
from .evalkit import (
    ObservationMask,
    apply_mask,
    mask_from_image,
    psnr,
    random_mask,
    sampling_rate,
)
from .pnm import load_image, load_video, save_image

__version__ = "0.1.0"

__all__ = [
    "Tensor3", "TSvdFactors", "ObservationMask",
    "SolverConfig", "SolverState", "SolveReport",
    "SrtdError", "DimensionError", "ParameterError", "FormatError",
    "SpectralConsistencyError", "DivergenceError",
    "unfold", "fold", "bcirc", "ttranspose", "identity_tensor",
    "fro_norm", "l1_norm", "inner_product", "ttrace",
    "dft_mode3", "idft_mode3", "dct3", "idct3",
    "tproduct", "tsvd", "tubal_rank", "tnn", "tnn_via_tsvd",
    "trace_pair", "ttnn", "svt", "trace_bound_check",
    "soft_threshold", "truncate_factors", "admm_solve", "srtd_complete",
    "random_mask", "mask_from_image", "sampling_rate", "apply_mask", "psnr",
    "load_image", "save_image", "load_video",
    "__version__",
]
