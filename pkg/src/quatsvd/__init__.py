"""Quaternion linear algebra with randomized low-rank decompositions."""

from .core import (
    IllConditionedError,
    NonConvergenceError,
    QMatrix,
    Quaternion,
    RankDeficiencyError,
    adjoint,
    column_rep,
    frobenius_norm,
    from_column_rep,
    from_real_counterpart,
    hermitian_det,
    mat_mul,
    qmul,
    real_counterpart,
)
from .decomp import (
    BidiagResult,
    EigResult,
    QrResult,
    QsvdResult,
    bidiagonalize,
    eig_hermitian,
    householder_h0,
    householder_qr,
    householder_reflector,
    qmgs,
    qsvd,
    qsvd_truncate,
    rank_k_product,
    real_bidiag_svd,
    spectral_norm,
)
from .randomized import (
    LowRankApprox,
    RandConfig,
    prandsvd,
    randeig,
    randsvd,
    sample_gaussian,
    single_pass_eig,
    sketch_range,
)
from .bounds import (
    DeviationBounds,
    MonteCarlo,
    PinvStats,
    SpectrumTail,
    bound_report,
    deviation_bounds,
    eta,
    expected_fro_bound,
    expected_spec_bound,
    pinv_stats,
    pinv_tail_probs,
    simple_spec_deviation,
    validate_pinv_fro,
    validate_pinv_spec,
    validate_scaled_norms,
)

__version__ = "0.1.0"

__all__ = [
    "IllConditionedError",
    "NonConvergenceError",
    "QMatrix",
    "Quaternion",
    "RankDeficiencyError",
    "adjoint",
    "column_rep",
    "frobenius_norm",
    "from_column_rep",
    "from_real_counterpart",
    "hermitian_det",
    "mat_mul",
    "qmul",
    "real_counterpart",
    "BidiagResult",
    "EigResult",
    "QrResult",
    "QsvdResult",
    "bidiagonalize",
    "eig_hermitian",
    "householder_h0",
    "householder_qr",
    "householder_reflector",
    "qmgs",
    "qsvd",
    "qsvd_truncate",
    "rank_k_product",
    "real_bidiag_svd",
    "spectral_norm",
    "LowRankApprox",
    "RandConfig",
    "prandsvd",
    "randeig",
    "randsvd",
    "sample_gaussian",
    "single_pass_eig",
    "sketch_range",
    "DeviationBounds",
    "MonteCarlo",
    "PinvStats",
    "SpectrumTail",
    "bound_report",
    "deviation_bounds",
    "eta",
    "expected_fro_bound",
    "expected_spec_bound",
    "pinv_stats",
    "pinv_tail_probs",
    "simple_spec_deviation",
    "validate_pinv_fro",
    "validate_pinv_spec",
    "validate_scaled_norms",
]
