"""Tensor-tensor multiplication with full-rank linear maps.

The product of two tensor stacks is taken by pushing all mode-3 fibers
through a full-rank matrix, multiplying frontal slices face-wise, and
pulling back with the pseudoinverse. On top of that primitive the package
provides identities, transposes, inverses, tensor means on the
pseudo-positive-definite cone, determinant analogues for 2 x 2 x 2 tensors,
and the full/truncated pseudo-SVD used for cube compression.
"""

from .errors import MprodError
from .linmap import FullRankMap, MapKind, build_jl_map, build_u3_map, classify, hadamard, mode3_product
from .means import geometric_mean, ppd_root, riccati_residual, solve_riccati, wasserstein_mean
from .polydet import Quadratic, hyperdet_2x2x2, quadratic_resultant, resultant_2x2x2
from .product import (
    MprodContext,
    associativity_defect,
    eval_tensor_poly,
    facewise,
    identity_tensor,
    inner_product,
    is_f_diagonal,
    is_m_hermitian,
    is_ppd,
    m_inverse,
    m_transpose,
    mprod,
    pd_falsify,
)
from .psvd import (
    CompressionReport,
    PsvdFactors,
    compression_ratio,
    pseudo_svd_full,
    pseudo_svd_truncated,
    reconstruct,
    relative_error,
    singular_tube_norms,
    truncate_factors,
)
from .tensor import Tensor3, Tube, approx_eq, frobenius_norm

__version__ = "0.1.0"

__all__ = [
    "MprodError",
    "Tensor3",
    "Tube",
    "approx_eq",
    "frobenius_norm",
    "FullRankMap",
    "MapKind",
    "classify",
    "mode3_product",
    "hadamard",
    "build_jl_map",
    "build_u3_map",
    "MprodContext",
    "facewise",
    "mprod",
    "identity_tensor",
    "m_transpose",
    "is_m_hermitian",
    "m_inverse",
    "inner_product",
    "is_ppd",
    "pd_falsify",
    "is_f_diagonal",
    "associativity_defect",
    "eval_tensor_poly",
    "ppd_root",
    "geometric_mean",
    "wasserstein_mean",
    "riccati_residual",
    "solve_riccati",
    "Quadratic",
    "quadratic_resultant",
    "resultant_2x2x2",
    "hyperdet_2x2x2",
    "PsvdFactors",
    "pseudo_svd_full",
    "reconstruct",
    "truncate_factors",
    "pseudo_svd_truncated",
    "relative_error",
    "compression_ratio",
    "singular_tube_norms",
    "CompressionReport",
    "__version__",
]
