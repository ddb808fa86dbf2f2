"""Exact arithmetic for tensor products of p-adic coordinate spaces.

The package models the quadratic extension Q_p(√μ) of the p-adic numbers
with exact interval scalars, builds finite and tail-profiled matrix
operators over coordinate spaces equipped with the sup norm, realizes the
projective tensor product with its representation-independent inner
product, and decides the anti-unitary/conjugation questions (fixed-point
decompositions, invariant orthonormal bases, the dichotomy families)
by exact certificate rather than floating approximation.
"""

from .conjugation import (
    AntiLinearMap,
    AntiUnitaryReport,
    DichotomyReport,
    InvariantSearchResult,
    anti_unitary_report,
    conjugation_for_basis,
    dichotomy_construction,
    invariant_orthonormal_search,
    pairwise_swap_conjugation,
    standard_conjugation,
    z_invariant_decomposition,
)
from .errors import (
    DimensionMismatchError,
    DomainError,
    InputFormatError,
    NotCertifiedError,
    NotInvolutiveError,
    NotOrthonormalError,
    NotTraceClassError,
    PadicHilbertError,
    PrecisionLossError,
)
from .extension import ExtScalar, hermitian_square_root, is_square_ext, sqrt_ext
from .field import FieldConfig, MuKind
from .normvalue import NormValue
from .op_tensor import (
    hs_norm,
    operator_to_tensor,
    rank_one_operator,
    tensor_to_operator,
)
from .operators import (
    MatrixOperator,
    OperatorClassification,
    TailProfile,
    hs_inner_product,
    inverse_matrix,
    is_invertible,
    is_unitary,
)
from .padic import PAdicScalar, is_square_qp, sqrt_qp
from .samples import Sampler
from .selftest import SUITE_NAMES, SuiteResult, run_suite
from .subspaces import (
    RegularityVerdict,
    Subspace,
    change_tensor_basis,
    change_tensor_basis_inverse,
    extend_orthonormal_system,
    perp,
    regularity,
    rows_to_tensor,
    tensor_subspace,
    tensor_to_rows,
)
from .tensors import Tensor, apply_tensor_map, pairs_ip
from .vectors import (
    Vector,
    gram_matrix,
    is_ip_orthonormal,
    is_norm_orthogonal_system,
    is_normal_system,
    is_orthonormal_basis,
    is_orthonormal_system,
)

__all__ = [
    "AntiLinearMap",
    "AntiUnitaryReport",
    "DichotomyReport",
    "DimensionMismatchError",
    "DomainError",
    "ExtScalar",
    "FieldConfig",
    "InputFormatError",
    "InvariantSearchResult",
    "MatrixOperator",
    "MuKind",
    "NormValue",
    "NotCertifiedError",
    "NotInvolutiveError",
    "NotOrthonormalError",
    "NotTraceClassError",
    "OperatorClassification",
    "PAdicScalar",
    "PadicHilbertError",
    "PrecisionLossError",
    "RegularityVerdict",
    "SUITE_NAMES",
    "Sampler",
    "Subspace",
    "SuiteResult",
    "TailProfile",
    "Tensor",
    "Vector",
    "anti_unitary_report",
    "apply_tensor_map",
    "change_tensor_basis",
    "change_tensor_basis_inverse",
    "conjugation_for_basis",
    "dichotomy_construction",
    "extend_orthonormal_system",
    "gram_matrix",
    "hermitian_square_root",
    "hs_inner_product",
    "hs_norm",
    "invariant_orthonormal_search",
    "inverse_matrix",
    "is_invertible",
    "is_ip_orthonormal",
    "is_norm_orthogonal_system",
    "is_normal_system",
    "is_orthonormal_basis",
    "is_orthonormal_system",
    "is_square_ext",
    "is_square_qp",
    "is_unitary",
    "operator_to_tensor",
    "pairs_ip",
    "pairwise_swap_conjugation",
    "perp",
    "rank_one_operator",
    "regularity",
    "rows_to_tensor",
    "run_suite",
    "sqrt_ext",
    "sqrt_qp",
    "standard_conjugation",
    "tensor_subspace",
    "tensor_to_operator",
    "tensor_to_rows",
    "z_invariant_decomposition",
    "__version__",
]

__version__ = "0.1.0"
