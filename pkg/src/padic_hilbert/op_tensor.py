"""Finite matrix operators as tensor coefficients and back.

A finite matrix operator T : H → K (rows = dim K, cols = dim H) corresponds
to the coefficient matrix λ with λ_ij = T_ji, i.e. the tensor
Σ_ij λ_ij·(e_i ⊗ f_j) where e_i runs over the canonical basis of H and f_j
over that of K.  Under this correspondence

* the rank-one operator x ↦ ⟨v, x⟩·w maps to the simple tensor
  conj(v) ⊗ w — the coordinate conjugation absorbs the sesquilinearity of
  the pairing in its first slot,
* the Hilbert–Schmidt pairing Σ_mn conj(S_mn)·T_mn of two operators equals
  the tensor pairing of their images (the correspondence is a pairing
  isometry, hence also a sup-norm isometry), and
* both composites are the identity (the correspondence is a bijection).
"""

from __future__ import annotations

from .errors import DomainError
from .normvalue import NormValue
from .operators import MatrixOperator
from .tensors import Tensor
from .vectors import Vector

__all__ = [
    "operator_to_tensor",
    "tensor_to_operator",
    "rank_one_operator",
    "hs_norm",
]


def _require_finite(op: MatrixOperator, what: str) -> None:
    if op.tail is not None:
        raise DomainError(f"{what} requires a finite operator window")
    if op.rows == 0 or op.cols == 0:
        raise DomainError(f"{what} requires positive dimensions")


def operator_to_tensor(op: MatrixOperator) -> Tensor:
    """The coefficient matrix λ_ij = T_ji of a finite operator T."""
    _require_finite(op, "operator_to_tensor")
    return Tensor(
        op.cfg,
        [
            [op.entries[j][i] for j in range(op.rows)]
            for i in range(op.cols)
        ],
    )


def tensor_to_operator(t: Tensor) -> MatrixOperator:
    """The finite operator T with T_ji = λ_ij; inverse of
    operator_to_tensor."""
    return MatrixOperator(
        t.cfg,
        [
            [t.lam[i][j] for i in range(t.dim_h)]
            for j in range(t.dim_k)
        ],
    )


def rank_one_operator(v: Vector, w: Vector) -> MatrixOperator:
    """The operator x ↦ ⟨v, x⟩·w, as the matrix T_ji = w_j·conj(v_i)
    (rows = dim w, cols = dim v)."""
    if v.cfg is not w.cfg and v.cfg != w.cfg:
        raise DomainError("rank-one factors live over different fields")
    return MatrixOperator(
        v.cfg,
        [
            [wj * vi.conjugate() for vi in v.coords]
            for wj in w.coords
        ],
    )


def hs_norm(op: MatrixOperator) -> NormValue:
    """Hilbert–Schmidt norm of a finite operator: the sup of the entry
    norms, i.e. the projective norm of its coefficient tensor."""
    _require_finite(op, "hs_norm")
    return operator_to_tensor(op).proj_norm()
