"""Finite tensors of two coordinate spaces as coefficient matrices.

A tensor over H ⊗ K (dimensions d_H, d_K) is stored as the canonical
coefficient matrix λ with λ_ij the coefficient of e_i ⊗ f_j.  A simple
tensor x ⊗ y has λ_ij = x_i · y_j (no conjugation: the tensor product is
bilinear; conjugate-linearity lives in the inner product's first slot).

The projective norm of the coefficient matrix is sup |λ_ij|: every
representation Σ x_k ⊗ y_k of the same tensor satisfies
max_k ‖x_k‖·‖y_k‖ ≥ sup |λ_ij|, and the canonical expansion over basis
vectors attains it, so the infimum over representations is exactly the sup
of the coefficients.  The inner product extends the rule
⟨x⊗y, x'⊗y'⟩ = ⟨x,x'⟩·⟨y,y'⟩ — in coefficients, Σ conj(λ_ij)·λ'_ij.
"""

from __future__ import annotations

from typing import Callable, Sequence

from .errors import DimensionMismatchError, DomainError
from .extension import ExtScalar
from .field import FieldConfig
from .linalg import ExtOps, rank as _rank
from .normvalue import NormValue
from .vectors import Vector


class Tensor:
    """Coefficient matrix of an element of the tensor product."""

    __slots__ = ("cfg", "dim_h", "dim_k", "lam")

    def __init__(
        self, cfg: FieldConfig, lam: Sequence[Sequence[ExtScalar]]
    ) -> None:
        self.cfg = cfg
        self.lam = tuple(tuple(row) for row in lam)
        self.dim_h = len(self.lam)
        self.dim_k = len(self.lam[0]) if self.lam else 0
        if self.dim_h == 0 or self.dim_k == 0:
            raise DomainError("tensor requires positive dimensions")
        if any(len(row) != self.dim_k for row in self.lam):
            raise DimensionMismatchError("ragged coefficient matrix")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(cfg: FieldConfig, dim_h: int, dim_k: int) -> "Tensor":
        z = ExtScalar.zero(cfg)
        return Tensor(cfg, [[z] * dim_k for _ in range(dim_h)])

    @staticmethod
    def simple(x: Vector, y: Vector) -> "Tensor":
        """The simple tensor x ⊗ y."""
        return Tensor(
            x.cfg, [[xi * yj for yj in y.coords] for xi in x.coords]
        )

    @staticmethod
    def from_pairs(
        cfg: FieldConfig,
        pairs: Sequence[tuple[Vector, Vector]],
        dim_h: int,
        dim_k: int,
    ) -> "Tensor":
        """Σ_k x_k ⊗ y_k as a coefficient matrix."""
        acc = Tensor.zero(cfg, dim_h, dim_k)
        for x, y in pairs:
            if x.dim != dim_h or y.dim != dim_k:
                raise DimensionMismatchError(
                    "pair dimensions do not match the declared tensor shape"
                )
            acc = acc + Tensor.simple(x, y)
        return acc

    # -- structure ------------------------------------------------------------

    def _check(self, other: "Tensor") -> None:
        if (self.dim_h, self.dim_k) != (other.dim_h, other.dim_k):
            raise DimensionMismatchError("tensor shapes differ")

    def __add__(self, other: "Tensor") -> "Tensor":
        if not isinstance(other, Tensor):
            return NotImplemented
        self._check(other)
        return Tensor(
            self.cfg,
            [
                [a + b for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.lam, other.lam)
            ],
        )

    def __sub__(self, other: "Tensor") -> "Tensor":
        if not isinstance(other, Tensor):
            return NotImplemented
        return self + (-other)

    def __neg__(self) -> "Tensor":
        return Tensor(self.cfg, [[-a for a in row] for row in self.lam])

    def scale(self, s: ExtScalar) -> "Tensor":
        return Tensor(self.cfg, [[s * a for a in row] for row in self.lam])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Tensor):
            return NotImplemented
        if (self.dim_h, self.dim_k) != (other.dim_h, other.dim_k):
            return False
        return all(
            a == b for r1, r2 in zip(self.lam, other.lam) for a, b in zip(r1, r2)
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"<Tensor {self.dim_h}x{self.dim_k}>"

    @property
    def is_exact_zero(self) -> bool:
        return all(a.is_exact_zero for row in self.lam for a in row)

    @property
    def is_zeroish(self) -> bool:
        return all(a.is_zeroish for row in self.lam for a in row)

    # -- metric structure ---------------------------------------------------

    def flatten(self) -> Vector:
        """Row-major coefficient vector (an isometry onto a coordinate
        space of dimension d_H · d_K)."""
        return Vector(self.cfg, [a for row in self.lam for a in row])

    def proj_norm(self) -> NormValue:
        """sup |λ_ij| — equals the infimum of max_k ‖x_k‖·‖y_k‖ over all
        finite representations Σ x_k ⊗ y_k."""
        return self.flatten().sup_norm()

    def norm_upper_bound(self) -> NormValue:
        return self.flatten().norm_upper_bound()

    def ip(self, other: "Tensor") -> ExtScalar:
        """⟨s, t⟩ = Σ conj(s_ij)·t_ij, conjugate-linear in the first slot."""
        self._check(other)
        return self.flatten().ip(other.flatten())

    def rank(self) -> int:
        """Rank of the coefficient matrix = minimal number of simple
        tensors in any representation.  Raises PrecisionLossError when
        pivoting meets an entry that is zero only at working precision."""
        return _rank(ExtOps(self.cfg), [list(row) for row in self.lam])

    def evaluate_bilinear(
        self, values: Sequence[Sequence[ExtScalar]]
    ) -> ExtScalar:
        """Σ λ_ij · B(e_i, f_j) for a bilinear map B given by its value
        table on basis pairs (the universal property in coordinates)."""
        if len(values) != self.dim_h or any(
            len(row) != self.dim_k for row in values
        ):
            raise DimensionMismatchError("value table shape mismatch")
        acc = ExtScalar.zero(self.cfg)
        for i in range(self.dim_h):
            for j in range(self.dim_k):
                acc = acc + self.lam[i][j] * values[i][j]
        return acc


def pairs_ip(
    pairs_a: Sequence[tuple[Vector, Vector]],
    pairs_b: Sequence[tuple[Vector, Vector]],
) -> ExtScalar:
    """Inner product computed directly from representations:
    Σ_{k,l} ⟨x_k, x'_l⟩·⟨y_k, y'_l⟩.  Independent of the coefficient
    matrix route; the two must agree for any representations of the same
    tensors."""
    if not pairs_a or not pairs_b:
        raise DomainError("empty representation")
    cfg = pairs_a[0][0].cfg
    acc = ExtScalar.zero(cfg)
    for x, y in pairs_a:
        for xp, yp in pairs_b:
            acc = acc + x.ip(xp) * y.ip(yp)
    return acc


def apply_tensor_map(
    t: Tensor,
    left: Callable[[Vector], Vector],
    right: Callable[[Vector], Vector],
    dim_h: int,
    dim_k: int,
) -> Tensor:
    """(A ⊗ B)(t) where A, B act on the two factors: push the canonical
    expansion Σ_ij λ_ij e_i ⊗ f_j through A and B."""
    cfg = t.cfg
    basis_h = Vector.canonical_basis(cfg, t.dim_h)
    basis_k = Vector.canonical_basis(cfg, t.dim_k)
    img_h = [left(e) for e in basis_h]
    img_k = [right(f) for f in basis_k]
    acc = Tensor.zero(cfg, dim_h, dim_k)
    for i in range(t.dim_h):
        for j in range(t.dim_k):
            acc = acc + Tensor.simple(img_h[i], img_k[j]).scale(t.lam[i][j])
    return acc
