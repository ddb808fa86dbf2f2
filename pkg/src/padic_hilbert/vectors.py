"""Finite-support vectors, the inner product, and orthogonality.

Vectors live in the coordinate space c₀ with the sup norm and the canonical
non-Archimedean inner product ⟨x, y⟩ = Σ conj(x_i)·y_i.  Cauchy–Schwarz
holds (|⟨x,y⟩| ≤ ‖x‖‖y‖) but the norm is *not* induced: |⟨x,x⟩| < ‖x‖² is
possible, which is why normed orthogonality and inner-product orthogonality
are independent conditions and are always checked separately here.

Norm-orthogonality of a family is decided by the residue criterion: scale
each vector to norm 1 (powers of p, or of √μ in the ramified case) and test
the reductions for linear independence over the residue field.  This is
exact.  The perturbation coefficient t (distance to a line over the norm) is
also computed exactly, by minimizing over the finite candidate set where
some coordinate of x − λy vanishes; it serves as the independent cross-check
of the residue verdicts.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import DimensionMismatchError, DomainError, PrecisionLossError
from .extension import ExtScalar
from .field import FieldConfig
from .linalg import rank as _rank
from .normvalue import NormValue
from .padic import PAdicScalar
from .residue import Element, ResidueField


class Vector:
    """An element of the coordinate space with finitely many coordinates."""

    __slots__ = ("cfg", "coords")

    def __init__(self, cfg: FieldConfig, coords: Iterable[ExtScalar]) -> None:
        self.cfg = cfg
        self.coords = tuple(coords)

    # -- constructors ---------------------------------------------------

    @staticmethod
    def zero(cfg: FieldConfig, dim: int) -> "Vector":
        return Vector(cfg, [ExtScalar.zero(cfg)] * dim)

    @staticmethod
    def basis_vector(cfg: FieldConfig, i: int, dim: int) -> "Vector":
        if not 0 <= i < dim:
            raise DomainError(f"basis index {i} outside 0..{dim - 1}")
        coords = [ExtScalar.zero(cfg)] * dim
        coords[i] = ExtScalar.one(cfg)
        return Vector(cfg, coords)

    @staticmethod
    def canonical_basis(cfg: FieldConfig, dim: int) -> list["Vector"]:
        return [Vector.basis_vector(cfg, i, dim) for i in range(dim)]

    # -- basic structure -------------------------------------------------

    @property
    def dim(self) -> int:
        return len(self.coords)

    def _check_dim(self, other: "Vector") -> None:
        if self.dim != other.dim:
            raise DimensionMismatchError(
                f"vector dimensions differ: {self.dim} vs {other.dim}"
            )

    def __add__(self, other: "Vector") -> "Vector":
        if not isinstance(other, Vector):
            return NotImplemented
        self._check_dim(other)
        return Vector(self.cfg, [x + y for x, y in zip(self.coords, other.coords)])

    def __sub__(self, other: "Vector") -> "Vector":
        if not isinstance(other, Vector):
            return NotImplemented
        self._check_dim(other)
        return Vector(self.cfg, [x - y for x, y in zip(self.coords, other.coords)])

    def __neg__(self) -> "Vector":
        return Vector(self.cfg, [-x for x in self.coords])

    def scale(self, s: ExtScalar) -> "Vector":
        return Vector(self.cfg, [s * x for x in self.coords])

    def conj_coords(self) -> "Vector":
        """Coordinatewise conjugation (the canonical conjugation's action)."""
        return Vector(self.cfg, [x.conjugate() for x in self.coords])

    def pad(self, dim: int) -> "Vector":
        """Extend with exact zeros to the given dimension."""
        if dim < self.dim:
            raise DimensionMismatchError("pad: target dimension smaller than current")
        return Vector(
            self.cfg, self.coords + tuple(ExtScalar.zero(self.cfg) for _ in range(dim - self.dim))
        )

    @property
    def is_zeroish(self) -> bool:
        return all(c.is_zeroish for c in self.coords)

    @property
    def is_exact_zero(self) -> bool:
        return all(c.is_exact_zero for c in self.coords)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Vector):
            return NotImplemented
        return self.dim == other.dim and all(
            x == y for x, y in zip(self.coords, other.coords)
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"<Vector dim={self.dim} [{', '.join(str(c) for c in self.coords)}]>"

    # -- norm and inner product ------------------------------------------

    def sup_norm(self) -> NormValue:
        """Exact sup of coordinate norms; PrecisionLossError if some
        coordinate bound could exceed every exactly known coordinate."""
        exact: Optional[int] = None
        bound: Optional[int] = None
        for c in self.coords:
            e, b = c._component_exponents()
            if e is not None and (exact is None or e > exact):
                exact = e
            if b is not None and (bound is None or b > bound):
                bound = b
        if exact is None and bound is None:
            return NormValue.zero()
        if exact is not None and (bound is None or exact >= bound):
            return NormValue(exact)
        raise PrecisionLossError("sup norm undetermined at this precision")

    def norm_upper_bound(self) -> NormValue:
        vals = [c.norm_upper_bound() for c in self.coords]
        best = NormValue.zero()
        for v in vals:
            if best < v:
                best = v
        return best

    def ip(self, other: "Vector") -> ExtScalar:
        """⟨self, other⟩ = Σ conj(self_i)·other_i (conjugate-linear in the
        first slot)."""
        self._check_dim(other)
        acc = ExtScalar.zero(self.cfg)
        for x, y in zip(self.coords, other.coords):
            acc = acc + x.conjugate() * y
        return acc


def cauchy_schwarz_holds(x: Vector, y: Vector) -> bool:
    """|⟨x,y⟩| ≤ ‖x‖·‖y‖ (upper bounds are enough to decide ≤ here)."""
    lhs = x.ip(y).norm_upper_bound()
    rhs = x.norm_upper_bound() * y.norm_upper_bound()
    return not rhs < lhs


# -- residue reduction -----------------------------------------------------


def residue_field(cfg: FieldConfig) -> ResidueField:
    return ResidueField(cfg.p, cfg.nonresidue, quadratic=not cfg.ramified)


def _residue_of_qp(x: PAdicScalar, p: int) -> int:
    """Reduction mod p of a scalar with |x| ≤ 1 (0 when |x| < 1)."""
    if x.is_exact_zero:
        return 0
    if x.is_zeroish:
        if x.v >= 1:  # type: ignore[operator]
            return 0
        raise PrecisionLossError("residue undetermined at this precision")
    if x.v < 0:  # type: ignore[operator]
        raise DomainError("residue of a scalar with norm > 1")
    if x.v >= 1:  # type: ignore[operator]
        return 0
    return x.unit % p


def norm_one_scaling(cfg: FieldConfig, norm: NormValue) -> ExtScalar:
    """A scalar σ with |σ|·norm = 1 (a power of p, or of √μ when ramified)."""
    if norm.is_zero:
        raise DomainError("cannot scale the zero vector to norm one")
    e2 = norm.exp2
    assert e2 is not None
    if e2 % 2 == 0:
        return ExtScalar.from_fraction(cfg, Fraction(cfg.p) ** (e2 // 2))
    if not cfg.ramified:
        raise DomainError("odd norm exponent in an unramified configuration")
    # σ = μ^k·√μ with |σ| = p^(-(2k+1)/2): need exponent e2 = 2k+1.
    k = (e2 - 1) // 2
    mu_pow = Fraction(cfg.mu) ** k
    return ExtScalar.from_fraction(cfg, 0, mu_pow)


def normalized_to_norm_one(x: Vector) -> Vector:
    """Scale x by a canonical power of p (or √μ) so that ‖x‖ = 1."""
    return x.scale(norm_one_scaling(x.cfg, x.sup_norm()))


def residue_vector(x: Vector) -> list[Element]:
    """Reduction of a norm-1 vector over the residue field.

    Unramified: coordinate a + b√μ ↦ (a mod p) + (b mod p)·ω in F_{p²}.
    Ramified: the √μ-part has norm < 1 after normalization, so the residue
    is just a mod p in F_p.
    """
    cfg = x.cfg
    if x.sup_norm() != NormValue.one():
        raise DomainError("residue vector requires a norm-1 vector")
    out: list[Element] = []
    for c in x.coords:
        ra = _residue_of_qp(c.a, cfg.p)
        if cfg.ramified:
            out.append((ra, 0))
        else:
            out.append((ra, _residue_of_qp(c.b, cfg.p)))
    return out


def is_norm_orthogonal_system(vectors: Sequence[Vector]) -> bool:
    """Residue criterion: after scaling to norm 1, the reductions must be
    linearly independent over the residue field.  Exact."""
    if not vectors:
        return True
    cfg = vectors[0].cfg
    rows = [residue_vector(normalized_to_norm_one(v)) for v in vectors]
    fld = residue_field(cfg)
    return _rank(fld, rows) == len(vectors)


def is_normal_system(vectors: Sequence[Vector]) -> bool:
    """Norm-orthogonal family of norm-1 vectors."""
    one = NormValue.one()
    return all(v.sup_norm() == one for v in vectors) and is_norm_orthogonal_system(
        vectors
    )


def gram_matrix(vectors: Sequence[Vector]) -> list[list[ExtScalar]]:
    return [[vi.ip(vj) for vj in vectors] for vi in vectors]


def is_ip_orthonormal(vectors: Sequence[Vector]) -> bool:
    if not vectors:
        return True
    cfg = vectors[0].cfg
    one = ExtScalar.one(cfg)
    zero = ExtScalar.zero(cfg)
    for i, vi in enumerate(vectors):
        for j, vj in enumerate(vectors):
            if vi.ip(vj) != (one if i == j else zero):
                return False
    return True


def is_orthonormal_system(vectors: Sequence[Vector]) -> bool:
    """Normal system with ⟨v_i, v_j⟩ = δ_ij.

    Inner-product orthonormality alone does not imply norm-orthogonality in
    these spaces (e.g. (3/5, 4/5) at p = 5 has ⟨v,v⟩ = 1 but norm 5), so
    both halves are decided independently.
    """
    return is_normal_system(vectors) and is_ip_orthonormal(vectors)


def is_orthonormal_basis(vectors: Sequence[Vector]) -> bool:
    """Orthonormal system spanning its ambient space (finite dimension)."""
    if not vectors:
        return True
    return len(vectors) == vectors[0].dim and is_orthonormal_system(vectors)


# -- distance to a line / t-orthogonality ------------------------------------


def distance_to_span(x: Vector, y: Vector) -> tuple[NormValue, bool]:
    """(inf over λ of ‖x − λy‖, exact?).

    The infimum is attained where some coordinate of x − λy vanishes:
    ‖x − λy‖ = max(max_{y_j ≠ 0} |y_j|·|λ − x_j/y_j|, max_{y_j = 0} |x_j|),
    and a max of distances |λ − λ_j| over an ultrametric line is minimized
    at one of the λ_j (or λ = 0 when y has no usable coordinate).  When the
    minimizing difference cancels beyond working precision the returned
    value is the (sound) remaining upper bound and ``exact`` is False.
    """
    x._check_dim(y)
    if y.is_zeroish:
        raise DomainError("distance to the span of a zero-ish vector")
    candidates: list[ExtScalar] = [ExtScalar.zero(x.cfg)]
    for xj, yj in zip(x.coords, y.coords):
        if not yj.is_zeroish:
            candidates.append(xj / yj)
    best: Optional[NormValue] = None
    best_exact = True
    for lam in candidates:
        diff = x - y.scale(lam)
        try:
            val, exact = diff.sup_norm(), True
        except PrecisionLossError:
            val, exact = diff.norm_upper_bound(), False
        if best is None or val < best:
            best, best_exact = val, exact
    assert best is not None
    return best, best_exact


def t_coefficient(x: Vector, y: Vector) -> tuple[NormValue, bool]:
    """Symmetric perturbation coefficient t(x, y) ∈ [0, 1]:
    min(dist(x, span y)/‖x‖, dist(y, span x)/‖y‖).  t = 1 means the pair is
    norm-orthogonal."""
    dxy, e1 = distance_to_span(x, y)
    dyx, e2 = distance_to_span(y, x)
    txy = dxy / x.sup_norm()
    tyx = dyx / y.sup_norm()
    if txy < tyx:
        return txy, e1
    if tyx < txy:
        return tyx, e2
    return txy, e1 and e2
