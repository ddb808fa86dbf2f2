"""Anti-linear maps, conjugations, and the orthonormal/invariant dichotomy.

An anti-linear map is stored through its linear part L as Z = J∘L, where J
conjugates coordinates: Z x = conj(L x).  Then Z(c·x) = conj(c)·Z(x), and
the matrix calculus reads

* Z² = conj(L)·L                      (involutive ⟺ conj(L)·L = Id),
* Z* = J∘Lᵀ with ⟨φ, Z*ψ⟩ = ⟨ψ, Zφ⟩  (the anti-linear adjoint pairing),
* Z*Z = L*L and ZZ* = conj(L)·Lᵀ,
* ⟨Zx, Zy⟩ = conj(⟨x, y⟩) for all x, y ⟺ L*L = Id.

The standard conjugation J₀ is L = Id; the conjugation attached to an
orthonormal basis Ψ (x ↦ Σ conj(⟨ψ_m, x⟩)·ψ_m) has L = conj(S·Sᵀ) for S the
column matrix of Ψ.

The dichotomy construction builds, from an involutive conjugation Z and two
coefficients, a family mixing Zφ ± φ; depending on the coefficients the
family is orthonormal (but moves under Z) or Z-invariant and normal (but
not orthonormal) — it can never be both, and no member of the family can be
at distance < 1 from the canonical basis, because max(|1−w|, |w|) ≥ 1 for
every scalar w by the ultrametric inequality.

Whether *some* Z-invariant orthonormal basis exists is decided exactly:
the Z-fixed set is a Q_p-subspace computable as a kernel, the restricted
pairing is a symmetric Q_p-bilinear form on it, and an invariant
orthonormal basis exists iff that form is equivalent to the identity form
— a discriminant/Hasse computation, not a search.  A witness basis is then
constructed deterministically by orthogonalization, square-root rescaling,
and two-dimensional conic solving.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .errors import (
    DimensionMismatchError,
    DomainError,
    NotInvolutiveError,
    NotOrthonormalError,
    PrecisionLossError,
)
from .extension import ExtScalar
from .field import FieldConfig
from .linalg import ExtOps, TolerantQpOps, kernel_basis, rank as _rank
from .normvalue import NormValue
from .operators import (
    MatrixOperator,
    inverse_matrix,
    is_invertible,
    is_isometry_matrix,
    is_unitary,
)
from .padic import PAdicScalar, is_square_qp, sqrt_qp
from .quadratic_forms import diagonalize_symmetric, form_invariants
from .samples import Sampler
from .vectors import (
    Vector,
    is_ip_orthonormal,
    is_norm_orthogonal_system,
    is_normal_system,
    is_orthonormal_basis,
    is_orthonormal_system,
)


class AntiLinearMap:
    """Z = J∘L for a finite square linear part L."""

    __slots__ = ("cfg", "linear_part")

    def __init__(self, linear_part: MatrixOperator) -> None:
        if linear_part.tail is not None or linear_part.rows != linear_part.cols:
            raise DomainError("anti-linear maps require a finite square window")
        self.cfg = linear_part.cfg
        self.linear_part = linear_part

    @property
    def dim(self) -> int:
        return self.linear_part.rows

    def apply(self, x: Vector) -> Vector:
        return self.linear_part.apply(x).conj_coords()

    def adjoint(self) -> "AntiLinearMap":
        """Z* with ⟨φ, Z*ψ⟩ = ⟨ψ, Zφ⟩."""
        return AntiLinearMap(self.linear_part.transpose())

    def squared(self) -> MatrixOperator:
        """Z² as a linear map: conj(L)·L."""
        return self.linear_part.conj_entries().compose(self.linear_part)

    def zstar_z(self) -> MatrixOperator:
        """Z*Z as a linear map: L*L."""
        return self.linear_part.adjoint().compose(self.linear_part)

    def z_zstar(self) -> MatrixOperator:
        """ZZ* as a linear map: conj(L)·Lᵀ."""
        return self.linear_part.conj_entries().compose(self.linear_part.transpose())

    @property
    def is_involutive(self) -> bool:
        return self.squared() == MatrixOperator.identity(self.cfg, self.dim)

    @property
    def is_ip_conjugating(self) -> bool:
        """⟨Zx, Zy⟩ = conj(⟨x, y⟩) for all x, y."""
        return self.zstar_z() == MatrixOperator.identity(self.cfg, self.dim)

    @property
    def is_surjective(self) -> bool:
        return is_invertible(self.linear_part)

    def inverse(self) -> "AntiLinearMap":
        return AntiLinearMap(inverse_matrix(self.linear_part).conj_entries())

    def norm(self) -> NormValue:
        return self.linear_part.op_norm()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AntiLinearMap):
            return NotImplemented
        return self.linear_part == other.linear_part

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"<AntiLinearMap dim={self.dim}>"


def standard_conjugation(cfg: FieldConfig, dim: int) -> AntiLinearMap:
    """J₀: coordinatewise conjugation."""
    return AntiLinearMap(MatrixOperator.identity(cfg, dim))


def pairwise_swap_conjugation(cfg: FieldConfig, dim: int) -> AntiLinearMap:
    """J₀ composed with the permutation swapping coordinates 2k ↔ 2k+1
    (0-based): a symmetric involutive conjugation without fixed basis
    vectors."""
    if dim % 2:
        raise DomainError("pairwise swap needs an even dimension")
    one, z = ExtScalar.one(cfg), ExtScalar.zero(cfg)
    rows = [[z] * dim for _ in range(dim)]
    for k in range(0, dim, 2):
        rows[k][k + 1] = one
        rows[k + 1][k] = one
    return AntiLinearMap(MatrixOperator(cfg, rows))


def conjugation_for_basis(basis: Sequence[Vector]) -> AntiLinearMap:
    """The conjugation J_Ψ x = Σ_m conj(⟨ψ_m, x⟩)·ψ_m attached to an
    orthonormal basis: linear part conj(S·Sᵀ).  It fixes every ψ_m and is
    involutive and inner-product conjugating."""
    if not basis:
        raise NotOrthonormalError("empty basis")
    if not is_orthonormal_basis(list(basis)):
        raise NotOrthonormalError(
            "conjugation_for_basis requires an orthonormal basis"
        )
    cfg = basis[0].cfg
    s = MatrixOperator.from_columns(cfg, list(basis))
    return AntiLinearMap(s.compose(s.transpose()).conj_entries())


# -- the eight anti-unitarity characterizations --------------------------------


@dataclass(frozen=True)
class AntiUnitaryReport:
    """The eight equivalent characterizations, each evaluated on its own
    route.  `labels` records which are exact matrix criteria and which rely
    on sampled probes; for a genuine anti-unitary all eight are True and
    for the standard non-examples all eight are False — `unanimous` flags
    whether the report is coherent."""

    z1_linear_part_unitary: bool
    z2_basis_images_orthonormal: bool
    z3_star_relations_and_norm: bool
    z4_all_over_surjective_conjugating: bool
    z5_conjugating_invertible_norms_one: bool
    z6_conjugating_surjective_isometry: bool
    z7_conjugating_surjective_northogonality: bool
    z8_bounded_onb_to_onb: bool
    labels: dict[str, str] = field(default_factory=dict)

    def values(self) -> list[bool]:
        return [
            self.z1_linear_part_unitary,
            self.z2_basis_images_orthonormal,
            self.z3_star_relations_and_norm,
            self.z4_all_over_surjective_conjugating,
            self.z5_conjugating_invertible_norms_one,
            self.z6_conjugating_surjective_isometry,
            self.z7_conjugating_surjective_northogonality,
            self.z8_bounded_onb_to_onb,
        ]

    @property
    def unanimous(self) -> bool:
        vals = self.values()
        return all(vals) or not any(vals)

    @property
    def all_true(self) -> bool:
        return all(self.values())

    def as_dict(self) -> dict:
        return {
            "z1_linear_part_unitary": self.z1_linear_part_unitary,
            "z2_basis_images_orthonormal": self.z2_basis_images_orthonormal,
            "z3_star_relations_and_norm": self.z3_star_relations_and_norm,
            "z4_all_over_surjective_conjugating": self.z4_all_over_surjective_conjugating,
            "z5_conjugating_invertible_norms_one": self.z5_conjugating_invertible_norms_one,
            "z6_conjugating_surjective_isometry": self.z6_conjugating_surjective_isometry,
            "z7_conjugating_surjective_northogonality": self.z7_conjugating_surjective_northogonality,
            "z8_bounded_onb_to_onb": self.z8_bounded_onb_to_onb,
            "labels": dict(self.labels),
            "unanimous": self.unanimous,
        }


def _basis_images(z: AntiLinearMap) -> list[Vector]:
    return [
        z.linear_part.column(j).conj_coords() for j in range(1, z.dim + 1)
    ]


def _certified(check: "Callable[[], bool]") -> bool:
    """A predicate route that cannot be decided at working precision does
    not certify its property; the report answers False for it."""
    try:
        return check()
    except PrecisionLossError:
        return False


def anti_unitary_report(
    z: AntiLinearMap,
    rng: Optional[random.Random] = None,
    probes: int = 4,
) -> AntiUnitaryReport:
    """Evaluate the eight characterizations of anti-unitarity, each by its
    own route (no shortcuts through another predicate's criterion)."""
    rng = rng if rng is not None else random.Random(0)
    cfg, n = z.cfg, z.dim
    ident = MatrixOperator.identity(cfg, n)
    one = NormValue.one()

    lp = z.linear_part
    ip_conj = _certified(lambda: z.is_ip_conjugating)
    surjective = _certified(lambda: z.is_surjective)

    z1 = _certified(lambda: is_unitary(lp))

    images = _basis_images(z)
    z2 = _certified(lambda: is_orthonormal_system(images))

    z3 = _certified(
        lambda: z.zstar_z() == ident
        and z.z_zstar() == ident
        and z.norm() == one
    )

    z4 = surjective and ip_conj

    z5 = ip_conj and surjective
    if z5:
        z5 = _certified(
            lambda: z.norm() == one and z.inverse().norm() == one
        )

    z6 = ip_conj and surjective and _certified(
        lambda: is_isometry_matrix(lp)
    )

    def probe_north() -> bool:
        sampler = Sampler(cfg, rng)
        for _ in range(probes):
            basis = sampler.orthonormal_basis(n)
            for idx in range(len(basis) - 1):
                u, v = basis[idx], basis[idx + 1]
                if not is_norm_orthogonal_system([u, v]):
                    continue
                if not is_norm_orthogonal_system([z.apply(u), z.apply(v)]):
                    return False
        return True

    z7 = surjective and ip_conj and _certified(probe_north)

    def probe_onb() -> bool:
        sampler = Sampler(cfg, rng)
        for _ in range(probes):
            basis = sampler.orthonormal_basis(n)
            if not is_orthonormal_basis([z.apply(b) for b in basis]):
                return False
        return True

    # A finite window is always a bounded map.
    z8 = _certified(lambda: is_orthonormal_basis(images)) and _certified(
        probe_onb
    )

    labels = {
        "z1_linear_part_unitary": "exact",
        "z2_basis_images_orthonormal": "exact",
        "z3_star_relations_and_norm": "exact",
        "z4_all_over_surjective_conjugating": "exact",
        "z5_conjugating_invertible_norms_one": "exact",
        "z6_conjugating_surjective_isometry": "exact",
        "z7_conjugating_surjective_northogonality": "sampled",
        "z8_bounded_onb_to_onb": "sampled",
    }
    return AntiUnitaryReport(z1, z2, z3, z4, z5, z6, z7, z8, labels)


# -- the dichotomy construction ----------------------------------------------


@dataclass(frozen=True)
class DichotomyReport:
    branch: str
    orthonormal: bool
    normal: bool
    invariant: bool
    spanning: bool
    bilinear_value_plus: str
    bilinear_value_minus: str
    sesquilinear_value_plus: str
    sesquilinear_value_minus: str
    bilinear_constraints_hold: bool
    sesquilinear_constraints_hold: bool
    t1: str
    t2: str
    t_below_one_infeasible: bool
    distance_plus: str
    distance_minus: str
    inversion_ok: bool
    family: tuple[Vector, ...] = field(repr=False, default=())

    def as_dict(self) -> dict:
        return {
            "branch": self.branch,
            "orthonormal": self.orthonormal,
            "normal": self.normal,
            "invariant": self.invariant,
            "spanning": self.spanning,
            "bilinear_value_plus": self.bilinear_value_plus,
            "bilinear_value_minus": self.bilinear_value_minus,
            "sesquilinear_value_plus": self.sesquilinear_value_plus,
            "sesquilinear_value_minus": self.sesquilinear_value_minus,
            "bilinear_constraints_hold": self.bilinear_constraints_hold,
            "sesquilinear_constraints_hold": self.sesquilinear_constraints_hold,
            "t1": self.t1,
            "t2": self.t2,
            "t_below_one_infeasible": self.t_below_one_infeasible,
            "distance_plus": self.distance_plus,
            "distance_minus": self.distance_minus,
            "inversion_ok": self.inversion_ok,
        }


def _parallel(u: Vector, v: Vector) -> bool:
    """Proportionality at working precision: all 2×2 coordinate minors
    vanish.  (Certified rank would refuse to classify the exact duplicates
    the dichotomy produces, whose differences are zero at precision.)"""
    for i in range(u.dim):
        for j in range(i + 1, u.dim):
            if u.coords[i] * v.coords[j] != u.coords[j] * v.coords[i]:
                return False
    return True


def _norm_str(z: ExtScalar) -> str:
    try:
        return str(z.norm())
    except Exception:
        return str(z.norm_upper_bound())


def dichotomy_construction(
    cfg: FieldConfig,
    z1: ExtScalar,
    z2: ExtScalar,
    base_dim: int = 1,
    z: Optional[AntiLinearMap] = None,
) -> DichotomyReport:
    """Build the family ψ⁺ = z1·(Zφ + φ), ψ⁻ = (z2/√μ)·(Zφ − φ) over the
    canonical basis φ, deduplicate the parallel copies produced by partner
    indices, and report which side of the dichotomy the coefficients land
    on.  Failures are recorded in the report, not raised."""
    if base_dim < 1:
        raise DomainError("base dimension must be positive")
    n = 2 * base_dim
    if z is None:
        z = pairwise_swap_conjugation(cfg, n)
    if z.dim != n:
        raise DimensionMismatchError(
            f"conjugation dimension {z.dim} != 2·base_dim = {n}"
        )
    if not z.is_involutive:
        raise NotInvolutiveError("the dichotomy requires an involutive conjugation")
    if z1.is_zeroish or z2.is_zeroish:
        raise DomainError("dichotomy coefficients must be nonzero")

    sqrt_mu = ExtScalar.sqrt_mu(cfg)
    phi = Vector.canonical_basis(cfg, n)
    plus_all = [z.apply(v) + v for v in phi]
    minus_all = [z.apply(v) - v for v in phi]

    kept: list[int] = []
    consumed = [False] * n
    for i in range(n):
        if consumed[i]:
            continue
        kept.append(i)
        for j in range(i + 1, n):
            if consumed[j]:
                continue
            if _parallel(plus_all[i], plus_all[j]) and _parallel(
                minus_all[i], minus_all[j]
            ):
                consumed[j] = True
                break

    family: list[Vector] = []
    blocks: list[tuple[Vector, Vector]] = []
    for i in kept:
        psi_minus = minus_all[i].scale(z2 / sqrt_mu)
        psi_plus = plus_all[i].scale(z1)
        family.extend([psi_minus, psi_plus])
        blocks.append((psi_plus, psi_minus))

    orthonormal = is_ip_orthonormal(family)
    normal = is_normal_system(family)
    invariant = all(z.apply(v) == v for v in family)
    try:
        spanning = (
            len(family) == n
            and _rank(ExtOps(cfg), [list(v.coords) for v in family]) == n
        )
    except PrecisionLossError:
        # Not certifiably independent at working precision.
        spanning = False

    two = ExtScalar.from_fraction(cfg, 2)
    one = ExtScalar.one(cfg)
    mu = ExtScalar.from_fraction(cfg, cfg.mu)
    bil_plus = two * z1 * z1
    bil_minus = -(two * z2 * z2) / mu
    ses_plus = two * z1.conjugate() * z1
    ses_minus = -(two * z2.conjugate() * z2) / mu

    w = z2 / sqrt_mu
    t1 = max((one - z1).norm_upper_bound(), z1.norm_upper_bound())
    t2 = max((one + w).norm_upper_bound(), w.norm_upper_bound())
    nv_one = NormValue.one()
    infeasible = not (t1 < nv_one) and not (t2 < nv_one)

    i0 = kept[0]
    psi_plus0, psi_minus0 = blocks[0]
    dist_plus = (phi[i0] - psi_plus0).sup_norm()
    dist_minus = (phi[i0] - psi_minus0).sup_norm()

    inv_ok = True
    half = ExtScalar.from_fraction(cfg, Fraction(1, 2))
    for i, (pp, pm) in zip(kept, blocks):
        recon = pp.scale(half / z1) - pm.scale(sqrt_mu * half / z2)
        if recon != phi[i]:
            inv_ok = False
            break

    if orthonormal and invariant:
        # Reachable when both coefficients are rational square roots
        # (conj(z) = z makes the families invariant as well).
        branch = "orthonormal_and_invariant"
    elif orthonormal:
        branch = "orthonormal_not_invariant"
    elif invariant and normal:
        branch = "invariant_normal_not_orthonormal"
    else:
        branch = "other"

    return DichotomyReport(
        branch=branch,
        orthonormal=orthonormal,
        normal=normal,
        invariant=invariant,
        spanning=spanning,
        bilinear_value_plus=str(bil_plus),
        bilinear_value_minus=str(bil_minus),
        sesquilinear_value_plus=str(ses_plus),
        sesquilinear_value_minus=str(ses_minus),
        bilinear_constraints_hold=(bil_plus == one and bil_minus == one),
        sesquilinear_constraints_hold=(ses_plus == one and ses_minus == one),
        t1=str(t1),
        t2=str(t2),
        t_below_one_infeasible=infeasible,
        distance_plus=str(dist_plus),
        distance_minus=str(dist_minus),
        inversion_ok=inv_ok,
        family=tuple(family),
    )


# -- invariant decomposition ----------------------------------------------------


def z_invariant_decomposition(
    z: AntiLinearMap, chi: Vector
) -> tuple[Vector, Vector]:
    """Split χ along the fixed set of an involutive conjugation:
    χ₁ = Zχ + χ and χ₂ = (1/√μ)(χ − Zχ) satisfy Zχᵢ = χᵢ and
    χ = ½(χ₁ + √μ·χ₂), so the fixed set spans everything over the
    rational subfield adjoined with √μ.  (χ₂ is fixed because applying Z
    conjugates the 1/√μ prefactor to −1/√μ while swapping χ and Zχ.)"""
    if not z.is_involutive:
        raise NotInvolutiveError("decomposition requires an involutive conjugation")
    if chi.dim != z.dim:
        raise DimensionMismatchError("vector dimension does not match the map")
    zchi = z.apply(chi)
    chi1 = zchi + chi
    chi2 = (chi - zchi).scale(ExtScalar.sqrt_mu(z.cfg).inverse())
    return chi1, chi2


# -- existence of invariant orthonormal bases -------------------------------------


@dataclass(frozen=True)
class InvariantSearchResult:
    fixed_dim: int
    exists: bool
    disc_class: tuple[int, int]
    hasse: int
    diagonal_form: tuple[str, ...]
    witness: Optional[tuple[Vector, ...]]
    witness_verified: bool

    def as_dict(self) -> dict:
        return {
            "fixed_dim": self.fixed_dim,
            "exists": self.exists,
            "disc_class": list(self.disc_class),
            "hasse": self.hasse,
            "diagonal_form": list(self.diagonal_form),
            "witness_found": self.witness is not None,
            "witness_verified": self.witness_verified,
        }


def _fixed_space_basis(z: AntiLinearMap) -> list[Vector]:
    """Q_p-basis of {x : Zx = x} via the kernel of the doubled real system
    [[A−I, μB], [B, A+I]] where L = A + B√μ.

    The system's structural zeros surface as zero-at-precision values, so
    elimination runs with the tolerant zero test; the output is certified
    afterwards: every vector must satisfy Zv = v at working precision and
    the count must be exactly dim (the fixed set of an involutive
    conjugation always has half the doubled dimension)."""
    cfg, n = z.cfg, z.dim
    p, prec = cfg.p, cfg.precision
    ops = TolerantQpOps(p, prec)
    one = PAdicScalar.from_fraction(p, 1, prec)
    zero = PAdicScalar.exact_zero(p)
    mu = PAdicScalar.from_fraction(p, cfg.mu, prec)
    a = [[z.linear_part.entries[i][j].a for j in range(n)] for i in range(n)]
    b = [[z.linear_part.entries[i][j].b for j in range(n)] for i in range(n)]
    m: list[list[PAdicScalar]] = []
    for i in range(n):
        row = [a[i][j] - (one if i == j else zero) for j in range(n)]
        row += [mu * b[i][j] for j in range(n)]
        m.append(row)
    for i in range(n):
        row = [b[i][j] for j in range(n)]
        row += [a[i][j] + (one if i == j else zero) for j in range(n)]
        m.append(row)
    kern = kernel_basis(ops, m)
    out = []
    for vec in kern:
        coords = [
            ExtScalar(cfg, vec[j], vec[n + j]) for j in range(n)
        ]
        out.append(Vector(cfg, coords))
    if len(out) != n or any(z.apply(v) != v for v in out):
        raise PrecisionLossError(
            "fixed-set basis could not be certified at working precision"
        )
    return out


def _rational_gram(vectors: Sequence[Vector]) -> list[list[PAdicScalar]]:
    d = len(vectors)
    gram: list[list[Optional[PAdicScalar]]] = [[None] * d for _ in range(d)]
    for i in range(d):
        for j in range(i, d):
            val = vectors[i].ip(vectors[j])
            if not val.b.is_zeroish:
                raise DomainError(
                    "restricted pairing has an irrational component; the map "
                    "is not an inner-product conjugating involution"
                )
            gram[i][j] = val.a
            gram[j][i] = val.a
    return gram  # type: ignore[return-value]


def _rational_ip(u: Vector, v: Vector) -> PAdicScalar:
    val = u.ip(v)
    if not val.b.is_zeroish:
        raise DomainError(
            "restricted pairing has an irrational component; the map "
            "is not an inner-product conjugating involution"
        )
    return val.a


def _orthogonalize_fixed_set(
    vectors: Sequence[Vector],
) -> tuple[list[Vector], list[PAdicScalar]]:
    """Pairwise-orthogonal basis of the span of the fixed set, with the
    rational diagonal values of the restricted pairing, by congruence
    elimination acting on the vectors themselves.  Each diagonal value is
    brought to valuation 0 or 1 by rescaling the vector with a power of p
    (a square rescaling of the value)."""
    cfg = vectors[0].cfg
    p = cfg.p
    work = list(vectors)
    ortho: list[Vector] = []
    diags: list[PAdicScalar] = []
    while work:
        best, best_d, best_w = -1, None, None
        for i, u in enumerate(work):
            dv = _rational_ip(u, u)
            if dv.is_exact_zero:
                continue
            if dv.is_zeroish:
                raise PrecisionLossError(
                    "orthogonalization pivot vanishes at working precision"
                )
            weight = -dv.valuation_bound
            if best_w is None or weight > best_w:
                best, best_d, best_w = i, dv, weight
        if best < 0:
            # Every remaining self-pairing is exactly zero: polarize one
            # nonzero cross pairing onto the diagonal (p is odd).
            found = None
            for i in range(len(work)):
                for j in range(i + 1, len(work)):
                    x = _rational_ip(work[i], work[j])
                    if x.is_exact_zero:
                        continue
                    if x.is_zeroish:
                        raise PrecisionLossError(
                            "orthogonalization pivot vanishes at working "
                            "precision"
                        )
                    found = (i, j)
                    break
                if found:
                    break
            if found is None:
                raise DomainError(
                    "restricted pairing is degenerate on the fixed set"
                )
            i, j = found
            work[i] = work[i] + work[j]
            continue
        piv = work.pop(best)
        d = best_d
        work = [
            u - piv.scale(ExtScalar.from_qp(cfg, _rational_ip(piv, u) / d))
            for u in work
        ]
        shift = d.v // 2  # type: ignore[operator]
        if shift:
            piv = piv.scale(
                ExtScalar.from_fraction(cfg, Fraction(1, p) ** shift)
            )
        ortho.append(piv)
        diags.append(_rational_ip(piv, piv))
    return ortho, diags


def _norm_one_in_pair(
    oi: Vector,
    di: PAdicScalar,
    oj: Vector,
    dj: PAdicScalar,
    tier: int,
) -> Optional[Vector]:
    """A vector w = c·oᵢ + e·oⱼ with ⟨w, w⟩ = 1, where c runs over a tier
    of small rationals and e = √((1 − c²dᵢ)/dⱼ) is taken in Q_p whenever
    the radicand is a square.  oᵢ ⟂ oⱼ with self-pairings dᵢ, dⱼ."""
    cfg = oi.cfg
    p, prec = cfg.p, cfg.precision
    one = PAdicScalar.from_fraction(p, 1, prec)
    cap = min(p * p, 250)
    if tier == 0:
        cands = [Fraction(k) for k in range(1, p)]
    elif tier == 1:
        cands = [Fraction(k) for k in range(p, cap)]
        cands += [Fraction(k, p) for k in range(1, cap) if k % p]
    else:
        cands = [Fraction(k, p * p) for k in range(1, cap) if k % p]
    for c in cands:
        t = (one - PAdicScalar.from_fraction(p, c * c, prec) * di) / dj
        if t.is_exact_zero or t.is_zeroish:
            continue
        if not is_square_qp(t):
            continue
        e = sqrt_qp(t)
        return oi.scale(ExtScalar.from_fraction(cfg, c)) + oj.scale(
            ExtScalar.from_qp(cfg, e)
        )
    return None


def _build_invariant_orthonormal_witness(
    ortho: list[Vector], diags: list[PAdicScalar]
) -> Optional[list[Vector]]:
    """Orthonormal basis of the span of a pairwise-orthogonal family,
    assembled one norm-one vector at a time.

    Singles: when a diagonal value dᵢ is a square, oᵢ/√dᵢ has pairing 1.
    Pairs: otherwise search two-dimensional spans for c·oᵢ + e·oⱼ of
    pairing 1, then replace the pair by its orthogonal complement
    v = oᵢ − ⟨w, oᵢ⟩·w inside the span (⟨v, v⟩ = dᵢdⱼe² ≠ 0).  Each step
    removes one vector, so the loop terminates; None means the bounded
    candidate tiers were exhausted without covering the span."""
    if not ortho:
        return None
    cfg = ortho[0].cfg
    p = cfg.p
    found: list[Vector] = []
    work = list(zip(ortho, diags))
    while work:
        hit = None
        for idx, (_, d) in enumerate(work):
            if is_square_qp(d):
                hit = idx
                break
        if hit is not None:
            u, d = work.pop(hit)
            found.append(u.scale(ExtScalar.from_qp(cfg, sqrt_qp(d).inverse())))
            continue
        if len(work) < 2:
            return None
        pair_hit = None
        for tier in range(3):
            for i in range(len(work)):
                for j in range(len(work)):
                    if i == j:
                        continue
                    w = _norm_one_in_pair(
                        work[i][0], work[i][1], work[j][0], work[j][1], tier
                    )
                    if w is not None:
                        pair_hit = (i, j, w)
                        break
                if pair_hit:
                    break
            if pair_hit:
                break
        if pair_hit is None:
            return None
        i, j, w = pair_hit
        oi, _ = work[i]
        keep = [work[t] for t in range(len(work)) if t not in (i, j)]
        v = oi - w.scale(ExtScalar.from_qp(cfg, _rational_ip(w, oi)))
        dv = _rational_ip(v, v)
        if dv.is_exact_zero or dv.is_zeroish:
            return None
        shift = dv.v // 2  # type: ignore[operator]
        if shift:
            v = v.scale(ExtScalar.from_fraction(cfg, Fraction(1, p) ** shift))
            dv = _rational_ip(v, v)
        work = keep + [(v, dv)]
        found.append(w)
    return found


def invariant_orthonormal_search(z: AntiLinearMap) -> InvariantSearchResult:
    """Decide exactly whether an orthonormal basis of Z-fixed vectors
    exists, and try to produce one.

    The fixed set 𝔖 is a Q_p-space on which the pairing restricts to a
    symmetric bilinear form; an invariant orthonormal family of full
    fixed-dimension exists iff that form is equivalent to ⟨1, …, 1⟩, which
    is read off its discriminant class and Hasse invariant.  When the form
    is equivalent, a witness basis is assembled deterministically: the
    fixed set is orthogonalized, then norm-one vectors are extracted by
    square-root rescaling and two-dimensional conic solving."""
    if not z.is_involutive:
        raise NotInvolutiveError("search requires an involutive conjugation")
    if not z.is_ip_conjugating:
        raise DomainError(
            "search requires an inner-product conjugating involution"
        )
    fixed = _fixed_space_basis(z)
    gram = _rational_gram(fixed)
    diag = diagonalize_symmetric(gram)
    _, disc_class, hasse = form_invariants(diag)
    exists = disc_class == (0, 1) and hasse == 1

    witness: Optional[tuple[Vector, ...]] = None
    verified = False
    if exists:
        ortho, diags = _orthogonalize_fixed_set(fixed)
        found = _build_invariant_orthonormal_witness(ortho, diags)
        if found is not None:
            witness = tuple(found)
            verified = is_ip_orthonormal(found) and all(
                z.apply(w) == w for w in found
            )
    return InvariantSearchResult(
        fixed_dim=len(fixed),
        exists=exists,
        disc_class=disc_class,
        hasse=hasse,
        diagonal_form=tuple(str(d) for d in diag),
        witness=witness,
        witness_verified=verified,
    )
