"""Matrix operators: finite windows with optional affine decay tails.

An operator is a finite ``rows × cols`` window of exact scalars, optionally
extended to all of N × N by a tail profile: outside the window the entry at
(1-based) position (m, n) is the exact power ``p^ceil(α·m + β·n + γ)``.
α, β ≥ 0, so tails always decay (or stall) as the indices grow; the affine
model is expressive enough to realize every class in the classification
lattice:

* no tail (finite)        → bounded, everywhere defined, adjointable, trace class;
* α > 0                   → columns vanish: bounded and everywhere defined;
* α > 0 and β > 0         → rows vanish too: adjointable, and trace class
                            (Hilbert–Schmidt) — the two collapse under an
                            affine profile;
* α = 0                   → the matrix does not map basis vectors into c₀:
                            not an operator on the whole space.

The operator norm is the sup of entry norms, which equals the max column
image norm and dominates every ‖Bx‖/‖x‖; traces and Hilbert–Schmidt sums of
profiled operators accumulate tail terms down to the working-precision
floor and then clamp the result with an explicit zero-at-precision bound,
so results never claim digits the omitted tail could disturb.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import (
    DimensionMismatchError,
    DomainError,
    NotTraceClassError,
    PrecisionLossError,
)
from .extension import ExtScalar
from .field import FieldConfig
from .linalg import ExtOps, TolerantExtOps, inverse as _inverse, rank as _rank
from .normvalue import NormValue
from .padic import PAdicScalar
from .residue import ResidueField
from .vectors import Vector, residue_field, _residue_of_qp

_MAX_TAIL_STEPS = 100_000


def _ceil_fraction(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


@dataclass(frozen=True)
class TailProfile:
    """Entries p^ceil(αm + βn + γ) outside the window (1-based m, n)."""

    alpha: Fraction
    beta: Fraction
    gamma: Fraction

    def __post_init__(self) -> None:
        for name in ("alpha", "beta", "gamma"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if self.alpha < 0 or self.beta < 0:
            raise DomainError("tail profile requires alpha >= 0 and beta >= 0")

    def exponent(self, m: int, n: int) -> int:
        return _ceil_fraction(self.alpha * m + self.beta * n + self.gamma)


@dataclass(frozen=True)
class OperatorClassification:
    finite: bool
    bounded: bool
    all_over: bool
    adjointable: bool
    trace_class: bool

    def as_dict(self) -> dict[str, bool]:
        return {
            "finite": self.finite,
            "bounded": self.bounded,
            "all_over": self.all_over,
            "adjointable": self.adjointable,
            "trace_class": self.trace_class,
        }


class MatrixOperator:
    """A matrix operator with window entries and an optional tail profile."""

    __slots__ = ("cfg", "rows", "cols", "entries", "tail")

    def __init__(
        self,
        cfg: FieldConfig,
        entries: Sequence[Sequence[ExtScalar]],
        tail: Optional[TailProfile] = None,
        rows: Optional[int] = None,
        cols: Optional[int] = None,
    ) -> None:
        self.cfg = cfg
        self.entries = tuple(tuple(row) for row in entries)
        self.rows = len(self.entries) if rows is None else rows
        self.cols = (len(self.entries[0]) if self.entries else 0) if cols is None else cols
        if len(self.entries) != self.rows or any(
            len(r) != self.cols for r in self.entries
        ):
            raise DimensionMismatchError("window entries do not match rows × cols")
        self.tail = tail

    # -- constructors ---------------------------------------------------

    @staticmethod
    def zero(cfg: FieldConfig, rows: int, cols: int) -> "MatrixOperator":
        z = ExtScalar.zero(cfg)
        return MatrixOperator(cfg, [[z] * cols for _ in range(rows)])

    @staticmethod
    def identity(cfg: FieldConfig, n: int) -> "MatrixOperator":
        one, z = ExtScalar.one(cfg), ExtScalar.zero(cfg)
        return MatrixOperator(
            cfg, [[one if i == j else z for j in range(n)] for i in range(n)]
        )

    @staticmethod
    def matrix_unit(
        cfg: FieldConfig, i: int, j: int, rows: int, cols: int
    ) -> "MatrixOperator":
        """E with a single 1 at (0-based) position (i, j)."""
        if not (0 <= i < rows and 0 <= j < cols):
            raise DomainError("matrix unit position outside the window")
        m = MatrixOperator.zero(cfg, rows, cols)
        rows_list = [list(r) for r in m.entries]
        rows_list[i][j] = ExtScalar.one(cfg)
        return MatrixOperator(cfg, rows_list, None)

    @staticmethod
    def from_columns(cfg: FieldConfig, columns: Sequence[Vector]) -> "MatrixOperator":
        if not columns:
            raise DomainError("from_columns needs at least one column")
        dim = columns[0].dim
        if any(c.dim != dim for c in columns):
            raise DimensionMismatchError("columns have mixed dimensions")
        return MatrixOperator(
            cfg, [[col.coords[i] for col in columns] for i in range(dim)]
        )

    # -- structure --------------------------------------------------------

    @property
    def finite(self) -> bool:
        return self.tail is None

    def entry(self, m: int, n: int) -> ExtScalar:
        """The (1-based) entry at row m, column n."""
        if m < 1 or n < 1:
            raise DomainError("matrix indices are 1-based")
        if m <= self.rows and n <= self.cols:
            return self.entries[m - 1][n - 1]
        if self.tail is None:
            return ExtScalar.zero(self.cfg)
        return ExtScalar.from_fraction(
            self.cfg, Fraction(self.cfg.p) ** self.tail.exponent(m, n)
        )

    def column(self, n: int, length: Optional[int] = None) -> Vector:
        length = self.rows if length is None else length
        return Vector(self.cfg, [self.entry(m, n) for m in range(1, length + 1)])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MatrixOperator):
            return NotImplemented
        if (self.rows, self.cols, self.tail) != (other.rows, other.cols, other.tail):
            return False
        return all(
            x == y for r1, r2 in zip(self.entries, other.entries) for x, y in zip(r1, r2)
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        kind = "finite" if self.finite else f"tail {self.tail}"
        return f"<MatrixOperator {self.rows}x{self.cols} ({kind})>"

    # -- classification and norms ----------------------------------------

    def classify(self) -> OperatorClassification:
        if self.tail is None:
            return OperatorClassification(True, True, True, True, True)
        decays_rows = self.tail.alpha > 0
        decays_both = decays_rows and self.tail.beta > 0
        return OperatorClassification(
            finite=False,
            bounded=decays_rows,
            all_over=decays_rows,
            adjointable=decays_both,
            trace_class=decays_both,
        )

    def _window_norm(self) -> NormValue:
        flat = [e for row in self.entries for e in row]
        return Vector(self.cfg, flat).sup_norm()

    def op_norm(self) -> NormValue:
        """Sup of entry norms (= operator norm whenever bounded)."""
        window = self._window_norm()
        if self.tail is None:
            return window
        corners = [(self.rows + 1, 1)]
        if self.rows >= 1:
            corners.append((1, self.cols + 1))
        tail_exp = min(self.tail.exponent(m, n) for m, n in corners)
        tail_norm = NormValue(-2 * tail_exp)
        return max(window, tail_norm)

    # -- actions ------------------------------------------------------------

    def apply(self, x: Vector) -> Vector:
        """Image of a finite-support vector.

        Finite windows require matching dimension.  Profiled operators must
        be bounded; image coordinates are materialized exactly down to the
        working-precision floor below the leading coordinate (the omitted
        coordinates all have strictly smaller norm)."""
        if self.tail is None:
            if x.dim != self.cols:
                raise DimensionMismatchError(
                    f"operator expects dimension {self.cols}, got {x.dim}"
                )
            return Vector(
                self.cfg,
                [
                    _row_dot(self.entries[m], x.coords)
                    for m in range(self.rows)
                ],
            )
        if self.tail.alpha <= 0:
            raise DomainError(
                "matrix with non-decaying columns does not define an operator "
                "on the whole space"
            )
        x_exp2 = x.norm_upper_bound().exp2
        if x_exp2 is None:
            return Vector.zero(self.cfg, self.rows)
        coords: list[ExtScalar] = []
        lead_exp2: Optional[int] = None
        m = 1
        while True:
            if m > self.rows:
                # Sound upper bound for |coordinate m|.
                bound_exp2 = -2 * self.tail.exponent(m, 1) + x_exp2
                if lead_exp2 is not None and bound_exp2 < lead_exp2 - 2 * self.cfg.precision:
                    break
                if m - self.rows > _MAX_TAIL_STEPS:
                    raise DomainError("tail materialization did not terminate")
            c = _row_dot([self.entry(m, n) for n in range(1, x.dim + 1)], x.coords)
            coords.append(c)
            e2 = c.norm_upper_bound().exp2
            if e2 is not None and (lead_exp2 is None or e2 > lead_exp2):
                lead_exp2 = e2
            m += 1
        return Vector(self.cfg, coords)

    def adjoint(self) -> "MatrixOperator":
        """Conjugate transpose; tail rates swap roles."""
        ent = [
            [self.entries[i][j].conjugate() for i in range(self.rows)]
            for j in range(self.cols)
        ]
        tail = (
            None
            if self.tail is None
            else TailProfile(self.tail.beta, self.tail.alpha, self.tail.gamma)
        )
        return MatrixOperator(self.cfg, ent, tail)

    def compose(self, other: "MatrixOperator") -> "MatrixOperator":
        """self ∘ other for finite windows."""
        if self.tail is not None or other.tail is not None:
            raise DomainError("composition is implemented for finite windows only")
        if self.cols != other.rows:
            raise DimensionMismatchError(
                f"cannot compose {self.rows}x{self.cols} with {other.rows}x{other.cols}"
            )
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = ExtScalar.zero(self.cfg)
                for k in range(self.cols):
                    acc = acc + self.entries[i][k] * other.entries[k][j]
                row.append(acc)
            out.append(row)
        return MatrixOperator(self.cfg, out)

    def scale(self, s: ExtScalar) -> "MatrixOperator":
        if self.tail is not None:
            raise DomainError("scaling is implemented for finite windows only")
        return MatrixOperator(
            self.cfg, [[s * e for e in row] for row in self.entries]
        )

    def conj_entries(self) -> "MatrixOperator":
        return MatrixOperator(
            self.cfg,
            [[e.conjugate() for e in row] for row in self.entries],
            self.tail,
        )

    def transpose(self) -> "MatrixOperator":
        ent = [
            [self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)
        ]
        tail = (
            None
            if self.tail is None
            else TailProfile(self.tail.beta, self.tail.alpha, self.tail.gamma)
        )
        return MatrixOperator(self.cfg, ent, tail)

    # -- trace and Hilbert-Schmidt pairing ---------------------------------

    def trace(self) -> ExtScalar:
        """Sum of diagonal entries; for profiled operators the tail is
        summed to the precision floor and the result is clamped with the
        bound on the omitted part."""
        if self.tail is None:
            if self.rows != self.cols:
                raise DimensionMismatchError("trace of a non-square window")
            acc = ExtScalar.zero(self.cfg)
            for i in range(self.rows):
                acc = acc + self.entries[i][i]
            return acc
        if not self.classify().trace_class:
            raise NotTraceClassError("trace requested of a non-trace-class operator")
        acc = ExtScalar.zero(self.cfg)
        d = min(self.rows, self.cols)
        for i in range(d):
            acc = acc + self.entries[i][i]
        rate = self.tail.alpha + self.tail.beta
        lead: Optional[int] = None
        if not acc.is_zeroish:
            lead = -(acc.norm_upper_bound().exp2 or 0) // 2
        m = d + 1
        while True:
            e = _ceil_fraction(rate * m + self.tail.gamma)
            if lead is not None and e > lead + self.cfg.precision:
                break
            if m - d > _MAX_TAIL_STEPS:
                raise DomainError("trace tail accumulation did not terminate")
            acc = acc + ExtScalar.from_fraction(self.cfg, Fraction(self.cfg.p) ** e)
            if lead is None:
                lead = e
            else:
                lead = min(lead, e)
            m += 1
        omitted = _ceil_fraction(rate * m + self.tail.gamma)
        clamp = ExtScalar(
            self.cfg,
            PAdicScalar.zero_at(self.cfg.p, omitted),
            PAdicScalar.exact_zero(self.cfg.p),
        )
        return acc + clamp


def _row_dot(row: Sequence[ExtScalar], xs: Sequence[ExtScalar]) -> ExtScalar:
    acc = None
    for a, b in zip(row, xs):
        term = a * b
        acc = term if acc is None else acc + term
    if acc is None:
        raise DomainError("empty row dot product")
    return acc


def hs_inner_product(s: MatrixOperator, t: MatrixOperator) -> ExtScalar:
    """Σ conj(S_mn)·T_mn over all positions (the Hilbert–Schmidt pairing).

    Exact when either factor is a finite window; for two profiled operators
    both must be trace class, and the doubly-infinite tail is summed to the
    precision floor with an explicit clamp for the omitted region."""
    cfg = s.cfg
    if s.tail is None or t.tail is None:
        fin, oth = (s, t) if s.tail is None else (t, s)
        acc = ExtScalar.zero(cfg)
        for m in range(1, fin.rows + 1):
            for n in range(1, fin.cols + 1):
                acc = acc + s.entry(m, n).conjugate() * t.entry(m, n)
        return acc
    if not (s.classify().trace_class and t.classify().trace_class):
        raise NotTraceClassError(
            "Hilbert-Schmidt pairing of profiled operators requires trace class"
        )
    R, C = max(s.rows, t.rows), max(s.cols, t.cols)
    acc = ExtScalar.zero(cfg)
    for m in range(1, R + 1):
        for n in range(1, C + 1):
            acc = acc + s.entry(m, n).conjugate() * t.entry(m, n)

    def tail_exp(m: int, n: int) -> int:
        return s.tail.exponent(m, n) + t.tail.exponent(m, n)

    lead: Optional[int] = None
    if not acc.is_zeroish:
        lead = -(acc.norm_upper_bound().exp2 or 0) // 2

    def cutoff() -> int:
        return (0 if lead is None else lead) + cfg.precision

    # Region A: rows below both windows.  Region B: columns beyond both
    # windows within the first R rows.  Together: everything outside the
    # R × C block summed above.
    for region, m0, n0, row_limit in (("A", R + 1, 1, None), ("B", 1, C + 1, R)):
        m = m0
        while True:
            if region == "B" and m > row_limit:  # type: ignore[operator]
                break
            if tail_exp(m, n0) > cutoff():
                if region == "A":
                    break
                m += 1
                if m - m0 > _MAX_TAIL_STEPS:
                    raise DomainError("HS tail accumulation did not terminate")
                continue
            n = n0
            while tail_exp(m, n) <= cutoff():
                acc = acc + ExtScalar.from_fraction(cfg, Fraction(cfg.p) ** tail_exp(m, n))
                if lead is None or tail_exp(m, n) < lead:
                    lead = tail_exp(m, n)
                n += 1
                if n - n0 > _MAX_TAIL_STEPS:
                    raise DomainError("HS tail accumulation did not terminate")
            m += 1
            if m - m0 > _MAX_TAIL_STEPS:
                raise DomainError("HS tail accumulation did not terminate")
    clamp = ExtScalar(
        cfg,
        PAdicScalar.zero_at(cfg.p, cutoff() + 1),
        PAdicScalar.exact_zero(cfg.p),
    )
    return acc + clamp


# -- matrix predicates --------------------------------------------------------


def residue_matrix(op: MatrixOperator, fld: ResidueField) -> list[list[tuple[int, int]]]:
    """Entrywise residues of a finite window with all entry norms ≤ 1."""
    out = []
    for row in op.entries:
        r = []
        for e in row:
            ra = _residue_of_qp(e.a, op.cfg.p)
            if op.cfg.ramified:
                r.append((ra, 0))
            else:
                r.append((ra, _residue_of_qp(e.b, op.cfg.p)))
        out.append(r)
    return out


def is_contractive(op: MatrixOperator) -> bool:
    """All entry norms ≤ 1."""
    one = NormValue.one()
    return not one < op.op_norm()


def is_isometry_matrix(op: MatrixOperator) -> bool:
    """‖Lx‖ = ‖x‖ for all x: entries in the unit ball and invertible residue
    reduction (the standard c₀ criterion; exact)."""
    if op.tail is not None or op.rows != op.cols:
        return False
    if not is_contractive(op):
        return False
    fld = residue_field(op.cfg)
    return _rank(fld, residue_matrix(op, fld)) == op.rows


def is_unitary(op: MatrixOperator) -> bool:
    """Inner-product preserving surjective isometry (finite square window):
    L*L = LL* = Id together with the isometry criterion."""
    if op.tail is not None or op.rows != op.cols:
        return False
    ident = MatrixOperator.identity(op.cfg, op.rows)
    adj = op.adjoint()
    return (
        adj.compose(op) == ident
        and op.compose(adj) == ident
        and is_isometry_matrix(op)
    )


def is_invertible(op: MatrixOperator) -> bool:
    """Certified invertibility: True means a two-sided inverse was built
    and verified, False means elimination found an exact rank drop.  When
    neither is decidable at working precision a PrecisionLossError
    propagates."""
    if op.tail is not None or op.rows != op.cols:
        return False
    try:
        inverse_matrix(op)
        return True
    except PrecisionLossError:
        raise
    except DomainError:
        return False


def inverse_matrix(op: MatrixOperator) -> MatrixOperator:
    """Two-sided inverse of a finite square window.

    Exact elimination decides most cases; when a pivot is indistinguishable
    from zero without being exactly zero, elimination re-runs with the
    tolerant zero test and the candidate is certified by verifying
    M·op = op·M = Id at working precision (cancellation inside elimination
    routinely manufactures zero-at-precision entries on perfectly
    invertible inputs, e.g. unitaries)."""
    if op.tail is not None or op.rows != op.cols:
        raise DomainError("inverse requires a finite square window")
    rows = [list(r) for r in op.entries]
    try:
        inv = _inverse(ExtOps(op.cfg), rows)
    except PrecisionLossError:
        try:
            inv = _inverse(TolerantExtOps(op.cfg), rows)
        except DomainError as exc:
            raise PrecisionLossError(
                "invertibility not determined at working precision"
            ) from exc
        cand = MatrixOperator(op.cfg, inv)
        ident = MatrixOperator.identity(op.cfg, op.rows)
        if cand.compose(op) != ident or op.compose(cand) != ident:
            raise PrecisionLossError(
                "invertibility not determined at working precision"
            )
        return cand
    return MatrixOperator(op.cfg, inv)
