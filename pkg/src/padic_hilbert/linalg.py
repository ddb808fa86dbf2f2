"""Exact Gaussian elimination over any of the library's fields.

The routines are generic over a small field-operations object (duck-typed:
``zero/one/add/sub/mul/inv/is_zero`` and ``pivot_weight``).  Pivots are
chosen with maximal weight — for p-adic entries the weight is the norm
exponent, so elimination always divides by the largest available entry and
never manufactures precision loss; for residue fields weight is just
nonzero-ness.

Rank decisions are honest: if at some step every remaining candidate entry
is indistinguishable from zero *without being exactly zero*, the rank is not
determined by the digits held and a PrecisionLossError is raised.
"""

from __future__ import annotations

from typing import Any, Sequence

from .errors import DimensionMismatchError, DomainError, PrecisionLossError
from .extension import ExtScalar
from .field import FieldConfig
from .padic import PAdicScalar

Matrix = list[list[Any]]


class ExtOps:
    """Field operations for ExtScalar matrices."""

    def __init__(self, cfg: FieldConfig) -> None:
        self.cfg = cfg

    def zero(self) -> ExtScalar:
        return ExtScalar.zero(self.cfg)

    def one(self) -> ExtScalar:
        return ExtScalar.one(self.cfg)

    @staticmethod
    def add(x: ExtScalar, y: ExtScalar) -> ExtScalar:
        return x + y

    @staticmethod
    def sub(x: ExtScalar, y: ExtScalar) -> ExtScalar:
        return x - y

    @staticmethod
    def mul(x: ExtScalar, y: ExtScalar) -> ExtScalar:
        return x * y

    @staticmethod
    def inv(x: ExtScalar) -> ExtScalar:
        return x.inverse()

    @staticmethod
    def is_zero(x: ExtScalar) -> bool:
        if x.is_zeroish and not x.is_exact_zero:
            raise PrecisionLossError(
                "matrix entry indistinguishable from zero: rank not determined"
            )
        return x.is_exact_zero

    @staticmethod
    def pivot_weight(x: ExtScalar) -> Any:
        return x.norm_upper_bound().exp2 or 0


class QpOps:
    """Field operations for PAdicScalar matrices."""

    def __init__(self, p: int, precision: int) -> None:
        self.p = p
        self.precision = precision

    def zero(self) -> PAdicScalar:
        return PAdicScalar.exact_zero(self.p)

    def one(self) -> PAdicScalar:
        return PAdicScalar.from_fraction(self.p, 1, self.precision)

    @staticmethod
    def add(x: PAdicScalar, y: PAdicScalar) -> PAdicScalar:
        return x + y

    @staticmethod
    def sub(x: PAdicScalar, y: PAdicScalar) -> PAdicScalar:
        return x - y

    @staticmethod
    def mul(x: PAdicScalar, y: PAdicScalar) -> PAdicScalar:
        return x * y

    @staticmethod
    def inv(x: PAdicScalar) -> PAdicScalar:
        return x.inverse()

    @staticmethod
    def is_zero(x: PAdicScalar) -> bool:
        if x.is_zeroish and not x.is_exact_zero:
            raise PrecisionLossError(
                "matrix entry indistinguishable from zero: rank not determined"
            )
        return x.is_exact_zero

    @staticmethod
    def pivot_weight(x: PAdicScalar) -> Any:
        return x.norm_upper_bound().exp2 or 0


class TolerantExtOps(ExtOps):
    """Like ExtOps, but classifies values that vanish at working precision
    as zero instead of raising.  Ranks and kernels computed with these ops
    are search results, not certificates: callers must re-verify the output
    independently (e.g. check that returned vectors satisfy the defining
    equation at working precision)."""

    @staticmethod
    def is_zero(x: ExtScalar) -> bool:
        return x.is_zeroish


class TolerantQpOps(QpOps):
    """Tolerant zero test for PAdicScalar elimination; see TolerantExtOps."""

    @staticmethod
    def is_zero(x: PAdicScalar) -> bool:
        return x.is_zeroish


def _copy(m: Sequence[Sequence[Any]]) -> Matrix:
    return [list(row) for row in m]


def row_echelon(ops: Any, m: Sequence[Sequence[Any]]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    a = _copy(m)
    if not a:
        return a, []
    rows, cols = len(a), len(a[0])
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        best, best_w = -1, None
        for i in range(r, rows):
            if not ops.is_zero(a[i][c]):
                w = ops.pivot_weight(a[i][c])
                if best_w is None or w > best_w:
                    best, best_w = i, w
        if best < 0:
            continue
        a[r], a[best] = a[best], a[r]
        inv_p = ops.inv(a[r][c])
        a[r] = [ops.mul(inv_p, x) for x in a[r]]
        for i in range(rows):
            if i != r and not ops.is_zero(a[i][c]):
                f = a[i][c]
                a[i] = [ops.sub(x, ops.mul(f, y)) for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a, pivots


def rank(ops: Any, m: Sequence[Sequence[Any]]) -> int:
    _, pivots = row_echelon(ops, m)
    return len(pivots)


def kernel_basis(ops: Any, m: Sequence[Sequence[Any]]) -> list[list[Any]]:
    """A basis of the right kernel {x : m·x = 0}."""
    if not m:
        return []
    cols = len(m[0])
    r, pivots = row_echelon(ops, m)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [ops.zero()] * cols
        vec[fc] = ops.one()
        for i, pc in enumerate(pivots):
            vec[pc] = ops.sub(ops.zero(), r[i][fc])
        basis.append(vec)
    return basis


def solve(ops: Any, m: Sequence[Sequence[Any]], rhs: Sequence[Any]) -> list[Any] | None:
    """One solution of m·x = rhs, or None when inconsistent."""
    if len(m) != len(rhs):
        raise DimensionMismatchError("solve: rows of m and rhs differ")
    if not m:
        return []
    cols = len(m[0])
    aug = [list(row) + [rhs[i]] for i, row in enumerate(m)]
    r, pivots = row_echelon(ops, aug)
    if cols in pivots:
        return None
    x = [ops.zero()] * cols
    for i, pc in enumerate(pivots):
        x[pc] = r[i][cols]
    return x


def inverse(ops: Any, m: Sequence[Sequence[Any]]) -> Matrix:
    """Inverse of a square matrix; DomainError when singular."""
    n = len(m)
    if any(len(row) != n for row in m):
        raise DimensionMismatchError("inverse: matrix is not square")
    aug = [list(row) + [ops.one() if i == j else ops.zero() for j in range(n)]
           for i, row in enumerate(m)]
    r, pivots = row_echelon(ops, aug)
    if pivots != list(range(n)):
        raise DomainError("matrix is singular")
    return [row[n:] for row in r]


def mat_mul(ops: Any, a: Sequence[Sequence[Any]], b: Sequence[Sequence[Any]]) -> Matrix:
    if a and b and len(a[0]) != len(b):
        raise DimensionMismatchError("mat_mul: inner dimensions differ")
    out = []
    for row in a:
        out_row = []
        for j in range(len(b[0]) if b else 0):
            acc = ops.zero()
            for k, x in enumerate(row):
                acc = ops.add(acc, ops.mul(x, b[k][j]))
            out_row.append(acc)
        out.append(out_row)
    return out
