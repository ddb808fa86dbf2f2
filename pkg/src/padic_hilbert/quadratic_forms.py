"""Exact classification of symmetric bilinear forms over Q_p (p odd).

A regular form of rank n over Q_p is determined up to equivalence by its
discriminant square class and its Hasse invariant.  Both are computable
exactly from any diagonalization: the square class of x = p^v·u is the
pair (v mod 2, Legendre(u)), and the Hasse invariant is the product of
Hilbert symbols Π_{i<j} (d_i, d_j)_p.  In particular a form is equivalent
to the identity form ⟨1, …, 1⟩ iff its discriminant class is trivial and
its Hasse invariant is +1 — this turns "does this subspace admit a basis
that is orthonormal for the restricted pairing" into a decidable exact
question instead of an unbounded search.
"""

from __future__ import annotations

from typing import Sequence

from .errors import DomainError, PrecisionLossError
from .padic import PAdicScalar


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a|p) via Euler's criterion; 0 on multiples of p."""
    a %= p
    if a == 0:
        return 0
    e = pow(a, (p - 1) // 2, p)
    return 1 if e == 1 else -1


def _valuation_and_unit(x: PAdicScalar) -> tuple[int, int]:
    if x.is_exact_zero:
        raise DomainError("square class of zero is undefined")
    if x.is_zeroish:
        raise PrecisionLossError(
            "cannot read the square class of a value that is zero at "
            "working precision"
        )
    return x.v, x.unit % x.p


def square_class(x: PAdicScalar) -> tuple[int, int]:
    """(valuation mod 2, Legendre symbol of the unit part): the four
    square classes 1, u, p, u·p of Q_p* / (Q_p*)² for odd p."""
    v, u = _valuation_and_unit(x)
    return (v % 2, legendre(u, x.p))


def is_square_class_trivial(x: PAdicScalar) -> bool:
    return square_class(x) == (0, 1)


def hilbert_symbol(a: PAdicScalar, b: PAdicScalar) -> int:
    """(a, b)_p for odd p: whether z² = a·x² + b·y² has a nontrivial
    solution.  Computed from the standard closed formula."""
    p = a.p
    if p != b.p:
        raise DomainError("mixed primes in Hilbert symbol")
    if p == 2:
        raise DomainError("the dyadic Hilbert symbol is not supported")
    alpha, u = _valuation_and_unit(a)
    beta, v = _valuation_and_unit(b)
    s = 1
    if alpha % 2 and beta % 2:
        s *= legendre(-1, p)
    if beta % 2:
        s *= legendre(u, p)
    if alpha % 2:
        s *= legendre(v, p)
    return s


def diagonalize_symmetric(
    gram: Sequence[Sequence[PAdicScalar]],
) -> list[PAdicScalar]:
    """Diagonal entries of a congruent diagonal form of a symmetric matrix
    over Q_p.  Raises DomainError on a degenerate form and
    PrecisionLossError when a pivot decision hits a value that vanishes at
    working precision."""
    n = len(gram)
    m = [list(row) for row in gram]
    if any(len(row) != n for row in m):
        raise DomainError("symmetric matrix must be square")
    diag: list[PAdicScalar] = []
    for k in range(n):
        # Pick the largest-norm exact-nonzero diagonal pivot.
        pivot, weight = -1, None
        for i in range(k, n):
            x = m[i][i]
            if x.is_exact_zero:
                continue
            if x.is_zeroish:
                raise PrecisionLossError(
                    "diagonalization pivot vanishes at working precision"
                )
            w = -x.valuation_bound
            if weight is None or w > weight:
                pivot, weight = i, w
        if pivot < 0:
            # All remaining diagonal entries are exactly zero: a symmetric
            # row+column add surfaces 2·m[i][j] on the diagonal (p is odd).
            found = None
            for i in range(k, n):
                for j in range(i + 1, n):
                    x = m[i][j]
                    if x.is_exact_zero:
                        continue
                    if x.is_zeroish:
                        raise PrecisionLossError(
                            "diagonalization pivot vanishes at working "
                            "precision"
                        )
                    found = (i, j)
                    break
                if found:
                    break
            if found is None:
                raise DomainError("degenerate symmetric form")
            i, j = found
            for t in range(k, n):
                m[i][t] = m[i][t] + m[j][t]
            for t in range(k, n):
                m[t][i] = m[t][i] + m[t][j]
            pivot = i
        if pivot != k:
            m[pivot], m[k] = m[k], m[pivot]
            for row in m:
                row[pivot], row[k] = row[k], row[pivot]
        d = m[k][k]
        # Congruence elimination: after subtracting c_i × row k from each
        # row i > k, the trailing block is already the two-sided update
        # (column k below the pivot is zero), so rows k and column k need
        # never be touched again.
        for i in range(k + 1, n):
            c = m[i][k] / d
            for t in range(k + 1, n):
                m[i][t] = m[i][t] - c * m[k][t]
        diag.append(d)
    return diag


def form_invariants(
    diag: Sequence[PAdicScalar],
) -> tuple[int, tuple[int, int], int]:
    """(rank, discriminant square class, Hasse invariant)."""
    if not diag:
        raise DomainError("empty form")
    disc = diag[0]
    for d in diag[1:]:
        disc = disc * d
    hasse = 1
    for i in range(len(diag)):
        for j in range(i + 1, len(diag)):
            hasse *= hilbert_symbol(diag[i], diag[j])
    return (len(diag), square_class(disc), hasse)


def is_identity_form(gram: Sequence[Sequence[PAdicScalar]]) -> bool:
    """Whether the symmetric form is equivalent over Q_p to ⟨1, …, 1⟩:
    trivial discriminant class and Hasse invariant +1.  (rank, disc, Hasse)
    is a complete invariant of regular forms over Q_p for odd p."""
    _, disc_class, hasse = form_invariants(diagonalize_symmetric(gram))
    return disc_class == (0, 1) and hasse == 1
