"""Square classes, Hilbert symbols, and diagonal form invariants over Q_p.

The Hilbert symbol is pinned down by an axiom block that determines it
uniquely on Q_p*/(Q_p*)^2 for odd p: bimultiplicativity, symmetry, the
Steinberg relations, triviality on unit pairs (a three-variable unit conic
mod p is always isotropic), and the two base cases (p, u) = (u|p) and
(p, p) = (-1|p).  Each axiom is independently justified, so together they
are a complete oracle.
"""

from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from padic_hilbert import DomainError, PAdicScalar, PrecisionLossError
from padic_hilbert.quadratic_forms import (
    diagonalize_symmetric,
    form_invariants,
    hilbert_symbol,
    is_identity_form,
    is_square_class_trivial,
    legendre,
    square_class,
)

from conftest import PRIMES, frac_valuation

PREC = 32

primes = st.sampled_from(PRIMES)


def sc(p: int, x) -> PAdicScalar:
    return PAdicScalar.from_fraction(p, Fraction(x), PREC)


@st.composite
def prime_and_nonzeros(draw, count: int):
    p = draw(primes)
    units = st.integers(min_value=1, max_value=p**2 - 1).filter(
        lambda n: n % p != 0
    )
    frs = st.builds(
        lambda u, v, s: Fraction(s * u) * Fraction(p) ** v,
        units,
        st.integers(min_value=-2, max_value=2),
        st.sampled_from((1, -1)),
    )
    return (p, *[draw(frs) for _ in range(count)])


@given(primes, st.integers(min_value=-200, max_value=200))
def test_legendre_against_euler_criterion(p, a):
    want = 0
    if a % p:
        want = 1 if pow(a % p, (p - 1) // 2, p) == 1 else -1
    assert legendre(a, p) == want


@given(prime_and_nonzeros(1))
def test_square_class_from_fraction_oracle(args):
    p, x = args
    v = frac_valuation(x, p)
    unit = x / Fraction(p) ** v
    lead = (unit.numerator * pow(unit.denominator, -1, p)) % p
    assert square_class(sc(p, x)) == (v % 2, legendre(lead, p))
    assert is_square_class_trivial(sc(p, x)) == (
        v % 2 == 0 and legendre(lead, p) == 1
    )


@given(prime_and_nonzeros(1))
def test_square_class_invariant_under_squares(args):
    p, x = args
    assert square_class(sc(p, x)) == square_class(sc(p, x * x * x))
    assert is_square_class_trivial(sc(p, x * x))


def test_square_class_error_types():
    with pytest.raises(DomainError):
        square_class(PAdicScalar.exact_zero(5))
    with pytest.raises(PrecisionLossError):
        square_class(PAdicScalar.zero_at(5, 3))


@given(prime_and_nonzeros(2))
def test_hilbert_symbol_symmetric_and_square_invariant(args):
    p, a, b = args
    sa, sb = sc(p, a), sc(p, b)
    assert hilbert_symbol(sa, sb) in (-1, 1)
    assert hilbert_symbol(sa, sb) == hilbert_symbol(sb, sa)
    assert hilbert_symbol(sc(p, a * b * b), sb) == hilbert_symbol(sa, sb)


@given(prime_and_nonzeros(3))
def test_hilbert_symbol_bimultiplicative(args):
    p, a, b, c = args
    lhs = hilbert_symbol(sc(p, a * b), sc(p, c))
    rhs = hilbert_symbol(sc(p, a), sc(p, c)) * hilbert_symbol(sc(p, b), sc(p, c))
    assert lhs == rhs


@given(prime_and_nonzeros(1))
def test_hilbert_symbol_steinberg_relations(args):
    p, a = args
    assert hilbert_symbol(sc(p, a), sc(p, -a)) == 1
    if a != 1:
        assert hilbert_symbol(sc(p, a), sc(p, 1 - a)) == 1


@given(primes, st.data())
def test_hilbert_symbol_base_cases(p, data):
    u = data.draw(
        st.integers(min_value=1, max_value=p - 1)
    )
    v = data.draw(st.integers(min_value=1, max_value=p - 1))
    assert hilbert_symbol(sc(p, u), sc(p, v)) == 1
    assert hilbert_symbol(sc(p, p), sc(p, u)) == legendre(u, p)
    assert hilbert_symbol(sc(p, p), sc(p, p)) == legendre(-1, p)


def fraction_det(m: list[list[Fraction]]) -> Fraction:
    if len(m) == 1:
        return m[0][0]
    out = Fraction(0)
    for j in range(len(m)):
        minor = [row[:j] + row[j + 1 :] for row in m[1:]]
        sign = -1 if j % 2 else 1
        out += sign * m[0][j] * fraction_det(minor)
    return out


@st.composite
def symmetric_fraction_matrix(draw, max_dim: int = 3):
    n = draw(st.integers(min_value=1, max_value=max_dim))
    vals = st.fractions(min_value=-8, max_value=8, max_denominator=5)
    m = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            m[i][j] = m[j][i] = draw(vals)
    return m


@given(primes, symmetric_fraction_matrix())
def test_diagonalization_preserves_rank_and_determinant_class(p, m):
    det = fraction_det(m)
    lifted = [[sc(p, x) for x in row] for row in m]
    if det == 0:
        with pytest.raises((DomainError, PrecisionLossError)):
            diagonalize_symmetric(lifted)
        return
    try:
        diag = diagonalize_symmetric(lifted)
    except PrecisionLossError:
        return  # a pivot cancelled below precision: refusal is sound
    assert len(diag) == len(m)
    prod = diag[0]
    for d in diag[1:]:
        prod = prod * d
    # det of a congruent form differs by the square of the change of basis.
    assert square_class(prod) == square_class(sc(p, det))


@given(primes, st.integers(min_value=1, max_value=3), st.data())
def test_gram_of_invertible_matrix_is_identity_form(p, n, data):
    vals = st.integers(min_value=-6, max_value=6)
    c = [
        [Fraction(data.draw(vals)) for _ in range(n)] for _ in range(n)
    ]
    assume(fraction_det(c) != 0)
    gram = [
        [
            sc(p, sum(c[k][i] * c[k][j] for k in range(n)))
            for j in range(n)
        ]
        for i in range(n)
    ]
    # C^T C is congruent to the identity by construction.
    rank_, disc, hasse = form_invariants(diagonalize_symmetric(gram))
    assert rank_ == n
    assert disc == (0, 1)
    assert hasse == 1
    assert is_identity_form(gram)


def test_identity_form_rejects_nontrivial_discriminant():
    # <1, r> with r a non-residue: discriminant class is the non-residue.
    for p, r in ((5, 2), (7, 3), (13, 2)):
        gram = [[sc(p, 1), sc(p, 0)], [sc(p, 0), sc(p, r)]]
        assert not is_identity_form(gram)


def test_identity_form_detects_hasse_obstruction():
    # <p, p> has trivial discriminant but Hasse invariant (-1|p): an
    # obstruction exactly when p = 3 mod 4.
    for p in PRIMES:
        gram = [[sc(p, p), sc(p, 0)], [sc(p, 0), sc(p, p)]]
        assert is_identity_form(gram) == (p % 4 == 1)
    # Constructive witness for p = 5: 5 = 1^2 + 2^2 gives C with
    # C^T C = diag(5, 5).
    c = [[Fraction(1), Fraction(2)], [Fraction(2), Fraction(-1)]]
    gram5 = [
        [sc(5, sum(c[k][i] * c[k][j] for k in range(2))) for j in range(2)]
        for i in range(2)
    ]
    assert [[x.representative() for x in row] for row in gram5] == [
        [Fraction(5), Fraction(0)],
        [Fraction(0), Fraction(5)],
    ]
    assert is_identity_form(gram5)


def test_swap_conjugation_obstruction_form():
    # The fixed-set form of the pairwise swap at p=5, mu=2 is <2, -4>:
    # discriminant -8 = -2 mod squares = 3·(square) mod 5, a non-residue.
    gram = [[sc(5, 2), sc(5, 0)], [sc(5, 0), sc(5, -4)]]
    rank_, disc, hasse = form_invariants(diagonalize_symmetric(gram))
    assert rank_ == 2
    assert disc == (0, -1)
    assert not is_identity_form(gram)
