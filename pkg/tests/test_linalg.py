"""Exact elimination over the scalar rings, checked against a plain
``Fraction`` Gaussian elimination implemented here as the second route.

Strict ops certify every pivot decision and raise ``PrecisionLossError``
on any entry indistinguishable from zero (even mid-elimination
cancellations such as 1 - 1, which the interval arithmetic can only bound
by O(p^precision)).  For rationals of small height every such cancellation
is a genuine zero, so the tolerant ops must reproduce the fraction oracle
exactly, and the strict ops must either agree or refuse — never answer
wrongly.
"""

import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from padic_hilbert import (
    DomainError,
    ExtScalar,
    PAdicScalar,
    PrecisionLossError,
)
from padic_hilbert.linalg import (
    ExtOps,
    QpOps,
    TolerantExtOps,
    TolerantQpOps,
    inverse,
    kernel_basis,
    mat_mul,
    rank,
    row_echelon,
    solve,
)

from conftest import CONFIGS

PREC = 32


def fraction_rank(m: list[list[Fraction]]) -> int:
    """Row reduction over Q, written independently of the library."""
    a = [row[:] for row in m]
    if not a:
        return 0
    rows, cols = len(a), len(a[0])
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        a[r] = [x / a[r][c] for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
    return r


small_fracs = st.fractions(min_value=-9, max_value=9, max_denominator=7)


@st.composite
def fraction_matrix(draw, max_dim: int = 4, square: bool = False):
    rows = draw(st.integers(min_value=1, max_value=max_dim))
    cols = rows if square else draw(st.integers(min_value=1, max_value=max_dim))
    return [[draw(small_fracs) for _ in range(cols)] for _ in range(rows)]


def lift_qp(p: int, m: list[list[Fraction]]) -> list[list[PAdicScalar]]:
    return [[PAdicScalar.from_fraction(p, x, PREC) for x in row] for row in m]


def lift_ext(cfg, m: list[list[Fraction]]) -> list[list[ExtScalar]]:
    return [[ExtScalar.from_fraction(cfg, x) for x in row] for row in m]


@given(st.sampled_from((5, 7, 13)), fraction_matrix())
def test_tolerant_rank_matches_fraction_elimination(p, m):
    assert rank(TolerantQpOps(p, PREC), lift_qp(p, m)) == fraction_rank(m)


@given(fraction_matrix())
def test_tolerant_rank_over_the_extension_matches(m):
    cfg = CONFIGS[4]
    assert rank(TolerantExtOps(cfg), lift_ext(cfg, m)) == fraction_rank(m)


@given(st.sampled_from((5, 7, 13)), fraction_matrix())
def test_strict_rank_agrees_or_refuses(p, m):
    try:
        got = rank(QpOps(p, PREC), lift_qp(p, m))
    except PrecisionLossError:
        return
    assert got == fraction_rank(m)


@given(st.sampled_from((5, 7, 13)), fraction_matrix())
def test_echelon_pivots_are_normalized(p, m):
    ops = TolerantQpOps(p, PREC)
    r, pivots = row_echelon(ops, lift_qp(p, m))
    one = PAdicScalar.from_fraction(p, 1, PREC)
    for i, pc in enumerate(pivots):
        assert r[i][pc] == one
        for k in range(len(r)):
            if k != i:
                assert r[k][pc].is_zeroish


@given(st.sampled_from((5, 7, 13)), fraction_matrix())
def test_kernel_vectors_annihilate(p, m):
    ops = TolerantQpOps(p, PREC)
    lifted = lift_qp(p, m)
    kern = kernel_basis(ops, lifted)
    assert len(kern) == len(m[0]) - fraction_rank(m)
    for vec in kern:
        image = mat_mul(ops, lifted, [[x] for x in vec])
        assert all(entry[0].is_zeroish for entry in image)


@given(st.sampled_from((5, 7, 13)), fraction_matrix(), st.data())
def test_solve_reproduces_rhs(p, m, data):
    ops = TolerantQpOps(p, PREC)
    lifted = lift_qp(p, m)
    xs = [data.draw(small_fracs) for _ in range(len(m[0]))]
    rhs_fr = [sum(row[j] * xs[j] for j in range(len(xs))) for row in m]
    rhs = [PAdicScalar.from_fraction(p, x, PREC) for x in rhs_fr]
    sol = solve(ops, lifted, rhs)
    assert sol is not None
    image = mat_mul(ops, lifted, [[x] for x in sol])
    for got, want in zip(image, rhs):
        assert got[0] == want


def test_solve_detects_inconsistency():
    p = 5
    ops = TolerantQpOps(p, PREC)
    m = lift_qp(p, [[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]])
    rhs = [
        PAdicScalar.from_fraction(p, 1, PREC),
        PAdicScalar.from_fraction(p, 3, PREC),
    ]
    assert solve(ops, m, rhs) is None


@given(fraction_matrix(max_dim=3, square=True))
def test_inverse_or_singular_matches_fractions(m):
    cfg = CONFIGS[0]
    ops = TolerantExtOps(cfg)
    lifted = lift_ext(cfg, m)
    if fraction_rank(m) < len(m):
        with pytest.raises(DomainError):
            inverse(ops, lifted)
        return
    inv = inverse(ops, lifted)
    prod = mat_mul(ops, lifted, inv)
    one, zero = ExtScalar.one(cfg), ExtScalar.zero(cfg)
    for i in range(len(m)):
        for j in range(len(m)):
            assert prod[i][j] == (one if i == j else zero)


def test_strict_ops_refuse_uncertifiable_pivots():
    p = 5
    fuzzy = PAdicScalar.zero_at(p, 6)
    one = PAdicScalar.from_fraction(p, 1, PREC)
    with pytest.raises(PrecisionLossError):
        rank(QpOps(p, PREC), [[fuzzy, one], [one, one]])
    # The tolerant ops treat the same entry as zero and finish.
    assert rank(TolerantQpOps(p, PREC), [[fuzzy, fuzzy], [fuzzy, fuzzy]]) == 0


def test_strict_ops_succeed_on_generic_input():
    p = 5
    ops = QpOps(p, PREC)
    m = lift_qp(p, [[Fraction(1), Fraction(2)], [Fraction(3), Fraction(4)]])
    assert rank(ops, m) == 2
    inv = inverse(ops, m)
    prod = mat_mul(ops, m, inv)
    one = PAdicScalar.from_fraction(p, 1, PREC)
    assert prod[0][0] == one and prod[1][1] == one
    assert prod[0][1].is_zeroish and prod[1][0].is_zeroish


@given(st.data())
def test_mat_mul_associative(data):
    cfg = CONFIGS[2]
    ops = ExtOps(cfg)
    rng = random.Random(data.draw(st.integers(min_value=0, max_value=10**6)))
    dims = [rng.randint(1, 3) for _ in range(4)]
    mats = []
    for d1, d2 in zip(dims, dims[1:]):
        mats.append(
            [
                [
                    ExtScalar.from_fraction(
                        cfg,
                        Fraction(rng.randint(-6, 6)),
                        Fraction(rng.randint(-2, 2)),
                    )
                    for _ in range(d2)
                ]
                for _ in range(d1)
            ]
        )
    a, b, c = mats
    left = mat_mul(ops, mat_mul(ops, a, b), c)
    right = mat_mul(ops, a, mat_mul(ops, b, c))
    for r1, r2 in zip(left, right):
        for x, y in zip(r1, r2):
            assert x == y
