"""Matrix operators on coordinate spaces: norms by three routes, adjoints,
classification of tail-profiled operators, traces, and certified inverses."""

import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from padic_hilbert import (
    DomainError,
    ExtScalar,
    FieldConfig,
    MatrixOperator,
    NormValue,
    NotTraceClassError,
    PAdicScalar,
    PrecisionLossError,
    TailProfile,
    Vector,
    hs_inner_product,
    inverse_matrix,
    is_invertible,
    is_unitary,
)
from padic_hilbert.operators import is_contractive, is_isometry_matrix
from padic_hilbert.samples import Sampler

from conftest import CONFIGS, configs, ext_norm_exp2, norm_of_exp2

PREC = 32


@st.composite
def config_and_fraction_matrix(draw, max_dim: int = 4):
    cfg = draw(configs)
    rows = draw(st.integers(min_value=1, max_value=max_dim))
    cols = draw(st.integers(min_value=1, max_value=max_dim))
    units = st.integers(min_value=1, max_value=cfg.p**2 - 1).filter(
        lambda n: n % cfg.p != 0
    )
    frs = st.one_of(
        st.just(Fraction(0)),
        st.builds(
            lambda u, v, s: Fraction(s * u) * Fraction(cfg.p) ** v,
            units,
            st.integers(min_value=-2, max_value=2),
            st.sampled_from((1, -1)),
        ),
    )
    fm = [
        [(draw(frs), draw(frs)) for _ in range(cols)] for _ in range(rows)
    ]
    return cfg, fm


def lift(cfg, fm) -> MatrixOperator:
    return MatrixOperator(
        cfg,
        [[ExtScalar.from_fraction(cfg, a, b) for (a, b) in row] for row in fm],
    )


@given(config_and_fraction_matrix())
def test_op_norm_equals_max_entry_norm_from_fractions(args):
    cfg, fm = args
    op = lift(cfg, fm)
    exps = [
        ext_norm_exp2(cfg, a, b) for row in fm for (a, b) in row
    ]
    nonzero = [e for e in exps if e is not None]
    expected = norm_of_exp2(max(nonzero) if nonzero else None)
    assert op.op_norm() == expected


@given(config_and_fraction_matrix())
def test_op_norm_equals_max_column_norm(args):
    cfg, fm = args
    op = lift(cfg, fm)
    col_route = NormValue.zero()
    for n in range(1, op.cols + 1):
        col_route = max(col_route, op.column(n).sup_norm())
    assert op.op_norm() == col_route


@given(config_and_fraction_matrix(), st.data())
def test_apply_matches_row_dot_oracle(args, data):
    cfg, fm = args
    op = lift(cfg, fm)
    frs = st.fractions(min_value=-6, max_value=6, max_denominator=4)
    x = Vector(
        cfg,
        [
            ExtScalar.from_fraction(cfg, data.draw(frs), data.draw(frs))
            for _ in range(op.cols)
        ],
    )
    y = op.apply(x)
    assert y.dim == op.rows
    for m in range(1, op.rows + 1):
        acc = ExtScalar.zero(cfg)
        for n in range(1, op.cols + 1):
            acc = acc + op.entry(m, n) * x.coords[n - 1]
        assert y.coords[m - 1] == acc


@given(config_and_fraction_matrix())
def test_unit_ball_probes_never_beat_op_norm_and_basis_attains(args):
    cfg, fm = args
    op = lift(cfg, fm)
    rng = random.Random(2024)
    smp = Sampler(cfg, rng)
    bound = op.op_norm()
    for _ in range(10):
        x = smp.unit_ball_vector(op.cols)
        assert op.apply(x).norm_upper_bound() <= bound
    attained = [
        op.apply(Vector.basis_vector(cfg, j, op.cols)).norm_upper_bound()
        for j in range(op.cols)
    ]
    if bound.is_zero:
        assert all(a.is_zero for a in attained)
    else:
        assert max(attained) == bound


@given(config_and_fraction_matrix())
def test_adjoint_is_conjugate_transpose_and_involutive(args):
    cfg, fm = args
    op = lift(cfg, fm)
    adj = op.adjoint()
    assert (adj.rows, adj.cols) == (op.cols, op.rows)
    for m in range(1, op.rows + 1):
        for n in range(1, op.cols + 1):
            assert adj.entry(n, m) == op.entry(m, n).conjugate()
    assert adj.adjoint() == op
    assert adj.op_norm() == op.op_norm()


@given(config_and_fraction_matrix(), st.data())
def test_adjoint_pairing(args, data):
    cfg, fm = args
    op = lift(cfg, fm)
    frs = st.fractions(min_value=-6, max_value=6, max_denominator=4)

    def vec(dim):
        return Vector(
            cfg,
            [
                ExtScalar.from_fraction(cfg, data.draw(frs), data.draw(frs))
                for _ in range(dim)
            ],
        )

    zeta, chi = vec(op.rows), vec(op.cols)
    assert zeta.ip(op.apply(chi)) == op.adjoint().apply(zeta).ip(chi)


@given(config_and_fraction_matrix())
def test_trace_is_diagonal_sum(args):
    cfg, fm = args
    op = lift(cfg, fm)
    if op.rows != op.cols:
        with pytest.raises(DomainError):
            op.trace()
        return
    acc = ExtScalar.zero(cfg)
    for i in range(1, op.rows + 1):
        acc = acc + op.entry(i, i)
    assert op.trace() == acc


def test_indexing_conventions():
    cfg = CONFIGS[0]
    unit = MatrixOperator.matrix_unit(cfg, 0, 2, 3, 3)  # zero-based slots
    assert unit.entry(1, 3) == ExtScalar.one(cfg)  # one-based accessor
    assert unit.entry(1, 1).is_exact_zero
    col = unit.column(3)
    assert col.coords[0] == ExtScalar.one(cfg)


def profile(a, b, g=0) -> TailProfile:
    return TailProfile(Fraction(a), Fraction(b), Fraction(g))


def profiled(cfg: FieldConfig, alpha, beta, gamma=0) -> MatrixOperator:
    window = [[ExtScalar.from_fraction(cfg, 1)]]
    return MatrixOperator(cfg, window, tail=profile(alpha, beta, gamma))


GRID = (Fraction(0), Fraction(1, 2), Fraction(1), Fraction(2))


def test_classification_truth_table():
    cfg = CONFIGS[0]
    cases = 0
    for alpha in GRID:
        for beta in GRID:
            for gamma in (Fraction(0), Fraction(1)):
                rep = profiled(cfg, alpha, beta, gamma).classify()
                assert not rep.finite
                assert rep.bounded == (alpha > 0)
                assert rep.all_over == (alpha > 0)
                assert rep.adjointable == (alpha > 0 and beta > 0)
                assert rep.trace_class == (alpha > 0 and beta > 0)
                cases += 1
    for n in range(1, 5):
        rep = MatrixOperator.identity(cfg, n).classify()
        assert rep.finite and rep.bounded and rep.all_over
        assert rep.adjointable and rep.trace_class
        cases += 1
    assert cases == 36


def test_profiled_apply_and_domain():
    cfg = CONFIGS[0]
    bounded = profiled(cfg, Fraction(1), Fraction(1, 2))
    x = Vector(cfg, [ExtScalar.from_fraction(cfg, 1)] * 3)
    y = bounded.apply(x)
    assert y.norm_upper_bound() <= bounded.op_norm()
    unbounded = profiled(cfg, Fraction(0), Fraction(1))
    with pytest.raises(DomainError):
        unbounded.apply(x)


def test_profiled_trace_and_trace_class_gate():
    cfg = CONFIGS[0]
    ok = profiled(cfg, Fraction(2), Fraction(2))
    # Trace = window diagonal + tail series; the correction beyond the
    # window is led by the first tail diagonal entry p^((α+β)·2) = p^8.
    correction = ok.trace() - ExtScalar.one(cfg)
    assert correction.norm_upper_bound() == NormValue.from_exponent(-8)
    for alpha, beta in ((Fraction(0), Fraction(1)), (Fraction(1), Fraction(0))):
        with pytest.raises(NotTraceClassError):
            profiled(cfg, alpha, beta).trace()


def test_profiled_adjoint_swaps_tail_rates():
    cfg = CONFIGS[0]
    op = profiled(cfg, Fraction(1), Fraction(2), Fraction(1))
    adj = op.adjoint()
    assert adj.tail is not None
    assert adj.tail.alpha == Fraction(2)
    assert adj.tail.beta == Fraction(1)
    assert adj.tail.gamma == Fraction(1)


def test_profiled_op_norm_includes_tail_corner():
    cfg = CONFIGS[0]
    # Window entry 1 has norm p^0; the first tail corner (m, n) = (2, 1)
    # carries exponent ceil(α·2 + β·1 + γ) = -2: larger than the window.
    op = MatrixOperator(
        cfg,
        [[ExtScalar.from_fraction(cfg, 1)]],
        tail=profile(Fraction(1), Fraction(1), Fraction(-5)),
    )
    assert op.op_norm() == NormValue.from_exponent(2)


@given(config_and_fraction_matrix(max_dim=3))
def test_hs_inner_product_matches_entry_sum(args):
    cfg, fm = args
    s = lift(cfg, fm)
    t = lift(cfg, [[(b, a) for (a, b) in row] for row in fm])
    acc = ExtScalar.zero(cfg)
    for m in range(1, s.rows + 1):
        for n in range(1, s.cols + 1):
            acc = acc + s.entry(m, n).conjugate() * t.entry(m, n)
    assert hs_inner_product(s, t) == acc
    assert hs_inner_product(t, s) == acc.conjugate()


def test_isometry_and_unitary_classification():
    cfg = CONFIGS[0]
    ident = MatrixOperator.identity(cfg, 3)
    assert is_contractive(ident) and is_isometry_matrix(ident) and is_unitary(ident)

    shear = MatrixOperator(
        cfg,
        [
            [ExtScalar.from_fraction(cfg, 1), ExtScalar.from_fraction(cfg, 1)],
            [ExtScalar.zero(cfg), ExtScalar.from_fraction(cfg, 1)],
        ],
    )
    # Unimodular triangular: an isometry of the sup norm, but not unitary.
    assert is_isometry_matrix(shear)
    assert not is_unitary(shear)

    squash = MatrixOperator(
        cfg,
        [
            [ExtScalar.from_fraction(cfg, 1), ExtScalar.zero(cfg)],
            [ExtScalar.zero(cfg), ExtScalar.from_fraction(cfg, cfg.p)],
        ],
    )
    assert is_contractive(squash)
    assert not is_isometry_matrix(squash)

    blowup = MatrixOperator(
        cfg, [[ExtScalar.from_fraction(cfg, Fraction(1, cfg.p))]]
    )
    assert not is_contractive(blowup)


def test_sampled_unitaries_certify():
    for i, cfg in enumerate(CONFIGS[:4]):
        smp = Sampler(cfg, random.Random(31 + i))
        u = smp.unitary(3)
        assert is_unitary(u)
        assert u.op_norm() == NormValue.one()


def test_certified_inverse_three_outcomes():
    cfg = CONFIGS[0]
    # Certified success (elimination needs the tolerant retry: eliminating
    # a unitary manufactures zero-at-precision cancellations).
    u = Sampler(cfg, random.Random(5)).unitary(3)
    inv = inverse_matrix(u)
    assert inv.compose(u) == MatrixOperator.identity(cfg, 3)
    assert u.compose(inv) == MatrixOperator.identity(cfg, 3)
    assert is_invertible(u)

    # Exact singularity: a row of exact zeros.
    singular = MatrixOperator(
        cfg,
        [
            [ExtScalar.from_fraction(cfg, 1), ExtScalar.from_fraction(cfg, 2)],
            [ExtScalar.zero(cfg), ExtScalar.zero(cfg)],
        ],
    )
    assert not is_invertible(singular)
    with pytest.raises(DomainError):
        inverse_matrix(singular)

    # Rank drop only visible through cancellation: refusal, not a verdict.
    ghost = MatrixOperator(
        cfg,
        [
            [ExtScalar.from_fraction(cfg, 1), ExtScalar.from_fraction(cfg, 2)],
            [ExtScalar.from_fraction(cfg, 2), ExtScalar.from_fraction(cfg, 4)],
        ],
    )
    with pytest.raises(PrecisionLossError):
        inverse_matrix(ghost)
    with pytest.raises(PrecisionLossError):
        is_invertible(ghost)
