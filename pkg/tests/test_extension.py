"""Quadratic extension scalars: field axioms, conjugation, both norms, and
square/hermitian-square solvability checked against number-theoretic oracles
computed directly from rationals."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from padic_hilbert import (
    DomainError,
    ExtScalar,
    FieldConfig,
    PAdicScalar,
    PrecisionLossError,
    hermitian_square_root,
    is_square_ext,
    is_square_qp,
    sqrt_ext,
)
from padic_hilbert.field import least_nonresidue

from conftest import (
    CONFIGS,
    config_with_exts,
    configs,
    ext_norm_exp2,
    frac_valuation,
    norm_of_exp2,
)


def test_mu_choices_are_nonsquares():
    for cfg in CONFIGS:
        mu = PAdicScalar.from_fraction(cfg.p, cfg.mu, cfg.precision)
        assert not is_square_qp(mu)
        assert cfg.ramified == (cfg.mu % cfg.p == 0)


def test_sqrt_mu_squares_to_mu():
    for cfg in CONFIGS:
        s = ExtScalar.sqrt_mu(cfg)
        assert s * s == ExtScalar.from_fraction(cfg, cfg.mu)
        assert s.conjugate() == -s
        assert not s.is_rational


@given(config_with_exts(3))
def test_ring_axioms(args):
    cfg, x, y, z = args
    assert (x + y) + z == x + (y + z)
    assert x + y == y + x
    assert (x * y) * z == x * (y * z)
    assert x * y == y * x
    assert x * (y + z) == x * y + x * z
    assert x + ExtScalar.zero(cfg) == x
    assert x * ExtScalar.one(cfg) == x
    assert (x - y) + y == x


@given(config_with_exts(1, allow_zero=False))
def test_multiplicative_inverse(args):
    cfg, x = args
    assert x * x.inverse() == ExtScalar.one(cfg)
    assert x / x == ExtScalar.one(cfg)


def test_inverse_error_types():
    cfg = CONFIGS[0]
    with pytest.raises(DomainError):
        ExtScalar.zero(cfg).inverse()
    zeroish = ExtScalar(
        cfg, PAdicScalar.zero_at(cfg.p, 9), PAdicScalar.zero_at(cfg.p, 9)
    )
    with pytest.raises(PrecisionLossError):
        zeroish.inverse()


@given(config_with_exts(2))
def test_conjugation_is_a_ring_involution(args):
    cfg, x, y = args
    assert x.conjugate().conjugate() == x
    assert (x + y).conjugate() == x.conjugate() + y.conjugate()
    assert (x * y).conjugate() == x.conjugate() * y.conjugate()
    assert x.conjugate().norm_upper_bound() == x.norm_upper_bound()


@st.composite
def config_and_rationals(draw, count: int):
    cfg = draw(configs)
    units = st.integers(min_value=1, max_value=cfg.p**3 - 1).filter(
        lambda n: n % cfg.p != 0
    )
    frs = st.builds(
        lambda u, v, s: Fraction(s * u) * Fraction(cfg.p) ** v,
        units,
        st.integers(min_value=-3, max_value=3),
        st.sampled_from((1, -1)),
    )
    zero_or = st.one_of(st.just(Fraction(0)), frs)
    return (cfg, *[draw(zero_or) for _ in range(count)])


@given(config_and_rationals(2))
def test_norm_matches_component_oracle(args):
    cfg, fa, fb = args
    z = ExtScalar.from_fraction(cfg, fa, fb)
    expected = norm_of_exp2(ext_norm_exp2(cfg, fa, fb))
    if expected.is_zero:
        assert z.is_exact_zero
    else:
        assert z.norm() == expected


@given(config_and_rationals(2))
def test_field_norm_matches_fraction_formula(args):
    cfg, fa, fb = args
    z = ExtScalar.from_fraction(cfg, fa, fb)
    expected = fa * fa - cfg.mu * fb * fb
    assert z.field_norm() == PAdicScalar.from_fraction(
        cfg.p, expected, cfg.precision
    )
    assert z.conjugate() * z == ExtScalar.from_fraction(cfg, expected)


@given(config_and_rationals(2))
def test_field_norm_has_square_of_norm(args):
    cfg, fa, fb = args
    z = ExtScalar.from_fraction(cfg, fa, fb)
    if not z.is_exact_zero:
        assert z.field_norm().norm() == z.norm() ** 2


@given(config_with_exts(2, allow_zero=False))
def test_norm_multiplicative_and_ultrametric(args):
    cfg, x, y = args
    assert (x * y).norm() == x.norm() * y.norm()
    s = (x + y).norm_upper_bound()
    assert s <= max(x.norm(), y.norm())
    if x.norm() != y.norm():
        assert (x + y).norm() == max(x.norm(), y.norm())


@given(config_with_exts(1, allow_zero=False))
def test_sqrt_of_a_square_squares_back(args):
    cfg, x = args
    sq = x * x
    assert is_square_ext(sq)
    r = sqrt_ext(sq)
    assert r * r == sq


def test_sqrt_rejects_nonsquares():
    cfg = CONFIGS[0]  # p=5, mu the least non-residue
    nonsq = ExtScalar.sqrt_mu(cfg) * ExtScalar.from_fraction(cfg, 5)
    # valuation of this element is 1/2·odd in the ramified sense; in the
    # unramified field p·√μ has norm exponent -1 — not even, not a square.
    assert not is_square_ext(nonsq)
    with pytest.raises(DomainError):
        sqrt_ext(nonsq)


def is_field_norm_oracle(cfg: FieldConfig, c: Fraction) -> bool:
    """Completely independent description of the norm group of the
    extension inside Q_p*: even valuations in the unramified case; in the
    ramified case even valuations with square unit part, and odd
    valuations whose unit part lands in the class of -mu/p."""
    v = frac_valuation(c, cfg.p)
    assert v is not None
    unit = c / Fraction(cfg.p) ** v
    lead = (unit.numerator * pow(unit.denominator, -1, cfg.p)) % cfg.p
    if not cfg.ramified:
        return v % 2 == 0
    if v % 2 == 0:
        return pow(lead, (cfg.p - 1) // 2, cfg.p) == 1
    mu0 = cfg.mu // cfg.p
    target = (lead * pow(-mu0, -1, cfg.p)) % cfg.p
    return pow(target, (cfg.p - 1) // 2, cfg.p) == 1


@given(config_and_rationals(1))
def test_hermitian_root_complete_against_norm_group(args):
    cfg, c = args
    if c == 0:
        return
    cs = PAdicScalar.from_fraction(cfg.p, c, cfg.precision)
    root = hermitian_square_root(cfg, cs)
    assert (root is not None) == is_field_norm_oracle(cfg, c)
    if root is not None:
        assert root.conjugate() * root == ExtScalar.from_qp(cfg, cs)


def test_hermitian_root_of_nonsquare_unit_unramified():
    # Unramified: every unit is a norm, including quadratic non-residues,
    # so the solver must find roots with a genuine sqrt(mu) part.
    cfg = CONFIGS[0]
    r = least_nonresidue(cfg.p)
    c = PAdicScalar.from_fraction(cfg.p, r, cfg.precision)
    root = hermitian_square_root(cfg, c)
    assert root is not None
    assert root.conjugate() * root == ExtScalar.from_qp(cfg, c)
    assert not root.is_rational


def test_hermitian_root_of_zero():
    cfg = CONFIGS[0]
    root = hermitian_square_root(cfg, PAdicScalar.exact_zero(cfg.p))
    assert root is not None and root.is_exact_zero


@given(config_and_rationals(2))
def test_equality_shared_precision(args):
    cfg, fa, fb = args
    z = ExtScalar.from_fraction(cfg, fa, fb)
    w = ExtScalar.from_fraction(cfg, fa, fb)
    assert z == w
    if fa != 0 or fb != 0:
        assert z != z + z if z + z != z else True
        bumped = z + ExtScalar.one(cfg)
        assert bumped != z


def test_rationality_detection():
    cfg = CONFIGS[0]
    assert ExtScalar.from_fraction(cfg, Fraction(3, 7)).is_rational
    assert not ExtScalar.from_fraction(cfg, 1, 1).is_rational
    assert ExtScalar.zero(cfg).is_rational
