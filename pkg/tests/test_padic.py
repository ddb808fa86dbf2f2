"""Interval p-adic scalars checked against direct ``Fraction`` arithmetic."""

from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from padic_hilbert import DomainError, PAdicScalar, PrecisionLossError
from padic_hilbert.padic import int_valuation, is_square_qp, sqrt_mod_p, sqrt_qp

from conftest import PRIMES, frac_valuation

PREC = 32

primes = st.sampled_from(PRIMES)


@st.composite
def prime_and_fractions(draw, count: int, allow_zero: bool = True):
    p = draw(primes)
    units = st.integers(min_value=1, max_value=p**3 - 1).filter(
        lambda n: n % p != 0
    )
    frs = st.builds(
        lambda u, v, s: Fraction(s * u) * Fraction(p) ** v,
        units,
        st.integers(min_value=-3, max_value=3),
        st.sampled_from((1, -1)),
    )
    if allow_zero:
        frs = st.one_of(st.just(Fraction(0)), frs)
    return (p, *[draw(frs) for _ in range(count)])


def scalar(p: int, x: Fraction) -> PAdicScalar:
    return PAdicScalar.from_fraction(p, x, PREC)


@given(st.sampled_from(PRIMES), st.integers(min_value=1, max_value=10**6))
def test_int_valuation_counts_factors(p, n):
    v = int_valuation(p, n)
    assert n % p**v == 0
    assert (n // p**v) % p != 0


@given(prime_and_fractions(2))
def test_addition_matches_fractions(args):
    p, x, y = args
    assert scalar(p, x) + scalar(p, y) == scalar(p, x + y)
    assert scalar(p, x) - scalar(p, y) == scalar(p, x - y)


@given(prime_and_fractions(2))
def test_multiplication_matches_fractions(args):
    p, x, y = args
    assert scalar(p, x) * scalar(p, y) == scalar(p, x * y)


@given(prime_and_fractions(2, allow_zero=False))
def test_division_matches_fractions(args):
    p, x, y = args
    assert scalar(p, x) / scalar(p, y) == scalar(p, x / y)
    assert scalar(p, x) * scalar(p, x).inverse() == scalar(p, 1)


@given(prime_and_fractions(1, allow_zero=False))
def test_norm_matches_fraction_valuation(args):
    p, x = args
    assert scalar(p, x).norm().exponent == Fraction(-frac_valuation(x, p))
    assert scalar(p, x).valuation == frac_valuation(x, p)


@given(prime_and_fractions(2))
def test_strong_triangle_and_sharpness(args):
    p, x, y = args
    sx, sy = scalar(p, x), scalar(p, y)
    bound = max(sx.norm_upper_bound(), sy.norm_upper_bound())
    assert (sx + sy).norm_upper_bound() <= bound
    vx, vy = frac_valuation(x, p), frac_valuation(y, p)
    if x and y and vx != vy:
        assert (sx + sy).norm() == max(sx.norm(), sy.norm())


@given(prime_and_fractions(1))
def test_representative_roundtrip(args):
    p, x = args
    s = scalar(p, x)
    assert PAdicScalar.from_fraction(p, s.representative(), PREC) == s


@given(prime_and_fractions(1, allow_zero=False))
def test_digits_are_base_p_with_nonzero_lead(args):
    p, x = args
    d = scalar(p, x).digits()
    assert len(d) == PREC
    assert all(0 <= di < p for di in d)
    assert d[0] != 0


def test_make_normalizes_unit_valuation():
    s = PAdicScalar.make(5, 1, 75, PREC)
    assert s.valuation == 3
    assert s == PAdicScalar.from_fraction(5, 75 * 5, PREC)


def test_exact_zero_identities():
    z = PAdicScalar.exact_zero(5)
    one = scalar(5, Fraction(1))
    assert z.is_exact_zero and z.is_zeroish
    assert (one + z) == one
    assert (one * z).is_exact_zero
    assert z.norm().is_zero
    assert str(z) == "0"


def test_zero_at_precision_semantics():
    o = PAdicScalar.zero_at(5, 12)
    assert o.is_zeroish and not o.is_exact_zero
    assert str(o) == "O(p^12)"
    with pytest.raises(PrecisionLossError):
        o.norm()
    with pytest.raises(PrecisionLossError):
        _ = o.valuation
    assert o.norm_upper_bound().exponent == Fraction(-12)
    # Indistinguishable from anything at least as deep.
    assert o == PAdicScalar.exact_zero(5)
    assert o == PAdicScalar.from_fraction(5, Fraction(5**13), PREC)
    assert o != PAdicScalar.from_fraction(5, Fraction(5**3), PREC)


def test_inverse_error_types():
    with pytest.raises(DomainError):
        PAdicScalar.exact_zero(5).inverse()
    with pytest.raises(PrecisionLossError):
        PAdicScalar.zero_at(5, 4).inverse()


@given(prime_and_fractions(1), st.integers(min_value=-5, max_value=5))
def test_shift_is_multiplication_by_p_power(args, k):
    p, x = args
    assert scalar(p, x).shift(k) == scalar(p, x * Fraction(p) ** k)


@given(st.sampled_from(PRIMES), st.integers(min_value=1, max_value=200))
def test_sqrt_mod_p_against_brute_force(p, a):
    a %= p
    assume(a != 0)
    roots = [r for r in range(p) if (r * r - a) % p == 0]
    if pow(a, (p - 1) // 2, p) == 1:
        assert sqrt_mod_p(a, p) in roots
    else:
        assert not roots
        with pytest.raises(DomainError):
            sqrt_mod_p(a, p)


@given(prime_and_fractions(1, allow_zero=False))
def test_square_detection_against_legendre_oracle(args):
    p, x = args
    v = frac_valuation(x, p)
    unit = x / Fraction(p) ** v
    lead = (unit.numerator * pow(unit.denominator, -1, p)) % p
    expected = v % 2 == 0 and pow(lead, (p - 1) // 2, p) == 1
    assert is_square_qp(scalar(p, x)) == expected


@given(prime_and_fractions(1, allow_zero=False))
def test_sqrt_squares_back(args):
    p, x = args
    s = scalar(p, x * x)
    r = sqrt_qp(s)
    assert r * r == s
    # Canonical branch: leading digit in the lower half.
    assert 1 <= r.digits()[0] <= (p - 1) // 2
    with pytest.raises(DomainError):
        sqrt_qp(scalar(p, x * x * p))  # odd valuation


def test_sqrt_error_types():
    assert sqrt_qp(PAdicScalar.exact_zero(7)).is_exact_zero
    with pytest.raises(PrecisionLossError):
        sqrt_qp(PAdicScalar.zero_at(7, 6))
    with pytest.raises(DomainError):
        sqrt_qp(scalar(7, Fraction(3)))  # 3 is a non-residue mod 7


@given(prime_and_fractions(2))
def test_equality_is_shared_precision_indistinguishability(args):
    p, x, y = args
    sx, sy = scalar(p, x), scalar(p, y)
    assert (sx == sy) == ((x - y) == 0 or frac_valuation(x - y, p) >= (
        min(frac_valuation(x, p) if x else PREC,
            frac_valuation(y, p) if y else PREC) + PREC
    ))
