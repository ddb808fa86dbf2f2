"""Norm values: the ordered group p^(k/2) with an absorbing zero."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from padic_hilbert import DomainError, NormValue
from padic_hilbert.normvalue import max_norm

exps = st.integers(min_value=-40, max_value=40)


def test_zero_and_one():
    assert NormValue.zero().is_zero
    assert not NormValue.one().is_zero
    assert NormValue.one() == NormValue.from_exponent(0)
    assert str(NormValue.zero()) == "0"
    assert str(NormValue.one()) == "p^0"


def test_str_uses_lowest_terms():
    assert str(NormValue.from_exponent(Fraction(-2))) == "p^-2"
    assert str(NormValue.from_exponent(Fraction(1, 2))) == "p^1/2"
    assert str(NormValue.from_exponent(Fraction(-3, 2))) == "p^-3/2"
    assert str(NormValue.from_exponent(3)) == "p^3"


@given(exps)
def test_parse_str_roundtrip(e2):
    nv = NormValue(e2)
    assert NormValue.parse(str(nv)) == nv
    assert NormValue.parse(str(NormValue.zero())) == NormValue.zero()


def test_parse_rejects_garbage():
    for bad in ("", "p", "q^2", "p^", "p^one"):
        with pytest.raises(DomainError):
            NormValue.parse(bad)


@given(exps, exps)
def test_multiplication_adds_exponents(a, b):
    assert NormValue(a) * NormValue(b) == NormValue(a + b)
    assert (NormValue(a) * NormValue(b)).exponent == Fraction(a + b, 2)


@given(exps, exps)
def test_division_subtracts_exponents(a, b):
    assert NormValue(a) / NormValue(b) == NormValue(a - b)


@given(exps, st.integers(min_value=0, max_value=6))
def test_power_scales_exponent(a, k):
    assert NormValue(a) ** k == NormValue(a * k)


@given(exps)
def test_zero_absorbs(a):
    z = NormValue.zero()
    assert NormValue(a) * z == z
    assert z * NormValue(a) == z
    assert z / NormValue(a) == z


def test_division_by_zero_rejected():
    with pytest.raises(DomainError):
        NormValue.one() / NormValue.zero()


@given(exps, exps)
def test_order_matches_exponent_order(a, b):
    assert (NormValue(a) < NormValue(b)) == (a < b)
    assert (NormValue(a) <= NormValue(b)) == (a <= b)


@given(exps)
def test_zero_is_strictly_least(a):
    assert NormValue.zero() < NormValue(a)
    assert not NormValue(a) < NormValue.zero()
    assert NormValue.zero() <= NormValue.zero()


@given(st.lists(exps, min_size=1, max_size=8))
def test_max_norm_matches_builtin_max(e2s):
    values = [NormValue(e) for e in e2s]
    assert max_norm(values) == NormValue(max(e2s))
    assert max_norm(values + [NormValue.zero()]) == NormValue(max(e2s))


def test_max_norm_of_zeros():
    assert max_norm([NormValue.zero()]) == NormValue.zero()
    assert max_norm([]) == NormValue.zero()


@given(exps, exps)
def test_hash_consistent_with_eq(a, b):
    if NormValue(a) == NormValue(b):
        assert hash(NormValue(a)) == hash(NormValue(b))
