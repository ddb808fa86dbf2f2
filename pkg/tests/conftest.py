"""Shared fixtures, strategies, and independent oracles for the test suite.

The oracles here recompute norms and valuations straight from ``Fraction``
values so the library's interval arithmetic is checked against a second
route, not against itself.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from padic_hilbert import ExtScalar, FieldConfig, MuKind, NormValue, Vector

settings.register_profile(
    "suite",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")

PRIMES = (5, 7, 13)
KINDS = tuple(MuKind)
CONFIGS = tuple(
    FieldConfig(p=p, mu_kind=kind, precision=32) for p in PRIMES for kind in KINDS
)
CONFIG_IDS = tuple(f"p{c.p}-{c.mu_kind.value}" for c in CONFIGS)


@pytest.fixture(params=CONFIGS, ids=CONFIG_IDS)
def cfg(request) -> FieldConfig:
    return request.param


def frac_valuation(x: Fraction, p: int) -> Optional[int]:
    """p-adic valuation of a rational, None for zero — computed directly
    from the integer factorizations, independent of the library."""
    if x == 0:
        return None
    v = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def ext_norm_exp2(cfg: FieldConfig, a: Fraction, b: Fraction) -> Optional[int]:
    """Twice the norm exponent of a + b·√μ, None for zero: the max of
    |a| = p^{-v(a)} and |√μ·b| = p^{-(2v(b)+v(μ))/2}."""
    va = frac_valuation(a, cfg.p)
    vb = frac_valuation(b, cfg.p)
    v_mu = 1 if cfg.ramified else 0
    cands = []
    if va is not None:
        cands.append(-2 * va)
    if vb is not None:
        cands.append(-(2 * vb + v_mu))
    return max(cands) if cands else None


def norm_of_exp2(e: Optional[int]) -> NormValue:
    return NormValue.zero() if e is None else NormValue(e)


def fractions_for(p: int, vmin: int = -3, vmax: int = 3) -> st.SearchStrategy:
    """Nonzero rationals p^v·(±u) with u a unit below p³."""
    units = st.integers(min_value=1, max_value=p**3 - 1).filter(
        lambda n: n % p != 0
    )
    return st.builds(
        lambda u, v, s: Fraction(s * u) * Fraction(p) ** v,
        units,
        st.integers(min_value=vmin, max_value=vmax),
        st.sampled_from((1, -1)),
    )


def maybe_zero_fractions_for(p: int) -> st.SearchStrategy:
    return st.one_of(st.just(Fraction(0)), fractions_for(p))


configs = st.sampled_from(CONFIGS)


@st.composite
def config_with_exts(draw, count: int, allow_zero: bool = True):
    """A field configuration together with ``count`` scalars in it."""
    c = draw(configs)
    frs = maybe_zero_fractions_for(c.p) if allow_zero else fractions_for(c.p)
    zs = [
        ExtScalar.from_fraction(c, draw(frs), draw(frs)) for _ in range(count)
    ]
    return (c, *zs)


@st.composite
def config_with_vectors(draw, count: int, max_dim: int = 5):
    c = draw(configs)
    dim = draw(st.integers(min_value=1, max_value=max_dim))
    frs = maybe_zero_fractions_for(c.p)
    vs = [
        Vector(
            c,
            [
                ExtScalar.from_fraction(c, draw(frs), draw(frs))
                for _ in range(dim)
            ],
        )
        for _ in range(count)
    ]
    return (c, *vs)
