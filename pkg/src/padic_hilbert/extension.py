"""Arithmetic in the quadratic extension Q_p(√μ).

An :class:`ExtScalar` is ``a + b·√μ`` with p-adic coordinates a, b.  The
Galois conjugate is ``a − b·√μ``; the field norm N(z) = a² − μb² lands in
Q_p and induces the absolute value |z| = |N(z)|^(1/2).

The absolute value never needs N(z) explicitly: for unramified μ the residue
of a² − μb² cannot vanish when |a| = |b| (μ's residue is a non-residue), and
for ramified μ the valuations of a² and μb² differ in parity; in both cases

    |a + b√μ| = max(|a|, |μ|^(1/2)·|b|)

exactly, with no cancellation.  This keeps norms loss-free even at one digit
of precision; the field norm stays available as an independent cross-check.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Optional, Union

from .errors import DomainError, PrecisionLossError
from .field import FieldConfig
from .normvalue import NormValue
from .padic import PAdicScalar, is_square_qp, sqrt_qp

FractionLike = Union[int, Fraction]


@lru_cache(maxsize=None)
def _mu_scalar(cfg: FieldConfig) -> PAdicScalar:
    # Generous guard digits so multiplying by the exact constant μ never
    # becomes the precision bottleneck.
    return PAdicScalar.from_fraction(cfg.p, cfg.mu, cfg.precision + 64)


class ExtScalar:
    """An element of Q_p(√μ) with precision-tracked coordinates."""

    __slots__ = ("cfg", "a", "b")

    def __init__(self, cfg: FieldConfig, a: PAdicScalar, b: PAdicScalar) -> None:
        self.cfg = cfg
        self.a = a
        self.b = b

    # -- constructors ---------------------------------------------------

    @staticmethod
    def from_fraction(
        cfg: FieldConfig, a: FractionLike, b: FractionLike = 0
    ) -> "ExtScalar":
        return ExtScalar(
            cfg,
            PAdicScalar.from_fraction(cfg.p, a, cfg.precision),
            PAdicScalar.from_fraction(cfg.p, b, cfg.precision),
        )

    @staticmethod
    def from_qp(cfg: FieldConfig, a: PAdicScalar) -> "ExtScalar":
        return ExtScalar(cfg, a, PAdicScalar.exact_zero(cfg.p))

    @staticmethod
    def zero(cfg: FieldConfig) -> "ExtScalar":
        z = PAdicScalar.exact_zero(cfg.p)
        return ExtScalar(cfg, z, z)

    @staticmethod
    def one(cfg: FieldConfig) -> "ExtScalar":
        return ExtScalar.from_fraction(cfg, 1)

    @staticmethod
    def sqrt_mu(cfg: FieldConfig) -> "ExtScalar":
        return ExtScalar.from_fraction(cfg, 0, 1)

    # -- state ------------------------------------------------------------

    @property
    def is_exact_zero(self) -> bool:
        return self.a.is_exact_zero and self.b.is_exact_zero

    @property
    def is_zeroish(self) -> bool:
        return self.a.is_zeroish and self.b.is_zeroish

    @property
    def is_rational(self) -> bool:
        """True when the √μ-coordinate is indistinguishable from zero."""
        return self.b.is_zeroish

    # -- ring operations -----------------------------------------------------

    def __add__(self, other: "ExtScalar") -> "ExtScalar":
        if not isinstance(other, ExtScalar):
            return NotImplemented
        return ExtScalar(self.cfg, self.a + other.a, self.b + other.b)

    def __sub__(self, other: "ExtScalar") -> "ExtScalar":
        if not isinstance(other, ExtScalar):
            return NotImplemented
        return ExtScalar(self.cfg, self.a - other.a, self.b - other.b)

    def __neg__(self) -> "ExtScalar":
        return ExtScalar(self.cfg, -self.a, -self.b)

    def __mul__(self, other: "ExtScalar") -> "ExtScalar":
        if not isinstance(other, ExtScalar):
            return NotImplemented
        mu = _mu_scalar(self.cfg)
        a = self.a * other.a + mu * (self.b * other.b)
        b = self.a * other.b + self.b * other.a
        return ExtScalar(self.cfg, a, b)

    def conjugate(self) -> "ExtScalar":
        return ExtScalar(self.cfg, self.a, -self.b)

    def field_norm(self) -> PAdicScalar:
        """N(z) = z·conj(z) = a² − μb², an element of Q_p."""
        mu = _mu_scalar(self.cfg)
        return self.a * self.a - mu * (self.b * self.b)

    def inverse(self) -> "ExtScalar":
        if self.is_exact_zero:
            raise DomainError("division by exact zero")
        if self.is_zeroish:
            raise PrecisionLossError(
                "cannot invert a scalar indistinguishable from zero"
            )
        n = self.field_norm()
        ninv = n.inverse()
        return ExtScalar(self.cfg, self.a * ninv, -self.b * ninv)

    def __truediv__(self, other: "ExtScalar") -> "ExtScalar":
        if not isinstance(other, ExtScalar):
            return NotImplemented
        return self * other.inverse()

    # -- absolute value ----------------------------------------------------

    def _component_exponents(self) -> tuple[Optional[int], Optional[int]]:
        """(exact exp2, bound exp2) of max(|a|, |√μ||b|), either possibly None."""
        mu_shift = -1 if self.cfg.ramified else 0  # exp2 of |√μ| for unit-b
        exact: Optional[int] = None
        bound: Optional[int] = None
        for comp, shift in ((self.a, 0), (self.b, mu_shift)):
            if comp.is_exact_zero:
                continue
            e2 = -2 * comp.v + shift  # type: ignore[operator]
            if comp.is_zeroish:
                if bound is None or e2 > bound:
                    bound = e2
            else:
                if exact is None or e2 > exact:
                    exact = e2
        return exact, bound

    def norm(self) -> NormValue:
        exact, bound = self._component_exponents()
        if exact is None and bound is None:
            return NormValue.zero()
        if exact is not None and (bound is None or exact >= bound):
            return NormValue(exact)
        raise PrecisionLossError(
            "norm undetermined at this precision"
            + (f" (only |z| <= p^{Fraction(bound, 2)} is known)" if bound is not None else "")
        )

    def norm_upper_bound(self) -> NormValue:
        exact, bound = self._component_exponents()
        candidates = [e for e in (exact, bound) if e is not None]
        if not candidates:
            return NormValue.zero()
        return NormValue(max(candidates))

    # -- comparison --------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExtScalar):
            return NotImplemented
        return self.a == other.a and self.b == other.b

    __hash__ = None  # type: ignore[assignment]

    # -- rendering ----------------------------------------------------------

    def __str__(self) -> str:
        return f"({self.a}) + ({self.b})*sqrt({self.cfg.mu})"

    def __repr__(self) -> str:
        return f"<ExtScalar {self} @ p={self.cfg.p}>"


# -- square roots in the extension -------------------------------------------


def _sqrt_of_rational_part(cfg: FieldConfig, a: PAdicScalar) -> ExtScalar:
    """Square root of an element of Q_p inside Q_p(√μ): either a Q_p root or
    a pure √μ-multiple; raises DomainError when neither exists."""
    zero = PAdicScalar.exact_zero(cfg.p)
    if a.is_exact_zero:
        return ExtScalar(cfg, zero, zero)
    if is_square_qp(a):
        return ExtScalar(cfg, sqrt_qp(a), zero)
    t2 = a / _mu_scalar(cfg)
    if not t2.is_zeroish and is_square_qp(t2):
        return ExtScalar(cfg, zero, sqrt_qp(t2))
    raise DomainError("not a square in Q_p(sqrt(mu))")


def sqrt_ext(z: ExtScalar) -> ExtScalar:
    """The canonical square root of z in Q_p(√μ), if one exists.

    For z = a + b√μ with b ≠ 0 a root x + y√μ must satisfy x² = (a ± s)/2
    with s = √(N(z)) ∈ Q_p and y = b/(2x); at most one sign can give a
    square (otherwise μ itself would be one).  DomainError when no root
    exists; PrecisionLossError when the coordinates cannot decide.
    """
    cfg = z.cfg
    if z.b.is_exact_zero:
        return _sqrt_of_rational_part(cfg, z.a)
    if z.b.is_zeroish or z.a.is_zeroish and not z.a.is_exact_zero:
        raise PrecisionLossError("square root undetermined at this precision")
    n = z.field_norm()
    if n.is_zeroish or not is_square_qp(n):
        raise DomainError("not a square in Q_p(sqrt(mu)): field norm is not a square")
    s = sqrt_qp(n)
    half = PAdicScalar.from_fraction(cfg.p, Fraction(1, 2), cfg.precision + 64)
    two = PAdicScalar.from_fraction(cfg.p, 2, cfg.precision + 64)
    for signed in (s, -s):
        x2 = (z.a + signed) * half
        if x2.is_zeroish:
            continue
        if is_square_qp(x2):
            x = sqrt_qp(x2)
            y = z.b / (two * x)
            return ExtScalar(cfg, x, y)
    raise DomainError("not a square in Q_p(sqrt(mu))")


def is_square_ext(z: ExtScalar) -> bool:
    try:
        sqrt_ext(z)
        return True
    except DomainError:
        return False


def hermitian_square_root(cfg: FieldConfig, c: PAdicScalar) -> Optional[ExtScalar]:
    """A solution z of ``conj(z)·z = c`` for rational c, or None.

    conj(z)z is the field norm, so solvability means c lies in the norm
    group N(Q_p(√μ)*).  The solver is complete:

    * c a square in Q_p             → rational root √c,
    * −c/μ a square                 → pure root √(−c/μ)·√μ,
    * otherwise scan small residue pairs (a, b) for a norm a² − μb² whose
      coset matches c (needed only when −μ is itself a square, i.e. the
      first two routes coincide); returns None when c is not a norm.

    Whenever a rational solution exists the result is rational, so this
    coincides with the ordinary square root on squares of Q_p.
    """
    p = cfg.p
    if c.is_exact_zero:
        return ExtScalar.zero(cfg)
    if c.is_zeroish:
        raise PrecisionLossError("hermitian square root undetermined near zero")
    if is_square_qp(c):
        return ExtScalar(cfg, sqrt_qp(c), PAdicScalar.exact_zero(p))
    neg_over_mu = -(c / _mu_scalar(cfg))
    if is_square_qp(neg_over_mu):
        return ExtScalar(cfg, PAdicScalar.exact_zero(p), sqrt_qp(neg_over_mu))
    # Mixed coset representatives: z0 = a + b√μ with unit norm t; then
    # z = z0·√(c/t) whenever c/t is a square.  Scanning all residue pairs
    # decides membership in the norm group exactly (Hensel lifts any
    # nondegenerate residue solution).
    for a0 in range(p):
        for b0 in range(1 if a0 == 0 else 0, p):
            t = a0 * a0 - cfg.mu * b0 * b0
            if t % p == 0:
                continue
            z0 = ExtScalar.from_fraction(cfg, a0, b0)
            ratio = c / z0.field_norm()
            if is_square_qp(ratio):
                root = ExtScalar.from_qp(cfg, sqrt_qp(ratio))
                return z0 * root
    return None
