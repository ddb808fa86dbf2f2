"""Exact p-adic scalars with precision tracking, and square roots in Q_p.

A nonzero scalar stores ``(v, unit, prec)`` with ``value ≡ p^v · unit
(mod p^(v+prec))``, ``1 ≤ unit < p^prec`` and ``p ∤ unit`` — i.e. ``prec``
significant digits starting at valuation ``v``.  Additive cancellation can
consume all known digits; the result is then a *zero at precision*: a scalar
known only to satisfy ``|x| ≤ p^(−v)``, stored as ``unit = 0, prec = 0`` with
``v`` the valuation lower bound.  The exact zero has ``v = None``.

All arithmetic propagates these bounds soundly: results are never claimed to
more digits than the inputs determine.  Equality means "indistinguishable at
the shared precision"; operations that need a definite answer where the
digits give none raise :class:`PrecisionLossError`.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Union

from .errors import DomainError, PrecisionLossError
from .field import ppow
from .normvalue import NormValue


def int_valuation(p: int, n: int) -> int:
    """Largest k with p^k | n, for n ≠ 0."""
    if n == 0:
        raise ValueError("the zero integer has no finite valuation")
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


class PAdicScalar:
    """An element of Q_p known to finitely many digits (or exactly zero)."""

    __slots__ = ("p", "v", "unit", "prec")

    def __init__(self, p: int, v: Optional[int], unit: int, prec: int) -> None:
        # Raw constructor: inputs must already be normalized.  Use the
        # classmethods / helpers below to build values.
        self.p = p
        self.v = v
        self.unit = unit
        self.prec = prec

    # -- constructors ---------------------------------------------------

    @staticmethod
    def exact_zero(p: int) -> "PAdicScalar":
        return PAdicScalar(p, None, 0, 0)

    @staticmethod
    def zero_at(p: int, bound: int) -> "PAdicScalar":
        """A scalar known only to satisfy |x| ≤ p^(−bound)."""
        return PAdicScalar(p, bound, 0, 0)

    @staticmethod
    def make(p: int, v: int, raw_unit: int, prec: int) -> "PAdicScalar":
        """Normalize ``p^v · raw_unit`` known modulo ``p^(v+prec)``."""
        if prec <= 0:
            return PAdicScalar.zero_at(p, v + prec)
        m = ppow(p, prec)
        u = raw_unit % m
        if u == 0:
            return PAdicScalar.zero_at(p, v + prec)
        k = int_valuation(p, u)
        if k:
            if k >= prec:
                return PAdicScalar.zero_at(p, v + prec)
            u //= ppow(p, k)
            v += k
            prec -= k
            u %= ppow(p, prec)
            if u == 0:  # cannot happen (u had valuation exactly k) — guard
                return PAdicScalar.zero_at(p, v + prec)
        return PAdicScalar(p, v, u, prec)

    @staticmethod
    def from_fraction(p: int, x: Union[int, Fraction], prec: int) -> "PAdicScalar":
        """The rational x to ``prec`` significant digits (exact zero for 0)."""
        x = Fraction(x)
        if x == 0:
            return PAdicScalar.exact_zero(p)
        num, den = x.numerator, x.denominator
        vn = int_valuation(p, num)
        vd = int_valuation(p, den)
        num //= ppow(p, vn)
        den //= ppow(p, vd)
        m = ppow(p, prec)
        unit = num * pow(den, -1, m) % m
        return PAdicScalar(p, vn - vd, unit, prec)

    # -- state queries ----------------------------------------------------

    @property
    def is_exact_zero(self) -> bool:
        return self.unit == 0 and self.v is None

    @property
    def is_zeroish(self) -> bool:
        """True when the digits held cannot distinguish the value from 0."""
        return self.unit == 0

    @property
    def valuation(self) -> int:
        if self.unit == 0:
            raise PrecisionLossError(
                "valuation undefined: scalar is indistinguishable from zero"
            )
        return self.v  # type: ignore[return-value]

    @property
    def valuation_bound(self) -> Optional[int]:
        """A sound lower bound for the valuation (None = +infinity)."""
        return self.v

    @property
    def abs_precision(self) -> Optional[int]:
        """Digits are trusted below p^(-abs_precision); None = exact."""
        if self.unit == 0:
            return self.v
        return self.v + self.prec  # type: ignore[operator]

    def norm(self) -> NormValue:
        if self.unit == 0:
            if self.v is None:
                return NormValue.zero()
            raise PrecisionLossError(
                f"norm undetermined: only |x| <= p^{-self.v} is known"
            )
        return NormValue(-2 * self.v)  # type: ignore[operator]

    def norm_upper_bound(self) -> NormValue:
        if self.is_exact_zero:
            return NormValue.zero()
        return NormValue(-2 * self.v)  # type: ignore[operator]

    def representative(self) -> Fraction:
        """The canonical rational representative of the residue class
        (0 for any zero-ish scalar)."""
        if self.unit == 0:
            return Fraction(0)
        return Fraction(self.unit) * Fraction(self.p) ** self.v

    def digits(self) -> tuple[int, ...]:
        """The known significant digits, least significant first."""
        out = []
        u = self.unit
        for _ in range(self.prec):
            out.append(u % self.p)
            u //= self.p
        return tuple(out)

    # -- arithmetic ------------------------------------------------------

    def __neg__(self) -> "PAdicScalar":
        if self.unit == 0:
            return self
        return PAdicScalar(self.p, self.v, ppow(self.p, self.prec) - self.unit, self.prec)

    def __add__(self, other: "PAdicScalar") -> "PAdicScalar":
        if not isinstance(other, PAdicScalar):
            return NotImplemented
        p = self.p
        if self.is_exact_zero:
            return other
        if other.is_exact_zero:
            return self
        a_self = self.abs_precision
        a_other = other.abs_precision
        amin = a_self if a_self <= a_other else a_other  # type: ignore[operator]
        if self.unit == 0 and other.unit == 0:
            return PAdicScalar.zero_at(p, amin)
        vmin = min(self.v, other.v)  # type: ignore[type-var]
        width = amin - vmin
        if width <= 0:
            return PAdicScalar.zero_at(p, amin)
        m = ppow(p, width)
        total = 0
        if self.unit:
            total += self.unit * ppow(p, self.v - vmin)  # type: ignore[operator]
        if other.unit:
            total += other.unit * ppow(p, other.v - vmin)  # type: ignore[operator]
        return PAdicScalar.make(p, vmin, total % m, width)

    def __sub__(self, other: "PAdicScalar") -> "PAdicScalar":
        if not isinstance(other, PAdicScalar):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other: "PAdicScalar") -> "PAdicScalar":
        if not isinstance(other, PAdicScalar):
            return NotImplemented
        p = self.p
        if self.is_exact_zero or other.is_exact_zero:
            return PAdicScalar.exact_zero(p)
        if self.unit == 0 or other.unit == 0:
            return PAdicScalar.zero_at(p, self.v + other.v)  # type: ignore[operator]
        prec = self.prec if self.prec <= other.prec else other.prec
        unit = self.unit * other.unit % ppow(p, prec)
        return PAdicScalar(p, self.v + other.v, unit, prec)  # type: ignore[operator]

    def inverse(self) -> "PAdicScalar":
        if self.unit == 0:
            if self.v is None:
                raise DomainError("division by exact zero")
            raise PrecisionLossError(
                "cannot invert a scalar indistinguishable from zero"
            )
        m = ppow(self.p, self.prec)
        return PAdicScalar(self.p, -self.v, pow(self.unit, -1, m), self.prec)  # type: ignore[operator]

    def __truediv__(self, other: "PAdicScalar") -> "PAdicScalar":
        if not isinstance(other, PAdicScalar):
            return NotImplemented
        return self * other.inverse()

    def shift(self, k: int) -> "PAdicScalar":
        """Exact multiplication by p^k."""
        if self.is_exact_zero:
            return self
        return PAdicScalar(self.p, self.v + k, self.unit, self.prec)  # type: ignore[operator]

    # -- comparison --------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PAdicScalar):
            return NotImplemented
        return (self - other).is_zeroish

    __hash__ = None  # type: ignore[assignment]  # equality is precision-relative

    # -- rendering ---------------------------------------------------------

    def __str__(self) -> str:
        if self.is_exact_zero:
            return "0"
        if self.unit == 0:
            return f"O(p^{self.v})"
        ds = ",".join(str(d) for d in self.digits())
        return f"p^{self.v}*({ds})"

    def __repr__(self) -> str:
        return f"<{self} @ p={self.p}>"


# -- square roots in Q_p ------------------------------------------------


def sqrt_mod_p(a: int, p: int) -> int:
    """A square root of a modulo p (a a quadratic residue), via
    Tonelli-Shanks; deterministic because the non-residue is searched in
    increasing order."""
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        raise DomainError(f"{a} is not a quadratic residue mod {p}")
    if p % 4 == 3:
        r = pow(a, (p + 1) // 4, p)
    else:
        # Tonelli-Shanks.
        q, s = p - 1, 0
        while q % 2 == 0:
            q //= 2
            s += 1
        z = 2
        while pow(z, (p - 1) // 2, p) != p - 1:
            z += 1
        c = pow(z, q, p)
        r = pow(a, (q + 1) // 2, p)
        t = pow(a, q, p)
        m = s
        while t != 1:
            i, t2 = 0, t
            while t2 != 1:
                t2 = t2 * t2 % p
                i += 1
            b = pow(c, 1 << (m - i - 1), p)
            r = r * b % p
            c = b * b % p
            t = t * c % p
            m = i
    if r * r % p != a:
        raise DomainError(f"{a} is not a quadratic residue mod {p}")
    return r


def is_square_qp(x: PAdicScalar) -> bool:
    """Whether x is a square in Q_p.  Undecidable for a zero-at-precision."""
    if x.is_exact_zero:
        return True
    if x.is_zeroish:
        raise PrecisionLossError("squareness undecidable at this precision")
    if x.v % 2 != 0:  # type: ignore[operator]
        return False
    return pow(x.unit % x.p, (x.p - 1) // 2, x.p) == 1


def sqrt_qp(x: PAdicScalar) -> PAdicScalar:
    """The canonical square root in Q_p (leading digit in 1..(p-1)/2).

    Raises DomainError when x is not a square, PrecisionLossError when x is
    indistinguishable from zero.
    """
    p = x.p
    if x.is_exact_zero:
        return x
    if x.is_zeroish:
        raise PrecisionLossError("square root undetermined near zero")
    if x.v % 2 != 0:  # type: ignore[operator]
        raise DomainError("not a square in Q_p: odd valuation")
    u0 = x.unit % p
    if pow(u0, (p - 1) // 2, p) != 1:
        raise DomainError("not a square in Q_p: non-residue leading digit")
    # Hensel lifting with quadratic convergence.
    y = sqrt_mod_p(u0, p)
    known = 1
    inv2 = pow(2, -1, ppow(p, x.prec))
    while known < x.prec:
        known = min(2 * known, x.prec)
        m = ppow(p, known)
        y = (y + x.unit * pow(y, -1, m)) * inv2 % m
    if y % p > (p - 1) // 2:
        y = ppow(p, x.prec) - y
    return PAdicScalar(p, x.v // 2, y, x.prec)  # type: ignore[operator]
