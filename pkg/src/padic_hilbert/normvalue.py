"""Values of the ultrametric absolute value.

Every norm arising in the library is either 0 or an integer or half-integer
power of p, so a norm is represented exactly by twice its exponent (an
``int``), with ``None`` for the norm of zero.  The representation does not
retain p itself: norms from different primes never meet in practice, and
keeping the type p-agnostic lets the same total order serve everywhere.
"""

from __future__ import annotations

from fractions import Fraction
from functools import total_ordering
from typing import Optional

from .errors import DomainError


@total_ordering
class NormValue:
    """An exact value ``p**(exp2/2)`` of the absolute value, or zero.

    ``exp2`` is twice the exponent; unramified configurations only ever
    produce even ``exp2``, ramified ones produce the full half-integer
    lattice.
    """

    __slots__ = ("exp2",)

    def __init__(self, exp2: Optional[int]) -> None:
        self.exp2 = exp2

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero() -> "NormValue":
        return NormValue(None)

    @staticmethod
    def one() -> "NormValue":
        return NormValue(0)

    @staticmethod
    def from_exponent(e: Fraction | int) -> "NormValue":
        """Norm p**e for an integer or half-integer exponent e."""
        e2 = Fraction(e) * 2
        if e2.denominator != 1:
            raise ValueError(f"norm exponent {e} is not a half-integer")
        return NormValue(int(e2))

    # -- queries -------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self.exp2 is None

    @property
    def exponent(self) -> Fraction:
        """The exponent e with value p**e.  Undefined for zero."""
        if self.exp2 is None:
            raise ValueError("the zero norm has no exponent")
        return Fraction(self.exp2, 2)

    # -- algebra -------------------------------------------------------

    def __mul__(self, other: "NormValue") -> "NormValue":
        if not isinstance(other, NormValue):
            return NotImplemented
        if self.exp2 is None or other.exp2 is None:
            return NormValue.zero()
        return NormValue(self.exp2 + other.exp2)

    def __truediv__(self, other: "NormValue") -> "NormValue":
        if not isinstance(other, NormValue):
            return NotImplemented
        if other.exp2 is None:
            raise DomainError("division by the zero norm")
        if self.exp2 is None:
            return NormValue.zero()
        return NormValue(self.exp2 - other.exp2)

    def __pow__(self, k: int) -> "NormValue":
        if self.exp2 is None:
            if k <= 0:
                raise DomainError("zero norm to a non-positive power")
            return NormValue.zero()
        return NormValue(self.exp2 * k)

    # -- order ---------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NormValue):
            return NotImplemented
        return self.exp2 == other.exp2

    def __lt__(self, other: "NormValue") -> bool:
        if not isinstance(other, NormValue):
            return NotImplemented
        if self.exp2 is None:
            return other.exp2 is not None
        if other.exp2 is None:
            return False
        return self.exp2 < other.exp2

    def __hash__(self) -> int:
        return hash(("NormValue", self.exp2))

    # -- rendering -------------------------------------------------------

    def __str__(self) -> str:
        """Wire form: ``p^e`` with e in lowest terms, ``0`` for zero."""
        if self.exp2 is None:
            return "0"
        e = Fraction(self.exp2, 2)
        if e.denominator == 1:
            return f"p^{e.numerator}"
        return f"p^{e.numerator}/{e.denominator}"

    def __repr__(self) -> str:
        return f"NormValue({self.exp2!r})"

    @staticmethod
    def parse(text: str) -> "NormValue":
        """Inverse of ``str``."""
        if text == "0":
            return NormValue.zero()
        if not text.startswith("p^"):
            raise DomainError(f"not a norm value: {text!r}")
        try:
            return NormValue.from_exponent(Fraction(text[2:]))
        except (ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"not a norm value: {text!r}") from exc


def max_norm(values: list[NormValue]) -> NormValue:
    """Maximum of a (possibly empty) list; empty means the zero norm."""
    best = NormValue.zero()
    for v in values:
        if best < v:
            best = v
    return best
