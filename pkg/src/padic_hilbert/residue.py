"""Residue fields of the unit ball: F_p, and F_{p²} = F_p(ω) with ω² = u.

Elements are pairs ``(a, b)`` of ints mod p meaning ``a + b·ω`` (prime-field
elements keep ``b = 0``).  Only what the residue-criterion linear algebra
needs is implemented.
"""

from __future__ import annotations

from dataclasses import dataclass

Element = tuple[int, int]


@dataclass(frozen=True)
class ResidueField:
    """F_p (quadratic=False) or F_{p²} (quadratic=True, ω² = u)."""

    p: int
    u: int
    quadratic: bool

    def zero(self) -> Element:
        return (0, 0)

    def one(self) -> Element:
        return (1, 0)

    def is_zero(self, x: Element) -> bool:
        return x == (0, 0)

    def add(self, x: Element, y: Element) -> Element:
        return ((x[0] + y[0]) % self.p, (x[1] + y[1]) % self.p)

    def sub(self, x: Element, y: Element) -> Element:
        return ((x[0] - y[0]) % self.p, (x[1] - y[1]) % self.p)

    def neg(self, x: Element) -> Element:
        return (-x[0] % self.p, -x[1] % self.p)

    def mul(self, x: Element, y: Element) -> Element:
        a = (x[0] * y[0] + self.u * x[1] * y[1]) % self.p
        b = (x[0] * y[1] + x[1] * y[0]) % self.p
        return (a, b)

    def inv(self, x: Element) -> Element:
        if x == (0, 0):
            raise ZeroDivisionError("inverse of zero in the residue field")
        n = (x[0] * x[0] - self.u * x[1] * x[1]) % self.p
        ninv = pow(n, -1, self.p)
        return (x[0] * ninv % self.p, -x[1] * ninv % self.p)

    def pivot_weight(self, x: Element) -> int:
        return 0 if x == (0, 0) else 1
