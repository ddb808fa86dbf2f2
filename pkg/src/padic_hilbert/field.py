"""Field configuration: the prime, the quadratic defect μ, and the working
precision.

A configuration fixes the quadratic extension Q_p(√μ) in which all scalars
live.  μ is one of

* the least positive quadratic non-residue u mod p  (unramified extension,
  residue field F_{p²}),
* the prime p itself                                 (ramified),
* u·p                                                (ramified).

p = 2 is rejected: the arithmetic implemented here (Hensel lifting of square
roots, the residue criteria, the parity arguments behind the absolute value)
is the odd-prime theory.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache

from .errors import DomainError

MIN_PRECISION = 8
DEFAULT_PRECISION = 32

# Deterministic Miller-Rabin witnesses: correct for all n < 3.3·10^24.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in _MR_WITNESSES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def least_nonresidue(p: int) -> int:
    """Smallest u in 2..p-1 with u not a square mod p, verified exhaustively
    (every candidate below is checked to be a residue)."""
    half = (p - 1) // 2
    for u in range(2, p):
        if pow(u, half, p) == p - 1:
            return u
        assert pow(u, half, p) == 1, "Euler criterion must be ±1 for a unit"
    raise DomainError(f"no quadratic non-residue below {p}; p must be an odd prime")


class MuKind(enum.Enum):
    """Which square-free defect generates the quadratic extension."""

    NON_RESIDUE = "nonresidue"
    UNIFORMIZER = "uniformizer"
    UNIFORMIZER_NON_RESIDUE = "uniformizer-nonresidue"


@dataclass(frozen=True)
class FieldConfig:
    """Immutable description of Q_p(√μ) at a working precision.

    ``precision`` is the number of significant p-adic digits carried by
    scalars created from rationals; all arithmetic tracks how many of those
    digits remain trustworthy.
    """

    p: int
    mu_kind: MuKind = MuKind.NON_RESIDUE
    precision: int = DEFAULT_PRECISION

    def __post_init__(self) -> None:
        if self.p == 2:
            raise DomainError("p = 2 is not supported (odd primes only)")
        if not is_prime(self.p):
            raise DomainError(f"p = {self.p} is not prime")
        if not isinstance(self.mu_kind, MuKind):
            raise DomainError(f"bad mu kind: {self.mu_kind!r}")
        if self.precision < MIN_PRECISION:
            raise DomainError(
                f"precision {self.precision} is below the minimum {MIN_PRECISION}"
            )

    @property
    def nonresidue(self) -> int:
        return least_nonresidue(self.p)

    @property
    def mu(self) -> int:
        """μ as an integer; never a square in Q_p (non-residue, or of odd
        valuation)."""
        u = least_nonresidue(self.p)
        if self.mu_kind is MuKind.NON_RESIDUE:
            return u
        if self.mu_kind is MuKind.UNIFORMIZER:
            return self.p
        return u * self.p

    @property
    def ramified(self) -> bool:
        """True when the extension's value group is p^(Z/2)."""
        return self.mu_kind is not MuKind.NON_RESIDUE

    @property
    def residue_degree(self) -> int:
        """Degree of the residue field over F_p (2 unramified, 1 ramified)."""
        return 1 if self.ramified else 2


@lru_cache(maxsize=None)
def ppow(p: int, k: int) -> int:
    """Cached p**k for k ≥ 0."""
    return p**k
