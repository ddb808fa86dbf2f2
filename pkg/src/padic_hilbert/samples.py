"""Seeded random generators for scalars, vectors, and structured matrices.

All generators draw from a caller-supplied ``random.Random`` so that every
consumer (property tests, self-test suites, probe sampling) is reproducible
from a single integer seed.  Unitary matrices are built exactly — as
products of permutations, unit-circle diagonals (w/conj(w) has conj·self
= 1) and 2×2 rotation blocks with first column (a, b) satisfying
conj(a)a + conj(b)b = 1 — rather than sampled and tested, so the samplers
never reject on precision grounds.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Optional

from .errors import DomainError
from .extension import ExtScalar, hermitian_square_root
from .field import FieldConfig
from .normvalue import NormValue
from .operators import MatrixOperator, TailProfile
from .vectors import Vector


class Sampler:
    """Reproducible random elements over a fixed field configuration."""

    def __init__(self, cfg: FieldConfig, rng: random.Random) -> None:
        self.cfg = cfg
        self.rng = rng

    # -- scalars --------------------------------------------------------

    def fraction(self, vmin: int = -2, vmax: int = 4) -> Fraction:
        """A random rational with p-adic valuation in [vmin, vmax]."""
        p = self.cfg.p
        v = self.rng.randint(vmin, vmax)
        unit_num = self.rng.randrange(1, p * p * p)
        while unit_num % p == 0:
            unit_num = self.rng.randrange(1, p * p * p)
        unit_den = self.rng.randrange(1, p * p)
        while unit_den % p == 0:
            unit_den = self.rng.randrange(1, p * p)
        sign = self.rng.choice((1, -1))
        return Fraction(sign * unit_num, unit_den) * Fraction(p) ** v

    def maybe_zero_fraction(self, zero_weight: float = 0.15) -> Fraction:
        if self.rng.random() < zero_weight:
            return Fraction(0)
        return self.fraction()

    def ext(self, zero_weight: float = 0.15) -> ExtScalar:
        a = self.maybe_zero_fraction(zero_weight)
        b = self.maybe_zero_fraction(zero_weight)
        return ExtScalar.from_fraction(self.cfg, a, b)

    def nonzero_ext(self) -> ExtScalar:
        while True:
            z = self.ext(zero_weight=0.15)
            if not z.is_zeroish:
                return z

    def unit_circle(self) -> ExtScalar:
        """z with conj(z)·z = 1, as w/conj(w) for a random nonzero w."""
        w = self.nonzero_ext()
        return w / w.conjugate()

    # -- vectors -----------------------------------------------------------

    def vector(self, dim: int, zero_weight: float = 0.2) -> Vector:
        return Vector(
            self.cfg, [self.ext(zero_weight) for _ in range(dim)]
        )

    def nonzero_vector(self, dim: int) -> Vector:
        while True:
            v = self.vector(dim)
            if not v.is_zeroish:
                return v

    def unit_ball_vector(self, dim: int) -> Vector:
        """Integral coordinates with at least one unit: sup norm exactly 1."""
        p = self.cfg.p
        coords = []
        for _ in range(dim):
            a = Fraction(self.rng.randrange(0, p * p * p))
            b = Fraction(self.rng.randrange(0, p * p * p))
            coords.append(ExtScalar.from_fraction(self.cfg, a, b))
        i = self.rng.randrange(dim)
        u = self.rng.randrange(1, p)
        coords[i] = ExtScalar.from_fraction(
            self.cfg, Fraction(u + p * self.rng.randrange(0, p * p)), Fraction(0)
        )
        return Vector(self.cfg, coords)

    # -- structured matrices -----------------------------------------------

    def permutation_matrix(self, n: int) -> MatrixOperator:
        perm = list(range(n))
        self.rng.shuffle(perm)
        one, z = ExtScalar.one(self.cfg), ExtScalar.zero(self.cfg)
        return MatrixOperator(
            self.cfg,
            [[one if perm[i] == j else z for j in range(n)] for i in range(n)],
        )

    def _rotation_pair(self) -> tuple[ExtScalar, ExtScalar]:
        """(a, b) with conj(a)a + conj(b)b = 1, built by rescaling a random
        integral pair by a hermitian square root of the inverse length."""
        p = self.cfg.p
        for _ in range(64):
            x = ExtScalar.from_fraction(
                self.cfg,
                Fraction(self.rng.randrange(1, p * p)),
                Fraction(self.rng.randrange(0, p * p)),
            )
            y = ExtScalar.from_fraction(
                self.cfg,
                Fraction(self.rng.randrange(0, p * p)),
                Fraction(self.rng.randrange(0, p * p)),
            )
            s = x.conjugate() * x + y.conjugate() * y
            if s.is_zeroish or not s.is_rational:
                continue
            try:
                w = hermitian_square_root(self.cfg, s.a.inverse())
            except Exception:
                continue
            if w is None:
                continue
            a, b = x * w, y * w
            # Valuation cancellation in s can push |a| or |b| above 1;
            # such a pair preserves the pairing without being an isometry,
            # so reject it.
            one = NormValue.one()
            if one < a.norm_upper_bound() or one < b.norm_upper_bound():
                continue
            return a, b
        # (1, 0) always works.
        return ExtScalar.one(self.cfg), ExtScalar.zero(self.cfg)

    def rotation_block(self, n: int, i: int, j: int) -> MatrixOperator:
        """Identity with rows/columns (i, j) replaced by an exact 2×2
        unitary block."""
        a, b = self._rotation_pair()
        c = self.unit_circle()
        m = MatrixOperator.identity(self.cfg, n)
        rows = [list(r) for r in m.entries]
        rows[i][i] = a
        rows[j][i] = b
        rows[i][j] = -b.conjugate() * c
        rows[j][j] = a.conjugate() * c
        return MatrixOperator(self.cfg, rows)

    def unitary(self, n: int, layers: int = 3) -> MatrixOperator:
        """A random exact unitary: permutations × unit-circle diagonal ×
        rotation blocks."""
        m = self.permutation_matrix(n)
        diag = MatrixOperator(
            self.cfg,
            [
                [
                    self.unit_circle() if i == j else ExtScalar.zero(self.cfg)
                    for j in range(n)
                ]
                for i in range(n)
            ],
        )
        m = m.compose(diag)
        for _ in range(layers):
            if n < 2:
                break
            i, j = self.rng.sample(range(n), 2)
            m = m.compose(self.rotation_block(n, min(i, j), max(i, j)))
        return m

    def orthonormal_basis(self, n: int) -> list[Vector]:
        u = self.unitary(n)
        return [u.column(j) for j in range(1, n + 1)]

    def orthonormal_system(self, n: int, k: int) -> list[Vector]:
        if k > n:
            raise DomainError("system larger than ambient dimension")
        return self.orthonormal_basis(n)[:k]

    def pairing_preserving_non_isometry(self, n: int) -> Optional[MatrixOperator]:
        """A matrix with L*L = Id whose entries leave the unit ball: it
        preserves the inner product but is not an isometry (norms are not
        preserved), so it must fail the anti-/unitarity predicates.  Exists
        whenever two unit norms of the extension can cancel modulo p;
        returns None when the bounded search finds no such pair."""
        p = self.cfg.p
        one = NormValue.one()
        for _ in range(400):
            x = ExtScalar.from_fraction(
                self.cfg, self.rng.randrange(1, 3 * p), self.rng.randrange(0, 3 * p)
            )
            y = ExtScalar.from_fraction(
                self.cfg, self.rng.randrange(0, 3 * p), self.rng.randrange(0, 3 * p)
            )
            s = x.conjugate() * x + y.conjugate() * y
            if s.is_zeroish or not s.is_rational:
                continue
            nb = s.norm_upper_bound()
            big = max(
                (x.conjugate() * x).norm_upper_bound(),
                (y.conjugate() * y).norm_upper_bound(),
            )
            if not nb < big:
                continue
            try:
                w = hermitian_square_root(self.cfg, s.a.inverse())
            except Exception:
                continue
            if w is None:
                continue
            a, b = x * w, y * w
            if not (one < a.norm_upper_bound() or one < b.norm_upper_bound()):
                continue
            m = MatrixOperator.identity(self.cfg, n)
            rows = [list(r) for r in m.entries]
            i, j = (0, 1) if n >= 2 else (0, 0)
            if n < 2:
                return None
            rows[i][i] = a
            rows[j][i] = b
            rows[i][j] = -b.conjugate()
            rows[j][j] = a.conjugate()
            return MatrixOperator(self.cfg, rows)
        return None

    def finite_operator(self, rows: int, cols: int) -> MatrixOperator:
        return MatrixOperator(
            self.cfg,
            [[self.ext(0.25) for _ in range(cols)] for _ in range(rows)],
        )

    def non_anti_unitary_linear_part(self, n: int) -> MatrixOperator:
        """Linear part of a map failing *all* the anti-unitarity
        characterizations: a p-power rescaled unitary, a unitary with a
        zeroed column, a unimodular triangular matrix with a nonzero
        strictly-upper entry, or diag(√μ, 1/√μ) inside the identity."""
        if n < 2:
            raise DomainError("non-examples need dimension at least 2")
        kind = self.rng.randrange(4)
        if kind == 0:
            k = self.rng.choice((-2, -1, 1, 2))
            scale = ExtScalar.from_fraction(
                self.cfg, Fraction(self.cfg.p) ** k
            )
            return self.unitary(n).scale(scale)
        if kind == 1:
            u = self.unitary(n)
            col = self.rng.randrange(n)
            zero = ExtScalar.zero(self.cfg)
            rows = [list(r) for r in u.entries]
            for i in range(n):
                rows[i][col] = zero
            return MatrixOperator(self.cfg, rows)
        if kind == 2:
            one, zero = ExtScalar.one(self.cfg), ExtScalar.zero(self.cfg)
            rows = [
                [one if i == j else zero for j in range(n)] for i in range(n)
            ]
            i = self.rng.randrange(n - 1)
            j = self.rng.randrange(i + 1, n)
            rows[i][j] = ExtScalar.from_fraction(
                self.cfg, self.rng.randint(1, self.cfg.p - 1)
            )
            return MatrixOperator(self.cfg, rows)
        one, zero = ExtScalar.one(self.cfg), ExtScalar.zero(self.cfg)
        rows = [[one if i == j else zero for j in range(n)] for i in range(n)]
        i = self.rng.randrange(n - 1)
        j = self.rng.randrange(i + 1, n)
        sqrt_mu = ExtScalar.sqrt_mu(self.cfg)
        rows[i][i] = sqrt_mu
        rows[j][j] = sqrt_mu.inverse()
        return MatrixOperator(self.cfg, rows)

    def tail_profile(self) -> TailProfile:
        alpha = Fraction(self.rng.choice((0, 1, 1, 2)), self.rng.choice((1, 2)))
        beta = Fraction(self.rng.choice((0, 1, 1, 2)), self.rng.choice((1, 2)))
        gamma = Fraction(self.rng.randint(-1, 2))
        return TailProfile(alpha, beta, gamma)
