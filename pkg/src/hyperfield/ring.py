"""Commutative ring of hypercomplex numbers with units {1, i, j, ij}.

Unit table: i^2 = -1, j^2 = +1, (ij)^2 = -1, ij = ji.  The ring splits into
two standard-complex sectors through the orthogonal idempotents
J+ = (1+j)/2 and J- = (1-j)/2, which are zero divisors (J+ J- = 0).

Components may be floats or ``fractions.Fraction``; arithmetic stays inside
whatever numeric type is supplied, so the ring identities can be checked
exactly in rational mode.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import NotInvertible

_SCALARS = (int, float, Fraction)


@dataclass(frozen=True)
class Bicomplex:
    """Element x + i*y + j*u + ij*v of the hypercomplex ring."""

    x: object = 0.0
    y: object = 0.0
    u: object = 0.0
    v: object = 0.0

    # -- constructors ------------------------------------------------------

    @staticmethod
    def from_complex(z) -> "Bicomplex":
        """Embed a standard complex number (or real scalar) into the ring."""
        if isinstance(z, Bicomplex):
            return z
        if isinstance(z, complex):
            return Bicomplex(z.real, z.imag, 0.0, 0.0)
        return Bicomplex(z, 0.0, 0.0, 0.0)

    @staticmethod
    def from_sectors(plus, minus) -> "Bicomplex":
        """Build the element J+ * plus + J- * minus from two complex sectors."""
        plus = complex(plus)
        minus = complex(minus)
        return Bicomplex(
            (plus.real + minus.real) / 2.0,
            (plus.imag + minus.imag) / 2.0,
            (plus.real - minus.real) / 2.0,
            (plus.imag - minus.imag) / 2.0,
        )

    @staticmethod
    def zero() -> "Bicomplex":
        return _ZERO

    @staticmethod
    def one() -> "Bicomplex":
        return _ONE

    # -- ring arithmetic ---------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Bicomplex(self.x + other.x, self.y + other.y,
                         self.u + other.u, self.v + other.v)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Bicomplex(self.x - other.x, self.y - other.y,
                         self.u - other.u, self.v - other.v)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __neg__(self):
        return Bicomplex(-self.x, -self.y, -self.u, -self.v)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b, c, d = self.x, self.y, self.u, self.v
        e, f, g, h = other.x, other.y, other.u, other.v
        # terms grouped so products of opposite idempotents cancel exactly
        return Bicomplex(
            (a * e + c * g) - (b * f + d * h),
            (a * f + c * h) + (b * e + d * g),
            (a * g + c * e) - (b * h + d * f),
            (a * h + c * f) + (b * g + d * e),
        )

    __rmul__ = __mul__

    # -- involutions and sector views -------------------------------------

    def conj(self) -> "Bicomplex":
        """Bar conjugation: negates the i- and j-parts.  Multiplicative."""
        return Bicomplex(self.x, -self.y, -self.u, self.v)

    def modulus(self) -> "Bicomplex":
        """Ring modulus a * conj(a); lies in the 1/ij subring."""
        return self * self.conj()

    def plus(self) -> complex:
        """Standard-complex component multiplying J+."""
        return complex(self.x + self.u, self.y + self.v)

    def minus(self) -> complex:
        """Standard-complex component multiplying J-."""
        return complex(self.x - self.u, self.y - self.v)

    def inverse(self) -> "Bicomplex":
        """Multiplicative inverse; raises NotInvertible on zero divisors."""
        p, m = self.plus(), self.minus()
        if p == 0 or m == 0:
            raise NotInvertible(f"zero divisor has no inverse: {self!r}")
        return Bicomplex.from_sectors(1.0 / p, 1.0 / m)

    # -- predicates / numerics ---------------------------------------------

    def is_zero(self) -> bool:
        return self.x == 0 and self.y == 0 and self.u == 0 and self.v == 0

    def norm(self) -> float:
        """Euclidean norm of the four components (not the ring modulus)."""
        return math.sqrt(float(self.x) ** 2 + float(self.y) ** 2
                         + float(self.u) ** 2 + float(self.v) ** 2)

    def is_close(self, other: "Bicomplex", tol: float = 1e-12) -> bool:
        return (self - other).norm() <= tol

    def to_tuple(self):
        return (self.x, self.y, self.u, self.v)

    def __repr__(self):
        return f"Bicomplex({self.x!r}, {self.y!r}, {self.u!r}, {self.v!r})"


def _coerce(value):
    if isinstance(value, Bicomplex):
        return value
    if isinstance(value, _SCALARS):
        return Bicomplex(value, 0, 0, 0)
    if isinstance(value, complex):
        return Bicomplex(value.real, value.imag, 0.0, 0.0)
    return NotImplemented


_ZERO = Bicomplex(0.0, 0.0, 0.0, 0.0)
_ONE = Bicomplex(1.0, 0.0, 0.0, 0.0)

ONE = _ONE
ZERO = _ZERO
I_UNIT = Bicomplex(0.0, 1.0, 0.0, 0.0)
J_UNIT = Bicomplex(0.0, 0.0, 1.0, 0.0)
IJ_UNIT = Bicomplex(0.0, 0.0, 0.0, 1.0)

J_PLUS = Bicomplex(0.5, 0.0, 0.5, 0.0)
J_MINUS = Bicomplex(0.5, 0.0, -0.5, 0.0)


def idempotents_exact():
    """J+ and J- with exact rational components, for the rational test mode."""
    half = Fraction(1, 2)
    return (Bicomplex(half, 0, half, 0), Bicomplex(half, 0, -half, 0))


def add(a: Bicomplex, b: Bicomplex) -> Bicomplex:
    return a + b


def mul(a: Bicomplex, b: Bicomplex) -> Bicomplex:
    return a * b


def conj_bar(a: Bicomplex) -> Bicomplex:
    return a.conj()


def modulus(a: Bicomplex) -> Bicomplex:
    return a.modulus()


def idempotent_decompose(a: Bicomplex) -> tuple[complex, complex]:
    """Sector components (plus, minus) with a = J+ * plus + J- * minus."""
    return a.plus(), a.minus()


def exp_bicomplex(alpha: float, beta: float) -> Bicomplex:
    """Bicomplex phase e^{i alpha + j beta}."""
    ca, sa = math.cos(alpha), math.sin(alpha)
    cb, sb = math.cosh(beta), math.sinh(beta)
    return Bicomplex(ca * cb, sa * cb, ca * sb, sa * sb)


def exp_hyperbolic_split(chi: float) -> Bicomplex:
    """Hyperbolic phase e^{j chi} assembled as e^{chi} J+ + e^{-chi} J-."""
    return math.exp(chi) * J_PLUS + math.exp(-chi) * J_MINUS


def exp_ring(a: Bicomplex) -> Bicomplex:
    """Exponential of a general ring element via the idempotent split."""
    return Bicomplex.from_sectors(cmath.exp(a.plus()), cmath.exp(a.minus()))
