"""Exact arithmetic in Q and in the real quadratic algebra K = Q(sqrt D).

Rationals are :class:`fractions.Fraction`.  An element ``x + y*sqrt(D)`` of K
is a :class:`QuadElem`; when D is the square of a rational the same notation
stands for the pair ``(x + y*sqrt(D), x - y*sqrt(D))`` in Q + Q, so one code
path serves both the field and the split algebra.

Nothing in this module touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .errors import ThetaError


def frac(value) -> Fraction:
    """Coerce ints, Fractions and strings like ``"5/2"`` to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"cannot read {value!r} as an exact rational")


def frac_str(q: Fraction) -> str:
    return str(q)


def sign(q) -> int:
    return (q > 0) - (q < 0)


def floor_sqrt(q: Fraction) -> int:
    """Largest integer t >= 0 with t*t <= q (q >= 0)."""
    if q < 0:
        raise ValueError("square root of a negative number")
    t = isqrt(q.numerator // q.denominator)
    while (t + 1) * (t + 1) <= q:
        t += 1
    return t


def ceil_sqrt(q: Fraction) -> int:
    """Smallest integer t >= 0 with t*t >= q (q >= 0)."""
    t = floor_sqrt(q)
    return t if t * t >= q else t + 1


def is_rational_square(q: Fraction) -> bool:
    if q < 0:
        return False
    n, d = q.numerator, q.denominator
    return isqrt(n) ** 2 == n and isqrt(d) ** 2 == d


@dataclass(frozen=True)
class QuadElem:
    """The element ``x + y*sqrt(D)`` of K = Q(sqrt D)."""

    x: Fraction
    y: Fraction
    D: Fraction

    def __post_init__(self):
        object.__setattr__(self, "x", frac(self.x))
        object.__setattr__(self, "y", frac(self.y))
        object.__setattr__(self, "D", frac(self.D))
        if self.D <= 0:
            raise ValueError(f"D must be positive, got {self.D}")

    @classmethod
    def rational(cls, q, D) -> QuadElem:
        return cls(frac(q), Fraction(0), D)

    def _same_field(self, other: QuadElem):
        if other.D != self.D:
            raise ValueError(f"elements of different fields: D={self.D} vs D={other.D}")

    def _lift(self, other):
        if isinstance(other, QuadElem):
            self._same_field(other)
            return other
        if isinstance(other, (int, Fraction)):
            return QuadElem(Fraction(other), Fraction(0), self.D)
        return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return QuadElem(self.x + other.x, self.y + other.y, self.D)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return QuadElem(self.x - other.x, self.y - other.y, self.D)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other - self

    def __neg__(self):
        return QuadElem(-self.x, -self.y, self.D)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return QuadElem(self.x * other, self.y * other, self.D)
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return QuadElem(
            self.x * other.x + self.D * self.y * other.y,
            self.x * other.y + self.y * other.x,
            self.D,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return QuadElem(self.x / other, self.y / other, self.D)
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = QuadElem(Fraction(1), Fraction(0), self.D)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conj(self) -> QuadElem:
        return QuadElem(self.x, -self.y, self.D)

    def norm(self) -> Fraction:
        return self.x * self.x - self.D * self.y * self.y

    def trace(self) -> Fraction:
        return 2 * self.x

    def inverse(self) -> QuadElem:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError(f"{self} has norm zero and is not invertible")
        return QuadElem(self.x / n, -self.y / n, self.D)

    def is_rational(self) -> bool:
        return self.y == 0

    def embedding_signs(self) -> tuple[int, int]:
        """Signs of ``x + y*sqrt(D)`` and ``x - y*sqrt(D)``, exactly."""
        return _sign_of(self.x, self.y, self.D), _sign_of(self.x, -self.y, self.D)

    def is_totally_positive(self) -> bool:
        return self.embedding_signs() == (1, 1)

    def is_totally_negative(self) -> bool:
        return self.embedding_signs() == (-1, -1)

    def total_sign(self) -> int:
        """+1 / -1 on totally positive / negative elements, 0 elsewhere."""
        s1, s2 = self.embedding_signs()
        return s1 if s1 == s2 else 0

    def to_json(self, with_disc: bool = True) -> dict:
        out = {"x": str(self.x), "y": str(self.y)}
        if with_disc:
            out["D"] = str(self.D)
        return out

    @classmethod
    def from_json(cls, obj: dict, D=None) -> QuadElem:
        disc = obj.get("D", D)
        if disc is None:
            raise ValueError("element is missing its discriminant D")
        return cls(frac(obj["x"]), frac(obj["y"]), frac(disc))

    def __str__(self):
        if self.y == 0:
            return str(self.x)
        ys = "" if abs(self.y) == 1 else f"{abs(self.y)}*"
        op = "+" if self.y > 0 else "-"
        return f"{self.x} {op} {ys}sqrt({self.D})"


def _sign_of(x: Fraction, y: Fraction, D: Fraction) -> int:
    # sign of x + y*sqrt(D)
    sx, sy = sign(x), sign(y)
    if sy == 0:
        return sx
    if sx == 0 or sx == sy:
        return sy
    diff = x * x - D * y * y
    if diff == 0:
        return 0
    return sx if diff > 0 else sy


class DegenerateSector(ThetaError, ValueError):
    pass


@dataclass(frozen=True)
class ConeSector:
    """The Q-cone spanned by two rays, with chosen boundary closures.

    A point is ``alpha*ray1 + beta*ray2`` with ``alpha, beta >= 0``.  The ray
    through ``ray1`` (``beta == 0``) belongs to the sector iff
    ``edge1_closed``; likewise for ``ray2``.  The apex 0 never belongs.
    """

    ray1: QuadElem
    ray2: QuadElem
    edge1_closed: bool
    edge2_closed: bool

    def __post_init__(self):
        self.ray1._same_field(self.ray2)
        det = self.ray1.x * self.ray2.y - self.ray2.x * self.ray1.y
        if det == 0:
            raise DegenerateSector("sector rays are proportional over Q")
        object.__setattr__(self, "_det", det)

    def coefficients(self, z: QuadElem) -> tuple[Fraction, Fraction]:
        """Solve ``z = alpha*ray1 + beta*ray2`` over Q."""
        r1, r2, det = self.ray1, self.ray2, self._det
        alpha = (z.x * r2.y - r2.x * z.y) / det
        beta = (r1.x * z.y - z.x * r1.y) / det
        return alpha, beta

    def contains_coefficients(self, alpha, beta) -> bool:
        if alpha < 0 or beta < 0:
            return False
        if alpha == 0 and beta == 0:
            return False
        if beta == 0:
            return self.edge1_closed
        if alpha == 0:
            return self.edge2_closed
        return True

    def contains(self, z: QuadElem) -> bool:
        return self.contains_coefficients(*self.coefficients(z))

    def negated(self) -> ConeSector:
        return ConeSector(-self.ray1, -self.ray2, self.edge1_closed, self.edge2_closed)


def sector_contains(S: ConeSector, z: QuadElem) -> bool:
    return S.contains(z)
