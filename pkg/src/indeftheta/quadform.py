"""The indefinite form Q(m, n) = a m^2 + 2 b m n + c n^2 and its reflections."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .arith import QuadElem, frac
from .errors import NonIntegralReflection, NotIndefinite, NotPositiveCoefficients

Matrix = tuple[tuple, tuple]


def mat_apply(M: Matrix, v):
    return (M[0][0] * v[0] + M[0][1] * v[1], M[1][0] * v[0] + M[1][1] * v[1])


def mat_mul(X: Matrix, Y: Matrix) -> Matrix:
    return (
        (X[0][0] * Y[0][0] + X[0][1] * Y[1][0], X[0][0] * Y[0][1] + X[0][1] * Y[1][1]),
        (X[1][0] * Y[0][0] + X[1][1] * Y[1][0], X[1][0] * Y[0][1] + X[1][1] * Y[1][1]),
    )


def _as_int(q: Fraction):
    return int(q) if q.denominator == 1 else q


@dataclass(frozen=True)
class QuadForm:
    """An indefinite binary form positive on the cone ``m*n >= 0``.

    With ``integral=True`` (the default) the reflection parameters
    ``p = -2b/a`` and ``r = -2b/c`` must be integers, so that the operators
    A and B act on Z^2 and on (Z/NZ)^2.  Forms produced by the reverse Hecke
    construction are built with ``integral=False``.
    """

    a: Fraction
    b: Fraction
    c: Fraction
    integral: bool = field(default=True, compare=False)

    def __post_init__(self):
        a, b, c = frac(self.a), frac(self.b), frac(self.c)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        if not (a > 0 and b > 0 and c > 0):
            raise NotPositiveCoefficients(
                f"a, b, c must all be positive (form positive on mn >= 0), got ({a}, {b}, {c})")
        if b * b <= a * c:
            raise NotIndefinite(f"b^2 > ac fails: b^2 = {b * b}, ac = {a * c}")
        if self.integral:
            for name, val in (("p = -2b/a", self.p), ("r = -2b/c", self.r)):
                if isinstance(val, Fraction):
                    raise NonIntegralReflection(f"{name} = {val} is not an integer")

    @property
    def p(self):
        return _as_int(-2 * self.b / self.a)

    @property
    def r(self):
        return _as_int(-2 * self.b / self.c)

    @property
    def D(self) -> Fraction:
        return self.b * self.b - self.a * self.c

    @property
    def A(self) -> Matrix:
        return ((-1, self.p), (0, 1))

    @property
    def B(self) -> Matrix:
        return ((1, 0), (self.r, -1))

    @property
    def gram(self) -> Matrix:
        return ((self.a, self.b), (self.b, self.c))

    def __call__(self, m, n) -> Fraction:
        return self.a * m * m + 2 * self.b * m * n + self.c * n * n

    def apply_A(self, v):
        return mat_apply(self.A, v)

    def apply_B(self, v):
        return mat_apply(self.B, v)

    def embed(self, m, n) -> QuadElem:
        """The point (m, n) as ``(b m + c n) + m sqrt(D)``; its norm is ``c Q(m, n)``."""
        return QuadElem(self.b * m + self.c * n, m, self.D)

    def unit(self) -> QuadElem:
        """``(b + sqrt D)/(b - sqrt D)``, the element acting on K like AB."""
        D = self.D
        return QuadElem(self.b, 1, D) / QuadElem(self.b, -1, D)

    def rescale(self, t1, t2) -> QuadForm:
        """The form ``Q(t1 m, t2 n)``."""
        t1, t2 = frac(t1), frac(t2)
        if t1 <= 0 or t2 <= 0:
            raise ValueError("rescaling factors must be positive")
        return QuadForm(self.a * t1 * t1, self.b * t1 * t2, self.c * t2 * t2, self.integral)

    def swapped(self) -> QuadForm:
        """``Q o tau``: the form with a and c exchanged."""
        return QuadForm(self.c, self.b, self.a, self.integral)

    def integer_coefficients(self) -> tuple[int, int, int, int]:
        """``(A, B2, C, den)`` with ``Q(m, n) = (A m^2 + B2 m n + C n^2) / den``."""
        den = 1
        for q in (self.a, 2 * self.b, self.c):
            den = den * q.denominator // gcd(den, q.denominator)
        return (int(self.a * den), int(2 * self.b * den), int(self.c * den), den)

    def to_json(self) -> dict:
        return {"a": str(self.a), "b": str(self.b), "c": str(self.c)}

    @classmethod
    def from_json(cls, obj: dict, integral: bool = True) -> QuadForm:
        return cls(frac(obj["a"]), frac(obj["b"]), frac(obj["c"]), integral)

    def __str__(self):
        return f"Q(m,n) = {self.a} m^2 + 2*({self.b}) m n + {self.c} n^2"


def qf_new(a, b, c) -> QuadForm:
    return QuadForm(frac(a), frac(b), frac(c))
