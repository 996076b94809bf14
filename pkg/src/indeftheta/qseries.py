"""Sparse truncated q-expansions with exact rational coefficients."""

from __future__ import annotations

import re
from fractions import Fraction

from .arith import frac
from .errors import PrecisionMismatch

DEFAULT_PRECISION = 100


class QSeries:
    """``sum c_e q^e + O(q^M)``; only nonzero coefficients with ``0 <= e < M`` are kept."""

    __slots__ = ("precision", "_terms")

    def __init__(self, precision: int, terms=None):
        if not isinstance(precision, int) or precision < 1:
            raise ValueError(f"precision must be a positive integer, got {precision!r}")
        self.precision = precision
        clean = {}
        for e, c in (terms or {}).items():
            if not isinstance(e, int) or e < 0:
                raise ValueError(f"exponents must be nonnegative integers, got {e!r}")
            c = frac(c)
            if c != 0 and e < precision:
                clean[e] = c
        self._terms = dict(sorted(clean.items()))

    @classmethod
    def zero(cls, precision: int) -> QSeries:
        return cls(precision)

    def terms(self) -> list[tuple[int, Fraction]]:
        return list(self._terms.items())

    def coeff(self, e: int) -> Fraction:
        if e >= self.precision:
            raise ValueError(f"coefficient of q^{e} is unknown below O(q^{self.precision})")
        return self._terms.get(e, Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def leading(self) -> tuple[int, Fraction] | None:
        for e, c in self._terms.items():
            return e, c
        return None

    def truncate(self, precision: int) -> QSeries:
        return QSeries(min(precision, self.precision), self._terms)

    def __add__(self, other: QSeries) -> QSeries:
        if not isinstance(other, QSeries):
            return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return QSeries(min(self.precision, other.precision), out)

    def __neg__(self) -> QSeries:
        return QSeries(self.precision, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other: QSeries) -> QSeries:
        return self + (-other)

    def scale(self, k) -> QSeries:
        k = frac(k)
        return QSeries(self.precision, {e: k * c for e, c in self._terms.items()})

    def __mul__(self, k):
        if isinstance(k, (int, Fraction)):
            return self.scale(k)
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.precision == other.precision and self._terms == other._terms

    def __hash__(self):
        return hash((self.precision, tuple(self._terms.items())))

    def equals(self, other: QSeries) -> bool:
        """Coefficient equality below the common precision; precisions must agree."""
        if self.precision != other.precision:
            raise PrecisionMismatch(f"O(q^{self.precision}) vs O(q^{other.precision})")
        return self._terms == other._terms

    def first_difference(self, other: QSeries) -> int | None:
        """Smallest exponent below the common precision where the two differ."""
        M = min(self.precision, other.precision)
        for e in sorted(set(self._terms) | set(other._terms)):
            if e >= M:
                break
            if self._terms.get(e, 0) != other._terms.get(e, 0):
                return e
        return None

    def to_text(self) -> str:
        parts = []
        for e, c in self._terms.items():
            mag = abs(c)
            body = f"{mag}*q^{e}" if e else f"{mag}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        parts.append(("+ " if parts else "") + f"O(q^{self.precision})")
        return " ".join(parts)

    __str__ = to_text

    def __repr__(self):
        return f"QSeries({self.to_text()!r})"

    def to_json(self) -> dict:
        return {
            "precision": self.precision,
            "terms": [{"exp": e, "coeff": str(c)} for e, c in self._terms.items()],
        }

    @classmethod
    def from_json(cls, obj: dict) -> QSeries:
        terms = {}
        for t in obj.get("terms", []):
            e = int(t["exp"])
            terms[e] = terms.get(e, Fraction(0)) + frac(t["coeff"])
        return cls(int(obj["precision"]), terms)

    _TERM = re.compile(r"([+-]?)\s*(\d+(?:/\d+)?)(?:\*q\^(\d+))?$")

    @classmethod
    def from_text(cls, text: str) -> QSeries:
        body, sep, tail = text.rpartition("O(q^")
        if not sep or not tail.endswith(")"):
            raise ValueError(f"missing O(q^M) term in {text!r}")
        precision = int(tail[:-1])
        body = body.strip()
        if body.endswith("+"):
            body = body[:-1].strip()
        terms = {}
        for chunk in re.findall(r"[+-]?\s*[^+-]+", body):
            m = cls._TERM.match(chunk.strip())
            if not m:
                raise ValueError(f"cannot parse term {chunk!r}")
            s, c, e = m.groups()
            val = Fraction(c) * (-1 if s == "-" else 1)
            e = int(e) if e else 0
            terms[e] = terms.get(e, Fraction(0)) + val
        return cls(precision, terms)


def qs_eq(s1: QSeries, s2: QSeries) -> bool:
    return s1.equals(s2)


def qs_leading(s: QSeries):
    return s.leading()
