"""Doubly periodic rational-valued functions on Z^2 and their admissibility."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import gcd

from .arith import frac
from .errors import SupportNotPreserved
from .quadform import QuadForm, mat_apply


class PeriodicFunction:
    """A function on Z^2 with ``f(m+N, n) = f(m, n+N) = f(m, n)``.

    Only nonzero values are stored, keyed by residues ``(m % N, n % N)``.
    Evaluating at a point with non-integral coordinates gives 0 (the function
    is extended to Q^2 by zero).
    """

    def __init__(self, period: int, values=None):
        if not isinstance(period, int) or period < 1:
            raise ValueError(f"period must be a positive integer, got {period!r}")
        self.period = period
        table = {}
        for (m, n), v in (values or {}).items():
            v = frac(v)
            if v != 0:
                key = (m % period, n % period)
                table[key] = table.get(key, Fraction(0)) + v
        self._values = {k: v for k, v in table.items() if v != 0}

    @classmethod
    def from_callable(cls, period: int, fn) -> PeriodicFunction:
        return cls(period, {(m, n): fn(m, n) for m in range(period) for n in range(period)})

    @classmethod
    def zero(cls, period: int = 1) -> PeriodicFunction:
        return cls(period)

    def __call__(self, m, n) -> Fraction:
        if isinstance(m, Fraction):
            if m.denominator != 1:
                return Fraction(0)
            m = int(m)
        if isinstance(n, Fraction):
            if n.denominator != 1:
                return Fraction(0)
            n = int(n)
        return self._values.get((m % self.period, n % self.period), Fraction(0))

    def items(self):
        return sorted(self._values.items())

    @property
    def support(self) -> list[tuple[int, int]]:
        return sorted(self._values)

    @cached_property
    def rows(self) -> dict[int, list[tuple[int, Fraction]]]:
        """Nonzero entries grouped by the residue of n."""
        out: dict[int, list] = {}
        for (m, n), v in sorted(self._values.items()):
            out.setdefault(n, []).append((m, v))
        return out

    def is_zero(self) -> bool:
        return not self._values

    def values_set(self) -> set[Fraction]:
        return set(self._values.values())

    def is_sign_valued(self) -> bool:
        return all(v in (1, -1) for v in self._values.values())

    def with_period(self, period: int) -> PeriodicFunction:
        """The same function declared with a multiple of the current period."""
        if period % self.period:
            raise ValueError(f"{period} is not a multiple of the period {self.period}")
        vals = {}
        for (m, n), v in self._values.items():
            for i in range(0, period, self.period):
                for j in range(0, period, self.period):
                    vals[(m + i, n + j)] = v
        return PeriodicFunction(period, vals)

    def reduced_to(self, period: int) -> PeriodicFunction | None:
        """The function declared with a smaller period, or None if it is not periodic there."""
        if self.period % period:
            return None
        vals = {}
        for (m, n), v in self._values.items():
            key = (m % period, n % period)
            if vals.setdefault(key, v) != v:
                return None
        candidate = PeriodicFunction(period, vals)
        if len(candidate._values) * (self.period // period) ** 2 != len(self._values):
            return None
        return candidate

    def __eq__(self, other):
        if not isinstance(other, PeriodicFunction):
            return NotImplemented
        if self.period == other.period:
            return self._values == other._values
        L = self.period * other.period // gcd(self.period, other.period)
        return self.with_period(L)._values == other.with_period(L)._values

    def _common(self, other):
        L = self.period * other.period // gcd(self.period, other.period)
        return self.with_period(L) if L != self.period else self, \
            other.with_period(L) if L != other.period else other

    def __add__(self, other: PeriodicFunction) -> PeriodicFunction:
        x, y = self._common(other)
        vals = dict(x._values)
        for k, v in y._values.items():
            vals[k] = vals.get(k, Fraction(0)) + v
        return PeriodicFunction(x.period, vals)

    def __neg__(self) -> PeriodicFunction:
        return PeriodicFunction(self.period, {k: -v for k, v in self._values.items()})

    def __sub__(self, other):
        return self + (-other)

    def scaled(self, k) -> PeriodicFunction:
        k = frac(k)
        return PeriodicFunction(self.period, {key: k * v for key, v in self._values.items()})

    def __mul__(self, k):
        if isinstance(k, (int, Fraction)):
            return self.scaled(k)
        return NotImplemented

    __rmul__ = __mul__

    def negate_arg(self) -> PeriodicFunction:
        """``f o [-1]``: (m, n) -> f(-m, -n)."""
        return PeriodicFunction(self.period, {(-m, -n): v for (m, n), v in self._values.items()})

    def tau(self) -> PeriodicFunction:
        """``f o tau``: (m, n) -> f(n, m)."""
        return PeriodicFunction(self.period, {(n, m): v for (m, n), v in self._values.items()})

    def pushforward(self, t1: int, t2: int) -> PeriodicFunction:
        """``(m, n) -> f(m/t1, n/t2)``, zero where either quotient is not an integer.

        If f is admissible for ``Q.rescale(t1, t2)`` the result is admissible for Q
        and has the same theta series.
        """
        if t1 < 1 or t2 < 1:
            raise ValueError("pushforward factors must be positive integers")
        N = self.period * (t1 * t2 // gcd(t1, t2))
        vals = {}
        for (m, n), v in self._values.items():
            # lifts of m modulo N / t1 and of n modulo N / t2
            for i in range(N // (t1 * self.period)):
                for j in range(N // (t2 * self.period)):
                    vals[((m + i * self.period) * t1, (n + j * self.period) * t2)] = v
        return PeriodicFunction(N, vals)

    def to_json(self) -> dict:
        return {
            "period": self.period,
            "values": [{"m": m, "n": n, "v": str(v)} for (m, n), v in self.items()],
        }

    @classmethod
    def from_json(cls, obj: dict) -> PeriodicFunction:
        vals = {}
        for entry in obj.get("values", []):
            key = (int(entry["m"]), int(entry["n"]))
            vals[key] = vals.get(key, Fraction(0)) + frac(entry["v"])
        return cls(int(obj["period"]), vals)

    def __repr__(self):
        return f"PeriodicFunction(period={self.period}, nonzero={len(self._values)})"


def pf_tau_t(Q: QuadForm, f: PeriodicFunction, t) -> PeriodicFunction:
    """``f o tau_t`` with ``tau_t(m, n) = (t n, m / t)`` where ``c/a = t^2``."""
    t = frac(t)
    if t <= 0 or t * t != Q.c / Q.a:
        raise ValueError(f"tau_t needs c/a = t^2 with t > 0; c/a = {Q.c / Q.a}, t = {t}")
    u, v = t.numerator, t.denominator
    N = f.period
    # tau_t(x) must be integral for every lift x + N*Z^2 of every support residue
    bad = [x for x in f.support if N % u or N % v or x[0] % u or x[1] % v]
    if bad:
        raise SupportNotPreserved(f"tau_{t} does not map the support into Z^2 (e.g. at {bad[0]})")
    return PeriodicFunction.from_callable(N * u * v, lambda x, y: f(t * y, x / t))


@dataclass
class AdmissibilityReport:
    ok: bool
    violations: list

    @property
    def witness(self):
        return self.violations[0] if self.violations else None

    def __bool__(self):
        return self.ok


def check_admissible(Q: QuadForm, f: PeriodicFunction, limit: int | None = None) -> AdmissibilityReport:
    """Test ``f(Ax) = f(Bx) = -f(x)`` for every x in (Z/NZ)^2.

    A violation can only occur at a support point or at the A- or B-image of
    one, so only those residues are visited.  With non-integral reflections
    the test runs in Q^2 over the support residues and their translates by
    one period.
    """
    N = f.period
    A, B = Q.A, Q.B
    if Q.integral:
        cands = set()
        for x in f.support:
            cands.add(x)
            for M in (A, B):
                y = mat_apply(M, x)
                cands.add((y[0] % N, y[1] % N))
    else:
        cands = {(m + i * N, n + j * N) for (m, n) in f.support for i in (-1, 0, 1) for j in (-1, 0, 1)}
    violations = []
    for x in sorted(cands):
        fx = f(*x)
        if f(*mat_apply(A, x)) != -fx or f(*mat_apply(B, x)) != -fx:
            violations.append(x)
            if limit and len(violations) >= limit:
                break
    return AdmissibilityReport(not violations, violations)


def check_line_sums(Q: QuadForm, f: PeriodicFunction) -> bool:
    """Test that every horizontal and vertical line sum of ``f q^Q`` vanishes.

    On the line ``n = n0`` the form takes each value at most twice, so the
    line sum vanishes iff, for every value, the f-values at the points of the
    line carrying it cancel.  The points are grouped by Q-value over a window
    wide enough to contain each point of one period together with its
    partner; by periodicity the lines ``n0 in [0, N)`` suffice.
    """
    if not Q.integral:
        raise ValueError("line-sum test needs integral reflections")
    N = f.period
    for horizontal in (True, False):
        width = abs(Q.p if horizontal else Q.r) * N + 2 * N
        for k0 in range(N):
            groups: dict[Fraction, Fraction] = {}
            for t in range(-width, width + 1):
                pt = (t, k0) if horizontal else (k0, t)
                val = f(*pt)
                if val:
                    key = Q(*pt)
                    groups[key] = groups.get(key, Fraction(0)) + val
            # only groups containing a point of the base window are complete
            for t in range(N):
                pt = (t, k0) if horizontal else (k0, t)
                key = Q(*pt)
                if groups.get(key, 0) != 0:
                    return False
    return True
