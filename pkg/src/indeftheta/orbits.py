"""Orbits of the dihedral group G_N = <A, B> acting on (Z/NZ)^2.

The generators are the reflections ``A = [[-1, p], [0, 1]]`` and
``B = [[1, 0], [r, -1]]`` reduced mod N.  An orbit is admissible when no
point of it is fixed by A or by B; on such an orbit the function
``f_O(g x0) = chi(g)`` (chi(A) = chi(B) = -1) is well defined, and these
functions span the admissible functions of period N.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .errors import NotAdmissible, NotOddPrime, VerificationFailed
from .periodic import PeriodicFunction
from .quadform import QuadForm


def _apply(M, v, N):
    return ((M[0][0] * v[0] + M[0][1] * v[1]) % N, (M[1][0] * v[0] + M[1][1] * v[1]) % N)


def _matmul(X, Y, N):
    return (
        ((X[0][0] * Y[0][0] + X[0][1] * Y[1][0]) % N, (X[0][0] * Y[0][1] + X[0][1] * Y[1][1]) % N),
        ((X[1][0] * Y[0][0] + X[1][1] * Y[1][0]) % N, (X[1][0] * Y[0][1] + X[1][1] * Y[1][1]) % N),
    )


def reflections(p: int, r: int, N: int):
    A = ((-1 % N, p % N), (0, 1 % N))
    B = ((1 % N, 0), (r % N, -1 % N))
    return A, B


@dataclass(frozen=True)
class GroupContext:
    N: int
    A: tuple
    B: tuple
    ab_order: int
    contains_minus_id: bool


@dataclass(frozen=True, eq=False)
class OrbitRecord:
    N: int
    points: tuple
    representative: tuple
    admissible: bool
    signs: dict | None = field(repr=False)
    symmetric: bool
    parity: str | None
    partner: tuple | None

    def __contains__(self, point):
        return (point[0] % self.N, point[1] % self.N) in self.points

    @property
    def size(self) -> int:
        return len(self.points)

    def sign_function(self, anchor=None) -> PeriodicFunction:
        return orbit_sign_function(self, anchor)

    def to_json(self) -> dict:
        out = {
            "representative": list(self.representative),
            "size": self.size,
            "admissible": self.admissible,
            "symmetric": self.symmetric,
            "parity": self.parity,
            "partner": list(self.partner) if self.partner else None,
            "points": [list(x) for x in self.points],
        }
        if self.signs is not None:
            out["signs"] = [self.signs[x] for x in self.points]
        return out


def ab_order(p: int, r: int, N: int) -> int:
    """Multiplicative order of AB in GL_2(Z/NZ)."""
    A, B = reflections(p, r, N)
    AB = _matmul(A, B, N)
    ident = ((1 % N, 0), (0, 1 % N))
    g, k = AB, 1
    while g != ident:
        g = _matmul(g, AB, N)
        k += 1
    return k


def minus_id_in_group(p: int, r: int, N: int) -> bool:
    """Whether -id lies in <A, B> mod N.

    The determinant-one part of the dihedral group is generated by AB, so it
    is enough to walk the powers of AB.  For N <= 2, -id is the identity.
    """
    if N <= 2:
        return True
    A, B = reflections(p, r, N)
    AB = _matmul(A, B, N)
    ident = ((1, 0), (0, 1))
    minus = ((N - 1, 0), (0, N - 1))
    g = AB
    while g != ident:
        if g == minus:
            return True
        g = _matmul(g, AB, N)
    return False


def contains_minus_id(Q: QuadForm, N: int) -> bool:
    return minus_id_in_group(Q.p, Q.r, N)


def orbits_from_parameters(p: int, r: int, N: int) -> tuple[list[OrbitRecord], GroupContext]:
    if N < 1:
        raise ValueError("N must be positive")
    A, B = reflections(p, r, N)
    ctx = GroupContext(N, A, B, ab_order(p, r, N), minus_id_in_group(p, r, N))

    seen: dict[tuple, int] = {}
    raw = []
    for m in range(N):
        for n in range(N):
            start = (m, n)
            if start in seen:
                continue
            idx = len(raw)
            signs = {start: 1}
            consistent = True
            fixed_point_free = True
            queue = deque([start])
            seen[start] = idx
            while queue:
                x = queue.popleft()
                for M in (A, B):
                    y = _apply(M, x, N)
                    if y == x:
                        fixed_point_free = False
                    want = -signs[x]
                    if y in signs:
                        if signs[y] != want:
                            consistent = False
                    else:
                        signs[y] = want
                        seen[y] = idx
                        queue.append(y)
            if consistent != fixed_point_free:
                raise VerificationFailed(
                    f"orbit of {start} mod {N}: sign propagation and fixed-point test disagree")
            raw.append((start, signs if consistent else None, sorted(signs)))

    records = []
    for start, signs, pts in raw:
        neg = sorted(((-x) % N, (-y) % N) for x, y in pts)
        symmetric = neg == pts
        parity = None
        if symmetric and signs is not None:
            ratios = {signs[((-x) % N, (-y) % N)] * signs[(x, y)] for x, y in pts}
            if len(ratios) != 1:
                raise VerificationFailed(f"orbit of {start} mod {N} has mixed parity")
            parity = "even" if ratios == {1} else "odd"
        partner = None if symmetric else neg[0]
        records.append(OrbitRecord(N, tuple(pts), start, signs is not None, signs,
                                   symmetric, parity, partner))
    return records, ctx


def gn_orbits(Q: QuadForm, N: int) -> tuple[list[OrbitRecord], GroupContext]:
    if not Q.integral:
        raise ValueError("orbits need integral reflection parameters p, r")
    return orbits_from_parameters(Q.p, Q.r, N)


def orbit_of(orbits: list[OrbitRecord], point) -> OrbitRecord:
    for O in orbits:
        if point in O:
            return O
    raise KeyError(point)


def orbit_sign_function(O: OrbitRecord, anchor=None) -> PeriodicFunction:
    """The +-1 function f_O, normalized to +1 at ``anchor`` (default: the representative)."""
    if not O.admissible:
        raise NotAdmissible(f"orbit of {O.representative} mod {O.N} is not admissible")
    s = 1
    if anchor is not None:
        anchor = (anchor[0] % O.N, anchor[1] % O.N)
        if anchor not in O.signs:
            raise KeyError(f"{anchor} is not in the orbit of {O.representative}")
        s = O.signs[anchor]
    return PeriodicFunction(O.N, {x: s * v for x, v in O.signs.items()})


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True


def odd_part(n: int) -> int:
    while n % 2 == 0:
        n //= 2
    return n


@dataclass(frozen=True)
class ResidueReport:
    N: int
    positive: frozenset
    complement: frozenset
    expected_count: int


def prop_opp_residues(N: int) -> ResidueReport:
    """Residues rp mod N (N an odd prime) for which -id lies in G_N.

    The answer depends only on rp mod N, so each residue is tested with
    p = 1, r = rho.  The size of the positive set is checked against
    ``N - (n1 + n2)/2`` with n1, n2 the odd parts of N - 1 and N + 1.
    """
    if N % 2 == 0 or not _is_prime(N):
        raise NotOddPrime(f"{N} is not an odd prime")
    positive = frozenset(rho for rho in range(N) if minus_id_in_group(1, rho, N))
    expected = N - (odd_part(N - 1) + odd_part(N + 1)) // 2
    if len(positive) != expected:
        raise VerificationFailed(
            f"N={N}: {len(positive)} residues with -id in G_N, formula gives {expected}")
    return ResidueReport(N, positive, frozenset(range(N)) - positive, expected)


def prop_symodd_check(p: int, r: int, N: int) -> bool:
    """True iff -id is in G_N or every symmetric admissible orbit is odd."""
    if N % 2 == 0 or not _is_prime(N):
        raise NotOddPrime(f"{N} is not an odd prime")
    orbits, ctx = orbits_from_parameters(p, r, N)
    if ctx.contains_minus_id:
        return True
    return all(O.parity == "odd" for O in orbits if O.admissible and O.symmetric)
