"""Canned instances for N = 3, 5, 7 and the v_{s1,s2} construction, with their claims."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .orbits import ab_order, gn_orbits, orbit_of
from .periodic import PeriodicFunction
from .qseries import QSeries
from .quadform import QuadForm, mat_apply, qf_new
from .relations import find_linear_relations
from .theta import theta_quadrant


@dataclass(frozen=True)
class Claim:
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        return f"{tag}: {self.name}" + (f" ({self.detail})" if self.detail else "")


def chi3(k: int) -> int:
    return (0, 1, -1)[k % 3]


def _low_terms(s: QSeries, upto: int) -> dict:
    """Coefficients of s strictly below q^upto."""
    return {e: c for e, c in s.terms() if e < upto}


def _expect_low(name, s: QSeries, expected: dict, upto: int) -> Claim:
    got = _low_terms(s, upto)
    want = {e: Fraction(c) for e, c in expected.items() if c}
    return Claim(name, got == want, f"got {QSeries(upto, got)}")


def _admissible(Q: QuadForm, N: int):
    orbits, ctx = gn_orbits(Q, N)
    return [O for O in orbits if O.admissible], orbits, ctx


def _orbit_series(Q, orbits, point, M):
    O = orbit_of(orbits, point)
    return theta_quadrant(Q, O.sign_function(anchor=point), M)


def example_n3(M: int) -> list[Claim]:
    claims = []
    Q = qf_new(1, "5/2", 1)
    adm, orbits, _ = _admissible(Q, 3)
    claims.append(Claim("(1,5/2,1) mod 3: exactly one admissible orbit, the orbit of (1,0)",
                        len(adm) == 1 and (1, 0) in adm[0], f"{len(adm)} admissible"))
    fO = adm[0].sign_function(anchor=(1, 0)) if adm else PeriodicFunction.zero(3)
    chi = PeriodicFunction.from_callable(3, lambda m, n: chi3(m + n))
    claims.append(Claim("f_O = chi_3(m+n) up to sign", fO == chi or fO == -chi))
    s = theta_quadrant(Q, chi, max(M, 9))
    claims.append(_expect_low("Theta = 2q - 2q^4 - 2q^7 + O(q^9)", s, {1: 2, 4: -2, 7: -2}, 9))
    r = Q.r
    claims.append(_expect_low("Theta = q^a + chi_3(r) q^c mod q^(a+1) with a = c = 1",
                              s, {1: 1 + chi3(r)}, 2))

    g = PeriodicFunction.from_callable(3, lambda m, n: chi3(m - n))
    Q2 = qf_new(1, "7/2", 7)
    s2 = theta_quadrant(Q2, g, max(M, 8))
    claims.append(Claim("(1,7/2,7), chi_3(m-n): leading term q^1",
                        s2.leading() == (1, 1), f"leading {s2.leading()}"))
    claims.append(Claim("(1,7/2,7): coefficient of q^7 is chi_3(r) = -1",
                        s2.coeff(7) == chi3(Q2.r) == -1, f"got {s2.coeff(7)}"))
    Q3 = qf_new(1, "7/2", 1)
    s3 = theta_quadrant(Q3, g, M)
    claims.append(Claim(f"(1,7/2,1), chi_3(m-n): Theta = 0 + O(q^{M})", s3.is_zero(), str(s3)))
    return claims


def _two_orbits(Q: QuadForm, M: int):
    adm, orbits, _ = _admissible(Q, 5)
    ok = len(adm) == 2 and any((1, 0) in O for O in adm) and any((2, 0) in O for O in adm)
    if not ok:
        return adm, None, None
    return adm, _orbit_series(Q, orbits, (1, 0), M), _orbit_series(Q, orbits, (2, 0), M)


def example_n5a(M: int) -> list[Claim]:
    claims = []
    M = max(M, 40)
    # (i) p = r = 1 mod 5
    Q = qf_new(1, 2, 1)
    adm, s1, s2 = _two_orbits(Q, M)
    claims.append(Claim("(i) (1,2,1): two admissible orbits, of (1,0) and (2,0)", s1 is not None))
    if s1 is not None:
        claims.append(_expect_low("(i) Theta_f1 = q^a + q^c mod q^(a+1)", s1, {1: 2}, 2))
        claims.append(_expect_low("(i) Theta_f2 = q^4a + q^4c mod q^(4a+1)", s2, {4: 2}, 5))
    # (ii) p = r = -1 mod 5, a < c and a = c
    Q = qf_new(1, 3, 6)
    adm, s1, s2 = _two_orbits(Q, M)
    claims.append(Claim("(ii) (1,3,6): two admissible orbits, of (1,0) and (2,0)", s1 is not None))
    if s1 is not None:
        claims.append(_expect_low("(ii) Theta_f1 = q^a - q^c mod q^(a+1)", s1, {1: 1}, 2))
        claims.append(_expect_low("(ii) Theta_f2 = q^4a - q^4c mod q^(4a+1)", s2, {4: 1}, 5))
        rep = find_linear_relations(Q, 5, M)
        claims.append(Claim("(ii) a != c: the two series are linearly independent",
                            rep.kernel_dimension == 0, f"kernel dimension {rep.kernel_dimension}"))
    Q = qf_new(1, 3, 1)
    adm, s1, s2 = _two_orbits(Q, M)
    claims.append(Claim("(ii) a = c (1,3,1): Theta_f1 = Theta_f2 = 0",
                        s1 is not None and s1.is_zero() and s2.is_zero()))
    # (iii) p = 2, r = -2 mod 5
    Q = qf_new(1, 4, 4)
    adm, s1, s2 = _two_orbits(Q, M)
    claims.append(Claim("(iii) (1,4,4): two admissible orbits, of (1,0) and (2,0)", s1 is not None))
    if s1 is not None:
        claims.append(_expect_low("(iii) Theta_f1 = q^a - q^4c mod q^(min(a,4c)+1)", s1, {1: 1}, 2))
        claims.append(Claim("(iii) c = 4a: Theta_f2 = q^9a mod q^(9a+1)",
                            _low_terms(s2, 10) == {9: 1},
                            f"got {s2.truncate(10)}"))
    Q = qf_new(4, 6, 1)
    adm, s1, s2 = _two_orbits(Q, M)
    claims.append(Claim("(iii) (4,6,1): two admissible orbits, of (1,0) and (2,0)", s1 is not None))
    if s1 is not None:
        claims.append(_expect_low("(iii) Theta_f2 = q^c - q^4a mod q^(min(4a,c)+1)", s2, {1: 1}, 2))
        claims.append(Claim("(iii) a = 4c: Theta_f1 = q^9c mod q^(9c+1)",
                            _low_terms(s1, 10) in ({9: 1}, {9: -1}),
                            f"got {s1.truncate(10)}"))
    return claims


def example_n5b(M: int) -> list[Claim]:
    claims = []
    Q = qf_new(1, "3/2", 1)
    order = ab_order(Q.p, Q.r, 5)
    claims.append(Claim("(1,3/2,1): AB has order 5 mod 5", order == 5, f"order {order}"))
    adm, s1, s2 = _two_orbits(Q, M)
    claims.append(Claim("(1,3/2,1): exactly two admissible orbits, of (1,0) and (2,0)",
                        s1 is not None, f"{len(adm)} admissible"))
    Q = qf_new(9, "9/2", 1)
    adm, s1, s2 = _two_orbits(Q, M)
    claims.append(Claim("(9,9/2,1): two admissible orbits, of (1,0) and (2,0)", s1 is not None))
    if s1 is not None:
        rep = find_linear_relations(Q, 5, M)
        claims.append(Claim("(9,9/2,1) a != c: the two series are linearly independent",
                            rep.kernel_dimension == 0, f"kernel dimension {rep.kernel_dimension}"))
    return claims


def example_n7(M: int) -> list[Claim]:
    claims = []
    Q = qf_new(1, 3, 1)
    a, b, c = Q.a, Q.b, Q.c
    adm, orbits, _ = _admissible(Q, 7)
    sym = [O for O in adm if O.symmetric]
    asym = [O for O in adm if not O.symmetric]
    claims.append(Claim("(1,3,1) mod 7: 5 admissible orbits, 3 symmetric and 2 asymmetric",
                        (len(adm), len(sym), len(asym)) == (5, 3, 2),
                        f"{len(adm)} admissible, {len(sym)} symmetric"))
    sym_ok = all(any((k, 0) in O for O in sym) for k in (1, 2, 3))
    asym_ok = any((1, 3) in O for O in asym) and any((-1, -3) in O for O in asym)
    claims.append(Claim("symmetric orbits are O1, 2 O1, 3 O1; asymmetric are O2 = G(1,3) and -O2",
                        sym_ok and asym_ok))
    M = max(M, 29)
    series = {}
    for k in (1, 2, 3):
        series[k] = _orbit_series(Q, orbits, (k, 0), M)
    O2 = orbit_of(orbits, (1, 3))
    f2 = O2.sign_function(anchor=(1, 3))
    s_O2 = theta_quadrant(Q, f2, M)
    s_mO2 = theta_quadrant(Q, f2.negate_arg(), M)
    claims.append(Claim("Theta_{f_-O2} = -Theta_{f_O2}", s_mO2 == -s_O2))
    for k in (1, 2, 3):
        e = int(k * k * a)
        claims.append(_expect_low(f"Theta_{{f_{k}O1}} = q^{k * k}a + q^{k * k}c mod q^({k * k}a+1)",
                                  series[k], {e: 2}, e + 1))
    e = int(9 * a + c + 6 * b)
    claims.append(_expect_low("Theta_{f_O2} = q^(9a+c+6b) + q^(a+9c+6b) mod q^(9a+c+6b+1)",
                              s_O2, {e: 2}, e + 1))
    rep = find_linear_relations(Q, 7, M)
    claims.append(Claim("the 4 series Theta_{O1}, Theta_{2O1}, Theta_{3O1}, Theta_{O2} are linearly independent",
                        len(rep.labels) == 4 and rep.kernel_dimension == 0,
                        f"kernel dimension {rep.kernel_dimension} at O(q^{M})"))
    return claims


def v_s(Q: QuadForm, s1: int, s2: int) -> tuple[int, int]:
    return int(Q.b / Q.a * s2 - s1), int(Q.b / Q.c * s1 - s2)


def example_ex4(M: int) -> list[Claim]:
    claims = []
    Q = qf_new(1, 2, 2)
    if (Q.b / Q.a).denominator != 1 or (Q.b / Q.c).denominator != 1:
        raise ValueError("the v_{s1,s2} construction needs b/a and b/c integral")
    N = int(4 * Q.D / (Q.a * Q.c))
    claims.append(Claim("(1,2,2): N = 4D/(ac) = 4", N == 4, f"N = {N}"))
    orbits, _ = gn_orbits(Q, N)
    v = v_s(Q, 1, 1)
    O = orbit_of(orbits, v)
    half = N // 2
    congruent = all(x % half == v[0] % half and y % half == v[1] % half for x, y in O.points)
    claims.append(Claim("orbit of v_{1,1} = (1,0) is admissible with 4 elements, all = v mod N/2",
                        v == (1, 0) and O.admissible and O.size == 4 and congruent,
                        f"orbit {list(O.points)}"))
    allodd = True
    for s1 in range(1, 2 * N, 2):
        for s2 in range(1, 2 * N, 2):
            w = v_s(Q, s1, s2)
            P = orbit_of(orbits, w)
            allodd &= P.admissible and P.size == 4 and all(
                (x - w[0]) % half == 0 and (y - w[1]) % half == 0 for x, y in P.points)
    claims.append(Claim("every odd s1, s2: orbit of v_{s1,s2} admissible, 4 elements, = v mod N/2", allodd))

    Q = qf_new(1, 2, 1)
    l = 3
    N = int(4 * Q.D / (Q.a * Q.c))
    k = 2 * Q.D / (l * Q.a * Q.c)
    vl = (int(k) % N, int(k) % N)
    fixed = all(tuple(x % N for x in mat_apply(g, vl)) == vl for g in (Q.A, Q.B))
    claims.append(Claim("(1,2,1), l = 3: v_l = (2,2) is fixed by A and B mod 12",
                        N == 12 and vl == (2, 2) and fixed, f"N = {N}, v_l = {vl}"))
    return claims


EXAMPLES = {
    "n3": example_n3,
    "n5a": example_n5a,
    "n5b": example_n5b,
    "n7": example_n7,
    "ex4": example_ex4,
}


def run_example(name: str, M: int = 100) -> list[Claim]:
    try:
        fn = EXAMPLES[name]
    except KeyError:
        raise ValueError(f"unknown example {name!r}; choose from {', '.join(EXAMPLES)}") from None
    return fn(M)
