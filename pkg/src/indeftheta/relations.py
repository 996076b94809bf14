"""Linear relations among the series Theta_{Q, f_O} for a fixed form.

Known relations come from three changes of variables: ``(m, n) -> (-m, -n)``
(negation, and vanishing for even symmetric orbits), ``tau: (m, n) -> (n, m)``
when a = c, and ``tau_t: (m, n) -> (t n, m / t)`` when c/a = t^2.
``find_linear_relations`` computes the exact kernel of the coefficient
matrix and reports kernel vectors that these relations do not explain.
Such vectors are only candidates: they hold to the working precision.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt

from .arith import is_rational_square
from .errors import SupportNotPreserved, VerificationFailed
from .linalg import nullspace, rank
from .orbits import OrbitRecord, gn_orbits, orbit_of
from .periodic import PeriodicFunction, pf_tau_t
from .qseries import DEFAULT_PRECISION, QSeries
from .quadform import QuadForm
from .theta import theta_quadrant


@dataclass(frozen=True)
class Relation:
    """``Theta_{labels[0]} = sign * Theta_{labels[1]}``, or ``Theta_{labels[0]} = 0`` for one label.

    With ``coeffs`` set the relation is ``sum coeffs[i] * Theta_{labels[i]} = 0``.
    """

    kind: str  # negation | even-symmetric-zero | tau | tau_t
    labels: tuple
    sign: int = 0
    coeffs: tuple | None = None

    def terms(self) -> list:
        if self.coeffs is not None:
            return list(zip(self.labels, self.coeffs))
        if len(self.labels) == 1:
            return [(self.labels[0], Fraction(1))]
        return [(self.labels[0], Fraction(1)), (self.labels[1], Fraction(-self.sign))]

    def holds(self, series: dict) -> bool:
        pairs = self.terms()
        total = QSeries.zero(series[pairs[0][0]].precision)
        for lab, c in pairs:
            total = total + series[lab].scale(c)
        return total.is_zero()

    def vector(self, labels: list) -> list[Fraction]:
        v = [Fraction(0)] * len(labels)
        for lab, c in self.terms():
            v[labels.index(lab)] += c
        return v

    def to_json(self) -> dict:
        out = {"kind": self.kind, "labels": [list(x) for x in self.labels], "sign": self.sign}
        if self.coeffs is not None:
            out["coeffs"] = [str(c) for c in self.coeffs]
        return out

    def __str__(self):
        if self.coeffs is not None:
            body = " ".join(f"{'+' if c > 0 else '-'} {abs(c)}*Theta[{lab}]" for lab, c in self.terms())
            return f"{self.kind}: {body.lstrip('+ ')} = 0"
        a = f"Theta[{self.labels[0]}]"
        if len(self.labels) == 1:
            return f"{self.kind}: {a} = 0"
        op = "" if self.sign == 1 else "-"
        return f"{self.kind}: {a} = {op}Theta[{self.labels[1]}]"


def _match(g: PeriodicFunction, orbits: list[OrbitRecord]):
    """(O, s) with ``g = s * f_O``, or None."""
    supp = g.support
    if not supp:
        return None
    try:
        O = orbit_of(orbits, supp[0])
    except KeyError:
        return None
    if not O.admissible:
        return None
    fO = O.sign_function()
    for s in (1, -1):
        if g == fO.scaled(s):
            return O, s
    return None


def _decompose(g: PeriodicFunction, orbits: list[OrbitRecord]):
    """``{representative: c}`` with ``g = sum c f_O``, or None if g is not such a combination."""
    out = {}
    seen = set()
    for x in g.support:
        O = orbit_of(orbits, x)
        if O.representative in seen:
            continue
        seen.add(O.representative)
        if not O.admissible:
            return None
        c = g(*O.representative)
        if any(g(*y) != c * O.signs[y] for y in O.points):
            return None
        out[O.representative] = c
    return out


def _tau_t(Q: QuadForm):
    ratio = Q.c / Q.a
    if Q.a == Q.c or not is_rational_square(ratio):
        return None
    return Fraction(isqrt(ratio.numerator), isqrt(ratio.denominator))


def symbolic_relations(Q: QuadForm, orbits: list[OrbitRecord]) -> list[Relation]:
    out = []
    adm = [O for O in orbits if O.admissible]
    N = adm[0].N if adm else 1
    for O in adm:
        fO = O.sign_function()
        if O.symmetric:
            if O.parity == "even":
                out.append(Relation("even-symmetric-zero", (O.representative,)))
        else:
            m = _match(fO.negate_arg(), orbits)
            if m is None:
                raise VerificationFailed(f"f_O o [-1] is not an orbit function for {O.representative}")
            P, s = m
            # f_{-O} = s f_O o [-1]  and  Theta_{f o [-1]} = -Theta_f
            if O.representative < P.representative:
                out.append(Relation("negation", (O.representative, P.representative), -s))
    if Q.a == Q.c:
        for O in adm:
            m = _match(O.sign_function().tau(), orbits)
            if m is None:
                raise VerificationFailed(f"f_O o tau is not an orbit function for {O.representative}")
            P, s = m
            if P is O and s == -1:
                out.append(Relation("tau", (O.representative,), 0))
            elif O.representative < P.representative:
                out.append(Relation("tau", (O.representative, P.representative), s))
    t = _tau_t(Q)
    if t is not None:
        for O in adm:
            try:
                g = pf_tau_t(Q, O.sign_function(), t)
            except SupportNotPreserved:
                continue
            g = g.reduced_to(N)
            parts = _decompose(g, orbits) if g is not None else None
            if parts is None:
                continue
            # Theta_O = Theta_{f_O o tau_t} = sum c Theta_P
            parts = {k: -c for k, c in parts.items()}
            parts[O.representative] = parts.get(O.representative, Fraction(0)) + 1
            parts = {k: c for k, c in sorted(parts.items()) if c}
            if parts:
                out.append(Relation("tau_t", tuple(parts), 0, tuple(parts.values())))
    return out


def tau_t_check(Q: QuadForm, f: PeriodicFunction, t, M: int = DEFAULT_PRECISION):
    """``(Theta_{Q, f o tau_t}, Theta_{Q, f})``; the two must agree."""
    g = pf_tau_t(Q, f, t)
    return theta_quadrant(Q, g, M), theta_quadrant(Q, f, M)


@dataclass
class RelationReport:
    form: QuadForm
    period: int
    precision: int
    labels: list  # representatives of the series used as matrix columns
    series: dict  # every admissible orbit representative -> its series
    symbolic: list
    kernel_basis: list
    explained_rank: int
    unexplained: list = field(default_factory=list)

    @property
    def kernel_dimension(self) -> int:
        return len(self.kernel_basis)

    def to_json(self) -> dict:
        return {
            "form": self.form.to_json(),
            "period": self.period,
            "precision": self.precision,
            "labels": [list(x) for x in self.labels],
            "series": {f"{x[0]},{x[1]}": s.to_json() for x, s in sorted(self.series.items())},
            "symbolic_relations": [r.to_json() for r in self.symbolic],
            "kernel_basis": [[str(q) for q in v] for v in self.kernel_basis],
            "explained_rank": self.explained_rank,
            "unexplained": [[str(q) for q in v] for v in self.unexplained],
        }


def find_linear_relations(Q: QuadForm, N: int, M: int = DEFAULT_PRECISION) -> RelationReport:
    orbits, _ = gn_orbits(Q, N)
    adm = [O for O in orbits if O.admissible]
    series = {O.representative: theta_quadrant(Q, O.sign_function(), M) for O in adm}
    symbolic = symbolic_relations(Q, orbits)
    for rel in symbolic:
        if not rel.holds(series):
            raise VerificationFailed(f"relation {rel} fails below O(q^{M})")

    # one column per +-pair; the other member of a pair is rewritten through
    # its negation relation
    partner_of = {}
    for rel in symbolic:
        if rel.kind == "negation":
            keep, drop = rel.labels
            partner_of[drop] = (keep, rel.sign)
    labels = [O.representative for O in adm if O.representative not in partner_of]

    def restrict(rel: Relation):
        v = [Fraction(0)] * len(labels)
        for lab, coeff in rel.terms():
            if lab in partner_of:
                keep, s = partner_of[lab]
                # Theta_drop = s * Theta_keep
                lab, coeff = keep, coeff * s
            v[labels.index(lab)] += coeff
        return v

    explained = [restrict(r) for r in symbolic if r.kind != "negation"]
    explained = [v for v in explained if any(v)]
    exps = sorted({e for lab in labels for e, _ in series[lab].terms()})
    matrix = [[series[lab].coeff(e) for lab in labels] for e in exps]
    kernel = nullspace(matrix, len(labels)) if labels else []
    base_rank = rank(explained) if explained else 0
    # a complement of the explained relations inside the kernel
    span, cur, unexplained = list(explained), base_rank, []
    for v in kernel:
        if rank(span + [v]) > cur:
            span.append(v)
            cur += 1
            unexplained.append(v)
    return RelationReport(Q, N, M, labels, series, symbolic, kernel, base_rank, unexplained)
