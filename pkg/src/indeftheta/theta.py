"""The series Theta_{Q,f}, computed by two independent enumerations.

``theta_quadrant`` sums ``f(m,n) q^Q(m,n)`` over ``m, n >= 0`` minus the sum
over ``m, n < 0``.  ``theta_sector`` embeds Z^2 in K by
``(m, n) -> (bm + cn) + m sqrt(D)`` and sums ``q^(Nm/c)`` over the points of
``S_1 = f^{-1}(1)`` in the sector ``<b - sqrt D, b + sqrt D]`` minus those in
``[-b + sqrt D, -b - sqrt D>``.  For admissible f the two agree.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction

from .arith import ConeSector, QuadElem
from .cones import sector_points
from .errors import AdmissibilityViolation, NonIntegralExponent
from .periodic import PeriodicFunction, check_admissible
from .qseries import DEFAULT_PRECISION, QSeries
from .quadform import QuadForm


def _require_admissible(Q, f):
    report = check_admissible(Q, f, limit=1)
    if not report.ok:
        raise AdmissibilityViolation(report.witness)


def theta_quadrant(Q: QuadForm, f: PeriodicFunction, M: int = DEFAULT_PRECISION,
                   check: bool = True) -> QSeries:
    if check:
        _require_admissible(Q, f)
    A, B2, C, den = Q.integer_coefficients()
    Mden = M * den
    N = f.period
    rows = f.rows
    terms = defaultdict(Fraction)
    # Q(m, n) is increasing in m and in n on m, n >= 0, so both loops stop at
    # the first value >= M.  The negative quadrant is read as (-m, -n), m, n >= 1.
    for sgn, start in ((1, 0), (-1, 1)):
        n = start
        while A * start * start + B2 * start * n + C * n * n < Mden:
            for mres, val in rows.get((sgn * n) % N, ()):
                m = (sgn * mres) % N
                if m < start:
                    m += N
                while True:
                    q = A * m * m + B2 * m * n + C * n * n
                    if q >= Mden:
                        break
                    if q % den:
                        raise NonIntegralExponent((sgn * m, sgn * n), Fraction(q, den))
                    terms[q // den] += sgn * val
                    m += N
            n += 1
    return QSeries(M, terms)


def sectors(Q: QuadForm) -> tuple[ConeSector, ConeSector]:
    """The positive sector ``<b - sqrt D, b + sqrt D]`` and negative sector ``[-b + sqrt D, -b - sqrt D>``."""
    D = Q.D
    lo = QuadElem(Q.b, -1, D)
    hi = QuadElem(Q.b, 1, D)
    return ConeSector(lo, hi, False, True), ConeSector(-lo, -hi, True, False)


def theta_sector(Q: QuadForm, f: PeriodicFunction, M: int = DEFAULT_PRECISION,
                 check: bool = True) -> QSeries:
    """Sector form of Theta_{Q,f}.

    A general rational f is handled through its positive part: since
    ``f(Bx) = -f(x)`` the negative values are carried by B onto positive
    ones, so each sector point contributes ``max(f, 0)``.  For +-1-valued f
    this is exactly the sum over ``S_1``.
    """
    if check:
        _require_admissible(Q, f)
    pos, neg = sectors(Q)
    e1, e2 = Q.embed(1, 0), Q.embed(0, 1)
    origin = QuadElem(0, 0, Q.D)
    terms = defaultdict(Fraction)
    for sector, sgn in ((pos, 1), (neg, -1)):
        for m, n, nm in sector_points(sector, e1, e2, origin, Q.c * M):
            val = f(m, n)
            if val <= 0:
                continue
            e = nm / Q.c
            if e.denominator != 1:
                raise NonIntegralExponent((m, n), e)
            terms[int(e)] += sgn * val
    return QSeries(M, terms)


@dataclass
class IdentityCheck:
    ok: bool
    first_difference: int | None
    quadrant: QSeries
    sector: QSeries

    def __bool__(self):
        return self.ok


def verify_main_identity(Q: QuadForm, f: PeriodicFunction, M: int = DEFAULT_PRECISION,
                         check: bool = True) -> IdentityCheck:
    quad = theta_quadrant(Q, f, M, check)
    sect = theta_sector(Q, f, M, check)
    diff = quad.first_difference(sect)
    return IdentityCheck(diff is None, diff, quad, sect)
