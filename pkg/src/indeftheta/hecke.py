"""Hecke's series Theta_{Lambda, gamma} and the two halves of the correspondence.

``qf_to_hecke`` splits ``S_1 = f^{-1}(1)`` into cosets of its translation
lattice inside K and checks ``j * Theta_{Q,f} = sum_i Theta_{Lambda_1 + x_i}``
where ``eps^j`` is the least power of the form's unit fixing every coset.
``hecke_to_qf`` goes back: in the coordinates of the basis ``(1, k)`` with
``k = 1 + eps`` a coset series becomes a quadrant sum for
``Q'(m, n) = d Nm(m + n k)`` and ``f' = delta_{Lambda+gamma} - delta_{B(Lambda+gamma)}``,
``B(x) = -conj(x)``, which is then rescaled to live on Z^2.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import lcm

from .arith import ConeSector, QuadElem, frac
from .cones import sector_points
from .errors import (
    InvalidLattice,
    InvalidUnit,
    IterationExceeded,
    NonIntegralExponent,
    NotAdmissible,
    UnitIsOne,
)
from .linalg import hnf2, lattice_exponent, lattice_points_mod
from .periodic import PeriodicFunction, check_admissible
from .qseries import DEFAULT_PRECISION, QSeries
from .quadform import QuadForm, mat_apply
from .theta import theta_quadrant


@dataclass(frozen=True)
class QuadLattice:
    """The Z-span of two Q-independent elements e1, e2 of K."""

    e1: QuadElem
    e2: QuadElem

    def __post_init__(self):
        if self.e1.D != self.e2.D:
            raise InvalidLattice("basis elements lie in different fields")
        det = self.e1.x * self.e2.y - self.e2.x * self.e1.y
        if det == 0:
            raise InvalidLattice("basis elements are linearly dependent over Q")
        object.__setattr__(self, "_det", det)

    @property
    def D(self) -> Fraction:
        return self.e1.D

    def coords(self, z: QuadElem) -> tuple[Fraction, Fraction]:
        """(u, v) with ``z = u e1 + v e2``."""
        if z.D != self.D:
            raise ValueError(f"element of Q(sqrt {z.D}) tested against a lattice in Q(sqrt {self.D})")
        e1, e2 = self.e1, self.e2
        u = (z.x * e2.y - e2.x * z.y) / self._det
        v = (e1.x * z.y - z.x * e1.y) / self._det
        return u, v

    def contains(self, z: QuadElem) -> bool:
        u, v = self.coords(z)
        return u.denominator == 1 and v.denominator == 1

    def point(self, u, v) -> QuadElem:
        return self.e1 * u + self.e2 * v

    def multiplication_matrix(self, u: QuadElem):
        """Matrix of ``z -> u z`` in the basis (e1, e2); columns are images of e1, e2."""
        c1 = self.coords(u * self.e1)
        c2 = self.coords(u * self.e2)
        return ((c1[0], c2[0]), (c1[1], c2[1]))

    def to_json(self) -> list:
        return [self.e1.to_json(False), self.e2.to_json(False)]


def lattice_contains(L: QuadLattice, z: QuadElem) -> bool:
    return L.contains(z)


def _preserves(lattice: QuadLattice, shift: QuadElem, u: QuadElem) -> bool:
    # multiplication by a norm +-1 element has determinant +-1 on K, so
    # u Lambda in Lambda already forces equality
    return (lattice.contains(u * lattice.e1) and lattice.contains(u * lattice.e2)
            and lattice.contains(u * shift - shift))


def _is_integral_on(lattice: QuadLattice, shift: QuadElem, d: Fraction) -> bool:
    # P(u, v) = d Nm(shift + u e1 + v e2) is integer valued on Z^2 iff its
    # coefficients in the basis 1, u, v, C(u,2), C(v,2), uv are integers,
    # which these six values decide
    for u, v in ((0, 0), (1, 0), (-1, 0), (0, 1), (0, -1), (1, 1)):
        if (d * (shift + lattice.point(u, v)).norm()).denominator != 1:
            return False
    return True


@dataclass(frozen=True)
class HeckeCoset:
    """A coset ``Lambda + gamma`` in K with multiplier d and a unit eps preserving it."""

    lattice: QuadLattice
    shift: QuadElem
    d: Fraction
    unit: QuadElem

    def __post_init__(self):
        object.__setattr__(self, "d", frac(self.d))
        D = self.lattice.D
        if self.shift.D != D or self.unit.D != D:
            raise InvalidLattice("shift, unit and lattice must lie in the same field")
        if self.d <= 0:
            raise InvalidLattice(f"multiplier d must be positive, got {self.d}")
        u = self.unit
        if u.norm() != 1 or not u.is_totally_positive():
            raise InvalidUnit(f"{u} is not a totally positive element of norm 1")
        if u.x == 1 and u.y == 0:
            raise UnitIsOne("the unit must generate an infinite group")
        if not _preserves(self.lattice, self.shift, u):
            raise InvalidUnit(f"{u} does not preserve the coset")
        if not _is_integral_on(self.lattice, self.shift, self.d):
            raise InvalidLattice(f"d*Nm is not integer valued on the coset (d = {self.d})")

    @property
    def D(self) -> Fraction:
        return self.lattice.D

    def with_unit(self, unit: QuadElem) -> HeckeCoset:
        return replace(self, unit=unit)

    def to_json(self) -> dict:
        return {
            "D": str(self.D),
            "basis": self.lattice.to_json(),
            "shift": self.shift.to_json(False),
            "d": str(self.d),
            "epsilon": self.unit.to_json(False),
        }

    @classmethod
    def from_json(cls, obj: dict) -> HeckeCoset:
        D = frac(obj["D"])
        basis = obj["basis"]
        if len(basis) != 2:
            raise InvalidLattice("a lattice basis has exactly two elements")
        lattice = QuadLattice(QuadElem.from_json(basis[0], D), QuadElem.from_json(basis[1], D))
        shift = QuadElem.from_json(obj.get("shift", {"x": "0", "y": "0"}), D)
        return cls(lattice, shift, frac(obj["d"]), QuadElem.from_json(obj["epsilon"], D))


def coset_preserved_by(C: HeckeCoset, u: QuadElem) -> bool:
    """Whether ``u (Lambda + gamma) = Lambda + gamma`` for a norm-1 totally positive u."""
    return _preserves(C.lattice, C.shift, u)


def stabilizer_power(unit: QuadElem, lattice: QuadLattice, shifts, max_iter: int = 10_000) -> int:
    """Least j >= 1 with ``unit^j`` preserving every coset ``lattice + s``.

    Works in lattice coordinates: the unit is an integer matrix U there and
    ``unit^j`` fixes ``lattice + s`` iff ``U^j t = t mod Z^2`` for t the
    coordinates of s.
    """
    U = lattice.multiplication_matrix(unit)
    if any(x.denominator != 1 for row in U for x in row):
        raise InvalidUnit(f"{unit} does not preserve the lattice")
    U = tuple(tuple(int(x) for x in row) for row in U)
    start = [tuple(x % 1 for x in lattice.coords(s)) for s in shifts]
    cur = list(start)
    for j in range(1, max_iter + 1):
        cur = [tuple(x % 1 for x in mat_apply(U, t)) for t in cur]
        if cur == start:
            return j
    raise IterationExceeded(f"no power of the unit up to {max_iter} fixes every coset")


def hecke_sectors(unit: QuadElem) -> tuple[ConeSector, ConeSector]:
    """``[k, conj k>`` and ``<-k, -conj k]`` for k = 1 + unit."""
    k = unit + 1
    kb = k.conj()
    return ConeSector(k, kb, True, False), ConeSector(-k, -kb, False, True)


def theta_hecke(C: HeckeCoset, M: int = DEFAULT_PRECISION) -> QSeries:
    """``sum sign(lam) q^(d Nm lam)`` over a fundamental domain of ``<eps>`` in the coset."""
    pos, neg = hecke_sectors(C.unit)
    terms = defaultdict(Fraction)
    L = C.lattice
    for sector, sgn in ((pos, 1), (neg, -1)):
        for u, v, nm in sector_points(sector, L.e1, L.e2, C.shift, M / C.d):
            e = C.d * nm
            if e.denominator != 1:
                raise NonIntegralExponent((u, v), e)
            terms[int(e)] += sgn
    return QSeries(M, terms)


@dataclass
class SeriesCheck:
    """Outcome of comparing two independently computed series."""

    ok: bool
    first_difference: int | None
    lhs: QSeries
    rhs: QSeries

    def __bool__(self):
        return self.ok

    @classmethod
    def compare(cls, lhs: QSeries, rhs: QSeries) -> SeriesCheck:
        diff = lhs.first_difference(rhs)
        return cls(diff is None, diff, lhs, rhs)


@dataclass
class CosetDecomposition:
    """``S_1 = union of (Lambda_1 + x_i)`` for a +-1 admissible function, seen inside K."""

    form: QuadForm
    period: int
    sublattice: tuple  # Hermite basis of Lambda_1 in Z^2
    shifts: list  # coset representatives x_i in Z^2
    index: int  # [G : G_0]
    unit: QuadElem  # generator eps of G
    multiplier: Fraction
    cosets: list = field(default_factory=list)  # HeckeCosets with unit eps^index
    check: SeriesCheck | None = None

    @property
    def ok(self) -> bool:
        return self.check is not None and self.check.ok

    def to_json(self) -> dict:
        out = {
            "form": self.form.to_json(),
            "period": self.period,
            "sublattice": [list(v) for v in self.sublattice],
            "shifts": [list(x) for x in self.shifts],
            "index": self.index,
            "epsilon": self.unit.to_json(False),
            "d": str(self.multiplier),
            "cosets": [C.to_json() for C in self.cosets],
        }
        if self.check is not None:
            out["verified"] = self.check.ok
            out["first_difference"] = self.check.first_difference
        return out


def translation_lattice(f: PeriodicFunction, S1) -> tuple:
    """Hermite basis of ``{v in Z^2 : S_1 + v = S_1}`` (always contains N Z^2)."""
    N = f.period
    S1 = set(S1)
    gens = [(N, 0), (0, N)]
    for vx in range(N):
        for vy in range(N):
            if all(((x + vx) % N, (y + vy) % N) in S1 for x, y in S1):
                gens.append((vx, vy))
    return hnf2(gens)


def qf_to_hecke(Q: QuadForm, f: PeriodicFunction, M: int = DEFAULT_PRECISION,
                verify: bool = True) -> CosetDecomposition:
    if not Q.integral:
        raise ValueError("the coset decomposition needs integral reflections")
    if not f.is_sign_valued():
        raise NotAdmissible("qf_to_hecke expects a function with values in {0, 1, -1}")
    lhs = theta_quadrant(Q, f, M) if verify else None  # also checks admissibility
    N = f.period
    S1 = [x for x, v in f.items() if v == 1]
    basis = translation_lattice(f, S1)
    (alpha, beta), (_, delta) = basis

    # coset representatives: least element of each class of S_1 mod Lambda_1
    def reduce(x):
        i = x[0] // alpha
        y = (x[1] - i * beta) % delta
        return x[0] - i * alpha, y

    reps = {}
    for x in S1:
        reps.setdefault(reduce(x), x)
    shifts = sorted(reps.values())

    lattice = QuadLattice(Q.embed(alpha, beta), Q.embed(0, delta))
    eps = Q.unit()
    d = 1 / Q.c
    shift_elems = [Q.embed(*x) for x in shifts]
    j = stabilizer_power(eps, lattice, shift_elems)
    eps_j = eps ** j
    cosets = [HeckeCoset(lattice, s, d, eps_j) for s in shift_elems]
    dec = CosetDecomposition(Q, N, basis, shifts, j, eps, d, cosets)
    if verify:
        rhs = QSeries(M)
        for C in cosets:
            rhs = rhs + theta_hecke(C, M)
        dec.check = SeriesCheck.compare(lhs.scale(j), rhs)
    return dec


@dataclass
class ReverseConstruction:
    """The (Q'', f'') produced from a Hecke coset, with its bookkeeping."""

    coset: HeckeCoset
    k: QuadElem
    trace: int  # Tr k = Nm k
    form_prime: tuple  # (a', b', c') of Q'(m, n) = d Nm(m + n k)
    scale: int  # M_0
    period: int  # N'
    form: QuadForm  # Q'' = Q' / M_0^2
    function: PeriodicFunction  # f''
    reflections_ok: bool | None = None
    check: SeriesCheck | None = None

    @property
    def ok(self) -> bool:
        return bool(self.reflections_ok) and self.check is not None and self.check.ok

    def to_json(self) -> dict:
        out = {
            "k": self.k.to_json(False),
            "form_prime": {"a": str(self.form_prime[0]), "b": str(self.form_prime[1]),
                           "c": str(self.form_prime[2])},
            "scale": self.scale,
            "period": self.period,
            "form": self.form.to_json(),
            "support_size": len(self.function.support),
        }
        if self.reflections_ok is not None:
            out["reflections_ok"] = self.reflections_ok
        if self.check is not None:
            out["verified"] = self.check.ok
            out["first_difference"] = self.check.first_difference
        return out


def hecke_to_qf(C: HeckeCoset, M: int = DEFAULT_PRECISION, verify: bool = True) -> ReverseConstruction:
    eps = C.unit
    if eps.x == 1 and eps.y == 0:
        raise UnitIsOne("the reverse construction needs eps != 1")
    k = eps + 1
    T = k.trace()
    if k.norm() != T:
        raise InvalidUnit("Nm(1 + eps) != Tr(1 + eps); eps does not have norm 1")
    d = C.d
    a1, b1, c1 = d, d * T / 2, d * T
    if not (a1 > 0 and b1 > 0 and c1 > 0 and b1 * b1 > a1 * c1):
        raise InvalidUnit("Q' is not indefinite with positive coefficients")

    def kcoords(z):
        # z = m + n k
        n = z.y / k.y
        return z.x - n * k.x, n

    L = C.lattice
    B = [lambda z: z, lambda z: -z.conj()]
    pieces = []
    for op in B:
        pieces.append((kcoords(op(L.e1)), kcoords(op(L.e2)), kcoords(op(C.shift))))
    M0 = 1
    for piece in pieces:
        for xy in piece:
            for q in xy:
                M0 = lcm(M0, q.denominator)
    int_pieces = [tuple(tuple(int(q * M0) for q in xy) for xy in piece) for piece in pieces]
    Nprime = 1
    for e1, e2, _ in int_pieces:
        Nprime = lcm(Nprime, lattice_exponent([e1, e2]))
    values = defaultdict(int)
    for (e1, e2, s), sgn in zip(int_pieces, (1, -1)):
        for x in lattice_points_mod([e1, e2], s, Nprime):
            values[x] += sgn
    f2 = PeriodicFunction(Nprime, values)
    Q2 = QuadForm(a1 / M0**2, b1 / M0**2, c1 / M0**2)
    out = ReverseConstruction(C, k, int(T), (a1, b1, c1), M0, Nprime, Q2, f2)
    if verify:
        out.reflections_ok = check_admissible(Q2, f2, limit=1).ok
        lhs = theta_quadrant(Q2, f2, M, check=False)
        out.check = SeriesCheck.compare(lhs, theta_hecke(C, M))
    return out


@dataclass
class Satz1Verdict:
    """Hypotheses of the totally-negative-element vanishing criterion and the observed series."""

    totally_negative: bool
    norm_one: bool
    preserves: bool
    series: QSeries | None = None

    @property
    def hypotheses_hold(self) -> bool:
        return self.totally_negative and self.norm_one and self.preserves

    @property
    def vanishes(self) -> bool | None:
        return None if self.series is None else self.series.is_zero()

    @property
    def ok(self) -> bool:
        return self.hypotheses_hold and bool(self.vanishes)

    def failed_hypotheses(self) -> list[str]:
        names = ("totally_negative", "norm_one", "preserves")
        return [n for n in names if not getattr(self, n)]


def satz1_vanishing(C: HeckeCoset, delta: QuadElem, M: int = DEFAULT_PRECISION) -> Satz1Verdict:
    """Check that a totally negative norm-1 delta fixing the coset forces the series to vanish."""
    verdict = Satz1Verdict(
        totally_negative=delta.is_totally_negative(),
        norm_one=delta.norm() == 1,
        preserves=_preserves(C.lattice, C.shift, delta),
    )
    if verdict.hypotheses_hold:
        verdict.series = theta_hecke(C, M)
    return verdict
