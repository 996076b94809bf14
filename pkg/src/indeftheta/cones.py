"""Lattice-coset points of bounded norm inside a cone sector of K.

Enumerates ``lam = shift + u*e1 + v*e2`` (u, v integers) lying in a sector
whose rays are both totally positive or both totally negative, with
``0 < Nm(lam) < bound``.

Completeness.  For a ray direction w, the positive definite rational form
``P_w(lam) = Tr(conj(w)^2 lam^2)`` satisfies
``P_w(lam) = Nm(w) Nm(lam) (t + 1/t)`` where t is the ratio of the two
embeddings of lam relative to those of w.  ``t + 1/t`` is convex in log t,
so on a sector it is maximal on a boundary ray; calling that maximum kappa,
every wanted point satisfies ``P_w(lam) < Nm(w) * bound * kappa``.  Sectors
are bisected until kappa is small, and each ellipse is enumerated exactly
over a Lagrange-reduced basis.  Every candidate is then filtered by exact
sector membership and exact norm.
"""

from __future__ import annotations

from fractions import Fraction
from math import ceil, floor, gcd, lcm

from .arith import ConeSector, QuadElem, ceil_sqrt

SPLIT_THRESHOLD = Fraction(6)
MAX_DEPTH = 200


def _mid_ray(r: QuadElem, s: QuadElem) -> QuadElem:
    # r*t + s with t a power of two near sqrt(Nm s / Nm r): its direction is
    # within a factor sqrt(2) of the geometric middle of the two rays
    ratio = s.norm() / r.norm()
    k = (ratio.numerator.bit_length() - ratio.denominator.bit_length()) // 2
    t = Fraction(2) ** k
    return _primitive(r * t + s)


def _primitive(w: QuadElem) -> QuadElem:
    # only the direction of a splitting ray matters; keep its height small
    den = lcm(w.x.denominator, w.y.denominator)
    x, y = int(w.x * den), int(w.y * den)
    g = gcd(x, y)
    return QuadElem(Fraction(x // g), Fraction(y // g), w.D)


def _spread(w: QuadElem, r: QuadElem) -> Fraction:
    z = w.conj() * r
    return (z * z).trace() / z.norm()


def _lagrange_reduce(a, b, c):
    """Reduce the positive definite form [[a, b], [b, c]]; returns (a, b, c, U) with U unimodular."""
    U = [[1, 0], [0, 1]]  # columns are the new basis vectors
    while True:
        if a > c:
            a, c = c, a
            U = [[U[0][1], U[0][0]], [U[1][1], U[1][0]]]
        mu = round(b / a)
        if mu == 0:
            return a, b, c, U
        c = c - 2 * mu * b + mu * mu * a
        b = b - mu * a
        U = [[U[0][0], U[0][1] - mu * U[0][0]], [U[1][0], U[1][1] - mu * U[1][0]]]


def ellipse_points(G11, G12, G22, h1, h2, h0, bound):
    """Integer (u, v) with ``G11 u^2 + 2 G12 uv + G22 v^2 + 2 h1 u + 2 h2 v + h0 <= bound``.

    The Gram matrix must be positive definite.  The result may contain a few
    points just outside the ellipse; callers filter exactly.
    """
    a, b, c, U = _lagrange_reduce(G11, G12, G22)
    # linear terms in the reduced coordinates
    k1 = U[0][0] * h1 + U[1][0] * h2
    k2 = U[0][1] * h1 + U[1][1] * h2
    det = a * c - b * b
    s0 = (-k1 * c + k2 * b) / det
    t0 = (-k2 * a + k1 * b) / det
    R = bound - (h0 + k1 * s0 + k2 * t0)
    if R < 0:
        return
    T = ceil_sqrt(R * a / det)
    for t in range(floor(t0 - T), ceil(t0 + T) + 1):
        dt = t - t0
        rem = R - det / a * dt * dt
        if rem < 0:
            continue
        sc = s0 - b / a * dt
        S = ceil_sqrt(rem / a)
        for s in range(floor(sc - S), ceil(sc + S) + 1):
            yield U[0][0] * s + U[0][1] * t, U[1][0] * s + U[1][1] * t


def sector_points(sector: ConeSector, e1: QuadElem, e2: QuadElem, shift: QuadElem, bound):
    """All (u, v, Nm(lam)) for ``lam = shift + u e1 + v e2`` in ``sector`` with ``Nm(lam) < bound``."""
    bound = Fraction(bound)
    r0, s0 = sector.ray1, sector.ray2
    sg = r0.total_sign()
    if sg == 0 or s0.total_sign() != sg:
        raise ValueError("sector rays must both be totally positive or both totally negative")
    if bound <= 0:
        return []

    # affine data for exact filtering
    ca0, cb0 = sector.coefficients(shift)
    ca1, cb1 = sector.coefficients(e1)
    ca2, cb2 = sector.coefficients(e2)
    n0 = shift.norm()
    n1 = (shift * e1.conj()).trace()
    n2 = (shift * e2.conj()).trace()
    n11 = e1.norm()
    n12 = (e1 * e2.conj()).trace()
    n22 = e2.norm()

    found = {}
    stack = [(r0, s0, 0)]
    while stack:
        r, s, depth = stack.pop()
        w = _mid_ray(r, s)
        kappa = max(_spread(w, r), _spread(w, s))
        if kappa > SPLIT_THRESHOLD and depth < MAX_DEPTH:
            stack.append((r, w, depth + 1))
            stack.append((w, s, depth + 1))
            continue
        omega = w.conj() * w.conj()
        G11 = (omega * e1 * e1).trace()
        G12 = (omega * e1 * e2).trace()
        G22 = (omega * e2 * e2).trace()
        h1 = (omega * shift * e1).trace()
        h2 = (omega * shift * e2).trace()
        h0 = (omega * shift * shift).trace()
        limit = w.norm() * bound * kappa
        for u, v in ellipse_points(G11, G12, G22, h1, h2, h0, limit):
            if (u, v) in found:
                continue
            nm = n0 + u * n1 + v * n2 + u * u * n11 + u * v * n12 + v * v * n22
            if not (0 < nm < bound):
                continue
            alpha = ca0 + u * ca1 + v * ca2
            beta = cb0 + u * cb1 + v * cb2
            if sector.contains_coefficients(alpha, beta):
                found[(u, v)] = nm
    return sorted((u, v, nm) for (u, v), nm in found.items())
