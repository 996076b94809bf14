import random
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from indeftheta.arith import (ConeSector, DegenerateSector, QuadElem, ceil_sqrt, floor_sqrt,
                              is_rational_square, sector_contains)

D0 = Fraction(21, 4)
rationals = st.fractions(min_value=-50, max_value=50, max_denominator=12)
elements = st.builds(lambda x, y: QuadElem(x, y, D0), rationals, rationals)
nonzero = elements.filter(lambda z: z.x != 0 or z.y != 0)


def test_unit_norms():
    eps = QuadElem(Fraction(5, 2), 1, D0)
    assert eps.norm() == 1
    assert QuadElem(Fraction(23, 2), 5, D0).norm() == 1
    assert eps * eps == QuadElem(Fraction(23, 2), 5, D0)
    assert eps.is_totally_positive()


def test_conj_and_inverse():
    z = QuadElem(3, -2, 5)
    assert z.conj() == QuadElem(3, 2, 5)
    assert z * z.inverse() == QuadElem.rational(1, 5)
    assert z.trace() == 6 and z.norm() == 9 - 20


def test_zero_not_invertible():
    with pytest.raises(ZeroDivisionError):
        QuadElem(0, 0, 5).inverse()


def test_mixed_fields_rejected():
    with pytest.raises(ValueError):
        QuadElem(1, 1, 5) + QuadElem(1, 1, 7)


def test_embedding_signs_examples():
    assert QuadElem(2, 1, 3).embedding_signs() == (1, 1)
    assert QuadElem(1, 1, 3).embedding_signs() == (1, -1)
    assert QuadElem(-2, 1, 3).embedding_signs() == (-1, -1)
    assert QuadElem(2, 1, 4).embedding_signs() == (1, 0)
    assert QuadElem(-2, 1, 3).is_totally_negative()
    assert QuadElem(1, 1, 3).total_sign() == 0


def test_embedding_signs_against_mpmath():
    rng = random.Random(7)
    mpmath.mp.dps = 60
    for _ in range(1000):
        D = Fraction(rng.randint(1, 400), rng.randint(1, 9))
        x = Fraction(rng.randint(-300, 300), rng.randint(1, 9))
        y = Fraction(rng.randint(-30, 30), rng.randint(1, 9))
        z = QuadElem(x, y, D)
        r = mpmath.sqrt(mpmath.mpf(D.numerator) / D.denominator)
        xm = mpmath.mpf(x.numerator) / x.denominator
        ym = mpmath.mpf(y.numerator) / y.denominator
        for got, val in zip(z.embedding_signs(), (xm + ym * r, xm - ym * r)):
            if abs(val) > mpmath.mpf(10) ** -40:
                assert got == (1 if val > 0 else -1)
            else:
                assert got == 0 and x * x == D * y * y


@given(elements, elements, elements)
def test_ring_axioms(u, v, w):
    assert (u + v) + w == u + (v + w)
    assert (u * v) * w == u * (v * w)
    assert u * (v + w) == u * v + u * w
    assert u * v == v * u
    assert u - u == QuadElem(0, 0, D0)


@given(elements, elements)
def test_norm_and_conj_multiplicative(u, v):
    assert (u * v).norm() == u.norm() * v.norm()
    assert (u * v).conj() == u.conj() * v.conj()
    assert u.conj().conj() == u


@given(nonzero)
def test_division(u):
    assert u / u == QuadElem.rational(1, D0)
    assert (u ** -2) * (u ** 2) == QuadElem.rational(1, D0)


@given(st.fractions(min_value=0, max_value=10**6, max_denominator=50))
def test_floor_ceil_sqrt(q):
    f, c = floor_sqrt(q), ceil_sqrt(q)
    assert f * f <= q < (f + 1) ** 2
    assert c * c >= q and (c == 0 or (c - 1) ** 2 < q)


def test_rational_square():
    assert is_rational_square(Fraction(9, 4))
    assert not is_rational_square(Fraction(2))
    assert not is_rational_square(Fraction(-4))


@given(elements)
def test_json_roundtrip(z):
    assert QuadElem.from_json(z.to_json()) == z
    assert QuadElem.from_json(z.to_json(False), D0) == z


def test_sector_closures():
    k1, k2 = QuadElem(1, 0, 2), QuadElem(0, 1, 2)
    half_open = ConeSector(k1, k2, False, True)
    assert sector_contains(half_open, k2 * 3)
    assert not sector_contains(half_open, k1 * 3)
    assert sector_contains(half_open, k1 + k2)
    assert not sector_contains(half_open, QuadElem(0, 0, 2))
    assert not sector_contains(half_open, -(k1 + k2))
    assert half_open.negated().contains(-(k1 + k2))


def test_degenerate_sector():
    with pytest.raises(DegenerateSector):
        ConeSector(QuadElem(1, 1, 2), QuadElem(2, 2, 2), True, True)


@given(elements, elements, st.fractions(min_value=0, max_value=1, max_denominator=20))
def test_sector_convex(u, v, t):
    S = ConeSector(QuadElem(1, 1, D0), QuadElem(3, -1, D0), True, True)
    if S.contains(u) and S.contains(v):
        assert S.contains(u * t + v * (1 - t))
