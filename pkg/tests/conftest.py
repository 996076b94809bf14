from fractions import Fraction
from math import gcd, isqrt

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from indeftheta.periodic import PeriodicFunction
from indeftheta.quadform import QuadForm

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def chi3(k):
    return (0, 1, -1)[k % 3]


def chi3_fn(sign=1):
    return PeriodicFunction.from_callable(3, lambda m, n: chi3(m + sign * n))


def naive_theta(Q, f, M):
    """The defining double sum, evaluated point by point over a box that covers Q < M."""
    a, b, c = Fraction(Q.a), Fraction(Q.b), Fraction(Q.c)
    bm = isqrt(int(M / a)) + 2
    bn = isqrt(int(M / c)) + 2
    out = {}
    for m in range(-bm, bm + 1):
        for n in range(-bn, bn + 1):
            if m >= 0 and n >= 0:
                s = 1
            elif m < 0 and n < 0:
                s = -1
            else:
                continue
            v = f(m, n)
            if not v:
                continue
            q = a * m * m + 2 * b * m * n + c * n * n
            if q < M:
                assert q.denominator == 1
                out[int(q)] = out.get(int(q), 0) + s * v
    return {e: v for e, v in sorted(out.items()) if v}


def integral_form(p, r, s=1):
    """The integer-valued form with reflection parameters p, r (both negative, pr > 4)."""
    g = gcd(p, r)
    a = Fraction(s * abs(r), g)
    return QuadForm(a, -p * a / 2, Fraction(s * abs(p), g))


@st.composite
def small_forms(draw, lo=-12):
    p = draw(st.integers(lo, -1))
    r = draw(st.integers(lo, -1).filter(lambda r: p * r > 4))
    s = draw(st.integers(1, 2))
    return integral_form(p, r, s)


@pytest.fixture
def n3_form():
    return QuadForm(Fraction(1), Fraction(5, 2), Fraction(1))


@pytest.fixture
def n7_form():
    return QuadForm(Fraction(1), Fraction(3), Fraction(1))


_ACCEPTANCE = pytest.StashKey[list]()


@pytest.fixture
def acceptance_lines(request):
    return request.config.stash.setdefault(_ACCEPTANCE, [])


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
