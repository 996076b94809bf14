from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from indeftheta.errors import PrecisionMismatch
from indeftheta.qseries import QSeries, qs_eq, qs_leading

coeffs = st.fractions(min_value=-20, max_value=20, max_denominator=6)


@st.composite
def series(draw, precision=None):
    M = precision or draw(st.integers(1, 40))
    terms = draw(st.dictionaries(st.integers(0, M - 1), coeffs, max_size=8))
    return QSeries(M, terms)


def test_arithmetic_examples():
    s = QSeries(9, {1: 2, 4: -2, 7: -2})
    assert (s + (-s)).is_zero()
    assert s.scale(0).is_zero()
    assert QSeries(9, {1: 2, 4: -2}) + QSeries(9, {4: 2}) == QSeries(9, {1: 2})
    assert qs_leading(s) == (1, 2)
    assert qs_eq(s, s)
    assert qs_leading(QSeries.zero(9)) is None


def test_precision_mismatch():
    with pytest.raises(PrecisionMismatch):
        QSeries(9).equals(QSeries(10))
    assert (QSeries(9, {8: 1}) + QSeries(5)).precision == 5


def test_terms_beyond_precision_dropped():
    s = QSeries(3, {0: 1, 3: 5})
    assert s.terms() == [(0, 1)]
    with pytest.raises(ValueError):
        s.coeff(3)


def test_text_format():
    s = QSeries(9, {1: 2, 4: -2, 7: Fraction(-1, 2)})
    assert s.to_text() == "2*q^1 - 2*q^4 - 1/2*q^7 + O(q^9)"
    assert QSeries(5).to_text() == "O(q^5)"


@given(series())
def test_text_roundtrip(s):
    assert QSeries.from_text(s.to_text()) == s


@given(series())
def test_json_roundtrip(s):
    assert QSeries.from_json(s.to_json()) == s


@given(series(30), series(30), series(30), coeffs)
def test_module_axioms(x, y, z, k):
    assert (x + y) + z == x + (y + z)
    assert x + y == y + x
    assert (x + y).scale(k) == x.scale(k) + y.scale(k)
    assert x - x == QSeries.zero(30)
    d = x.first_difference(y)
    assert (d is None) == x.equals(y)
    if d is not None:
        assert x.coeff(d) != y.coeff(d)
