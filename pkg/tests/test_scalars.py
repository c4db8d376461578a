import math

import pytest
from hypothesis import given, strategies as st

from nilherm.scalars import (
    I,
    ModeError,
    QQi,
    Radical,
    exact_from_float,
    exact_sqrt,
    parse_rational,
    rationalize,
)

rats = st.fractions(max_denominator=50).map(lambda f: f"{f.numerator}/{f.denominator}")
qqis = st.builds(QQi.parse, rats, rats)


def test_parse_forms():
    assert parse_rational("3/6") == parse_rational("1/2") == parse_rational("0.5")
    assert parse_rational(7) == 7
    with pytest.raises(ValueError):
        parse_rational("pi")


def test_str():
    assert str(QQi(1, "1/3")) == "(1+1/3i)"
    assert str(I) == "i"
    assert str(QQi(-2)) == "-2"


@given(qqis, qqis, qqis)
def test_field_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    if b:
        assert (a / b) * b == a
    assert (a * b).conjugate() == a.conjugate() * b.conjugate()
    assert (a * a.conjugate()).is_real()


def test_mixed_mode_rejected():
    with pytest.raises(ModeError):
        QQi(1) + 1.5
    with pytest.raises(ModeError):
        QQi(1) * complex(1, 1)


def test_sqrt_exact_and_radical():
    assert exact_sqrt(QQi("9/4")) == QQi("3/2")
    r = exact_sqrt(QQi(2))
    assert isinstance(r, Radical)
    assert r * r == QQi(2)
    assert r * exact_sqrt(QQi(8)) == QQi(4)
    assert not (r - r)
    assert math.isclose(float(r), math.sqrt(2))
    assert (1 / r) * r == QQi(1)
    s = r + exact_sqrt(QQi(3))
    assert s and s - exact_sqrt(QQi(3)) == r


def test_rationalize():
    assert rationalize(0.3333333333) == QQi("1/3")
    assert rationalize(complex(0.5, -0.25)) == QQi("1/2", "-1/4")
    assert exact_from_float(0.1) != QQi("1/10")
    assert float(exact_from_float(0.1)) == 0.1
