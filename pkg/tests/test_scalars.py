from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from graphfp import Scalar

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=9)
scalars = st.builds(Scalar, rationals, rationals)


def test_construction_and_equality():
    assert Scalar.of(3) == Scalar(Fraction(3))
    assert Scalar.from_strings("3/2", "-1") == Scalar(Fraction(3, 2), Fraction(-1))
    assert not Scalar()
    assert Scalar(Fraction(0), Fraction(1))


@given(scalars, scalars, scalars)
def test_field_identities(x, y, z):
    assert x + y == y + x
    assert (x + y) + z == x + (y + z)
    assert x * y == y * x
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x + Scalar() == x
    assert x * Scalar.of(1) == x
    assert x - x == Scalar()


@given(scalars, scalars)
def test_conjugation_is_multiplicative(x, y):
    assert (x * y).conjugate() == x.conjugate() * y.conjugate()
    assert x.conjugate().conjugate() == x


@given(scalars)
def test_division_inverts_multiplication(x):
    if not x.is_zero:
        assert (x * x) / x == x
    q = x / Scalar.of(Fraction(2, 3))
    assert q * Scalar.of(Fraction(2, 3)) == x


def test_text_round_trip_forms():
    assert Scalar().text() == "0"
    assert Scalar.of(Fraction(3, 2)).text() == "3/2"
    assert Scalar(Fraction(0), Fraction(2)).text() == "2i"
    assert Scalar(Fraction(1), Fraction(-1, 2)).text() == "1-1/2i"


def test_int_coercion_in_arithmetic():
    assert Scalar.of(2) * 3 == Scalar.of(6)
    assert 1 + Scalar.of(Fraction(1, 2)) == Scalar.of(Fraction(3, 2))
