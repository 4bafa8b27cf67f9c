from fractions import Fraction

import pytest

from bratteli.scalars import GaussianRational, exact_sqrt


def test_field_operations():
    a = GaussianRational(Fraction(1, 2), 3)
    b = GaussianRational(2, Fraction(-1, 3))
    assert a + b == GaussianRational(Fraction(5, 2), Fraction(8, 3))
    assert a - b == GaussianRational(Fraction(-3, 2), Fraction(10, 3))
    assert a * b == GaussianRational(2, Fraction(35, 6))
    assert (a / b) * b == a
    assert -a == GaussianRational(Fraction(-1, 2), -3)


def test_conjugation_and_modulus():
    a = GaussianRational(3, -4)
    assert a.conjugate() == GaussianRational(3, 4)
    assert a.abs2() == 25
    assert (a * a.conjugate()) == GaussianRational(25)


def test_coercion_with_plain_numbers():
    a = GaussianRational(2, 1)
    assert a + 1 == GaussianRational(3, 1)
    assert 2 * a == GaussianRational(4, 2)
    assert a - Fraction(1, 2) == GaussianRational(Fraction(3, 2), 1)
    assert GaussianRational(7) == 7


def test_zero_division():
    with pytest.raises(ZeroDivisionError):
        GaussianRational(1) / GaussianRational(0)


def test_hash_agrees_with_equality():
    assert hash(GaussianRational(5)) == hash(5)
    assert hash(GaussianRational(Fraction(1, 2))) == hash(Fraction(1, 2))
    d = {GaussianRational(1, 1): "x"}
    assert d[GaussianRational(1, 1)] == "x"


@pytest.mark.parametrize("value,root", [
    (Fraction(0), Fraction(0)),
    (Fraction(1), Fraction(1)),
    (Fraction(9, 4), Fraction(3, 2)),
    (Fraction(2), None),
    (Fraction(1, 3), None),
    (Fraction(-1), None),
])
def test_exact_sqrt(value, root):
    assert exact_sqrt(value) == root
