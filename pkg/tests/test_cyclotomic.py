from fractions import Fraction

import pytest

from wordcount.cyclotomic import Cyclotomic, cyclotomic_polynomial
from wordcount.errors import NonIntegral


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(2) == (1, 1)
    assert cyclotomic_polynomial(3) == (1, 1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)


def test_root_of_unity_relations():
    z = Cyclotomic.root(6)
    assert z * z * z == -1
    assert sum((Cyclotomic.root(6, k) for k in range(6)),
               Cyclotomic.zero(6)) == 0
    # primitive cube root inside the 6th cyclotomic field
    w = Cyclotomic.root(6, 2)
    assert w * w + w + 1 == 0


def test_arithmetic_and_equality():
    z = Cyclotomic.root(5)
    a = 1 + z + z * z
    b = a - z * z
    assert b == 1 + z
    assert a * 0 == 0
    assert (a - a).is_zero()
    assert 2 * a == a + a


def test_conjugate():
    z = Cyclotomic.root(8)
    v = 3 + 2 * z
    assert v.conjugate() == 3 + 2 * Cyclotomic.root(8, 7)
    # |1 + z|^2 is rational only after reduction: (1+z)(1+z^-1) = 2 + z + z^7
    norm = (1 + z) * (1 + z).conjugate()
    assert not norm.is_rational()  # 2 + sqrt(2) is a real irrationality


def test_rational_extraction():
    z = Cyclotomic.root(3)
    v = (1 + z + z * z) + 5
    assert v.is_rational()
    assert v.to_rational() == 5
    assert v.to_integer() == 5
    with pytest.raises(NonIntegral):
        (1 + z).to_rational()
    with pytest.raises(NonIntegral):
        Cyclotomic.from_rational(3, Fraction(1, 2)).to_integer()


def test_scale_div():
    z = Cyclotomic.root(4)
    v = (2 + 4 * z).scale_div(1, 2)
    assert v == 1 + 2 * z
    assert (3 * z).scale_div(2, 3) == 2 * z


def test_gaussian_integers():
    i = Cyclotomic.root(4)
    assert i * i == -1
    assert (1 + i) * (1 - i) == 2
    assert (2 + i) * (2 + i).conjugate() == 5
