from fractions import Fraction

import pytest

from psl2colmez.cyclotomic.cyclotomic import CycloNumber, conj, cyclotomic_polynomial, exact_sum


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)


@pytest.mark.parametrize("m", [3, 4, 5, 8, 12])
def test_roots_of_unity(m):
    zeta = CycloNumber.zeta(m)
    assert zeta**m == 1
    assert exact_sum(CycloNumber.zeta(m, k) for k in range(m)) == 0


def test_rational_numbers_collapse():
    z = CycloNumber.zeta(3)
    value = z + z.conjugate()
    assert value.is_rational()
    assert value.as_rational() == -1


def test_field_operations():
    z = CycloNumber.zeta(5)
    x = z * 3 + Fraction(1, 2)
    assert x * x.invert() == 1
    assert (x / x) == 1
    assert conj(conj(x)) == x
    assert conj(Fraction(2, 3)) == Fraction(2, 3)


def test_mixed_conductors():
    i = CycloNumber.zeta(4)
    w = CycloNumber.zeta(3)
    assert (i * w) ** 12 == 1
    assert abs((i + w).to_complex() - (1j + complex(-0.5, 3**0.5 / 2))) < 1e-12


def test_string_form():
    assert str(CycloNumber.rational(0)) == "0"
    assert str(CycloNumber.zeta(5, 2)) == "z_5^2"
