from fractions import Fraction

import pytest

from simplicity.bits import Bits


def test_float_value():
    assert float(Bits.log2(48)) == pytest.approx(5.584962500721156)
    assert float(Bits.zero()) == 0.0
    assert float(Bits.integer(-3)) == -3.0


def test_arithmetic_is_exact():
    u = Bits.log2(48) - Bits.log2(32)
    assert u.exp2neg() == Fraction(2, 3)
    assert (u + (-u)) == Bits.zero()


def test_ordering():
    assert Bits.log2(3) > Bits.log2(2) > Bits.zero() > Bits.log2(Fraction(1, 4))


def test_rejects_non_positive():
    with pytest.raises(ValueError):
        Bits(Fraction(0))


def test_integral():
    assert Bits.log2(8).is_integral()
    assert Bits.log2(Fraction(1, 4)).is_integral()
    assert not Bits.log2(3).is_integral()
