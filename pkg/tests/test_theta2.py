import pytest

from siegelcov.fseries2 import PrecisionError, mul
from siegelcov.theta2 import (
    base_form,
    characteristics,
    even_characteristics,
    odd_characteristics,
    theta_constant,
    theta_gradient,
)


def test_characteristic_counts():
    assert len(characteristics()) == 16
    assert len(even_characteristics()) == 10
    assert len(odd_characteristics()) == 6


def test_theta_constant():
    z = even_characteristics()[0]
    assert (z.m1, z.m2) == ((0, 0), (0, 0))
    assert theta_constant(z, 4).coeff((0, 0, 0)) == (1,)
    for m in odd_characteristics():
        with pytest.raises(ValueError):
            theta_constant(m, 4)


def test_theta_gradient():
    for m in odd_characteristics():
        g = theta_gradient(m, 4)
        assert g.j == 1 and g.coeff((0, 0, 0)) == (0, 0)
    with pytest.raises(ValueError):
        theta_gradient(even_characteristics()[0], 4)


def test_base_forms():
    c5 = base_form("chi5", 6)
    assert c5.weight == (0, 5) and c5.character
    assert c5.coeff((1, 1, 1)) == (1,) and c5.coeff((1, -1, 1)) == (-1,)
    c10 = base_form("chi10", 6)
    assert [c10.coeff((2, n, 2))[0] for n in (2, 0, -2)] == [1, -2, 1]
    assert c10.series == mul(c5.series, c5.series)
    c63 = base_form("chi6_3", 6)
    assert c63.series.first_nonzero() == (1, 1, 1)
    assert c63.coeff((1, 1, 1)) == (0, 0, 1, 2, 1, 0, 0)
    p4 = base_form("psi4", 6)
    # only the four characteristics with m' = 0 have a constant term
    assert p4.coeff((0, 0, 0)) == (4,)


def test_support_parity():
    for name, par in (("chi5", 1), ("chi6_3", 1), ("chi10", 0), ("psi4", 0)):
        for n in base_form(name, 6).series.support():
            assert all((x - par) % 2 == 0 for x in n), (name, n)


def test_precision_errors():
    with pytest.raises(PrecisionError):
        base_form("chi5", 1)
    with pytest.raises(KeyError):
        base_form("chi7", 4)
