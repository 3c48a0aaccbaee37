from fractions import Fraction

import pytest

from siegelcov.hecke2 import (
    NotEigenform,
    charpoly_hecke,
    eigenvalue_Tp,
    eigenvalue_Tp2,
    lift_check,
    required_precision,
    saito_kurokawa_check,
    yoshida_check,
    yoshida_p2,
)
from siegelcov.fseries2 import PrecisionError
from siegelcov.siegel import construct_named
from siegelcov.theta2 import base_form


@pytest.fixture(scope="module")
def chi12():
    return construct_named("chi12_2", 10)


def test_eigenvalues(chi12):
    assert eigenvalue_Tp(chi12, 3) == -600
    assert eigenvalue_Tp(chi12, 5) == -53460
    assert eigenvalue_Tp(chi12, 7) == -369200
    assert eigenvalue_Tp2(chi12, 3) == -1090791
    assert charpoly_hecke([chi12], 3) == [1, 600]


def test_chi5():
    c5 = base_form("chi5", 9)
    assert eigenvalue_Tp(c5, 3) == 120
    lam = Fraction(120)
    assert eigenvalue_Tp2(c5, 3) == lam * lam - (81 + 27) * lam + 3 ** 8
    assert charpoly_hecke([c5], 3) == [1, -120]


def test_lift_checks(chi12):
    assert lift_check("saito_kurokawa", base_form("chi5", 9), 3, 12).passed
    r = lift_check("yoshida", chi12, 5, (3990, -57450))
    assert r.passed and r.details["lambda_p"] == -53460
    assert not yoshida_check(chi12, 3, 1236, 1236).passed
    with pytest.raises(ValueError):
        lift_check("ikeda", chi12, 3, 0)


def test_yoshida_p2_constant(chi12):
    # the constant 2p+1 reproduces lambda_9; 2(p+1) does not
    assert yoshida_p2(-1836, 1236, 3, 12) == -1090791
    assert yoshida_p2(-1836, 1236, 3, 12, "2(p+1)") != -1090791


def test_errors(chi12):
    with pytest.raises(PrecisionError):
        eigenvalue_Tp(construct_named("chi12_2", 4), 5)
    with pytest.raises(ValueError):
        eigenvalue_Tp(chi12, 9)
    with pytest.raises(NotImplementedError):
        eigenvalue_Tp2(chi12, 7)
    with pytest.raises(ValueError):
        eigenvalue_Tp(base_form("chi10", 4), 3)
    with pytest.raises(NotEigenform):
        eigenvalue_Tp(chi12.scale(0), 3)
    assert required_precision(3, True) == 9 and required_precision(5) == 5


def test_not_eigenform():
    A, B = construct_named("chi24_2_1", 4), construct_named("chi24_2_2", 4)
    with pytest.raises(NotEigenform):
        eigenvalue_Tp(A, 3)
    assert charpoly_hecke([A, B], 3) == [1, -575760, -2375608305600]


def test_saito_kurokawa_p7_skips_square():
    r = saito_kurokawa_check(base_form("chi5", 7), 7, 1016)
    assert r.passed and str(r.details["lambda_p2"]).startswith("skipped")
