from fractions import Fraction

import pytest

from siegelcov.dims import level2_elliptic_dims
from siegelcov.qform1 import (
    QSeries1,
    cusp_basis,
    dim_cusp,
    hecke_Tp_q,
    level1_monomial_basis,
    named_qexp,
    new_charpoly,
    newforms,
)


def test_named_expansions():
    assert named_qexp("delta", 6).to_list(5) == [0, 1, -24, 252, -1472]
    assert named_qexp("e4", 4).to_list(3) == [1, 240, 2160]
    assert named_qexp("e6", 4).to_list(3) == [1, -504, -16632]
    e4, e6, d = (named_qexp(n, 10) for n in ("e4", "e6", "delta"))
    assert (e4 ** 3 - e6 * e6).scale(Fraction(1, 1728)) == d


def test_eta12_half_integral():
    eta12 = named_qexp("eta12", 8)
    assert eta12 ** 2 == named_qexp("delta", 8)
    assert eta12.coeff_Q(1) == 1


def test_series_arithmetic():
    a = QSeries1.from_list([1, 2, 3])
    assert (a + a) == a.scale(2)
    assert (a - a).valuation() is None
    assert a.substitute_power(2).coeff(2) == 2


def test_cusp_basis_examples():
    (d,) = cusp_basis(12, 1, 8)
    assert d == named_qexp("delta", 8).truncate(d.prec)
    assert len(cusp_basis(8, 2, 8)) == 1
    assert dim_cusp(6, 4) == 1


@pytest.mark.parametrize("k", range(4, 31, 2))
def test_dimensions_agree_with_series(k):
    a, b, c = level2_elliptic_dims(k)
    assert dim_cusp(k, 1) == a
    assert len(cusp_basis(k, 2, 2 * k)) == a + b


def test_hecke_on_newform():
    (f8,) = newforms(8, 2)
    g = hecke_Tp_q(f8.qexp, 8, 2, 3)
    assert g == f8.qexp.truncate(g.prec).scale(12)
    assert hecke_Tp_q(QSeries1({}, 12), 8, 2, 3).valuation() is None
    d = named_qexp("delta", 30)
    assert hecke_Tp_q(d, 12, 1, 2) == d.truncate(hecke_Tp_q(d, 12, 1, 2).prec).scale(-24)


def test_newforms_weight_14():
    forms = newforms(14, 2)
    assert [f.fricke_sign for f in forms] == [1, -1]
    assert [int(forms[0].coefficient(n)) for n in range(1, 6)] == [1, -64, -1836, 4096, 3990]
    assert [int(forms[1].coefficient(n)) for n in range(1, 6)] == [1, 64, 1236, 4096, -57450]


def test_newforms_weight_8():
    (f8,) = newforms(8, 2)
    assert f8.fricke_sign == 1 and f8.coefficient(2) == -8


def test_newforms_weight_26():
    forms = newforms(26, 2)
    assert forms[0].degree == 1 and forms[0].coefficient(3) == 97956
    assert forms[1].degree == 2 and forms[1].charpoly_T3 == [1, -379848, -2422412074224]
    cp = new_charpoly(26, 2, 3)
    assert sum(c * 97956 ** (len(cp) - 1 - i) for i, c in enumerate(cp)) == 0


def test_fricke_signs_match_split():
    from siegelcov.dims import fricke_split

    for k in range(8, 31, 2):
        plus = sum(f.degree for f in newforms(k, 2) if f.fricke_sign == 1)
        minus = sum(f.degree for f in newforms(k, 2) if f.fricke_sign == -1)
        assert (plus, minus) == fricke_split(k), k


def test_level4_new_dimension():
    assert dim_cusp(6, 4) - 2 * dim_cusp(6, 2) - dim_cusp(6, 1) == 1


def test_monomial_basis():
    labels = [b for b, _ in level1_monomial_basis(24, 6)]
    assert len(labels) == 3
    assert [b for b, _ in level1_monomial_basis(2, 6)] == []
