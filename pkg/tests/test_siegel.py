from fractions import Fraction

import pytest

from siegelcov import covariant as cov
from siegelcov.fseries2 import NonDivisible, check_iota_symmetry
from siegelcov.siegel import (
    CHI18_EXPR,
    CHI20_EXPR,
    NAMED_IDS,
    RECIPES,
    construct_named,
    mu,
    mu_via_polynomial,
    restrict_and_decompose,
    series_transvectant,
    vanishing_order_diagonal,
)
from siegelcov.theta2 import base_form

CORE_IDS = [n for n in NAMED_IDS if not RECIPES[n].stretch]


def test_mu_of_sextic_is_chi6_3():
    assert mu("C_{1,6}", 5).series == base_form("chi6_3", 5).series


@pytest.mark.parametrize("name", ["C_{2,0}", "C_{2,4}", "C_{3,8}", "C_{4,6}"])
def test_series_route_matches_polynomial_route(name):
    assert mu(name, 4).series == mu_via_polynomial(cov.generator(name), 4).series


def test_weight_rule():
    F = mu("C_{3,12}", 4)
    assert F.weight == (12, 12) and F.character
    G = mu("C_{2,0}", 4)
    assert G.weight == (0, 12) and not G.character
    # vanishing at infinity to order >= a
    assert min(n[0] for n in F.series.support()) >= 3


def test_series_transvectant_antisymmetry():
    F, G = mu("C_{2,4}", 4).series, mu("C_{2,8}", 4).series
    assert series_transvectant(F, G, 1) == -series_transvectant(G, F, 1)


def test_chi12_2_display():
    F = construct_named("chi12_2", 10)
    assert F.weight == (12, 2) and F.character
    assert [int(x) for x in F.coeff((1, 1, 1))] == [0, 0, 0, 2, 9, 12, 0, -12, -9, -2, 0, 0, 0]
    assert F.coeff((1, -1, 1))[9] == 2
    assert F.prec == 10


@pytest.mark.parametrize("name", CORE_IDS)
def test_named_forms_are_symmetric(name):
    F = construct_named(name)
    assert check_iota_symmetry(F.series, F.j, F.k, F.character)
    assert F.prec == RECIPES[name].default_prec
    assert F.provenance[0] == f"construct {name}"


def test_named_weights():
    want = {"chi12_2": (12, 2, True), "chi14_7": (14, 7, False), "chi18_2": (18, 2, True),
            "chi18_7_1": (18, 7, False), "chi18_7_2": (18, 7, False), "chi20_2": (20, 2, True)}
    for name, w in want.items():
        F = construct_named(name, 4)
        assert (F.j, F.k, F.character) == w


def test_unknown_name():
    with pytest.raises(KeyError):
        construct_named("chi99", 4)


def test_vanishing_orders():
    c5 = base_form("chi5", 6)
    assert vanishing_order_diagonal(c5)[0] == 1
    assert vanishing_order_diagonal(c5 * c5)[0] == 2
    d, Q = vanishing_order_diagonal(mu(CHI18_EXPR, 8))
    assert d == 5 and Q.weight == (18, 2) and Q.character
    d, Q = vanishing_order_diagonal(mu(CHI20_EXPR, 8))
    assert d == 6 and Q.weight == (20, 2)


def test_division_failure_is_reported():
    F = construct_named("chi14_7")
    with pytest.raises(NonDivisible):
        F.divide(base_form("chi5", F.prec), "chi5")


def test_restrict_and_decompose():
    assert all(d.is_zero() for d in restrict_and_decompose(base_form("chi10", 6)))
    (d,) = restrict_and_decompose(mu("C_{2,0}", 6))
    assert d.describe() == "-4/5 Delta (x) Delta"
    comps = [d for d in restrict_and_decompose(construct_named("chi14_7")) if not d.is_zero()]
    assert [d.l for d in comps] == [5, 9]
    assert comps[0].describe() == "-56/225 e4*Delta (x) Delta"


def test_psi4_identity():
    F = mu(cov.E4_EXPR, 6)
    c10 = base_form("chi10", 6)
    G = base_form("psi4", 6) * c10 * c10
    assert F.series == G.series.scale(Fraction(1, 90))
