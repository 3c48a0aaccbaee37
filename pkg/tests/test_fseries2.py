import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from siegelcov.fseries2 import (
    FSeries2,
    NonDivisible,
    PrecisionError,
    check_iota_symmetry,
    div_exact,
    div_naive,
    fourier_jacobi,
    in_cone,
    mul,
    mul_naive,
    mul_sum,
    restrict_diagonal,
)
from siegelcov.theta2 import base_form


def random_series(rng, j, P, parity, density=0.5):
    coeffs = {}
    for n1 in range(parity, P + 1, 2):
        for n3 in range(parity, P + 1, 2):
            for n2 in range(-n1 - n3, n1 + n3 + 1):
                if (n2 - parity) % 2 or not in_cone(n1, n2, n3) or rng.random() > density:
                    continue
                coeffs[(n1, n2, n3)] = tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 3))
                                             for _ in range(j + 1))
    return FSeries2.from_rational(j, coeffs, P)


series = st.builds(
    lambda seed, j, parity: random_series(random.Random(seed), j, 5, parity),
    st.integers(0, 10**6), st.integers(0, 2), st.integers(0, 1),
)


@given(series, series)
def test_mul_commutative_and_matches_naive(F, G):
    H = mul(F, G)
    assert H == mul(G, F)
    assert H == mul_naive(F, G)
    assert H.j == F.j + G.j and H.prec == min(F.prec, G.prec)


@given(series, series, series)
def test_mul_associative(F, G, H):
    assert mul(mul(F, G), H) == mul(F, mul(G, H))


@given(series, st.integers(0, 10**6), st.integers(0, 10**6), st.integers(0, 2))
def test_mul_sum(F, s1, s2, j):
    # every pair must have the same factor lengths
    G = random_series(random.Random(s1), j, 5, 0)
    H = random_series(random.Random(s2), j, 5, 1)
    assert mul_sum([(2, F, G), (-1, F, H)]) == mul(F, G).scale(2) - mul(F, H)


def test_mul_examples():
    c5 = base_form("chi5", 4).series
    assert mul(c5, FSeries2.zero(0, 4)).is_zero()
    sq = mul(c5, c5)
    assert [sq.coeff((2, n2, 2))[0] for n2 in (2, 0, -2)] == [1, -2, 1]
    G = base_form("chi6_3", 4).series
    assert mul(FSeries2.from_rational(0, {(0, 0, 0): (Fraction(3),)}, 4), G) == G.scale(3)


def test_div_round_trips_100_cases():
    rng = random.Random(2024)
    c5 = base_form("chi5", 7).series
    for _ in range(100):
        X = random_series(rng, rng.randint(0, 2), 7, rng.randint(0, 1), density=0.3)
        Q = div_exact(mul(X, c5), c5)
        assert Q.prec == 6
        assert Q == X.truncate(6)


def test_div_matches_naive_and_chi10():
    c5, c10 = base_form("chi5", 8).series, base_form("chi10", 8).series
    assert div_exact(c10, c5) == c5.truncate(7)
    rng = random.Random(5)
    X = random_series(rng, 2, 6, 1)
    F = mul(X, c5.truncate(6))
    assert div_exact(F, c5.truncate(6)) == div_naive(F, c5.truncate(6))
    Q = div_exact(c10, c10)
    assert Q.prec == 6 and Q.coeff((0, 0, 0)) == (1,)


def test_non_divisible():
    with pytest.raises(NonDivisible):
        div_exact(base_form("psi4", 6).series, base_form("chi5", 6).series)
    c5 = base_form("chi5", 6).series
    F = mul(c5, c5) + FSeries2.from_rational(0, {(4, 1, 4): (Fraction(1),)}, 6)
    with pytest.raises(NonDivisible):
        div_exact(F, c5)


def test_precision_guard():
    c5 = base_form("chi5", 4).series
    with pytest.raises(PrecisionError):
        c5.coeff((5, 1, 1))
    with pytest.raises(PrecisionError):
        fourier_jacobi(c5, 5)


def test_restriction():
    c5, c10, p4 = (base_form(n, 8).series for n in ("chi5", "chi10", "psi4"))
    assert restrict_diagonal(c5).is_zero()
    assert restrict_diagonal(c10).is_zero()
    R = restrict_diagonal(p4)
    assert all(len(v) == 1 for v in R.table.values())


def _table_product(R, S, P):
    out = {}
    for (a, c), u in R.table.items():
        for (b, d), v in S.table.items():
            if a + b <= P and c + d <= P:
                key = (a + b, c + d)
                prev = out.get(key, Fraction(0))
                out[key] = prev + u[0] * v[0]
    return {k: (v,) for k, v in out.items() if v}


def test_restriction_is_multiplicative():
    p4 = base_form("psi4", 6).series
    G = mul(p4, p4)
    lhs = {k: v for k, v in restrict_diagonal(G).table.items()}
    R = restrict_diagonal(p4)
    assert lhs == _table_product(R, R, 6)


def test_fourier_jacobi():
    c5 = base_form("chi5", 6).series
    fj = fourier_jacobi(c5, 1)
    assert fj[(1, 1)] == (1,) and fj[(1, -1)] == (-1,)
    assert fourier_jacobi(c5, 0) == {}
    total = sum(len(fourier_jacobi(c5, m)) for m in range(7))
    assert total == c5.nterms()


def test_iota_symmetry_examples():
    for name in ("chi5", "chi6_3", "chi10", "psi4"):
        F = base_form(name, 6)
        assert check_iota_symmetry(F.series, F.j, F.k, F.character)
    c5 = base_form("chi5", 6).series
    assert c5.coeff((1, -1, 1)) == (-1,)
    broken = c5 + FSeries2.from_rational(0, {(1, 3, 3): (Fraction(1),)}, 6)
    assert not check_iota_symmetry(broken, 0, 5, True)


def test_json_round_trip():
    F = base_form("chi6_3", 5).series
    obj = json.loads(F.to_json(k=3, character=True))
    assert obj["coeffs"]["1,1,1"] == ["0", "0", "1", "2", "1", "0", "0"]
    assert FSeries2.from_json_obj(obj) == F
    T = random_series(random.Random(9), 1, 4, 0)
    T = FSeries2.from_rational(1, {(Fraction(1, 2), 0, Fraction(1, 2)): (Fraction(1, 3), Fraction(2))}, 4, D=2)
    assert FSeries2.from_json_obj(json.loads(T.to_json())) == T


def test_cone_invariant():
    F = base_form("chi6_3", 6).series
    for n in F.support():
        assert in_cone(*n)
