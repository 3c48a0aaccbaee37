from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from siegelcov.exact import (
    LinearSystemError,
    MPoly,
    charpoly,
    format_poly,
    format_rational,
    nullspace,
    parse_rational,
    rank,
    solve_linear,
    sym_action,
    sym_matrix,
    tseries,
    tseries_coeff,
)

small = st.integers(-6, 6)
matrices = st.lists(st.lists(small, min_size=2, max_size=2), min_size=2, max_size=2)


def test_rational_round_trip():
    for q in (Fraction(0), Fraction(-3), Fraction(7, 12), Fraction(-1, 5)):
        assert parse_rational(format_rational(q)) == q
    assert format_rational(Fraction(4, 2)) == "2"


def test_sym_action_examples():
    v = tuple(Fraction(i + 1) for i in range(5))
    assert sym_action([[1, 0], [0, 1]], 4, v) == v
    assert sym_action([[1, 0], [0, -1]], 2, (1, 1, 1)) == (1, -1, 1)
    assert sym_action([[3, -1], [0, 1]], 2, (0, 1, 0)) == (-3, 3, 0)


@given(matrices, matrices, st.integers(0, 6), st.data())
def test_sym_action_functorial(M, N, j, data):
    v = data.draw(st.lists(small, min_size=j + 1, max_size=j + 1))
    MN = [[sum(M[i][t] * N[t][k] for t in range(2)) for k in range(2)] for i in range(2)]
    assert sym_action(MN, j, v) == sym_action(M, j, sym_action(N, j, v))


def test_sym_matrix_shape():
    S = sym_matrix([[1, 2], [3, 4]], 3)
    assert len(S) == 4 and all(len(r) == 4 for r in S)


def test_tseries_examples():
    assert tseries_coeff(12, (4, 6), 12) == 1
    assert tseries_coeff(12, (4, 6), 11) == 0
    assert tseries_coeff(6, (4, 6), 6) == 1
    # 1/(1-t) is all ones
    assert tseries(0, (1,), 5) == [1] * 6


def test_mpoly_arithmetic():
    x, y = MPoly.var("a0"), MPoly.var("a1")
    p = (x + y) ** 2
    assert p == x * x + y * y + x * y * 2
    assert (p - p).terms == {}
    assert p.derivative(0) == x * 2 + y * 2


def test_linear_algebra():
    rows = [[1, 2], [3, 4], [5, 6]]
    assert rank(rows) == 2
    assert solve_linear(rows, [5, 11, 17]) == [1, 2]
    with pytest.raises(LinearSystemError):
        solve_linear(rows, [1, 0, 0])
    with pytest.raises(LinearSystemError):
        solve_linear([[1, 1]], [2])
    (v,) = nullspace([[1, 1, 0], [0, 1, 1]], 3)
    assert v[0] - v[1] + v[2] == 0 or v[0] + v[1] == 0 and v[1] + v[2] == 0


def test_charpoly_and_format():
    assert charpoly([[2, 1], [0, 3]]) == [1, -5, 6]
    assert format_poly([1, 600], "x") == "x + 600"
