import pytest

from siegelcov.dims import (
    PARTITIONS,
    conjecture_table,
    consistency_checks,
    fricke_split,
    level2_elliptic_dims,
    series_coeff,
    yoshida_multiplicity,
)


def test_level2_dims():
    assert level2_elliptic_dims(12) == (1, 1, 1)
    assert level2_elliptic_dims(8) == (0, 1, 0)
    assert level2_elliptic_dims(6) == (0, 0, 1)


def test_fricke_split():
    assert fricke_split(14) == (1, 1)
    assert fricke_split(8) == (1, 0)
    assert fricke_split(26) == (1, 2)
    with pytest.raises(ValueError):
        fricke_split(7)


def test_yoshida_multiplicity():
    assert yoshida_multiplicity(12, (1,) * 6) == 1
    assert yoshida_multiplicity(24, (1,) * 6) == 2
    assert yoshida_multiplicity(24, (2, 2, 2)) == 1
    assert yoshida_multiplicity(24, (1, 1, 2, 1, 1)) == 1  # order of parts is irrelevant
    with pytest.raises(ValueError):
        yoshida_multiplicity(24, (3, 3))
    with pytest.raises(ValueError):
        yoshida_multiplicity(13, (1,) * 6)


def test_conjecture_table():
    for j in range(0, 12, 2):
        assert conjecture_table(j).is_zero()
    t = conjecture_table(12)
    assert t.entries == {PARTITIONS[0]: 1, PARTITIONS[1]: 0, PARTITIONS[2]: 0}
    t = conjecture_table(24)
    assert t.entries == {PARTITIONS[0]: 2, PARTITIONS[1]: 1, PARTITIONS[2]: 1}
    assert t.to_row()["[2,2,2]"] == 1


def test_theorem_series_matches_conjecture():
    for j in range(0, 31, 2):
        assert series_coeff("eps2", j) == yoshida_multiplicity(j, (1,) * 6)
    assert series_coeff("eps2", 12) == 1


def test_consistency_checks():
    report = consistency_checks(30)
    assert len(report) == 32 and all(c.passed for c in report)


def test_undoubled_level1_series_has_odd_mass():
    # the denominator (1-t)(1-t^3)(1-t^4)(1-t^6) gives non-zero odd-j coefficients
    assert series_coeff("level1_j7_odd", 13) != 0
    assert all(series_coeff("level1_j7", j) == 0 for j in range(1, 40, 2))
    assert series_coeff("level1_j7", 12) == 1
