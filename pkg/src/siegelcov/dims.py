"""Dimension bookkeeping: level-2 elliptic isotypic series, Fricke splits,
Yoshida multiplicities and the predicted isotypic tables for S_{j,2}."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

from .exact import tseries_coeff

SERIES = {
    "a": (12, (4, 6)),     # dim S_k(SL_2(Z))
    "b": (8, (2, 6)),      # dim S_k(Gamma_0(2))^new = b_k - a_k
    "c": (6, (4, 6)),      # dim S_k(Gamma_0(4))^new
    "eps2": (12, (6, 8, 12)),        # dim S_{j,2}(Gamma_2, eps), proved for j <= 30
    # dim S_{j,7}(Gamma_2); the form with t^12/((1-t)(1-t^3)(1-t^4)(1-t^6))
    # puts mass on odd j, so the exponents of the denominator are doubled here
    "level1_j7": (12, (2, 6, 8, 12)),
    "level1_j7_odd": (12, (1, 3, 4, 6)),
}

PARTITIONS = ((1, 1, 1, 1, 1, 1), (2, 1, 1, 1, 1), (2, 2, 2))


def series_coeff(name: str, n: int) -> int:
    num, dens = SERIES[name]
    return tseries_coeff(num, dens, n)


def level2_elliptic_dims(k: int) -> tuple[int, int, int]:
    if k < 0:
        raise ValueError("weight must be non-negative")
    return series_coeff("a", k), series_coeff("b", k), series_coeff("c", k)


def dim_level1(k: int) -> int:
    return series_coeff("a", k) if k >= 0 else 0


def fricke_split(k: int) -> tuple[int, int]:
    """(dim S_k^+, dim S_k^-) of S_k(Gamma_0(2))^new."""
    if k % 2 or k <= 2:
        raise ValueError("k must be even and larger than 2")
    a, b, _ = level2_elliptic_dims(k)
    total = b - a
    d = {2: -1, 4: 0, 6: 0, 0: 1}[k % 8]
    if (total + d) % 2:
        raise ArithmeticError(f"parity violation at k={k}: total {total}, difference {d}")
    plus, minus = (total + d) // 2, (total - d) // 2
    if minus < 0 or plus < 0:
        raise ArithmeticError(f"negative eigenspace dimension at k={k}")
    return plus, minus


def _key(partition) -> tuple[int, ...]:
    return tuple(sorted(partition, reverse=True))


def yoshida_multiplicity(j: int, partition) -> int:
    if j % 2 or j < 0:
        raise ValueError("j must be even and non-negative")
    part = _key(partition)
    if part not in PARTITIONS:
        raise ValueError(f"unsupported partition {list(partition)}")
    k = j + 2
    if part == PARTITIONS[1]:
        return comb(series_coeff("c", k), 2)
    if k <= 2:
        return 0
    plus, minus = fricke_split(k)
    if part == PARTITIONS[0]:
        return plus * minus
    return comb(plus, 2) + comb(minus, 2)


@dataclass
class IsotypicTable:
    j: int
    entries: dict[tuple[int, ...], int] = field(default_factory=dict)

    def multiplicity(self, partition) -> int:
        return self.entries.get(_key(partition), 0)

    def is_zero(self) -> bool:
        return not any(self.entries.values())

    def to_row(self) -> dict:
        row = {"j": self.j}
        for p in PARTITIONS:
            row["[" + ",".join(map(str, p)) + "]"] = self.entries.get(p, 0)
        return row


def conjecture_table(j: int) -> IsotypicTable:
    """Predicted isotypic multiplicities of S_{j,2}(Gamma_2[2]) (Yoshida lifts only)."""
    if j % 2:
        raise ValueError("j must be even")
    return IsotypicTable(j, {p: yoshida_multiplicity(j, p) for p in PARTITIONS})


@dataclass
class CheckResult:
    name: str
    j: int
    lhs: int
    rhs: int

    @property
    def passed(self) -> bool:
        return self.lhs == self.rhs


def consistency_checks(jmax: int) -> list[CheckResult]:
    """(i) the eps-series equals the [1^6] Yoshida count;
    (ii) dim S_{j,7} - dim S_{j,2}(eps) matches the diagonal-restriction count."""
    if jmax % 2:
        raise ValueError("jmax must be even")
    out = []
    for j in range(0, min(jmax, 30) + 1, 2):
        eps = series_coeff("eps2", j)
        out.append(CheckResult("eps-series vs Yoshida [1^6]", j, eps, yoshida_multiplicity(j, (1,) * 6)))
        lhs = series_coeff("level1_j7", j) - eps
        rhs = sum(dim_level1(j + 7 - i) * dim_level1(7 + i) for i in range(j // 2))
        rhs += comb(dim_level1(j // 2 + 7), 2)
        out.append(CheckResult("S_{j,7} restriction sequence", j, lhs, rhs))
    return out
