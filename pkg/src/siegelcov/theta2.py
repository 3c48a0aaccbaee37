"""Genus-two theta constants, odd theta gradients, and the base forms.

Exponents of theta series are quarter-integers, so everything here is built
on the lattice 1/4 (``D = 4``) and the final products are pushed back to the
integral lattice.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from itertools import product
from math import gcd, isqrt

from .fseries2 import FSeries2, mul, PrecisionError

D_THETA = 4


@dataclass(frozen=True)
class ThetaChar:
    m1: tuple[int, int]
    m2: tuple[int, int]

    def __post_init__(self):
        for v in (*self.m1, *self.m2):
            if v not in (0, 1):
                raise ValueError("characteristic entries must be 0 or 1")

    @property
    def parity(self) -> int:
        return (self.m1[0] * self.m2[0] + self.m1[1] * self.m2[1]) % 2

    @property
    def even(self) -> bool:
        return self.parity == 0

    def __str__(self) -> str:
        return "".join(map(str, self.m1)) + "," + "".join(map(str, self.m2))


def characteristics() -> list[ThetaChar]:
    return [ThetaChar((a, b), (c, d)) for a, b, c, d in product((0, 1), repeat=4)]


def even_characteristics() -> list[ThetaChar]:
    return [m for m in characteristics() if m.even]


def odd_characteristics() -> list[ThetaChar]:
    return [m for m in characteristics() if not m.even]


def _half_points(m1: int, P: int) -> list[int]:
    """Values w = 2x + m1 (x integral) with w^2 <= 4P, i.e. v^2 <= P for v = w/2."""
    r = isqrt(4 * P)
    return [w for w in range(-r, r + 1) if (w - m1) % 2 == 0]


def theta_constant(m: ThetaChar, P: int) -> FSeries2:
    """theta_m at z = 0 on the lattice 1/4.

    The lattice points are enumerated exactly (v1^2, v2^2 <= P), so no
    truncation check is needed.
    """
    if not m.even:
        raise ValueError(f"theta constant of the odd characteristic {m} vanishes identically")
    coeffs: dict[tuple[int, int, int], tuple[int]] = {}
    for w1 in _half_points(m.m1[0], P):
        for w2 in _half_points(m.m1[1], P):
            # phase exp(pi i v.m''), 2 v.m'' = w.m''
            s2 = w1 * m.m2[0] + w2 * m.m2[1]
            sign = -1 if (s2 // 2) % 2 else 1
            key = (w1 * w1, 2 * w1 * w2, w2 * w2)
            c = coeffs.get(key, (0,))[0] + sign
            coeffs[key] = (c,)
    return FSeries2(0, coeffs, P, D_THETA)


def theta_gradient(m: ThetaChar, P: int) -> FSeries2:
    """z-gradient at z = 0 of theta_m for odd m, up to a global constant.

    The dropped constant is 2 pi i times the common fourth root of unity
    of the phases, and a factor 1/2 (coordinates are 2v rather than v).
    """
    if m.even:
        raise ValueError(f"characteristic {m} is even; its gradient vanishes at z = 0")
    coeffs: dict[tuple[int, int, int], list[int]] = {}
    for w1 in _half_points(m.m1[0], P):
        for w2 in _half_points(m.m1[1], P):
            s2 = w1 * m.m2[0] + w2 * m.m2[1]  # odd
            sign = -1 if ((s2 - 1) // 2) % 2 else 1
            key = (w1 * w1, 2 * w1 * w2, w2 * w2)
            vec = coeffs.setdefault(key, [0, 0])
            vec[0] += sign * w1
            vec[1] += sign * w2
    return FSeries2(1, {k: tuple(v) for k, v in coeffs.items()}, P, D_THETA)


def _product(series: list[FSeries2]) -> FSeries2:
    # multiply in a balanced tree so operand sizes stay similar
    while len(series) > 1:
        nxt = [mul(series[i], series[i + 1]) for i in range(0, len(series) - 1, 2)]
        if len(series) % 2:
            nxt.append(series[-1])
        series = nxt
    return series[0]


def _primitive(F: FSeries2, index) -> FSeries2:
    """Scale F so the coefficient vector at ``index`` is primitive integral
    with positive first non-zero entry."""
    v = F.coeff(index)
    if not any(v):
        raise PrecisionError(f"normalizing coefficient at {list(index)} vanishes")
    den = reduce(lambda a, b: a * b // gcd(a, b), (c.denominator for c in v), 1)
    ints = [int(c * den) for c in v]
    g = reduce(gcd, (abs(c) for c in ints if c))
    first = next(c for c in ints if c)
    scale = Fraction(den, g) * (1 if first > 0 else -1)
    return F.scale(scale)


_cache: dict[str, FSeries2] = {}


def _base_series(name: str, P: int) -> FSeries2:
    hit = _cache.get(name)
    if hit is not None and hit.prec >= P:
        return hit.truncate(P)
    if name == "chi5":
        F = _product([theta_constant(m, P) for m in even_characteristics()]).reduce_D()
        if F.D != 1:
            raise AssertionError("theta product did not reduce to integral exponents")
        F = F.scale(1 / F.coeff((1, 1, 1))[0])
    elif name == "chi6_3":
        F = _product([theta_gradient(m, P) for m in odd_characteristics()]).reduce_D()
        if F.D != 1:
            raise AssertionError("gradient product did not reduce to integral exponents")
        F = _primitive(F, F.first_nonzero())
    elif name == "chi10":
        c5 = _base_series("chi5", P)
        F = mul(c5, c5)
    elif name == "psi4":
        F = sum((theta_constant(m, P) ** 8 for m in even_characteristics()), FSeries2.zero(0, P, D_THETA))
        F = F.reduce_D()
    else:
        raise KeyError(f"unknown base form {name!r}")
    _cache[name] = F
    return F


BASE_WEIGHTS = {
    "chi5": (0, 5, True),
    "chi6_3": (6, 3, True),
    "chi10": (0, 10, False),
    "psi4": (0, 4, False),
}


def base_form(name: str, P: int):
    from .siegel import SiegelForm

    if name not in BASE_WEIGHTS:
        raise KeyError(f"unknown base form {name!r}; choose from {', '.join(BASE_WEIGHTS)}")
    if P < 2:
        raise PrecisionError("precision must be at least 2 to certify the normalization")
    j, k, chi = BASE_WEIGHTS[name]
    return SiegelForm(j, k, chi, _base_series(name, P), [f"base {name}"])
