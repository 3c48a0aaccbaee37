"""From covariants to Siegel modular forms: the map mu, named constructions,
divisibility by chi_5 along the diagonal, and restriction to H_1 x H_1.

mu sends the universal sextic to chi_{6,3}; a covariant of degree (a, b)
goes to a form of weight (b, 6a - b/2) with character eps^a.  Because mu is
a ring map on the coefficients a_i, it commutes with transvectants, so the
generators are built directly on Fourier series by replaying the table
recipes with the vector-valued series in place of the sextic.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial

from . import covariant as cov
from .fseries2 import (
    FSeries2,
    NonDivisible,
    PrecisionError,
    div_exact,
    mul,
    mul_sum,
    restrict_diagonal,
)

log = logging.getLogger(__name__)


@dataclass
class SiegelForm:
    j: int
    k: int
    character: bool
    series: FSeries2
    provenance: list[str] = field(default_factory=list)

    @property
    def prec(self) -> int:
        return self.series.prec

    @property
    def weight(self) -> tuple[int, int]:
        return (self.j, self.k)

    def coeff(self, n) -> tuple[Fraction, ...]:
        return self.series.coeff(n)

    def __repr__(self) -> str:
        chi = ", eps" if self.character else ""
        return f"SiegelForm(({self.j},{self.k}){chi}, prec={self.prec})"

    def scale(self, c, note: str | None = None) -> "SiegelForm":
        c = Fraction(c)
        return SiegelForm(self.j, self.k, self.character, self.series.scale(c),
                          self.provenance + [note or f"scale {c}"])

    def __mul__(self, other: "SiegelForm") -> "SiegelForm":
        return SiegelForm(self.j + other.j, self.k + other.k, self.character != other.character,
                          mul(self.series, other.series),
                          self.provenance + [f"times form of weight {other.weight}"])

    def __add__(self, other: "SiegelForm") -> "SiegelForm":
        if (self.j, self.k, self.character) != (other.j, other.k, other.character):
            raise ValueError("cannot add forms of different weight or character")
        return SiegelForm(self.j, self.k, self.character, self.series + other.series,
                          self.provenance + ["plus another form"])

    def divide(self, g: "SiegelForm", label: str = "form") -> "SiegelForm":
        if g.j:
            raise ValueError("only scalar-valued divisors are supported")
        q = div_exact(self.series, g.series)
        return SiegelForm(self.j, self.k - g.k, self.character != g.character, q,
                          self.provenance + [f"divided by {label}"])

    def is_zero(self) -> bool:
        return self.series.is_zero()

    def to_json_obj(self) -> dict:
        obj = self.series.to_json_obj(k=self.k, character=self.character)
        obj["provenance"] = list(self.provenance)
        return obj


def _chi5(P: int) -> SiegelForm:
    from .theta2 import base_form

    return base_form("chi5", P)


# --- mu -------------------------------------------------------------------------


def series_transvectant(F: FSeries2, G: FSeries2, k: int) -> FSeries2:
    """Transvectant of two vector-valued series viewed as binary forms."""
    m, n = F.j, G.j
    if k > min(m, n):
        raise ValueError(f"transvectant order {k} exceeds the degrees {m}, {n}")
    pref = Fraction(factorial(m - k) * factorial(n - k), factorial(m) * factorial(n))
    pairs = [((-1) ** i * comb(k, i) * pref, F.xderiv(k - i, i), G.xderiv(i, k - i))
             for i in range(k + 1)]
    return mul_sum(pairs)


_gen_cache: dict[str, FSeries2] = {}


def generator_series(names, P: int) -> dict[str, FSeries2]:
    """mu-images of the named generators, to precision P."""
    from .theta2 import base_form

    names = list(names)
    have = {n: s.truncate(P) for n, s in _gen_cache.items() if s.prec >= P}
    if all(n in have for n in names):
        return {n: have[n] for n in names}
    base = have.get("C_{1,6}") or base_form("chi6_3", P).series

    def transvect(F, G, k):
        return series_transvectant(F, G, k)

    seeded = dict(have)
    seeded["C_{1,6}"] = base

    # replay recipes, re-using anything already known at this precision
    def get(name):
        if name in seeded:
            return seeded[name]
        _, _, (left, right, k) = cov.GENERATOR_TABLE[name]
        seeded[name] = transvect(operand(left), operand(right), k)
        log.debug("built series for %s at precision %d", name, P)
        return seeded[name]

    def operand(op):
        if isinstance(op, tuple):
            return get(op[0]) ** op[1]
        return get(op)

    out = {n: get(n) for n in names}
    for n, s in seeded.items():
        old = _gen_cache.get(n)
        if old is None or old.prec < s.prec:
            _gen_cache[n] = s
    return out


def clear_caches() -> None:
    from . import theta2

    _gen_cache.clear()
    theta2._cache.clear()


def _const_series(c: Fraction, P: int) -> FSeries2:
    return FSeries2.from_rational(0, {(0, 0, 0): (c,)}, P)


def mu(e, P: int) -> SiegelForm:
    """Image of a covariant expression (text or AST) under mu, to precision P."""
    text = e if isinstance(e, str) else None
    if isinstance(e, str):
        e = cov.parse_expr(e)
    a, b = cov.expr_bidegree(e)
    gens = generator_series(cov.generator_names(e), P)
    series = cov.fold_expr(
        e,
        leaf=lambda name: gens[name],
        const=lambda c: _const_series(c, P),
        add=lambda x, y: x + y,
        mul=mul,
        scale=lambda x, c: x.scale(c),
    )
    if series.j != b:
        raise AssertionError("vector length of the mu-image disagrees with the covariant degree")
    if b % 2:
        raise ValueError("covariants of odd x-degree do not give modular forms")
    return SiegelForm(b, 6 * a - b // 2, a % 2 == 1, series,
                      [f"mu({text if text is not None else 'expr'}) of degree ({a},{b})"])


def mu_via_polynomial(c: cov.Covariant, P: int) -> SiegelForm:
    """Reference route: substitute a_i <- chi_{6,3}[i] / C(6, i) into the
    expanded covariant polynomial.  Slow; used to cross-check :func:`mu`."""
    from .exact import X2, unpack_exponents
    from .theta2 import base_form

    chi = base_form("chi6_3", P).series
    a_series = [chi.component(i).scale(Fraction(1, comb(6, i))) for i in range(7)]
    powers: dict[tuple[int, int], FSeries2] = {}

    def power(i, e):
        key = (i, e)
        if key not in powers:
            powers[key] = a_series[i] if e == 1 else mul(power(i, e - 1), a_series[i])
        return powers[key]

    comps = [FSeries2.zero(0, P) for _ in range(c.deg_x + 1)]
    for key, coef in c.poly.terms.items():
        ex = unpack_exponents(key)
        term = _const_series(coef, P)
        for i in range(7):
            if ex[i]:
                term = mul(term, power(i, ex[i]))
        comps[ex[X2]] = comps[ex[X2]] + term
    series = FSeries2.from_components(comps)
    a, b = c.deg_a, c.deg_x
    return SiegelForm(b, 6 * a - b // 2, a % 2 == 1, series, ["mu by polynomial substitution"])


# --- named constructions ----------------------------------------------------------

CHI18_EXPR = ("135 C_{1,6}^2C_{4,6} + 56 C_{1,6}C_{2,0}C_{3,12} - 270 C_{2,8}C_{4,10}"
              " - 930 C_{3,6}C_{3,12}")
CHI18_7_1_EXPR = "C_{3,12}(8 C_{1,6}C_{2,0} - 75 C_{3,6})"
CHI18_7_2_EXPR = "C_{1,6}^2 C_{4,6} - 2 C_{2,8}C_{4,10} - 3 C_{3,6}C_{3,12}"
CHI20_EXPR = ("224 C_{1,6}^2C_{5,8} + 312 C_{1,6}C_{2,4}C_{4,10} - 560 C_{1,6}C_{2,8}C_{4,6}"
              " - 108 C_{1,6}C_{3,6}C_{3,8} + 728 C_{2,0}C_{2,8}C_{3,12} - 1235 C_{2,4}^2C_{3,12}")
CHI24_C1_EXPR = (
    "-499408 C_{1,6}^2C_{2,0}^2C_{3,12} - 1505385 C_{1,6}^3C_{6,6}^{(1)}"
    " - 14727825 C_{1,6}^2C_{2,4}C_{5,8} + 6916455 C_{1,6}^2C_{2,8}C_{5,4}"
    " - 5728590 C_{1,6}^2C_{3,12}C_{4,0} + 6972210 C_{1,6}C_{2,0}C_{2,8}C_{4,10}"
    " + 4257120 C_{1,6}C_{2,0}C_{3,6}C_{3,12}"
    " + 2182950 C_{2,8}^2C_{5,8} + 11708550 C_{2,8}C_{3,6}C_{4,10} + 595350 C_{2,8}C_{3,12}C_{4,4}"
    " + 35171325 C_{3,6}^2C_{3,12} - 400950 C_{3,8}^3"
)
CHI24_C2_EXPR = (
    "-42235648 C_{1,6}^2C_{2,0}^2C_{3,12} + 4434583545 C_{1,6}^3C_{6,6}^{(1)}"
    " + 580982220 C_{1,6}^3C_{6,6}^{(2)}"
    " + 4919972400 C_{1,6}^2C_{2,4}C_{5,8} + 4827362400 C_{1,6}^2C_{3,12}C_{4,0}"
    " - 3504891600 C_{1,6}C_{2,0}C_{2,8}C_{4,10}"
    " + 1245336960 C_{1,6}C_{2,0}C_{3,6}C_{3,12} - 4131252720 C_{2,8}^2C_{5,8}"
    " - 24904998720 C_{2,8}C_{3,6}C_{4,10}"
    " - 281640240 C_{2,8}C_{3,12}C_{4,4} - 58751907480 C_{3,6}^2C_{3,12} + 1375354080 C_{3,8}^3"
)
CHI36_EXPR = ("297 C_{1,6}^2C_{3,8}^3 - 8316 C_{1,6}C_{3,8}C_{3,12}C_{4,10}"
              " + 4116 C_{1,6}C_{3,12}^2C_{4,6} - 5488 C_{2,0}C_{3,12}^3"
              " + 9030 C_{2,4}C_{3,8}C_{3,12}^2")


@dataclass(frozen=True)
class Recipe:
    expr: str
    divisor: str          # "chi5" or "chi10"
    power: int
    default_prec: int
    stretch: bool = False
    # normalization: ("coeff", triple, index, value) or ("scalar", value)
    normalization: tuple | None = None


RECIPES: dict[str, Recipe] = {
    "chi12_2": Recipe("C_{3,12}", "chi10", 1, 10, normalization=("coeff", (1, 1, 1), 3, 2)),
    "chi14_7": Recipe("C_{1,6}C_{3,8}", "chi5", 2, 8),
    "chi18_2": Recipe(CHI18_EXPR, "chi5", 5, 8),
    "chi18_7_1": Recipe(CHI18_7_1_EXPR, "chi5", 4, 8),
    "chi18_7_2": Recipe(CHI18_7_2_EXPR, "chi5", 4, 8),
    "chi20_2": Recipe(CHI20_EXPR, "chi5", 6, 8),
    # +12150 (not -12150) makes the coefficients and the T_3 eigenbasis
    # 439 chi24_2_1 + (114847 +- 650 sqrt(106705)) chi24_2_2 consistent
    "chi24_2_1": Recipe(CHI24_C1_EXPR, "chi5", 8, 12, True, ("scalar", Fraction(12150))),
    "chi24_2_2": Recipe(f"5368({CHI24_C1_EXPR}) + 5({CHI24_C2_EXPR})", "chi5", 8, 12, True,
                        ("scalar", Fraction(-675, 31528))),
    # level one without character: the half-integral 1_2 is the index (2,2,2)
    "chi36_3": Recipe(CHI36_EXPR, "chi5", 9, 10, True, ("coeff", (2, 2, 2), 7, Fraction(32, 6089428125))),
}

NAMED_IDS = tuple(RECIPES)


def divisor_loss(recipe: Recipe) -> int:
    return recipe.power * (2 if recipe.divisor == "chi10" else 1)


def construct_named(name: str, P: int | None = None) -> SiegelForm:
    """Build a named form to certified precision P (recipe default if None)."""
    from .theta2 import base_form

    try:
        r = RECIPES[name]
    except KeyError:
        raise KeyError(f"unknown form {name!r}; choose from {', '.join(RECIPES)}") from None
    if P is None:
        P = r.default_prec
    loss = divisor_loss(r)
    F = mu(r.expr, P + loss)
    F.provenance[-1] = f"mu of the recipe for {name}, degree {cov.expr_bidegree(cov.parse_expr(r.expr))}"
    D = base_form(r.divisor, P + loss)
    for _ in range(r.power):
        F = F.divide(D, r.divisor)
    if r.normalization is not None:
        if r.normalization[0] == "coeff":
            _, n, i, value = r.normalization
            c = F.coeff(n)[i]
            if not c:
                raise PrecisionError(f"normalizing coefficient a({list(n)})[{i}] vanishes")
            F = F.scale(Fraction(value) / c, f"normalized so a({list(n)})[{i}] = {value}")
        else:
            F = F.scale(r.normalization[1], f"scaled by {r.normalization[1]}")
    F.provenance.insert(0, f"construct {name}")
    return F


# --- divisibility along the diagonal --------------------------------------------


def vanishing_order_diagonal(F: SiegelForm) -> tuple[int, SiegelForm]:
    """Number of times F divides by chi_5, with the final quotient.

    A non-zero diagonal restriction certifies that the next division fails,
    since chi_5 vanishes on the diagonal; otherwise the division is tried
    and a NonDivisible stops the count.
    """
    d = 0
    while True:
        if not restrict_diagonal(F.series).is_zero():
            return d, F
        if F.prec < 2:
            log.warning("precision exhausted after %d divisions; order is at least %d", d, d)
            return d, F
        try:
            Q = F.divide(_chi5(F.prec), "chi5")
        except NonDivisible:
            return d, F
        d += 1
        F = Q


# --- restriction to the diagonal -----------------------------------------------------


@dataclass
class ComponentDecomposition:
    l: int
    weights: tuple[int, int]
    basis_left: list[str]
    basis_right: list[str]
    # coefficient of basis_left[a] (x) basis_right[b]
    coefficients: dict[tuple[int, int], Fraction]

    def is_zero(self) -> bool:
        return not any(self.coefficients.values())

    def describe(self) -> str:
        parts = []
        for (a, b), c in sorted(self.coefficients.items()):
            if c:
                parts.append(f"{c} {self.basis_left[a]} (x) {self.basis_right[b]}")
        return " + ".join(parts) if parts else "0"


def restrict_and_decompose(F: SiegelForm) -> list[ComponentDecomposition]:
    """Express each component of the diagonal restriction in tensor bases.

    Component l lies in M_{j+k-l} (x) M_{k+l}; without character the level-one
    bases are monomials in e4, e6, Delta, with the character the relevant
    part is eta^12 times level-one forms.
    """
    from .exact import LinearSystemError, solve_linear
    from .qform1 import level1_monomial_basis

    R = restrict_diagonal(F.series)
    P = F.prec
    out = []
    shift = 6 if F.character else 0
    for l in range(F.j + 1):
        w1, w2 = F.j + F.k - l, F.k + l
        B1 = level1_monomial_basis(w1 - shift, P, eta12=F.character)
        B2 = level1_monomial_basis(w2 - shift, P, eta12=F.character)
        comp = {key: v[l] for key, v in R.table.items() if v[l]}
        if not B1 or not B2:
            if comp:
                raise LinearSystemError(f"component {l} is non-zero but its target space is zero")
            out.append(ComponentDecomposition(l, (w1, w2), [b for b, _ in B1], [b for b, _ in B2], {}))
            continue
        # exponents in units of e^{pi i tau}: q = Q^2, eta^12 starts at Q^1
        cells = [(n1, n3) for n1 in range(P + 1) for n3 in range(P + 1)]
        rows, rhs = [], []
        for n1, n3 in cells:
            rows.append([s1.coeff_Q(n1) * s2.coeff_Q(n3) for _, s1 in B1 for _, s2 in B2])
            rhs.append(comp.get((n1, n3), Fraction(0)))
        try:
            sol = solve_linear(rows, rhs)
        except LinearSystemError as exc:
            raise LinearSystemError(f"component {l}: {exc}") from None
        coeffs = {}
        for idx, c in enumerate(sol):
            coeffs[divmod(idx, len(B2))] = c
        out.append(ComponentDecomposition(l, (w1, w2), [b for b, _ in B1], [b for b, _ in B2], coeffs))
    return out
