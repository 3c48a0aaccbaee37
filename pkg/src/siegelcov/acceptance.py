"""Acceptance runner: each criterion is a list of exact checks.

A check that reproduces a quoted value that exact computation refutes
carries a ``conflict`` tag; it is still reported as FAIL, next to the check
of the corrected value.  The runner's overall verdict ignores only those
tagged items.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

CHI12_2_VECTORS = {
    (1, 1, 1): [0, 0, 0, 2, 9, 12, 0, -12, -9, -2, 0, 0, 0],
    (1, 3, 3): [0, 0, 0, -2, -27, -156, -504, -996, -1233, -934, -396, -72, 0],
    (3, 3, 3): [0, 216, 1188, 258, -7749, -12708, 0, 12708, 7749, -258, -1188, -216, 0],
    (5, 5, 5): [0, 0, 0, -106920, -481140, -641520, 0, 641520, 481140, 106920, 0, 0, 0],
    (1, 5, 7): [0, 0, 0, 2, 45, 444, 2520, 9060, 21375, 33046, 32220, 17928, 4320],
    (7, 7, 7): [0, -8208, -45144, -542204, -2101338, -2711496, 0, 2711496, 2101338, 542204,
                45144, 8208, 0],
    (3, 9, 7): [0, -72, -1188, -8854, -39339, -115764, -236880, -343884, -354141, -253514,
                -120132, -33912, -4320],
}

CHI12_2_EIGENVALUES = {3: -600, 5: -53460, 7: -369200}
CHI12_2_LAMBDA9 = -1090791
CHI12_2_STRETCH_EIGENVALUES = {11: 4084344, 13: -2845700, 17: 131681700}

F8_QEXP = [1, -8, 12, 64, -210]
F14_PLUS_QEXP = [1, -64, -1836, 4096, 3990]
F14_MINUS_QEXP = [1, 64, 1236, 4096, -57450]
F26_RATIONAL_A3 = 97956

CHI24_T3_CHARPOLY = [1, -575760, -2375608305600]
CHI24_1_A111 = [0, 0, 0, 104, 1092, 3640, 0, -27678, -58905, -2916, 148470, 190778, 0]
CHI24_2_A111 = [0, 0, 0, 0, 0, 0, 0, 2, 17, 60, 110, 98, 0]
CHI36_LAMBDA5 = -20360440776900
CHI36_A = (Fraction(32, 6089428125), Fraction(464, 6089428125))
CHI36_B = (Fraction(-8687121398144, 81192375), Fraction(-125963260273088, 81192375))


@dataclass
class Item:
    label: str
    passed: bool
    detail: str = ""
    conflict: str | None = None


@dataclass
class Criterion:
    number: int
    title: str
    items: list[Item] = field(default_factory=list)
    seconds: float = 0.0
    error: str | None = None

    @property
    def passed(self) -> bool:
        return self.error is None and all(i.passed for i in self.items)

    @property
    def acceptable(self) -> bool:
        """True when every failure is a tagged conflict with a quoted value."""
        return self.error is None and all(i.passed or i.conflict for i in self.items)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        n_ok = sum(i.passed for i in self.items)
        text = f"[{status}] criterion {self.number}: {self.title} ({n_ok}/{len(self.items)} checks, {self.seconds:.1f} s)"
        if self.error:
            text += f"; error: {self.error}"
        for i in self.items:
            if not i.passed:
                text += f"; failed: {i.label}"
                if i.conflict:
                    text += f" [conflict: {i.conflict}]"
        return text

    def to_json_obj(self) -> dict:
        return {
            "criterion": self.number,
            "title": self.title,
            "passed": self.passed,
            "seconds": round(self.seconds, 3),
            "error": self.error,
            "checks": [{"label": i.label, "passed": i.passed, "detail": i.detail,
                        "conflict": i.conflict} for i in self.items],
        }


def _vec(v) -> list:
    return [int(x) if x.denominator == 1 else x for x in v]


# --- criteria -------------------------------------------------------------------------


def criterion_1() -> list[Item]:
    from .fseries2 import check_iota_symmetry
    from .siegel import construct_named

    F = construct_named("chi12_2", 10)
    items = []
    for n, want in CHI12_2_VECTORS.items():
        got = _vec(F.coeff(n))
        items.append(Item(f"a({list(n)})", got == want, "" if got == want else f"got {got}"))
    items.append(Item("iota symmetry", check_iota_symmetry(F.series, F.j, F.k, F.character)))
    return items


def criterion_2(stretch: bool = False) -> list[Item]:
    from .hecke2 import eigenvalue_Tp, eigenvalue_Tp2
    from .siegel import construct_named

    items = []
    F = construct_named("chi12_2", 17 if stretch else 10)
    table = dict(CHI12_2_EIGENVALUES)
    if stretch:
        table.update(CHI12_2_STRETCH_EIGENVALUES)
    for p, want in table.items():
        lam = eigenvalue_Tp(F, p)
        items.append(Item(f"lambda_{p} = {want}", lam == want, f"got {lam}"))
    lam9 = eigenvalue_Tp2(F, 3)
    items.append(Item(f"lambda_9 = {CHI12_2_LAMBDA9}", lam9 == CHI12_2_LAMBDA9, f"got {lam9}"))
    return items


def criterion_3() -> list[Item]:
    from .hecke2 import eigenvalue_Tp2, saito_kurokawa_check, yoshida_check, yoshida_p2
    from .qform1 import newforms
    from .siegel import construct_named
    from .theta2 import base_form

    items = []
    (f8,) = newforms(8, 2)
    c5 = base_form("chi5", 25)
    for p in (3, 5, 7):
        r = saito_kurokawa_check(c5, p, int(f8.coefficient(p)))
        label = f"Saito-Kurokawa chi5, p={p}"
        if p % 3 == 1:
            label += " (lambda_p only: no T_{p^2} coefficient formula for p = 1 mod 3)"
        items.append(Item(label, r.passed, str(r.details)))

    fplus, fminus = sorted(newforms(14, 2), key=lambda f: -f.fricke_sign)
    F = construct_named("chi12_2", 25)
    for p in (3, 5, 7):
        af, ag = int(fplus.coefficient(p)), int(fminus.coefficient(p))
        r = yoshida_check(F, p, af, ag)
        label = f"Yoshida chi12_2, p={p}"
        if p % 3 == 1:
            label += " (lambda_p only: no T_{p^2} coefficient formula for p = 1 mod 3)"
        items.append(Item(label, r.passed, str(r.details)))
    for p in (3, 5):
        af, ag = int(fplus.coefficient(p)), int(fminus.coefficient(p))
        lam2 = eigenvalue_Tp2(F, p)
        want = yoshida_p2(af, ag, p, F.j, "2(p+1)")
        items.append(Item(f"Yoshida lambda_{p * p} with constant 2(p+1)", lam2 == want,
                          f"lambda = {lam2}, formula gives {want}", conflict="yoshida-p2-constant"))
    # negative control: swapping in the wrong form must fail
    bad = yoshida_check(F, 3, int(fplus.coefficient(3)), int(fplus.coefficient(3)))
    items.append(Item("Yoshida negative control fails", not bad.passed))
    return items


def criterion_4() -> list[Item]:
    import sympy as sp

    from .qform1 import newforms, new_charpoly

    items = []
    (f8,) = newforms(8, 2)
    items.append(Item("f8 through q^5", _vec(f8.qexp.to_list(6)[1:]) == F8_QEXP,
                      str(_vec(f8.qexp.to_list(6)[1:]))))
    by_sign = {f.fricke_sign: f for f in newforms(14, 2)}
    for sign, want in ((1, F14_PLUS_QEXP), (-1, F14_MINUS_QEXP)):
        got = _vec(by_sign[sign].qexp.to_list(6)[1:])
        items.append(Item(f"f14 sign {sign:+d} through q^5", got == want, str(got)))

    x = sp.Symbol("x")
    cp = sp.Poly([sp.Rational(c.numerator, c.denominator) for c in new_charpoly(26, 2, 3)], x)
    items.append(Item(f"T_3 on S_26(Gamma_0(2))^new has root {F26_RATIONAL_A3}",
                      cp.eval(F26_RATIONAL_A3) == 0, str(cp.as_expr())))
    quad = sp.Poly(sp.quo(cp.as_expr(), x - F26_RATIONAL_A3, x), x)
    a = -375752 + 9600 * sp.sqrt(106705)
    minus_root = sp.expand(quad.as_expr().subs(x, 2048 - a / 2)) == 0
    plus_root = sp.expand(quad.as_expr().subs(x, 2048 + a / 2)) == 0
    items.append(Item("2048 - a/2 is a root of the quadratic factor", minus_root, str(quad.as_expr())))
    items.append(Item("2048 + a/2 is a root of the quadratic factor", plus_root,
                      "the conjugate root is 189924 + 4800*sqrt(106705)", conflict="weight-26-conjugate"))
    return items


def _single_term(decomp, l_expected):
    nonzero = [d for d in decomp if not d.is_zero()]
    main = [d for d in nonzero if d.l == l_expected]
    if len(main) != 1:
        return None, nonzero
    terms = {k: c for k, c in main[0].coefficients.items() if c}
    if len(terms) != 1:
        return None, nonzero
    ((a, b), c), = terms.items()
    return (main[0].basis_left[a], main[0].basis_right[b], c), nonzero


def criterion_5() -> list[Item]:
    from .fseries2 import restrict_diagonal
    from .siegel import construct_named, restrict_and_decompose
    from .theta2 import base_form

    items = []
    F = construct_named("chi14_7")
    term, nonzero = _single_term(restrict_and_decompose(F), 5)
    ok = term is not None and term[:2] == ("e4*Delta", "Delta")
    ok = ok and sorted(d.l for d in nonzero) == [5, F.j - 5]
    items.append(Item("chi14_7 restricts to a single l=5 term c e4*Delta (x) Delta (and its iota image)",
                      ok, f"{term}"))
    terms = []
    for name in ("chi18_7_1", "chi18_7_2"):
        G = construct_named(name)
        term, nonzero = _single_term(restrict_and_decompose(G), 5)
        ok = term is not None and term[:2] == ("e4^2*Delta", "Delta")
        ok = ok and sorted(d.l for d in nonzero) == [5, G.j - 5]
        items.append(Item(f"{name} restricts to a single l=5 term c e4^2*Delta (x) Delta", ok, f"{term}"))
        terms.append(term[2] if term else None)
    if None not in terms:
        ratio = terms[0] / terms[1]
        # the weight-18 covariant C is 7 C_1 + 135 C_2 and mu(C) vanishes to order 5
        items.append(Item("l=5 ratio is -135:7", ratio == Fraction(-135, 7), f"ratio {ratio}"))
        items.append(Item("l=5 ratio is 216:48", ratio == Fraction(216, 48), f"ratio {ratio}",
                          conflict="chi18-7-ratio"))
    for name in ("chi5", "chi10"):
        items.append(Item(f"restriction of {name} vanishes to P=8",
                          restrict_diagonal(base_form(name, 8).series).is_zero()))
    return items


def criterion_6() -> list[Item]:
    from .covariant import E4_EXPR
    from .siegel import mu, restrict_and_decompose
    from .theta2 import base_form

    items = []
    F = mu(E4_EXPR, 6)
    c10 = base_form("chi10", 6)
    G = base_form("psi4", 6) * c10 * c10
    n = G.series.first_nonzero()
    s = F.coeff(n)[0] / G.coeff(n)[0]
    items.append(Item("mu(75 C_{4,0} - 8 C_{2,0}^2) = s psi4 chi10^2 at P=6",
                      s != 0 and F.series == G.series.scale(s) and F.weight == G.weight, f"s = {s}"))
    term, nonzero = _single_term(restrict_and_decompose(mu("C_{2,0}", 6)), 0)
    ok = term is not None and term[:2] == ("Delta", "Delta") and len(nonzero) == 1
    items.append(Item("mu(C_{2,0}) restricts to c Delta (x) Delta", ok, str(term)))
    return items


def criterion_7() -> list[Item]:
    from .dims import conjecture_table, consistency_checks, fricke_split, series_coeff, yoshida_multiplicity

    items = []
    t12 = conjecture_table(12)
    items.append(Item("j=12: [1^6] = 1, others 0",
                      t12.multiplicity((1,) * 6) == 1 and sum(t12.entries.values()) == 1, str(t12.to_row())))
    items.append(Item("j=24: [1^6] = 2", yoshida_multiplicity(24, (1,) * 6) == 2))
    items.append(Item("j<12: all-zero tables", all(conjecture_table(j).is_zero() for j in range(0, 12, 2))))
    items.append(Item("fricke_split(26) = (1, 2)", fricke_split(26) == (1, 2)))
    eq = all(series_coeff("eps2", j) == yoshida_multiplicity(j, (1,) * 6) for j in range(0, 31, 2))
    items.append(Item("eps-series equals [1^6] count for even j <= 30", eq))
    bad = [c for c in consistency_checks(30) if not c.passed]
    items.append(Item("consistency_checks(30) all pass", not bad, str([(c.name, c.j) for c in bad])))
    return items


def criterion_8() -> list[Item]:
    from .fseries2 import check_iota_symmetry
    from .siegel import CHI18_EXPR, CHI20_EXPR, mu, vanishing_order_diagonal

    items = []
    for label, expr, want in (("weight-18 covariant", CHI18_EXPR, 5), ("weight-20 covariant", CHI20_EXPR, 6)):
        d, Q = vanishing_order_diagonal(mu(expr, 8))
        iota = check_iota_symmetry(Q.series, Q.j, Q.k, Q.character)
        items.append(Item(f"{label}: order {want}, exact quotient with iota symmetry",
                          d == want and iota and Q.k == 2, f"order {d}, weight {Q.weight}"))
    return items


def criterion_9(seed: int = 0) -> list[Item]:
    return [Item(name, ok, detail) for name, ok, detail in property_suite(seed)]


def criterion_10() -> list[Item]:
    from .covariant import DISCRIMINANT_EXPR
    from .hecke2 import charpoly_hecke, eigenvalue_by_ratio
    from .siegel import construct_named, mu
    from .theta2 import base_form

    items = [Item(i.label + " (P=17)", i.passed, i.detail) for i in criterion_2(stretch=True)]
    A, B = construct_named("chi24_2_1", 4), construct_named("chi24_2_2", 4)
    for name, G, want in (("chi24_2_1", A, CHI24_1_A111), ("chi24_2_2", B, CHI24_2_A111)):
        got = _vec(G.coeff((1, 1, 1))[:13])
        items.append(Item(f"{name} a([1,1,1]) entries 0..12", got == want, str(got)))
    cp = charpoly_hecke([A, B], 3)
    items.append(Item("chi24_2 T_3 char-poly", cp == CHI24_T3_CHARPOLY, str(cp)))
    items.append(Item("439 chi24_2_1 + (114847 + 650 sqrt(106705)) chi24_2_2 is a T_3 eigenform",
                      _chi24_eigenbasis_ok(A, B)))
    F = construct_named("chi36_3", 10)
    a, b = F.coeff((2, 2, 2))[7:9], F.coeff((10, 10, 10))[7:9]
    items.append(Item("chi36_3 coefficients at 1_2 and 5 1_2, entries 7, 8",
                      (tuple(a), tuple(b)) == (CHI36_A, CHI36_B), f"{a} {b}"))
    lam = eigenvalue_by_ratio(F, (2, 2, 2), (10, 10, 10))
    items.append(Item(f"chi36_3 lambda_5 = {CHI36_LAMBDA5}", lam == CHI36_LAMBDA5, f"got {lam}"))
    D = mu(DISCRIMINANT_EXPR, 12)
    c10 = base_form("chi10", 12)
    G = c10
    for _ in range(5):
        G = G * c10
    n = G.series.first_nonzero()
    s = D.coeff(n)[0] / G.coeff(n)[0]
    items.append(Item("mu(discriminant) = s chi10^6 at P=12", s != 0 and D.series == G.series.scale(s),
                      f"s = {s}"))
    return items


def _chi24_eigenbasis_ok(A, B) -> bool:
    """Image under T_3 of the a([1,1,1]) vector of 439 A + (114847 + 650 r) B,
    r = sqrt(106705), equals (287880 - 4800 r) times it, in Q(r) coordinates."""
    from .hecke2 import transformed_coefficient

    r2 = 106705
    va, vb = A.coeff((1, 1, 1)), B.coeff((1, 1, 1))
    ta, tb = transformed_coefficient(A, 3), transformed_coefficient(B, 3)

    def qr_mul(x, y):
        return (x[0] * y[0] + r2 * x[1] * y[1], x[0] * y[1] + x[1] * y[0])

    cA, cB, lam = (439, 0), (114847, 650), (287880, -4800)
    for i in range(A.j + 1):
        v = tuple(p + q for p, q in zip(qr_mul(cA, (va[i], 0)), qr_mul(cB, (vb[i], 0))))
        t = tuple(p + q for p, q in zip(qr_mul(cA, (ta[i], 0)), qr_mul(cB, (tb[i], 0))))
        if t != qr_mul(lam, v):
            return False
    return any(va)


# --- properties (seeded, no quoted numbers) ------------------------------------------


def _random_series(rng: random.Random, j: int, P: int, parity: int, density: float = 0.5):
    from .fseries2 import FSeries2, in_cone

    coeffs = {}
    for n1 in range(parity, P + 1, 2):
        for n3 in range(parity, P + 1, 2):
            for n2 in range(-n1 - n3, n1 + n3 + 1):
                if (n2 - parity) % 2 or not in_cone(n1, n2, n3) or rng.random() > density:
                    continue
                coeffs[(n1, n2, n3)] = tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 3))
                                             for _ in range(j + 1))
    return FSeries2.from_rational(j, coeffs, P)


def property_suite(seed: int = 0) -> list[tuple[str, bool, str]]:
    from .covariant import transvectant, universal_sextic
    from .exact import sym_action
    from .fseries2 import check_iota_symmetry, div_exact, mul
    from .siegel import NAMED_IDS, RECIPES, construct_named, series_transvectant
    from .theta2 import base_form

    rng = random.Random(seed)
    out = []
    P = 6

    ok = True
    for _ in range(10):
        F, G, H = (_random_series(rng, rng.randint(0, 2), P, rng.randint(0, 1)) for _ in range(3))
        ok &= mul(F, G) == mul(G, F)
        ok &= mul(mul(F, G), H) == mul(F, mul(G, H))
    out.append(("mul commutative and associative (10 random triples)", ok, ""))

    c5 = base_form("chi5", P + 1).series
    ok, bad = True, 0
    for _ in range(100):
        F = _random_series(rng, rng.randint(0, 2), P + 1, rng.randint(0, 1), density=0.3)
        Q = div_exact(mul(F, c5), c5)
        if Q != F.truncate(Q.prec):
            ok, bad = False, bad + 1
    out.append(("div_exact(F * chi5, chi5) = F (100 random cases)", ok, f"{bad} mismatches"))

    ok = True
    for _ in range(5):
        F1, F2 = (_random_series(rng, 2, P, 1) for _ in range(2))
        G = _random_series(rng, 4, P, 0)
        a, b = Fraction(rng.randint(-5, 5)), Fraction(rng.randint(1, 5))
        lhs = series_transvectant(F1.scale(a) + F2.scale(b), G, 2)
        rhs = series_transvectant(F1, G, 2).scale(a) + series_transvectant(F2, G, 2).scale(b)
        ok &= lhs == rhs
        A = _random_series(rng, 3, P, 1)
        B = _random_series(rng, 3, P, 0)
        ok &= series_transvectant(A, B, 1) == -series_transvectant(B, A, 1)
    f = universal_sextic()
    ok &= not transvectant(f, f, 1) and not transvectant(f, f, 3)
    out.append(("transvectant bilinear and antisymmetric for odd order", ok, ""))

    ok = True
    for _ in range(20):
        M = [[rng.randint(-4, 4) for _ in range(2)] for _ in range(2)]
        N = [[rng.randint(-4, 4) for _ in range(2)] for _ in range(2)]
        MN = [[sum(M[i][t] * N[t][k] for t in range(2)) for k in range(2)] for i in range(2)]
        j = rng.randint(0, 6)
        v = [Fraction(rng.randint(-9, 9)) for _ in range(j + 1)]
        ok &= sym_action(MN, j, v) == sym_action(M, j, sym_action(N, j, v))
        ok &= sym_action([[1, 0], [0, 1]], j, v) == tuple(v)
    out.append(("sym_action is functorial", ok, ""))

    forms = {name: base_form(name, 6) for name in ("chi5", "chi6_3", "chi10", "psi4")}
    for name in NAMED_IDS:
        if not RECIPES[name].stretch:
            forms[name] = construct_named(name)
    bad_iota = [n for n, F in forms.items() if not check_iota_symmetry(F.series, F.j, F.k, F.character)]
    out.append(("iota symmetry on all constructed forms", not bad_iota, f"failing: {bad_iota}"))

    bad_par = []
    for name, F in forms.items():
        par = 1 if F.character else 0
        for n in F.series.support():
            if any((x - par) % 2 for x in n):
                bad_par.append(name)
                break
    out.append(("support parity n1 = n2 = n3 = character (mod 2)", not bad_par, f"failing: {bad_par}"))

    from .siegel import clear_caches

    first = construct_named("chi12_2", 8).to_json_obj()
    clear_caches()
    second = construct_named("chi12_2", 8).to_json_obj()
    out.append(("series determinism across cache resets", first == second, ""))
    return out


CORE: dict[int, tuple[str, Callable[..., list[Item]]]] = {
    1: ("chi12_2 coefficient vectors", criterion_1),
    2: ("chi12_2 eigenvalue table", criterion_2),
    3: ("lift identities", criterion_3),
    4: ("elliptic ground truth", criterion_4),
    5: ("restriction identities", criterion_5),
    6: ("covariant and Igusa identities", criterion_6),
    7: ("dimension layer", criterion_7),
    8: ("vanishing pipeline", criterion_8),
    9: ("property suites", criterion_9),
}

STRETCH: dict[int, tuple[str, Callable[..., list[Item]]]] = {
    10: ("stretch constructions", criterion_10),
}


def run_criterion(number: int, seed: int = 0) -> Criterion:
    title, fn = {**CORE, **STRETCH}[number]
    crit = Criterion(number, title)
    t = time.perf_counter()
    try:
        crit.items = fn(seed) if number == 9 else fn()
    except Exception as exc:  # reported, not raised: the manifest must be complete
        crit.error = f"{type(exc).__name__}: {exc}"
    crit.seconds = time.perf_counter() - t
    return crit


def run_suite(suite: str = "core", seed: int = 0, progress: Callable[[Criterion], None] | None = None):
    if suite not in ("core", "stretch"):
        raise ValueError("suite must be 'core' or 'stretch'")
    numbers = list(CORE) if suite == "core" else list(STRETCH)
    out = []
    for n in numbers:
        crit = run_criterion(n, seed)
        if progress:
            progress(crit)
        out.append(crit)
    return out
