"""Hecke eigenvalues of degree-two forms with character from Fourier coefficients.

For F in S_{j,k}(Gamma_2, eps) the coefficient a_p([1,1,1]) of T_p F is

* a([p,p,p])                                              p = 2 mod 3, p > 3
* a([3,3,3]) - 3^(k-2) Sym^j(3,-1;0,1) a([1,3,3])            p = 3
* a([p,p,p]) + p^(k-2) sum_i (-1)^m_i Sym^j(p,-m_i;0,1)
      a([(1+m_i+m_i^2)/p, 1+2m_i, p])                         p = 1 mod 3

with m_1, m_2 the roots of 1 + X + X^2 modulo p, and for T_{p^2}

* a([p^2,p^2,p^2])                                         p = 2 mod 3
* a([9,9,9]) - 3^(k-2) Sym^j(3,-1;0,1) a([3,9,9])             p = 3.

The eigenvalue is a_p([1,1,1]) / a([1,1,1]), which must agree on every
non-zero component.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .exact import charpoly, format_poly, solve_linear, sym_action, LinearSystemError
from .fseries2 import PrecisionError


class NotEigenform(ArithmeticError):
    pass


@dataclass
class EigenReport:
    form: str
    operator: str
    eigenvalue: Fraction | None = None
    charpoly: list[Fraction] | None = None
    inputs: list[tuple] = field(default_factory=list)

    def to_json_obj(self) -> dict:
        from .exact import format_rational

        obj = {"form": self.form, "operator": self.operator,
               "inputs": [",".join(map(str, n)) for n in self.inputs]}
        if self.eigenvalue is not None:
            obj["lambda"] = format_rational(self.eigenvalue)
        if self.charpoly is not None:
            obj["charpoly"] = format_poly(self.charpoly, "x")
        return obj


def _is_prime(n: int) -> bool:
    return n > 1 and all(n % d for d in range(2, int(n ** 0.5) + 1))


def _cube_roots_of_unity(p: int) -> list[int]:
    return [m for m in range(p) if (1 + m + m * m) % p == 0]


def _need(F, triples):
    for n in triples:
        if max(n[0], n[2]) > F.prec:
            raise PrecisionError(f"coefficient a({list(n)}) needs precision {max(n[0], n[2])}, "
                                 f"form has {F.prec}")


def _combine(F, terms) -> tuple[Fraction, ...]:
    """Sum of c * Sym^j(M) a(n) over (c, M, n); M None means the identity."""
    out = [Fraction(0)] * (F.j + 1)
    for c, M, n in terms:
        v = F.coeff(n)
        if M is not None:
            v = sym_action(M, F.j, v)
        for i, x in enumerate(v):
            out[i] += c * x
    return tuple(out)


def hecke_terms(F, p: int, square: bool = False) -> list[tuple]:
    """The (scalar, matrix, index) terms whose sum is a_{p or p^2}([1,1,1])."""
    if p == 2 or not _is_prime(p):
        raise ValueError("p must be an odd prime")
    k = F.k
    if square:
        if p == 3:
            return [(1, None, (9, 9, 9)), (-Fraction(3) ** (k - 2), ((3, -1), (0, 1)), (3, 9, 9))]
        if p % 3 == 2:
            return [(1, None, (p * p, p * p, p * p))]
        raise NotImplementedError("no T_{p^2} coefficient formula for p = 1 mod 3")
    if p == 3:
        return [(1, None, (3, 3, 3)), (-Fraction(3) ** (k - 2), ((3, -1), (0, 1)), (1, 3, 3))]
    if p % 3 == 2:
        return [(1, None, (p, p, p))]
    terms = [(1, None, (p, p, p))]
    for m in _cube_roots_of_unity(p):
        terms.append(((-1) ** m * Fraction(p) ** (k - 2), ((p, -m), (0, 1)),
                      ((1 + m + m * m) // p, 1 + 2 * m, p)))
    return terms


def required_precision(p: int, square: bool = False) -> int:
    """Smallest P for which the T_p (or T_{p^2}) formula only reads certified coefficients."""
    if p == 2 or not _is_prime(p):
        raise ValueError("p must be an odd prime")
    if square and p % 3 == 1:
        raise NotImplementedError("no T_{p^2} coefficient formula for p = 1 mod 3")
    return p * p if square else p


def transformed_coefficient(F, p: int, square: bool = False) -> tuple[Fraction, ...]:
    terms = hecke_terms(F, p, square)
    _need(F, [n for _, _, n in terms])
    return _combine(F, terms)


def _ratio(base, image) -> Fraction:
    lam = None
    for x, y in zip(base, image):
        if x:
            r = y / x
            if lam is None:
                lam = r
            elif r != lam:
                raise NotEigenform(f"component ratios disagree ({lam} vs {r})")
        elif y:
            raise NotEigenform("image is non-zero where a([1,1,1]) vanishes")
    if lam is None:
        raise NotEigenform("a([1,1,1]) is zero")
    return lam


def _check_character(F):
    if not F.character:
        raise ValueError("these Hecke formulas are for forms with the character eps")


def eigenvalue_Tp(F, p: int) -> Fraction:
    _check_character(F)
    return _ratio(F.coeff((1, 1, 1)), transformed_coefficient(F, p))


def eigenvalue_Tp2(F, p: int) -> Fraction:
    _check_character(F)
    return _ratio(F.coeff((1, 1, 1)), transformed_coefficient(F, p, square=True))


def eigen_report(F, name: str, p: int, square: bool = False) -> EigenReport:
    lam = eigenvalue_Tp2(F, p) if square else eigenvalue_Tp(F, p)
    terms = hecke_terms(F, p, square)
    op = f"T_{p}^2" if square else f"T_{p}"
    return EigenReport(name, op, lam, None, [(1, 1, 1)] + [n for _, _, n in terms])


def eigenvalue_by_ratio(F, n_from, n_to) -> Fraction:
    """Eigenvalue read off as a(n_to) / a(n_from), checked on all components.

    This is how the level-one form of weight (36, 3) is tested at p = 5,
    with n_from, n_to the half-integral matrices 1_2 and 5 * 1_2.
    """
    _need(F, [n_from, n_to])
    return _ratio(F.coeff(n_from), F.coeff(n_to))


def charpoly_hecke(space: list, p: int, square: bool = False) -> list[Fraction]:
    """Characteristic polynomial of T_p on the span of the given forms.

    The transformed coefficient a_p([1,1,1]) of each basis form is only one
    coefficient vector, so the matrix is solved through the map
    F -> (a([1,1,1]) of F) applied to T_p F = sum_i m_i F_i: the [1,1,1]
    coefficient vectors of the basis must be linearly independent.
    """
    for F in space:
        _check_character(F)
    base = [F.coeff((1, 1, 1)) for F in space]
    d = len(space)
    # unknown matrix M with T F_c = sum_r M[r][c] F_r; one column per basis form
    cols = []
    for F in space:
        img = transformed_coefficient(F, p, square)
        rows = [[base[r][i] for r in range(d)] for i in range(len(img))]
        try:
            cols.append(solve_linear(rows, list(img)))
        except LinearSystemError as exc:
            raise LinearSystemError(f"basis coefficients at [1,1,1] do not determine T_{p}: {exc}") from None
    M = [[cols[c][r] for c in range(d)] for r in range(d)]
    return charpoly(M)


# --- lift identities --------------------------------------------------------------------


@dataclass
class LiftCheck:
    kind: str
    p: int
    passed: bool
    details: dict = field(default_factory=dict)


def saito_kurokawa_check(F, p: int, a_p: int, weight_f: int = 8) -> LiftCheck:
    """lambda_p = p^(w/2 - 1) + a_p(f) + p^(w/2) for the lift of a weight-w form f
    (w = 8 for chi_5), and the T_{p^2} identity when its formula is available."""
    e = weight_f // 2
    lam = eigenvalue_Tp(F, p)
    expected = p ** (e - 1) + a_p + p ** e
    details = {"lambda_p": lam, "expected_lambda_p": expected}
    ok = lam == expected
    try:
        lam2 = eigenvalue_Tp2(F, p)
    except (NotImplementedError, PrecisionError) as exc:
        details["lambda_p2"] = f"skipped: {exc}"
    else:
        exp2 = lam * lam - (p ** e + p ** (e - 1)) * lam + p ** (2 * e)
        details["lambda_p2"] = lam2
        details["expected_lambda_p2"] = exp2
        ok = ok and lam2 == exp2
    return LiftCheck("saito_kurokawa", p, ok, details)


YOSHIDA_P2_CONSTANT = "2p+1"


def yoshida_p2(af, ag, p: int, j: int, constant: str = YOSHIDA_P2_CONSTANT):
    """a_f^2 + a_f a_g + a_g^2 - c p^j, with c = 2p+1 (or the variant 2(p+1))."""
    c = 2 * p + 1 if constant == "2p+1" else 2 * (p + 1)
    return af * af + af * ag + ag * ag - c * p ** j


def yoshida_check(F, p: int, a_f: int, a_g: int, constant: str = YOSHIDA_P2_CONSTANT) -> LiftCheck:
    lam = eigenvalue_Tp(F, p)
    details = {"lambda_p": lam, "expected_lambda_p": a_f + a_g}
    ok = lam == a_f + a_g
    try:
        lam2 = eigenvalue_Tp2(F, p)
    except (NotImplementedError, PrecisionError) as exc:
        details["lambda_p2"] = f"skipped: {exc}"
    else:
        exp2 = yoshida_p2(a_f, a_g, p, F.j, constant)
        details["lambda_p2"] = lam2
        details["expected_lambda_p2"] = exp2
        ok = ok and lam2 == exp2
    return LiftCheck("yoshida", p, ok, details)


def lift_check(kind: str, F, p: int, elliptic) -> LiftCheck:
    """``elliptic`` is a_p(f) for saito_kurokawa and (a_p(f), a_p(g)) for yoshida."""
    if kind == "saito_kurokawa":
        return saito_kurokawa_check(F, p, elliptic)
    if kind == "yoshida":
        a_f, a_g = elliptic
        return yoshida_check(F, p, a_f, a_g)
    raise ValueError(f"unknown lift kind {kind!r}")
