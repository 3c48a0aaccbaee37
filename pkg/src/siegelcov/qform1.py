"""Elliptic modular forms of level 1, 2 and 4 as exact q-expansions.

Spaces are built from explicit generators: e4, e6, Delta in level one,
E2_2 = 2E_2(2 tau) - E_2(tau), e4 and (eta(tau) eta(2 tau))^8 in level two,
and E2_2(tau), E2_2(2 tau), eta(2 tau)^12 in level four.  New subspaces are
cut out with T_3 by removing the characteristic polynomial of the old part.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .exact import charpoly, format_rational, nullspace, solve_linear
from .exact import tseries_coeff


class QSeries1:
    """Truncated series sum c_e q^e with e in (1/D)Z, known for e < prec."""

    __slots__ = ("D", "coeffs", "prec")

    def __init__(self, coeffs: dict[int, object], prec, D: int = 1):
        self.D = D
        self.prec = Fraction(prec)
        lim = self.prec * D
        self.coeffs = {e: Fraction(c) for e, c in coeffs.items() if c and e < lim}

    @classmethod
    def from_list(cls, values, D: int = 1, start: int = 0) -> "QSeries1":
        return cls({start + i: c for i, c in enumerate(values)}, Fraction(start + len(values), D), D)

    def coeff(self, e) -> Fraction:
        e = Fraction(e)
        if e >= self.prec:
            raise ValueError(f"exponent {e} is beyond precision {self.prec}")
        s = e * self.D
        if s.denominator != 1:
            return Fraction(0)
        return self.coeffs.get(int(s), Fraction(0))

    def coeff_Q(self, n: int) -> Fraction:
        """Coefficient of Q^n with Q = e^{pi i tau}, i.e. of q^{n/2}."""
        return self.coeff(Fraction(n, 2))

    def items(self):
        for s in sorted(self.coeffs):
            yield Fraction(s, self.D), self.coeffs[s]

    def to_list(self, n: int) -> list[Fraction]:
        """Coefficients of q^0 .. q^(n-1) (integral exponents only)."""
        return [self.coeff(i) for i in range(n)]

    def valuation(self):
        if not self.coeffs:
            return None
        return Fraction(min(self.coeffs), self.D)

    def __repr__(self) -> str:
        terms = []
        for e, c in list(self.items())[:6]:
            terms.append(f"{format_rational(c)}*q^{format_rational(e)}")
        return "QSeries1(" + " + ".join(terms) + f" + O(q^{format_rational(self.prec)}))"

    def _rescaled(self, D: int) -> dict[int, Fraction]:
        f = D // self.D
        return {e * f: c for e, c in self.coeffs.items()}

    def _common(self, other: "QSeries1"):
        D = self.D * other.D // gcd(self.D, other.D)
        return D, self._rescaled(D), other._rescaled(D)

    def __add__(self, other: "QSeries1") -> "QSeries1":
        D, a, b = self._common(other)
        out = dict(a)
        for e, c in b.items():
            out[e] = out.get(e, 0) + c
        return QSeries1(out, min(self.prec, other.prec), D)

    def __neg__(self) -> "QSeries1":
        return QSeries1({e: -c for e, c in self.coeffs.items()}, self.prec, self.D)

    def __sub__(self, other: "QSeries1") -> "QSeries1":
        return self + (-other)

    def scale(self, c) -> "QSeries1":
        c = Fraction(c)
        return QSeries1({e: c * v for e, v in self.coeffs.items()}, self.prec, self.D)

    def __mul__(self, other) -> "QSeries1":
        if not isinstance(other, QSeries1):
            return self.scale(other)
        D, a, b = self._common(other)
        va = self.valuation() or 0
        vb = other.valuation() or 0
        prec = min(self.prec + vb, other.prec + va)
        lim = prec * D
        out: dict[int, Fraction] = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = e1 + e2
                if e < lim:
                    out[e] = out.get(e, 0) + c1 * c2
        return QSeries1(out, prec, D)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "QSeries1":
        result = QSeries1({0: 1}, self.prec, self.D)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, QSeries1):
            return NotImplemented
        p = min(self.prec, other.prec)
        return self.truncate(p).coeffs == other.truncate(p).rescale(self.D).coeffs if self.D == other.D \
            else self.rescale(self.D * other.D).truncate(p).coeffs == other.rescale(self.D * other.D).truncate(p).coeffs

    __hash__ = None

    def truncate(self, prec) -> "QSeries1":
        return QSeries1(self.coeffs, min(self.prec, Fraction(prec)), self.D)

    def rescale(self, D: int) -> "QSeries1":
        if D % self.D:
            raise ValueError("new denominator must be a multiple of the old one")
        return QSeries1(self._rescaled(D), self.prec, D)

    def substitute_power(self, m: int) -> "QSeries1":
        """f(m tau)."""
        return QSeries1({e * m: c for e, c in self.coeffs.items()}, self.prec * m, self.D)

    def to_json_obj(self) -> dict:
        return {format_rational(e): format_rational(c) for e, c in self.items()}


# --- named expansions ----------------------------------------------------------------


def _sigma(n: int, r: int) -> int:
    return sum(d ** r for d in range(1, n + 1) if n % d == 0)


def _eisenstein(c: int, r: int, prec: int) -> QSeries1:
    return QSeries1({0: 1, **{n: c * _sigma(n, r) for n in range(1, prec)}}, prec)


def _eta_power(r: int, prec: int) -> QSeries1:
    """prod (1 - q^n)^r, without the q^{r/24} prefactor."""
    coeffs = [0] * prec
    coeffs[0] = 1
    for n in range(1, prec):
        for _ in range(abs(r)):
            if r > 0:
                for e in range(prec - 1, n - 1, -1):
                    coeffs[e] -= coeffs[e - n]
            else:
                for e in range(n, prec):
                    coeffs[e] += coeffs[e - n]
    return QSeries1(dict(enumerate(coeffs)), prec)


@lru_cache(maxsize=None)
def named_qexp(name: str, prec: int) -> QSeries1:
    if prec < 1:
        raise ValueError("precision must be positive")
    if name == "e4":
        return _eisenstein(240, 3, prec)
    if name == "e6":
        return _eisenstein(-504, 5, prec)
    if name == "E2":
        return _eisenstein(-24, 1, prec)
    if name == "delta":
        p = _eta_power(24, prec)
        return QSeries1({e + 1: c for e, c in p.coeffs.items()}, prec)
    if name == "eta12":
        p = _eta_power(12, prec)
        return QSeries1({2 * e + 1: c for e, c in p.coeffs.items()}, prec, 2)
    if name == "E2_2":
        E2 = named_qexp("E2", prec)
        return E2.substitute_power(2).truncate(prec).scale(2) - E2
    if name == "eta8_2":
        # (eta(tau) eta(2 tau))^8 = q prod (1-q^n)^8 (1-q^{2n})^8
        a = _eta_power(8, prec)
        b = _eta_power(8, prec).substitute_power(2).truncate(prec)
        p = a * b
        return QSeries1({e + 1: c for e, c in p.coeffs.items()}, prec)
    if name == "eta12_2":
        # eta(2 tau)^12 = q prod (1 - q^{2n})^12
        p = _eta_power(12, prec).substitute_power(2).truncate(prec)
        return QSeries1({e + 1: c for e, c in p.coeffs.items()}, prec)
    raise KeyError(f"unknown q-expansion {name!r}")


NAMED_QEXP = ("e4", "e6", "delta", "eta12", "E2_2")


# --- bases ---------------------------------------------------------------------------


def level1_monomial_basis(w: int, prec: int, eta12: bool = False) -> list[tuple[str, QSeries1]]:
    """Basis Delta^c e4^a e6^b (b in {0,1}) of M_w(SL_2(Z)), optionally times eta^12.

    ``prec`` is measured in Q = e^{pi i tau}: coefficients up to Q^prec are kept.
    """
    if w < 0 or w % 2:
        return []
    qprec = prec // 2 + 2
    e4, e6, d = (named_qexp(n, qprec) for n in ("e4", "e6", "delta"))
    out = []
    for c in range(w // 12 + 1):
        m = w - 12 * c
        for b in (0, 1):
            if (m - 6 * b) >= 0 and (m - 6 * b) % 4 == 0:
                a = (m - 6 * b) // 4
                f = (d ** c) * (e4 ** a) * (e6 ** b)
                parts = [p for p, e in (("e4", a), ("e6", b), ("Delta", c)) if e]
                label = "*".join(p if e == 1 else f"{p}^{e}"
                                 for p, e in zip(parts, [e for e in (a, b, c) if e])) or "1"
                if eta12:
                    f = named_qexp("eta12", qprec) * f
                    label = "eta12" if label == "1" else "eta12*" + label
                out.append((label, f))
                break
    return out


def _echelon(series: list[QSeries1], n: int) -> list[QSeries1]:
    """Row-reduce q-expansions on the integral exponents 0..n-1."""
    M = [s.to_list(n) for s in series]
    basis = []
    pivots = []
    out_rows = []
    col = 0
    while M and col < n:
        piv = next((i for i, r in enumerate(M) if r[col]), None)
        if piv is None:
            col += 1
            continue
        r = M.pop(piv)
        inv = 1 / r[col]
        r = [x * inv for x in r]
        M = [[x - m[col] * y for x, y in zip(m, r)] for m in M]
        out_rows = [[x - o[col] * y for x, y in zip(o, r)] for o in out_rows]
        out_rows.append(r)
        pivots.append(col)
        col += 1
    if M and any(any(r) for r in M):
        raise ArithmeticError("echelon failed")
    for r in out_rows:
        basis.append(QSeries1(dict(enumerate(r)), n))
    if len(basis) != len(series):
        raise ArithmeticError("generators are linearly dependent at this precision")
    return basis


def dim_cusp(k: int, N: int) -> int:
    """dim S_k(Gamma_0(N)) for N in {1, 2, 4} from the generating series."""
    a = tseries_coeff(12, (4, 6), k)
    if N == 1:
        return a
    b = tseries_coeff(8, (2, 6), k)
    if N == 2:
        return b + a
    c = tseries_coeff(6, (4, 6), k)
    return c + 2 * (b - a) + 3 * a


def _generators(k: int, N: int, prec: int) -> list[QSeries1]:
    if N == 1:
        d = named_qexp("delta", prec)
        return [f * d for _, f in level1_monomial_basis(k - 12, 2 * prec)] if k >= 12 else []
    if N == 2:
        if k < 8:
            return []
        E, e4, c8 = named_qexp("E2_2", prec), named_qexp("e4", prec), named_qexp("eta8_2", prec)
        return [c8 * E ** a * e4 ** ((k - 8 - 2 * a) // 4) for a in range((k - 8) // 2 + 1)
                if (k - 8 - 2 * a) % 4 == 0]
    if N == 4:
        if k < 6:
            return []
        A = named_qexp("E2_2", prec)
        B = A.substitute_power(2).truncate(prec)
        c6 = named_qexp("eta12_2", prec)
        m = (k - 6) // 2
        return [c6 * A ** i * B ** (m - i) for i in range(m + 1)]
    raise ValueError(f"unsupported level {N}")


@lru_cache(maxsize=None)
def cusp_basis(k: int, N: int, prec: int) -> tuple[QSeries1, ...]:
    """Echelonized basis of S_k(Gamma_0(N)) known to precision ``prec``."""
    if k % 2:
        return ()
    gens = _generators(k, N, prec)
    expected = dim_cusp(k, N)
    if len(gens) != expected:
        raise ArithmeticError(f"dimension mismatch for S_{k}(Gamma_0({N})): {len(gens)} != {expected}")
    if not gens:
        return ()
    return tuple(_echelon(gens, prec))


# --- Hecke operators -------------------------------------------------------------------


def hecke_Tp_q(f: QSeries1, k: int, N: int, p: int) -> QSeries1:
    """T_p on integral-exponent q-expansions: a(n) -> a(pn) + p^(k-1) a(n/p) (p not dividing N),
    or U_p when p divides N."""
    if f.D != 1:
        raise ValueError("Hecke operators act on integral q-expansions")
    prec = (int(f.prec) - 1) // p + 1
    out = {}
    for n in range(prec):
        c = f.coeff(p * n)
        if N % p and n % p == 0:
            c += p ** (k - 1) * f.coeff(n // p)
        if c:
            out[n] = c
    return QSeries1(out, prec)


def _pivots(basis) -> list[int]:
    return [int(min(b.coeffs)) for b in basis]


def hecke_matrix(k: int, N: int, p: int, basis=None) -> list[list[Fraction]]:
    """Matrix of T_p (columns = images of basis vectors) in the echelon basis."""
    if basis is None:
        d = dim_cusp(k, N)
        basis = cusp_basis(k, N, p * (d + 2) + 2)
    piv = _pivots(basis)
    cols = []
    for b in basis:
        img = hecke_Tp_q(b, k, N, p)
        cols.append([img.coeff(e) for e in piv])
    return [[cols[c][r] for c in range(len(basis))] for r in range(len(basis))]


# --- newforms --------------------------------------------------------------------------


@dataclass
class NewformData:
    k: int
    N: int
    degree: int
    qexp: QSeries1 | None = None
    charpoly_T3: list[Fraction] = field(default_factory=list)
    charpoly_T5: list[Fraction] = field(default_factory=list)
    fricke_sign: int | None = None

    def coefficient(self, n: int) -> Fraction:
        if self.qexp is None:
            raise ValueError("eigenvalues of an irrational orbit are only available as a char-poly")
        return self.qexp.coeff(n)

    def to_json_obj(self) -> dict:
        from .exact import format_poly

        obj = {"k": self.k, "N": self.N, "degree": self.degree, "fricke_sign": self.fricke_sign,
               "charpoly_T3": format_poly(self.charpoly_T3), "charpoly_T5": format_poly(self.charpoly_T5)}
        if self.qexp is not None:
            obj["qexp"] = self.qexp.to_json_obj()
        return obj


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _poly_divmod(a, b):
    a = list(a)
    q = []
    while len(a) >= len(b):
        c = a[0] / b[0]
        q.append(c)
        for i in range(len(b)):
            a[i] -= c * b[i]
        a.pop(0)
    return q, a


def _matmul(A, B):
    return [[sum((A[i][t] * B[t][j] for t in range(len(B))), Fraction(0)) for j in range(len(B[0]))]
            for i in range(len(A))]


def _poly_at(coeffs, A):
    n = len(A)
    R = [[Fraction(0)] * n for _ in range(n)]
    for c in coeffs:
        R = _matmul(R, A)
        for i in range(n):
            R[i][i] += c
    return R


def _factor_rational(coeffs) -> list[tuple[list[Fraction], int]]:
    """Irreducible factors over Q of a monic polynomial, with multiplicity."""
    from sympy import Poly, QQ, symbols

    x = symbols("x")
    P = Poly([QQ(c.numerator, c.denominator) for c in coeffs], x, domain=QQ)
    _, facs = P.factor_list()
    out = []
    for f, m in facs:
        f = f.monic()
        out.append(([Fraction(int(c.numerator), int(c.denominator)) for c in f.all_coeffs()], m))
    return out


def _old_charpoly(k: int, N: int, p: int) -> list[Fraction]:
    one = [Fraction(1)]
    if N == 1:
        return one
    cp1 = charpoly(hecke_matrix(k, 1, p)) if dim_cusp(k, 1) else one
    if N == 2:
        return _poly_mul(cp1, cp1)
    cp2 = new_charpoly(k, 2, p)
    return _poly_mul(_poly_mul(_poly_mul(cp1, cp1), cp1), _poly_mul(cp2, cp2))


@lru_cache(maxsize=None)
def _new_space(k: int, N: int, prec: int):
    d = dim_cusp(k, N)
    work = max(prec, 5 * (d + 2) + 2)
    basis = cusp_basis(k, N, work)
    if not basis:
        return basis, []
    T3 = hecke_matrix(k, N, 3, basis)
    full = charpoly(T3)
    old = _old_charpoly(k, N, 3)
    new, rem = _poly_divmod(full, old)
    if any(rem):
        raise ArithmeticError("old-space characteristic polynomial does not divide the full one")
    if len(new) == 1:
        return basis, []
    from sympy import Poly, QQ, symbols, gcd as pgcd

    x = symbols("x")
    to_poly = lambda cs: Poly([QQ(c.numerator, c.denominator) for c in cs], x, domain=QQ)
    if pgcd(to_poly(new), to_poly(old)).degree() > 0:
        raise ArithmeticError("T_3 does not separate old and new forms")
    K = nullspace(_poly_at(new, T3))
    # vectors in the echelon basis -> q-expansions
    vecs = []
    for v in K:
        s = None
        for c, b in zip(v, basis):
            if c:
                s = b.scale(c) if s is None else s + b.scale(c)
        vecs.append(s)
    return basis, vecs


def new_charpoly(k: int, N: int, p: int) -> list[Fraction]:
    """Characteristic polynomial of T_p on S_k(Gamma_0(N))^new."""
    _, vecs = _new_space(k, N, 0)
    if not vecs:
        return [Fraction(1)]
    return charpoly(_restricted_matrix(vecs, k, N, p))


def _restricted_matrix(vecs: list[QSeries1], k: int, N: int, p: int) -> list[list[Fraction]]:
    """Matrix of a Hecke operator on the span of ``vecs`` (assumed stable)."""
    basis = _echelon(vecs, int(min(v.prec for v in vecs)))
    piv = _pivots(basis)
    cols = []
    for b in basis:
        img = hecke_Tp_q(b, k, N, p)
        cols.append([img.coeff(e) for e in piv])
    M = [[cols[c][r] for c in range(len(basis))] for r in range(len(basis))]
    return M


def _fricke_from_a2(k: int, a2: Fraction) -> int:
    u = Fraction(2) ** (k // 2 - 1)
    if a2 == -u:
        return 1
    if a2 == u:
        return -1
    raise ArithmeticError(f"a_2 = {a2} is not +-2^(k/2-1)")


@lru_cache(maxsize=None)
def newforms(k: int, N: int, prec: int = 12) -> tuple[NewformData, ...]:
    """Eigendata of S_k(Gamma_0(N))^new.

    Rational eigenforms come with Hecke-normalized q-expansions; Galois orbits
    of larger degree with the characteristic polynomials of T_3 and T_5.
    """
    if N not in (2, 4):
        raise ValueError("newforms are provided for levels 2 and 4")
    if k % 2:
        return ()
    _, vecs = _new_space(k, N, prec)
    if not vecs:
        return ()
    sub = _echelon(vecs, int(min(v.prec for v in vecs)))
    T3 = _restricted_matrix(sub, k, N, 3)
    out = []
    for fac, mult in _factor_rational(charpoly(T3)):
        if mult != 1:
            raise ArithmeticError("T_3 has a repeated eigenvalue on the new space")
        K = nullspace(_poly_at(fac, T3))
        orbit = []
        for v in K:
            s = None
            for c, b in zip(v, sub):
                if c:
                    s = b.scale(c) if s is None else s + b.scale(c)
            orbit.append(s)
        orbit = _echelon(orbit, int(min(o.prec for o in orbit)))
        cp5 = charpoly(_restricted_matrix(orbit, k, N, 5))
        U2 = _restricted_matrix(orbit, k, N, 2)
        sign = None
        if N == 2:
            lam = U2[0][0]
            if any(U2[i][j] != (lam if i == j else 0) for i in range(len(U2)) for j in range(len(U2))):
                raise ArithmeticError("U_2 is not scalar on a Galois orbit")
            sign = _fricke_from_a2(k, lam)
        qexp = None
        if len(fac) == 2:
            f = orbit[0]
            a1 = f.coeff(1)
            qexp = f.scale(1 / a1)
        out.append(NewformData(k, N, len(fac) - 1, qexp, fac, cp5, sign))
    out.sort(key=lambda d: (d.degree, -(d.fricke_sign or 0)))
    return tuple(out)
