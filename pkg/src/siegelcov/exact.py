"""Exact scalars, sparse polynomials in the sextic symbols, and Sym^j actions.

Rationals are :class:`fractions.Fraction`.  Polynomials live in
``Q[a0..a6, x1, x2]`` and are stored sparsely with exponent vectors packed
into a single integer (8 bits per variable), so multiplying monomials is an
integer addition.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Iterable, Sequence

Rational = Fraction

NVARS = 9
VAR_NAMES = ("a0", "a1", "a2", "a3", "a4", "a5", "a6", "x1", "x2")
X1, X2 = 7, 8
_BITS = 8
_MASK = (1 << _BITS) - 1


def parse_rational(text: str) -> Fraction:
    return Fraction(text.strip())


def format_rational(q) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def pack_exponents(exps: Sequence[int]) -> int:
    key = 0
    for i, e in enumerate(exps):
        if e < 0 or e > _MASK:
            raise ValueError(f"exponent {e} out of range")
        key |= e << (_BITS * i)
    return key


def unpack_exponents(key: int) -> tuple[int, ...]:
    return tuple((key >> (_BITS * i)) & _MASK for i in range(NVARS))


def _exp(key: int, var: int) -> int:
    return (key >> (_BITS * var)) & _MASK


class MPoly:
    """Sparse polynomial over Q in a0..a6, x1, x2."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[int, Fraction] | None = None):
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    @classmethod
    def constant(cls, c) -> "MPoly":
        return cls({0: Fraction(c)})

    @classmethod
    def var(cls, name: str) -> "MPoly":
        exps = [0] * NVARS
        exps[VAR_NAMES.index(name)] = 1
        return cls({pack_exponents(exps): Fraction(1)})

    @classmethod
    def from_dict(cls, d: dict[tuple[int, ...], object]) -> "MPoly":
        return cls({pack_exponents(e): Fraction(c) for e, c in d.items()})

    def to_dict(self) -> dict[tuple[int, ...], Fraction]:
        return {unpack_exponents(k): v for k, v in self.terms.items()}

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = MPoly.constant(other)
        return isinstance(other, MPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self) -> str:
        return f"MPoly({len(self.terms)} terms)"

    def __add__(self, other) -> "MPoly":
        if not isinstance(other, MPoly):
            other = MPoly.constant(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            s = out.get(k, 0) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return MPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "MPoly":
        return MPoly({k: -v for k, v in self.terms.items()})

    def __sub__(self, other) -> "MPoly":
        if not isinstance(other, MPoly):
            other = MPoly.constant(other)
        return self + (-other)

    def __rsub__(self, other) -> "MPoly":
        return MPoly.constant(other) - self

    def scale(self, c) -> "MPoly":
        c = Fraction(c)
        if not c:
            return MPoly()
        return MPoly({k: v * c for k, v in self.terms.items()})

    def __mul__(self, other) -> "MPoly":
        if not isinstance(other, MPoly):
            return self.scale(other)
        if len(self.terms) < len(other.terms):
            small, big = self.terms, other.terms
        else:
            small, big = other.terms, self.terms
        out: dict[int, Fraction] = {}
        get = out.get
        for k1, v1 in small.items():
            for k2, v2 in big.items():
                k = k1 + k2
                out[k] = get(k, 0) + v1 * v2
        return MPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "MPoly":
        if n < 0:
            raise ValueError("negative power")
        result = MPoly.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def derivative(self, var: int, order: int = 1) -> "MPoly":
        if order == 0:
            return self
        out: dict[int, Fraction] = {}
        step = order << (_BITS * var)
        for k, v in self.terms.items():
            e = _exp(k, var)
            if e < order:
                continue
            ff = 1
            for t in range(order):
                ff *= e - t
            out[k - step] = v * ff
        return MPoly(out)

    def degree_in(self, variables: Iterable[int]) -> set[int]:
        variables = tuple(variables)
        return {sum(_exp(k, v) for v in variables) for k in self.terms}

    def bidegree(self) -> tuple[int, int] | None:
        """(degree in a0..a6, degree in x1,x2) if bihomogeneous, else None."""
        da = self.degree_in(range(7))
        dx = self.degree_in((X1, X2))
        if not self.terms:
            return (0, 0)
        if len(da) != 1 or len(dx) != 1:
            return None
        return (da.pop(), dx.pop())

    def x_coefficients(self, dx: int) -> list["MPoly"]:
        """Split a form of x-degree dx into coefficients of x1^(dx-i) x2^i."""
        parts: list[dict[int, Fraction]] = [{} for _ in range(dx + 1)]
        xmask = (_MASK << (_BITS * X1)) | (_MASK << (_BITS * X2))
        for k, v in self.terms.items():
            i = _exp(k, X2)
            if _exp(k, X1) + i != dx:
                raise ValueError("polynomial is not homogeneous in x of the stated degree")
            parts[i][k & ~xmask] = v
        return [MPoly(p) for p in parts]

    def evaluate(self, values: Sequence) -> object:
        """Evaluate at a full assignment of the nine variables (any ring)."""
        total = 0
        for k, v in self.terms.items():
            term = v
            for i in range(NVARS):
                e = _exp(k, i)
                if e:
                    term = term * values[i] ** e
            total = total + term
        return total

    def substitute(self, values: dict[int, object]) -> "MPoly":
        """Substitute rational numbers for some variables."""
        acc: dict[int, Fraction] = {}
        for k, v in self.terms.items():
            c = v
            kk = k
            for var, val in values.items():
                e = _exp(k, var)
                if e:
                    c *= Fraction(val) ** e
                    kk -= e << (_BITS * var)
            acc[kk] = acc.get(kk, 0) + c
        return MPoly(acc)


def sym_matrix(M: Sequence[Sequence[int]], j: int) -> list[list[Fraction]]:
    """Matrix of p(x) -> p(M^T x) on binary forms of degree j.

    Columns are indexed by the source basis monomial x1^(j-i) x2^i, rows by
    the target monomial.  For j = 1 this is M itself.
    """
    (a, b), (c, d) = M
    # x1 -> a x1 + c x2, x2 -> b x1 + d x2
    cols = []
    for i in range(j + 1):
        col = [Fraction(0)] * (j + 1)
        # (a x1 + c x2)^(j-i) (b x1 + d x2)^i
        for s in range(j - i + 1):
            t1 = comb(j - i, s) * a ** (j - i - s) * c ** s
            if not t1:
                continue
            for t in range(i + 1):
                t2 = comb(i, t) * b ** (i - t) * d ** t
                if t2:
                    col[s + t] += t1 * t2
        cols.append(col)
    return [[cols[i][r] for i in range(j + 1)] for r in range(j + 1)]


def sym_action(M: Sequence[Sequence[int]], j: int, v: Sequence) -> tuple[Fraction, ...]:
    if len(v) != j + 1:
        raise ValueError(f"vector of length {len(v)} is not in Sym^{j}")
    S = sym_matrix(M, j)
    return tuple(sum((S[r][i] * v[i] for i in range(j + 1) if v[i]), Fraction(0)) for r in range(j + 1))


def tseries(numerator: dict[int, int] | int, factors: Sequence[int], nmax: int) -> list[int]:
    """Coefficients of t^0..t^nmax in p(t) / prod(1 - t^d).

    ``numerator`` is either a single exponent (meaning t^e) or a map
    exponent -> coefficient.
    """
    if isinstance(numerator, int):
        numerator = {numerator: 1}
    if any(d < 1 for d in factors):
        raise ValueError("denominator exponents must be positive")
    series = [0] * (nmax + 1)
    for e, c in numerator.items():
        if 0 <= e <= nmax:
            series[e] += c
    for d in factors:
        for m in range(d, nmax + 1):
            series[m] += series[m - d]
    return series


def tseries_coeff(numerator: dict[int, int] | int, factors: Sequence[int], n: int) -> int:
    if n < 0:
        return 0
    return tseries(numerator, factors, n)[n]


# --- linear algebra over Q (sympy's DomainMatrix does the elimination) ---------


def _dm(rows: Sequence[Sequence], ncols: int | None = None):
    from sympy import QQ
    from sympy.polys.matrices import DomainMatrix

    rows = [[QQ(Fraction(x).numerator, Fraction(x).denominator) for x in r] for r in rows]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    return DomainMatrix(rows, (len(rows), ncols), QQ)


def _to_fraction(x) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


def rank(rows: Sequence[Sequence]) -> int:
    if not rows:
        return 0
    return _dm(rows).rank()


def nullspace(rows: Sequence[Sequence], ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of {v : A v = 0} as lists of Fractions."""
    if not rows:
        return [[Fraction(int(i == c)) for i in range(ncols)] for c in range(ncols)]
    ns = _dm(rows, ncols).nullspace().to_Matrix()
    return [[_to_fraction(ns[r, c]) for c in range(ns.cols)] for r in range(ns.rows)]


class LinearSystemError(ValueError):
    pass


def solve_linear(rows: Sequence[Sequence], rhs: Sequence) -> list[Fraction]:
    """The unique solution of A x = b; raises LinearSystemError otherwise."""
    n = len(rows[0]) if rows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    M = _dm(aug, n + 1)
    R, pivots = M.rref()
    if n in pivots:
        raise LinearSystemError("inconsistent linear system")
    if len(pivots) < n:
        raise LinearSystemError("underdetermined linear system")
    R = R.to_Matrix()
    return [_to_fraction(R[i, n]) for i in range(n)]


def charpoly(matrix: Sequence[Sequence]) -> list[Fraction]:
    """Characteristic polynomial det(x I - A), coefficients from the leading one down."""
    if not matrix:
        return [Fraction(1)]
    return [_to_fraction(c) for c in _dm(matrix).charpoly()]


def format_poly(coeffs: Sequence, var: str = "x") -> str:
    """Render a coefficient list (highest degree first) as text."""
    n = len(coeffs) - 1
    parts = []
    for i, c in enumerate(coeffs):
        c = Fraction(c)
        if not c:
            continue
        e = n - i
        mag = abs(c)
        if e == 0:
            body = format_rational(mag)
        else:
            body = ("" if mag == 1 else format_rational(mag) + "*") + (var if e == 1 else f"{var}^{e}")
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    if not parts:
        return "0"
    text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text
