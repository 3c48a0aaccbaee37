"""Covariants of binary sextics: transvectants, the 26 Clebsch-Gordan generators,
and a small expression language for products and sums of generators."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Callable, TypeVar

from .exact import X1, X2, MPoly, pack_exponents


@dataclass(frozen=True)
class Covariant:
    poly: MPoly
    deg_a: int
    deg_x: int

    def coefficients(self) -> list[MPoly]:
        """Coefficients of x1^(deg_x-i) x2^i, as polynomials in a0..a6."""
        return self.poly.x_coefficients(self.deg_x)


def _x_degree(f: MPoly) -> int:
    degs = f.degree_in((X1, X2))
    if len(degs) != 1:
        raise ValueError("form is not homogeneous in x1, x2")
    return degs.pop()


def transvectant(f: MPoly, g: MPoly, k: int) -> MPoly:
    """The k-th transvectant (f, g)_k of two binary forms."""
    if not f or not g:
        return MPoly()
    m, n = _x_degree(f), _x_degree(g)
    if k < 0 or k > min(m, n):
        raise ValueError(f"transvectant order {k} exceeds form degrees ({m}, {n})")
    total = MPoly()
    for j in range(k + 1):
        df = f.derivative(X1, k - j).derivative(X2, j)
        dg = g.derivative(X1, j).derivative(X2, k - j)
        term = df * dg
        c = comb(k, j) * (-1) ** j
        total = total + term.scale(c)
    pref = Fraction(factorial(m - k) * factorial(n - k), factorial(m) * factorial(n))
    return total.scale(pref)


def universal_sextic() -> MPoly:
    terms = {}
    for i in range(7):
        exps = [0] * 9
        exps[i] = 1
        exps[X1] = 6 - i
        exps[X2] = i
        terms[pack_exponents(exps)] = Fraction(comb(6, i))
    return MPoly(terms)


# name -> (deg_a, deg_x, recipe); recipe is (left, right, order) where an
# operand is a generator name or (name, power).
GENERATOR_TABLE: dict[str, tuple[int, int, tuple]] = {
    "C_{1,6}": (1, 6, ()),
    "C_{2,0}": (2, 0, ("C_{1,6}", "C_{1,6}", 6)),
    "C_{2,4}": (2, 4, ("C_{1,6}", "C_{1,6}", 4)),
    "C_{2,8}": (2, 8, ("C_{1,6}", "C_{1,6}", 2)),
    "C_{3,2}": (3, 2, ("C_{1,6}", "C_{2,4}", 4)),
    "C_{3,6}": (3, 6, ("C_{1,6}", "C_{2,4}", 2)),
    "C_{3,8}": (3, 8, ("C_{1,6}", "C_{2,4}", 1)),
    "C_{3,12}": (3, 12, ("C_{1,6}", "C_{2,8}", 1)),
    "C_{4,0}": (4, 0, ("C_{2,4}", "C_{2,4}", 4)),
    "C_{4,4}": (4, 4, ("C_{1,6}", "C_{3,2}", 2)),
    "C_{4,6}": (4, 6, ("C_{1,6}", "C_{3,2}", 1)),
    "C_{4,10}": (4, 10, ("C_{2,8}", "C_{2,4}", 1)),
    "C_{5,2}": (5, 2, ("C_{2,4}", "C_{3,2}", 2)),
    "C_{5,4}": (5, 4, ("C_{2,4}", "C_{3,2}", 1)),
    "C_{5,8}": (5, 8, ("C_{2,8}", "C_{3,2}", 1)),
    "C_{6,0}": (6, 0, ("C_{3,2}", "C_{3,2}", 2)),
    "C_{6,6}^{(1)}": (6, 6, ("C_{3,6}", "C_{3,2}", 1)),
    "C_{6,6}^{(2)}": (6, 6, ("C_{3,8}", "C_{3,2}", 2)),
    "C_{7,2}": (7, 2, ("C_{1,6}", ("C_{3,2}", 2), 4)),
    "C_{7,4}": (7, 4, ("C_{1,6}", ("C_{3,2}", 2), 3)),
    "C_{8,2}": (8, 2, ("C_{2,4}", ("C_{3,2}", 2), 3)),
    "C_{9,4}": (9, 4, ("C_{3,8}", ("C_{3,2}", 2), 4)),
    "C_{10,0}": (10, 0, ("C_{1,6}", ("C_{3,2}", 3), 6)),
    "C_{10,2}": (10, 2, ("C_{1,6}", ("C_{3,2}", 3), 5)),
    "C_{12,2}": (12, 2, ("C_{3,8}", ("C_{3,2}", 3), 6)),
    "C_{15,0}": (15, 0, ("C_{3,8}", ("C_{3,2}", 4), 8)),
}

INVARIANTS = tuple(n for n, (_, b, _) in GENERATOR_TABLE.items() if b == 0)

T = TypeVar("T")


def build_generators(
    base: T,
    transvect: Callable[[T, T, int], T],
    power: Callable[[T, int], T],
    names=None,
) -> dict[str, T]:
    """Run the table recipes in an arbitrary algebra of binary forms.

    ``base`` plays the role of the universal sextic.  Used both for
    polynomial covariants and for their images as Fourier series.
    """
    cache: dict[str, T] = {"C_{1,6}": base}

    def get(name: str) -> T:
        if name in cache:
            return cache[name]
        _, _, (left, right, k) = GENERATOR_TABLE[name]
        cache[name] = transvect(operand(left), operand(right), k)
        return cache[name]

    def operand(op) -> T:
        if isinstance(op, tuple):
            return power(get(op[0]), op[1])
        return get(op)

    for name in names or GENERATOR_TABLE:
        get(name)
    return cache


@lru_cache(maxsize=None)
def generator(name: str) -> Covariant:
    name = normalize_name(name)
    if name not in GENERATOR_TABLE:
        raise KeyError(f"unknown generator {name!r}")
    a, b, recipe = GENERATOR_TABLE[name]
    if not recipe:
        return Covariant(universal_sextic(), 1, 6)
    left, right, k = recipe

    def operand(op) -> MPoly:
        if isinstance(op, tuple):
            return generator(op[0]).poly ** op[1]
        return generator(op).poly

    return Covariant(transvectant(operand(left), operand(right), k), a, b)


_NAME_RE = re.compile(r"C_\{\s*(\d+)\s*,\s*(\d+)\s*\}(?:\^\{\((\d)\)\})?")


def normalize_name(name: str) -> str:
    m = _NAME_RE.fullmatch(name.replace(" ", ""))
    if not m:
        return name
    a, b, sup = m.groups()
    return f"C_{{{a},{b}}}" + (f"^{{({sup})}}" if sup else "")


# --- expression language ---------------------------------------------------


@dataclass(frozen=True)
class Gen:
    name: str


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Sum:
    terms: tuple  # of (sign, node)


@dataclass(frozen=True)
class Prod:
    factors: tuple


@dataclass(frozen=True)
class Pow:
    base: object
    exp: int


CovariantExpr = Gen | Num | Sum | Prod | Pow


class ExprSyntaxError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<name>C_\{\s*\d+\s*,\s*\d+\s*\}(?:\^\{\(\d\)\})?)"
    r"|(?P<num>\d+(?:/\d+)?)|(?P<op>[-+*^()]))"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            raise ExprSyntaxError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append((kind, m.group(kind), start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value: str):
        kind, val, pos = self.take()
        if val != value:
            raise ExprSyntaxError(f"expected {value!r}, found {val or 'end of input'!r}", pos)

    def parse(self):
        node = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise ExprSyntaxError(f"unexpected {val!r}", pos)
        return node

    def expr(self):
        terms = []
        sign = 1
        kind, val, _ = self.peek()
        if val in "+-" and kind == "op":
            self.take()
            sign = -1 if val == "-" else 1
        terms.append((sign, self.term()))
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                terms.append((-1 if val == "-" else 1, self.term()))
            else:
                break
        if len(terms) == 1 and terms[0][0] == 1:
            return terms[0][1]
        return Sum(tuple(terms))

    def term(self):
        factors = []
        kind, val, pos = self.peek()
        if kind == "num":
            self.take()
            factors.append(Num(Fraction(val)))
        while True:
            kind, val, pos = self.peek()
            if kind == "op" and val == "*":
                self.take()
                kind, val, pos = self.peek()
                if not (kind in ("name", "num") or val == "("):
                    raise ExprSyntaxError("expected a factor after '*'", pos)
            if kind == "name" or (kind == "op" and val == "("):
                factors.append(self.factor())
            else:
                break
        if not factors:
            raise ExprSyntaxError("expected a term", pos)
        if len(factors) == 1:
            return factors[0]
        return Prod(tuple(factors))

    def factor(self):
        kind, val, pos = self.take()
        if kind == "name":
            name = normalize_name(val)
            if name not in GENERATOR_TABLE:
                raise ExprSyntaxError(f"unknown generator {val!r}", pos)
            node = Gen(name)
        elif val == "(":
            node = self.expr()
            self.expect(")")
        else:
            raise ExprSyntaxError(f"unexpected {val!r}", pos)
        kind, val, pos = self.peek()
        if kind == "op" and val == "^":
            self.take()
            kind, val, pos = self.take()
            if kind != "num" or "/" in val:
                raise ExprSyntaxError("expected an integer exponent", pos)
            node = Pow(node, int(val))
        return node


def parse_expr(text: str) -> CovariantExpr:
    return _Parser(text).parse()


def fold_expr(
    e,
    leaf: Callable[[str], T],
    const: Callable[[Fraction], T],
    add: Callable[[T, T], T],
    mul: Callable[[T, T], T],
    scale: Callable[[T, Fraction], T],
):
    """Evaluate an expression tree in any commutative algebra."""
    if isinstance(e, Gen):
        return leaf(e.name)
    if isinstance(e, Num):
        return const(e.value)
    if isinstance(e, Pow):
        base = fold_expr(e.base, leaf, const, add, mul, scale)
        result = None
        for _ in range(e.exp):
            result = base if result is None else mul(result, base)
        return result if result is not None else const(Fraction(1))
    if isinstance(e, Prod):
        coef = Fraction(1)
        result = None
        for f in e.factors:
            if isinstance(f, Num):
                coef *= f.value
                continue
            v = fold_expr(f, leaf, const, add, mul, scale)
            result = v if result is None else mul(result, v)
        if result is None:
            return const(coef)
        return result if coef == 1 else scale(result, coef)
    if isinstance(e, Sum):
        result = None
        for sign, t in e.terms:
            v = fold_expr(t, leaf, const, add, mul, scale)
            if sign < 0:
                v = scale(v, Fraction(-1))
            result = v if result is None else add(result, v)
        return result
    raise TypeError(f"not an expression node: {e!r}")


def expr_bidegree(e) -> tuple[int, int]:
    """Bidegree of an expression; raises if a sum mixes bidegrees."""

    def leaf(name):
        a, b, _ = GENERATOR_TABLE[name]
        return (a, b, False)

    def const(_):
        return (0, 0, True)

    def add(u, v):
        if u[2]:
            return v
        if v[2]:
            return u
        if u[:2] != v[:2]:
            raise ValueError(f"sum mixes bidegrees {u[:2]} and {v[:2]}")
        return u

    def mul(u, v):
        return (u[0] + v[0], u[1] + v[1], u[2] and v[2])

    a, b, _ = fold_expr(e, leaf, const, add, mul, lambda u, c: u)
    return (a, b)


def generator_names(e) -> set[str]:
    names: set[str] = set()
    fold_expr(e, lambda n: names.add(n), lambda c: None, lambda u, v: None,
              lambda u, v: None, lambda u, c: None)
    return names


def eval_expr(e) -> Covariant:
    if isinstance(e, str):
        e = parse_expr(e)
    a, b = expr_bidegree(e)
    poly = fold_expr(
        e,
        leaf=lambda n: generator(n).poly,
        const=MPoly.constant,
        add=lambda u, v: u + v,
        mul=lambda u, v: u * v,
        scale=lambda u, c: u.scale(c),
    )
    if poly and poly.bidegree() != (a, b):
        raise ValueError(f"expression is not bihomogeneous of degree {(a, b)}")
    return Covariant(poly, a, b)


def covariant_to_json(c: Covariant) -> dict:
    from .exact import format_rational, unpack_exponents

    monomials = sorted((unpack_exponents(k), v) for k, v in c.poly.terms.items())
    return {
        "deg_a": c.deg_a,
        "deg_x": c.deg_x,
        "monomials": [[list(e), format_rational(v)] for e, v in monomials],
    }


# The discriminant is often quoted with -13860 C_{10,0}; with the transvectant
# prefactor used here C_{10,0} comes out C(12,6) = 924 times larger, so the last
# coefficient becomes -15 (checked by vanishing on sextics with a double root).
DISCRIMINANT_EXPR_13860 = (
    "768 C_{2,0}^5 - 7625 C_{4,0}C_{2,0}^3 - 1875(7 C_{6,0}C_{2,0}^2"
    " - 10 C_{4,0}^2C_{2,0} - 30 C_{6,0}C_{4,0} - 13860 C_{10,0})"
)
DISCRIMINANT_EXPR = (
    "768 C_{2,0}^5 - 7625 C_{4,0}C_{2,0}^3 - 1875(7 C_{6,0}C_{2,0}^2"
    " - 10 C_{4,0}^2C_{2,0} - 30 C_{6,0}C_{4,0} - 15 C_{10,0})"
)
E4_EXPR = "75 C_{4,0} - 8 C_{2,0}^2"
E6_EXPR = "224 C_{2,0}^3 - 1425 C_{2,0}C_{4,0} - 1125 C_{6,0}"
