"""Truncated vector-valued Fourier series in degree two.

A series maps index triples ``[n1, n2, n3]`` (the half-integral matrix
``((n1, n2/2), (n2/2, n3))``) to coefficient vectors of length ``j + 1``.
Exponents may be fractional with a common denominator ``D``: stored keys are
``D * [n1, n2, n3]``.  Coefficients are stored as integer numerators over a
single common denominator ``den``.

Multiplication and division work cell by cell, a cell being the set of
indices with fixed ``(n1, n3)``.  Inside a cell the series is a Laurent
polynomial in ``R = e^{pi i tau_12}`` with one slot per vector component;
each cell is packed into one big integer (Kronecker substitution) so that a
cell product is a single big-integer multiplication.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial, gcd, isqrt
from typing import Iterator

try:
    from gmpy2 import mpz as _big
except ImportError:  # pragma: no cover
    _big = int

Triple = tuple[int, int, int]


class NonDivisible(ArithmeticError):
    """Raised when a series is not divisible by the requested divisor."""

    def __init__(self, message: str, index: tuple | None = None):
        super().__init__(message)
        self.index = index


class PrecisionError(ValueError):
    pass


def in_cone(n1, n2, n3) -> bool:
    return n1 >= 0 and n3 >= 0 and n2 * n2 <= 4 * n1 * n3


class FSeries2:
    __slots__ = ("j", "D", "prec", "den", "coeffs")

    def __init__(self, j: int, coeffs: dict[Triple, tuple], prec: int, D: int = 1, den: int = 1):
        if den <= 0:
            raise ValueError("denominator must be positive")
        self.j = j
        self.D = D
        self.prec = prec
        self.den = den
        lim = prec * D
        self.coeffs = {
            k: tuple(v) for k, v in coeffs.items()
            if k[0] <= lim and k[2] <= lim and any(v)
        }

    # -- construction -----------------------------------------------------

    @classmethod
    def zero(cls, j: int, prec: int, D: int = 1) -> "FSeries2":
        return cls(j, {}, prec, D)

    @classmethod
    def from_rational(cls, j: int, coeffs: dict[tuple, tuple], prec: int, D: int = 1) -> "FSeries2":
        """Build from unscaled indices and rational vectors."""
        den = 1
        for v in coeffs.values():
            for c in v:
                den = den * Fraction(c).denominator // gcd(den, Fraction(c).denominator)
        out = {}
        for n, v in coeffs.items():
            key = tuple(int(Fraction(x) * D) for x in n)
            out[key] = tuple(int(Fraction(c) * den) for c in v)
        return cls(j, out, prec, D, den).reduced()

    def reduced(self) -> "FSeries2":
        g = self.den
        for v in self.coeffs.values():
            for c in v:
                if c:
                    g = gcd(g, c)
                    if g == 1:
                        return self
        if g == 1:
            return self
        return FSeries2(self.j, {k: tuple(c // g for c in v) for k, v in self.coeffs.items()},
                        self.prec, self.D, self.den // g)

    # -- access -------------------------------------------------------------

    def _key(self, n) -> Triple:
        key = []
        for x in n:
            y = Fraction(x) * self.D
            if y.denominator != 1:
                raise KeyError(f"index {n} is not on the 1/{self.D} lattice")
            key.append(int(y))
        return tuple(key)

    def coeff(self, n) -> tuple[Fraction, ...]:
        n1, _, n3 = n
        if max(n1, n3) > self.prec:
            raise PrecisionError(f"index {list(n)} is beyond certified precision {self.prec}")
        v = self.coeffs.get(self._key(n))
        if v is None:
            return (Fraction(0),) * (self.j + 1)
        return tuple(Fraction(c, self.den) for c in v)

    __getitem__ = coeff

    def items(self) -> Iterator[tuple[tuple, tuple[Fraction, ...]]]:
        for k in sorted(self.coeffs):
            idx = tuple(Fraction(x, self.D) if x % self.D else x // self.D for x in k)
            yield idx, tuple(Fraction(c, self.den) for c in self.coeffs[k])

    def support(self) -> list[tuple]:
        return [n for n, _ in self.items()]

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def max_abs(self) -> int:
        return max((abs(c) for v in self.coeffs.values() for c in v), default=0)

    def nterms(self) -> int:
        return sum(1 for v in self.coeffs.values() for c in v if c)

    def __repr__(self) -> str:
        return f"FSeries2(j={self.j}, D={self.D}, prec={self.prec}, terms={len(self.coeffs)})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, FSeries2):
            return NotImplemented
        a, b = _common(self, other)
        if a.j != b.j:
            return False
        p = min(a.prec, b.prec)
        return a.truncate(p)._num_equal(b.truncate(p))

    def _num_equal(self, other: "FSeries2") -> bool:
        if self.coeffs.keys() != other.coeffs.keys():
            return False
        for k, v in self.coeffs.items():
            w = other.coeffs[k]
            for x, y in zip(v, w):
                if x * other.den != y * self.den:
                    return False
        return True

    __hash__ = None

    # -- shape changes ------------------------------------------------------

    def truncate(self, prec: int) -> "FSeries2":
        if prec > self.prec:
            raise PrecisionError(f"cannot raise precision from {self.prec} to {prec}")
        return FSeries2(self.j, self.coeffs, prec, self.D, self.den)

    def rescale(self, D: int) -> "FSeries2":
        """Express on the finer lattice 1/D (D must be a multiple of self.D)."""
        if D == self.D:
            return self
        if D % self.D:
            raise ValueError(f"cannot rescale from 1/{self.D} to 1/{D}")
        f = D // self.D
        return FSeries2(self.j, {(a * f, b * f, c * f): v for (a, b, c), v in self.coeffs.items()},
                        self.prec, D, self.den)

    def reduce_D(self) -> "FSeries2":
        """Pass to the coarsest lattice containing the support."""
        g = self.D
        for k in self.coeffs:
            g = gcd(g, gcd(k[0], gcd(k[1], k[2])))
            if g == 1:
                break
        if g == 1:
            return self
        return FSeries2(self.j, {(a // g, b // g, c // g): v for (a, b, c), v in self.coeffs.items()},
                        self.prec, self.D // g, self.den)

    def component(self, l: int) -> "FSeries2":
        return FSeries2(0, {k: (v[l],) for k, v in self.coeffs.items()}, self.prec, self.D, self.den)

    @classmethod
    def from_components(cls, comps: list["FSeries2"]) -> "FSeries2":
        comps = _common(*comps)
        den = 1
        for c in comps:
            den = den * c.den // gcd(den, c.den)
        prec = min(c.prec for c in comps)
        keys = set().union(*(c.coeffs for c in comps))
        out = {}
        for k in keys:
            out[k] = tuple(c.coeffs.get(k, (0,))[0] * (den // c.den) for c in comps)
        return cls(len(comps) - 1, out, prec, comps[0].D, den).reduced()

    # -- linear structure ---------------------------------------------------

    def __neg__(self) -> "FSeries2":
        return FSeries2(self.j, {k: tuple(-c for c in v) for k, v in self.coeffs.items()},
                        self.prec, self.D, self.den)

    def scale(self, c) -> "FSeries2":
        c = Fraction(c)
        if not c:
            return FSeries2.zero(self.j, self.prec, self.D)
        p, q = c.numerator, c.denominator
        return FSeries2(self.j, {k: tuple(p * x for x in v) for k, v in self.coeffs.items()},
                        self.prec, self.D, self.den * q).reduced()

    def __add__(self, other: "FSeries2") -> "FSeries2":
        if not isinstance(other, FSeries2):
            if other == 0:
                return self
            return NotImplemented
        a, b = _common(self, other)
        if a.j != b.j:
            raise ValueError(f"cannot add series of lengths {a.j + 1} and {b.j + 1}")
        den = a.den * b.den // gcd(a.den, b.den)
        fa, fb = den // a.den, den // b.den
        out = {k: tuple(fa * x for x in v) for k, v in a.coeffs.items()}
        for k, v in b.coeffs.items():
            w = out.get(k)
            if w is None:
                out[k] = tuple(fb * x for x in v)
            else:
                out[k] = tuple(x + fb * y for x, y in zip(w, v))
        return FSeries2(a.j, out, min(a.prec, b.prec), a.D, den).reduced()

    def __radd__(self, other):
        if other == 0:
            return self
        return NotImplemented

    def __sub__(self, other: "FSeries2") -> "FSeries2":
        return self + (-other)

    def __mul__(self, other) -> "FSeries2":
        if isinstance(other, FSeries2):
            return mul(self, other)
        return self.scale(other)

    def __rmul__(self, other) -> "FSeries2":
        return self.scale(other)

    def __pow__(self, n: int) -> "FSeries2":
        if n < 1:
            raise ValueError("only positive powers are supported")
        result = None
        base = self
        while n:
            if n & 1:
                result = base if result is None else mul(result, base)
            n >>= 1
            if n:
                base = mul(base, base)
        return result

    # -- vector operations ----------------------------------------------------

    def xderiv(self, r: int, s: int) -> "FSeries2":
        """Apply d^r/dx1^r d^s/dx2^s, viewing the series as a binary form."""
        m = self.j
        if r + s > m:
            raise ValueError("derivative order exceeds the form degree")
        jn = m - r - s
        fac = []
        for i2 in range(jn + 1):
            i = i2 + s
            fac.append(_falling(m - i, r) * _falling(i, s))
        out = {}
        for k, v in self.coeffs.items():
            w = tuple(fac[i2] * v[i2 + s] for i2 in range(jn + 1))
            if any(w):
                out[k] = w
        return FSeries2(jn, out, self.prec, self.D, self.den)

    def first_nonzero(self) -> tuple | None:
        """The smallest stored index in the order (n1, n3, -n2)."""
        if not self.coeffs:
            return None
        k = min(self.coeffs, key=lambda t: (t[0], t[2], -t[1]))
        return tuple(Fraction(x, self.D) if x % self.D else x // self.D for x in k)

    # -- serialization ----------------------------------------------------------

    def to_json_obj(self, k: int | None = None, character: bool | None = None) -> dict:
        from .exact import format_rational

        coeffs = {}
        for n, v in self.items():
            coeffs[",".join(format_rational(x) for x in n)] = [format_rational(c) for c in v]
        obj = {"j": self.j, "k": k, "character": character, "prec": self.prec, "D": self.D,
               "coeffs": coeffs}
        return obj

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_json_obj(**kw), sort_keys=False)

    @classmethod
    def from_json_obj(cls, obj: dict) -> "FSeries2":
        D = obj.get("D", 1)
        coeffs = {}
        for key, vec in obj["coeffs"].items():
            n = tuple(Fraction(x) for x in key.split(","))
            coeffs[n] = tuple(Fraction(c) for c in vec)
        return cls.from_rational(obj["j"], coeffs, obj["prec"], D)


def _falling(n: int, r: int) -> int:
    out = 1
    for t in range(r):
        out *= n - t
    return out


def _common(*series: FSeries2) -> list[FSeries2]:
    D = 1
    for s in series:
        D = D * s.D // gcd(D, s.D)
    return [s.rescale(D) for s in series]


# --- packed cell arithmetic ----------------------------------------------------


class _Packer:
    """Kronecker packing of cells with ``nslots`` slots of ``wb`` bytes."""

    _bias_cache: dict[tuple[int, int], int] = {}

    def __init__(self, wb: int):
        self.wb = wb
        self.bias = 1 << (8 * wb - 1)
        self.zero = bytes(wb - 1) + b"\x80"

    def biasconst(self, nslots: int) -> int:
        key = (self.wb, nslots)
        c = self._bias_cache.get(key)
        if c is None:
            c = int.from_bytes(self.zero * nslots, "little")
            if len(self._bias_cache) > 512:
                self._bias_cache.clear()
            self._bias_cache[key] = c
        return c

    def pack(self, slots: dict[int, int], nslots: int):
        wb, bias = self.wb, self.bias
        buf = bytearray(self.zero * nslots)
        for s, c in slots.items():
            buf[s * wb:(s + 1) * wb] = (c + bias).to_bytes(wb, "little")
        return _big(int.from_bytes(buf, "little") - self.biasconst(nslots))

    def unpack(self, value, nslots: int, wanted) -> dict[int, int]:
        """Decode slots listed in ``wanted`` (an iterable of slot indices)."""
        wb, bias, zero = self.wb, self.bias, self.zero
        buf = (int(value) + self.biasconst(nslots)).to_bytes(nslots * wb, "little")
        out = {}
        for s in wanted:
            chunk = buf[s * wb:(s + 1) * wb]
            if chunk != zero:
                out[s] = int.from_bytes(chunk, "little") - bias
        return out


def _width_bytes(bits: int) -> int:
    return bits // 8 + 2


def _cells(F: FSeries2) -> dict[tuple[int, int], list[tuple[int, tuple]]]:
    cells: dict[tuple[int, int], list] = {}
    for (a, b, c), v in F.coeffs.items():
        cells.setdefault((a, c), []).append((b, v))
    return cells


def _cell_slots(entries, n1: int, n3: int, S: int) -> dict[int, int]:
    slots = {}
    base = n1 + n3
    for n2, v in entries:
        off = n2 + base
        for l, c in enumerate(v):
            if c:
                slots[l * S + off] = c
    return slots


def _decode_cell(packer: _Packer, value, n1: int, n3: int, S: int, j: int) -> dict[int, tuple]:
    """Unpack a product cell into {n2: vector}."""
    base = n1 + n3
    span = 2 * base + 1
    nslots = (j + 1) * S
    wanted = (l * S + o for l in range(j + 1) for o in range(span))
    slots = packer.unpack(value, nslots, wanted)
    out: dict[int, list] = {}
    for s, c in slots.items():
        l, o = divmod(s, S)
        vec = out.get(o - base)
        if vec is None:
            vec = out[o - base] = [0] * (j + 1)
        vec[l] = c
    return {n2: tuple(v) for n2, v in out.items()}


def mul(F: FSeries2, G: FSeries2) -> FSeries2:
    """Product of two series; vector parts multiply as binary forms."""
    F, G = _common(F, G)
    D = F.D
    prec = min(F.prec, G.prec)
    j = F.j + G.j
    if not F.coeffs or not G.coeffs:
        return FSeries2.zero(j, prec, D)
    L = prec * D
    S = 4 * L + 1
    bits = F.max_abs().bit_length() + G.max_abs().bit_length() + min(F.nterms(), G.nterms()).bit_length() + 1
    packer = _Packer(_width_bytes(bits))
    nF, nG = (F.j + 1) * S, (G.j + 1) * S
    Fc = {c: packer.pack(_cell_slots(e, c[0], c[1], S), nF) for c, e in _cells(F).items()
          if c[0] <= L and c[1] <= L}
    Gc = {c: packer.pack(_cell_slots(e, c[0], c[1], S), nG) for c, e in _cells(G).items()
          if c[0] <= L and c[1] <= L}
    acc: dict[tuple[int, int], object] = {}
    glist = sorted(Gc.items())
    for (a1, a3), x in Fc.items():
        for (b1, b3), y in glist:
            t1 = a1 + b1
            if t1 > L:
                break
            t3 = a3 + b3
            if t3 > L:
                continue
            key = (t1, t3)
            prev = acc.get(key)
            acc[key] = x * y if prev is None else prev + x * y
    out = {}
    for (t1, t3), value in acc.items():
        if not value:
            continue
        for n2, v in _decode_cell(packer, value, t1, t3, S, j).items():
            if any(v):
                out[(t1, n2, t3)] = v
    return FSeries2(j, out, prec, D, F.den * G.den).reduced()


def mul_sum(pairs: list[tuple[int, FSeries2, FSeries2]]) -> FSeries2:
    """Sum of c * F * G over the given triples, accumulated before unpacking.

    All left factors must share one length, as must all right factors.
    """
    series = _common(*[s for _, f, g in pairs for s in (f, g)])
    lefts, rights = series[0::2], series[1::2]
    D = series[0].D
    prec = min(s.prec for s in series)
    jl = {f.j for f in lefts}
    jr = {g.j for g in rights}
    if len(jl) != 1 or len(jr) != 1:
        raise ValueError("mul_sum needs uniform factor lengths")
    jf, jg = jl.pop(), jr.pop()
    j = jf + jg
    L = prec * D
    S = 4 * L + 1
    den = 1
    for f, g in zip(lefts, rights):
        d = f.den * g.den
        den = den * d // gcd(den, d)
    coefs = []
    for (c, _, _), f, g in zip(pairs, lefts, rights):
        c = Fraction(c) * den / (f.den * g.den)
        coefs.append(c)
    cden = 1
    for c in coefs:
        cden = cden * c.denominator // gcd(cden, c.denominator)
    icoefs = [int(c * cden) for c in coefs]
    den *= cden
    bits = 0
    for c, f, g in zip(icoefs, lefts, rights):
        b = (f.max_abs().bit_length() + g.max_abs().bit_length() + abs(c).bit_length()
             + min(f.nterms(), g.nterms()).bit_length())
        bits = max(bits, b)
    bits += len(pairs).bit_length() + 1
    packer = _Packer(_width_bytes(bits))
    acc: dict[tuple[int, int], object] = {}
    for c, f, g in zip(icoefs, lefts, rights):
        if not c or not f.coeffs or not g.coeffs:
            continue
        Fc = {k: packer.pack(_cell_slots(e, k[0], k[1], S), (jf + 1) * S)
              for k, e in _cells(f).items() if k[0] <= L and k[1] <= L}
        glist = sorted((k, packer.pack(_cell_slots(e, k[0], k[1], S), (jg + 1) * S))
                       for k, e in _cells(g).items() if k[0] <= L and k[1] <= L)
        for (a1, a3), x in Fc.items():
            if c != 1:
                x = x * c
            for (b1, b3), y in glist:
                t1 = a1 + b1
                if t1 > L:
                    break
                t3 = a3 + b3
                if t3 > L:
                    continue
                key = (t1, t3)
                prev = acc.get(key)
                acc[key] = x * y if prev is None else prev + x * y
    out = {}
    for (t1, t3), value in acc.items():
        if not value:
            continue
        for n2, v in _decode_cell(packer, value, t1, t3, S, j).items():
            if any(v):
                out[(t1, n2, t3)] = v
    return FSeries2(j, out, prec, D, den).reduced()


def mul_naive(F: FSeries2, G: FSeries2) -> FSeries2:
    """Direct convolution over index pairs; slow reference implementation."""
    F, G = _common(F, G)
    prec = min(F.prec, G.prec)
    L = prec * F.D
    j = F.j + G.j
    out: dict[Triple, list] = {}
    for (a1, a2, a3), v in F.coeffs.items():
        for (b1, b2, b3), w in G.coeffs.items():
            t = (a1 + b1, a2 + b2, a3 + b3)
            if t[0] > L or t[2] > L:
                continue
            acc = out.setdefault(t, [0] * (j + 1))
            for i, x in enumerate(v):
                if x:
                    for i2, y in enumerate(w):
                        acc[i + i2] += x * y
    return FSeries2(j, {k: tuple(v) for k, v in out.items()}, prec, F.D, F.den * G.den).reduced()


# --- exact division ----------------------------------------------------------------


def div_exact(F: FSeries2, G: FSeries2) -> FSeries2:
    """The series H with F = G * H, for scalar G.

    Cells of H are solved in lexicographic order of (n1, n3); inside a cell
    the residual is divided exactly by the leading cell of G as a Laurent
    polynomial in R.  A non-zero remainder, or a quotient coefficient
    outside the cone n2^2 <= 4 n1 n3, raises :class:`NonDivisible`.
    """
    if G.j != 0:
        raise ValueError("only scalar divisors are supported")
    F, G = _common(F, G)
    D = F.D
    if not G.coeffs:
        raise ZeroDivisionError("division by the zero series")
    Gcells = _cells(G)
    lead = min(Gcells)
    g1, g3 = lead
    if any(c[0] < g1 or c[1] < g3 for c in Gcells):
        raise ValueError("leading cell of the divisor is not minimal in both n1 and n3")
    L_F = min(F.prec, G.prec) * D
    L_H = L_F - max(g1, g3)
    if L_H < 0:
        raise PrecisionError("precision too small for this division")
    j = F.j
    S = 4 * L_F + 1
    nH = (j + 1) * S

    gpoly = {n2 + g1 + g3: v[0] for n2, v in Gcells[lead]}
    gtop = max(gpoly)
    glow = min(gpoly)
    lc = gpoly[gtop]
    if abs(lc) != 1:
        raise ValueError("divisor must have a unit leading coefficient in its leading cell")
    gitems = sorted(gpoly.items())

    Fcells = _cells(F)
    for (c1, c3), entries in Fcells.items():
        if c1 <= L_F and c3 <= L_F and (c1 < g1 or c3 < g3):
            n2 = entries[0][0]
            raise NonDivisible("numerator has terms below the divisor's leading cell",
                               _unscale((c1, n2, c3), D))

    others = [(c, e) for c, e in Gcells.items() if c != lead and c[0] <= L_F and c[1] <= L_F]
    maxG = G.max_abs()
    cntG = G.nterms()
    maxF = F.max_abs()

    packers: dict[int, _Packer] = {}
    gpacked: dict[tuple[int, tuple[int, int]], object] = {}
    hpacked: dict[tuple[int, tuple[int, int]], object] = {}
    H: dict[tuple[int, int], list[tuple[int, tuple]]] = {}
    maxH = 0
    out: dict[Triple, tuple] = {}

    for a in range(L_H + 1):
        for b in range(L_H + 1):
            t = (a + g1, b + g3)
            contrib = []
            for c, _ in others:
                h = (t[0] - c[0], t[1] - c[1])
                if h[0] < 0 or h[1] < 0:
                    continue
                if h in H:
                    contrib.append((c, h))
            fentries = Fcells.get(t)
            if not contrib and not fentries:
                continue
            bits = max(maxF.bit_length(), maxG.bit_length() + maxH.bit_length() + cntG.bit_length()) + 2
            wb = 8 * ((_width_bytes(bits) + 7) // 8)
            packer = packers.get(wb)
            if packer is None:
                packer = packers[wb] = _Packer(wb)
            acc = 0
            if fentries:
                acc = packer.pack(_cell_slots(fentries, t[0], t[1], S), nH)
            for c, h in contrib:
                gk = (wb, c)
                gx = gpacked.get(gk)
                if gx is None:
                    gx = gpacked[gk] = packer.pack(_cell_slots(Gcells[c], c[0], c[1], S), S)
                hk = (wb, h)
                hx = hpacked.get(hk)
                if hx is None:
                    hx = hpacked[hk] = packer.pack(_cell_slots(H[h], h[0], h[1], S), nH)
                acc = acc - gx * hx
            if not acc:
                continue
            res = _decode_cell(packer, acc, t[0], t[1], S, j)
            quotient = _divide_cell(res, t, (a, b), gitems, gtop, glow, lc, j)
            if quotient:
                H[(a, b)] = list(quotient.items())
                for n2, v in quotient.items():
                    out[(a, n2, b)] = v
                    for c in v:
                        if abs(c) > maxH:
                            maxH = abs(c)
    prec_H = L_H // D
    return FSeries2(j, out, prec_H, D, 1).scale(Fraction(G.den, F.den))


def _unscale(k, D):
    return tuple(Fraction(x, D) if x % D else x // D for x in k)


def _divide_cell(res: dict[int, tuple], t, hcell, gitems, gtop, glow, lc, j) -> dict[int, tuple]:
    """Divide the residual cell by the leading divisor polynomial, per component."""
    t1, t3 = t
    a, b = hcell
    tbase = t1 + t3
    hbase = a + b
    quot: dict[int, list] = {}
    for l in range(j + 1):
        poly = {n2 + tbase: v[l] for n2, v in res.items() if v[l]}
        if not poly:
            continue
        q = {}
        while poly:
            top = max(poly)
            if top < gtop:
                break
            c = poly[top]
            qe = top - gtop
            qc = c * lc  # lc is +-1
            q[qe] = qc
            for e, gc in gitems:
                key = qe + e
                nv = poly.get(key, 0) - qc * gc
                if nv:
                    poly[key] = nv
                else:
                    poly.pop(key, None)
        if poly:
            e = max(poly)
            raise NonDivisible("non-zero remainder in exact division",
                               (t1, e - tbase, t3))
        for qe, qc in q.items():
            n2 = qe - hbase
            if n2 * n2 > 4 * a * b:
                raise NonDivisible("quotient leaves the semidefinite cone", (a, n2, b))
            vec = quot.get(n2)
            if vec is None:
                vec = quot[n2] = [0] * (j + 1)
            vec[l] = qc
    return {n2: tuple(v) for n2, v in quot.items()}


def div_naive(F: FSeries2, G: FSeries2) -> FSeries2:
    """Reference division: solve H coefficient by coefficient in the order
    (n1, n3, -n2), using the minimal index of G."""
    if G.j != 0:
        raise ValueError("only scalar divisors are supported")
    F, G = _common(F, G)
    D = F.D
    g0 = min(G.coeffs, key=lambda t: (t[0], t[2], -t[1]))
    lead = Fraction(G.coeffs[g0][0], G.den)
    L_F = min(F.prec, G.prec) * D
    L_H = L_F - max(g0[0], g0[2])
    Fq = {k: [Fraction(c, F.den) for c in v] for k, v in F.coeffs.items()}
    Gq = {k: Fraction(v[0], G.den) for k, v in G.coeffs.items()}
    H: dict[Triple, list] = {}
    keys = []
    for a in range(L_H + 1):
        for b in range(L_H + 1):
            r = isqrt(4 * a * b)
            for n2 in range(r, -r - 1, -1):
                keys.append((a, n2, b))
    keys.sort(key=lambda t: (t[0], t[2], -t[1]))
    for h in keys:
        t = (h[0] + g0[0], h[1] + g0[1], h[2] + g0[2])
        val = list(Fq.get(t, [Fraction(0)] * (F.j + 1)))
        for gk, gv in Gq.items():
            if gk == g0:
                continue
            hk = (t[0] - gk[0], t[1] - gk[1], t[2] - gk[2])
            hv = H.get(hk)
            if hv:
                for i in range(F.j + 1):
                    val[i] -= gv * hv[i]
        val = [x / lead for x in val]
        if any(val):
            H[h] = val
    return FSeries2.from_rational(F.j, {_unscale(k, D): tuple(v) for k, v in H.items()},
                                  L_H // D, D)


# --- restriction and slicing ---------------------------------------------------------


@dataclass
class DiagonalRestriction:
    j: int
    D: int
    prec: int
    table: dict[tuple, tuple[Fraction, ...]] = field(default_factory=dict)

    def is_zero(self) -> bool:
        return not any(any(v) for v in self.table.values())

    def entry(self, n1, n3) -> tuple[Fraction, ...]:
        return self.table.get((n1, n3), (Fraction(0),) * (self.j + 1))

    def component(self, l: int) -> dict[tuple, Fraction]:
        return {k: v[l] for k, v in self.table.items() if v[l]}


def restrict_diagonal(F: FSeries2) -> DiagonalRestriction:
    table: dict[tuple, list] = {}
    for (a, b, c), v in F.coeffs.items():
        row = table.setdefault((a, c), [0] * (F.j + 1))
        for i, x in enumerate(v):
            row[i] += x
    out = {}
    for (a, c), row in table.items():
        if any(row):
            key = _unscale((a, c), F.D)
            out[key] = tuple(Fraction(x, F.den) for x in row)
    return DiagonalRestriction(F.j, F.D, F.prec, out)


def fourier_jacobi(F: FSeries2, m) -> dict[tuple, tuple[Fraction, ...]]:
    """Coefficients with n3 = m, keyed by (n1, n2)."""
    if m > F.prec:
        raise PrecisionError(f"slice {m} is beyond precision {F.prec}")
    key3 = Fraction(m) * F.D
    if key3.denominator != 1:
        return {}
    key3 = int(key3)
    out = {}
    for (a, b, c), v in F.coeffs.items():
        if c == key3:
            out[_unscale((a, b), F.D)] = tuple(Fraction(x, F.den) for x in v)
    return dict(sorted(out.items()))


def jacobi_component(slice_: dict, l: int) -> dict[tuple, Fraction]:
    return {k: v[l] for k, v in slice_.items() if v[l]}


def check_iota_symmetry(F: FSeries2, j: int, k: int, character: bool | None = None) -> bool:
    """Check the two coefficient symmetries of a level-one form of weight (j, k).

    iota (swap tau_1, tau_2):   a([n3, n2, n1])[j - i] = s (-1)^k a([n1, n2, n3])[i]
    tau_12 -> -tau_12:          a([n1, -n2, n3])[i]    = (-1)^(k + i) a([n1, n2, n3])[i]

    with s = -1 when the form has the character epsilon and s = 1 otherwise.
    If ``character`` is None it is read off the support (epsilon forms live
    on odd n1, n3).  Together these give
    a([n3, -n2, n1])[j - i] = s (-1)^i a([n1, n2, n3])[i].
    """
    if F.j != j:
        raise ValueError("vector length does not match j")
    if character is None:
        character = any(a % (2 * F.D) for (a, _, _) in F.coeffs)
    s_iota = (-1 if character else 1) * (-1 if k % 2 else 1)
    s_refl = -1 if k % 2 else 1
    zero = (0,) * (j + 1)
    for (a, b, c), v in F.coeffs.items():
        w = F.coeffs.get((c, b, a), zero)
        u = F.coeffs.get((a, -b, c), zero)
        for i in range(j + 1):
            if w[j - i] != s_iota * v[i]:
                return False
            if u[i] != (s_refl if i % 2 == 0 else -s_refl) * v[i]:
                return False
    return True
