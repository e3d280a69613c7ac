"""Exact arithmetic in cyclotomic fields Q(zeta_n).

An element of order ``n`` is stored as integer coefficients on the power
basis ``1, z, ..., z^(phi(n)-1)`` of ``Q[x]/Phi_n(x)`` over one positive
common denominator, kept in lowest terms. Two elements of different orders
are lifted to the lcm of the orders before any operation.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from typing import List, Optional, Sequence, Tuple

from .errors import DivisionByZero, Singular
from .linalg import to_fraction


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> Tuple[int, ...]:
    """Coefficients of Phi_n, lowest degree first."""
    if n < 1:
        raise ValueError("order must be positive")
    num = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            num = _poly_exact_div(num, list(cyclotomic_polynomial(d)))
    return tuple(num)


def _poly_exact_div(num, den):
    num = list(num)
    q = [0] * (len(num) - len(den) + 1)
    lead = den[-1]
    for i in range(len(q) - 1, -1, -1):
        coef = num[i + len(den) - 1] // lead
        q[i] = coef
        if coef:
            for j, d in enumerate(den):
                num[i + j] -= coef * d
    return q


@lru_cache(maxsize=None)
def _power_table(n: int) -> Tuple[Tuple[int, ...], ...]:
    """Row k holds the reduced coefficients of z^k for k = 0..n-1."""
    phi = cyclotomic_polynomial(n)
    deg = len(phi) - 1
    rows = []
    cur = [0] * deg
    cur[0] = 1
    for _ in range(n):
        rows.append(tuple(cur))
        # multiply by z and reduce with the monic relation z^deg = -sum phi_i z^i
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            cur = [c - top * p for c, p in zip(cur, phi[:deg])]
    return tuple(rows)


@lru_cache(maxsize=None)
def _roots(n: int) -> Tuple[complex, ...]:
    return tuple(cmath.exp(2j * cmath.pi * k / n) for k in range(len(cyclotomic_polynomial(n)) - 1))


def euler_phi(n: int) -> int:
    return len(cyclotomic_polynomial(n)) - 1


class CycNumber:
    """An exact element of Q(zeta_n)."""

    __slots__ = ("order", "num", "den")

    def __init__(self, order: int, num: Sequence[int], den: int = 1):
        deg = euler_phi(order)
        if len(num) != deg:
            raise ValueError("expected %d coefficients for order %d" % (deg, order))
        if den <= 0:
            raise ValueError("denominator must be positive")
        g = den
        for c in num:
            g = gcd(g, c)
            if g == 1:
                break
        if g > 1:
            num = [c // g for c in num]
            den //= g
        self.order = order
        self.num = tuple(num)
        self.den = den

    # construction -------------------------------------------------------

    @classmethod
    def rational(cls, x, order: int = 1) -> "CycNumber":
        x = to_fraction(x)
        num = [0] * euler_phi(order)
        num[0] = x.numerator
        return cls(order, num, x.denominator)

    @classmethod
    def zero(cls, order: int = 1) -> "CycNumber":
        return cls(order, [0] * euler_phi(order), 1)

    @classmethod
    def one(cls, order: int = 1) -> "CycNumber":
        return cls.rational(1, order)

    @classmethod
    def root_power(cls, order: int, k: int) -> "CycNumber":
        """zeta_order ** k"""
        return cls(order, list(_power_table(order)[k % order]), 1)

    @classmethod
    def from_coefficients(cls, order: int, coeffs: Sequence) -> "CycNumber":
        """Build ``sum coeffs[k] z^k`` for arbitrary rational coefficients, k < order."""
        fr = [to_fraction(c) for c in coeffs]
        den = 1
        for c in fr:
            den = lcm(den, c.denominator)
        table = _power_table(order)
        out = [0] * euler_phi(order)
        for k, c in enumerate(fr):
            if c:
                ci = c.numerator * (den // c.denominator)
                for i, t in enumerate(table[k % order]):
                    if t:
                        out[i] += ci * t
        return cls(order, out, den)

    # structure ------------------------------------------------------------

    def lift(self, order: int) -> "CycNumber":
        if order == self.order:
            return self
        if order % self.order:
            raise ValueError("cannot lift order %d into %d" % (self.order, order))
        step = order // self.order
        table = _power_table(order)
        out = [0] * euler_phi(order)
        for k, c in enumerate(self.num):
            if c:
                for i, t in enumerate(table[(k * step) % order]):
                    if t:
                        out[i] += c * t
        return CycNumber(order, out, self.den)

    def _common(self, other) -> Tuple["CycNumber", "CycNumber"]:
        if not isinstance(other, CycNumber):
            other = CycNumber.rational(other, self.order)
        if other.order == self.order:
            return self, other
        n = lcm(self.order, other.order)
        return self.lift(n), other.lift(n)

    def is_zero(self) -> bool:
        return not any(self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def coefficients(self) -> List[Fraction]:
        return [Fraction(c, self.den) for c in self.num]

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element is not rational")
        return Fraction(self.num[0], self.den)

    # arithmetic -------------------------------------------------------------

    def __add__(self, other):
        a, b = self._common(other)
        if a.den == b.den:
            return CycNumber(a.order, [x + y for x, y in zip(a.num, b.num)], a.den)
        return CycNumber(a.order, [x * b.den + y * a.den for x, y in zip(a.num, b.num)], a.den * b.den)

    __radd__ = __add__

    def __neg__(self):
        return CycNumber(self.order, [-x for x in self.num], self.den)

    def __sub__(self, other):
        a, b = self._common(other)
        return a + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = to_fraction(other)
            return CycNumber(self.order, [x * other.numerator for x in self.num], self.den * other.denominator)
        a, b = self._common(other)
        n = a.order
        deg = len(a.num)
        if deg == 1:
            return CycNumber(n, [a.num[0] * b.num[0]], a.den * b.den)
        prod = [0] * (2 * deg - 1)
        bn = b.num
        for i, x in enumerate(a.num):
            if x:
                for j, y in enumerate(bn):
                    if y:
                        prod[i + j] += x * y
        out = prod[:deg]
        table = _power_table(n)
        for k in range(deg, 2 * deg - 1):
            c = prod[k]
            if c:
                for i, t in enumerate(table[k % n]):
                    if t:
                        out[i] += c * t
        return CycNumber(n, out, a.den * b.den)

    __rmul__ = __mul__

    def conj(self) -> "CycNumber":
        """Complex conjugation, the automorphism z -> z^-1."""
        n = self.order
        table = _power_table(n)
        out = [0] * len(self.num)
        for k, c in enumerate(self.num):
            if c:
                for i, t in enumerate(table[(-k) % n]):
                    if t:
                        out[i] += c * t
        return CycNumber(n, out, self.den)

    def inv(self) -> "CycNumber":
        if self.is_zero():
            raise DivisionByZero("inverse of zero in Q(zeta_%d)" % self.order)
        if self.is_rational():
            return CycNumber.rational(1 / self.rational_value(), self.order)
        # extended Euclid in Q[x]: s * a + t * Phi_n = 1
        a = [Fraction(c, self.den) for c in self.num]
        m = [Fraction(c) for c in cyclotomic_polynomial(self.order)]
        s = _poly_inverse_mod(a, m)
        return CycNumber.from_coefficients(self.order, s)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise DivisionByZero("division by zero")
            return self * (1 / to_fraction(other))
        a, b = self._common(other)
        return a * b.inv()

    def __rtruediv__(self, other):
        return CycNumber.rational(other, self.order) / self

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        result = CycNumber.one(self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CycNumber.rational(other, self.order)
        if not isinstance(other, CycNumber):
            return NotImplemented
        a, b = self._common(other)
        return a.den == b.den and a.num == b.num

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    __hash__ = None  # equality crosses orders; use key() at a fixed order

    def key(self) -> Tuple[int, Tuple[int, ...], int]:
        return (self.order, self.num, self.den)

    # numerics ------------------------------------------------------------

    def __complex__(self) -> complex:
        roots = _roots(self.order)
        total = sum((c * roots[k] for k, c in enumerate(self.num) if c), 0j)
        return total / self.den

    def __repr__(self):
        return "CycNumber(%s)" % format_cyc(self)


def _poly_trim(p):
    while len(p) > 1 and p[-1] == 0:
        p = p[:-1]
    return p


def _poly_divmod(a, b):
    a = list(a)
    q = [Fraction(0)] * max(1, len(a) - len(b) + 1)
    lb = b[-1]
    for i in range(len(a) - len(b), -1, -1):
        coef = a[i + len(b) - 1] / lb
        q[i] = coef
        if coef:
            for j, c in enumerate(b):
                a[i + j] -= coef * c
    r = _poly_trim(a[: len(b) - 1] or [Fraction(0)])
    return _poly_trim(q), r


def _poly_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return _poly_trim([x - y for x, y in zip(a, b)])


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _poly_trim(out)


def _poly_inverse_mod(a, m):
    r0, r1 = _poly_trim(list(m)), _poly_trim(list(a))
    s0, s1 = [Fraction(0)], [Fraction(1)]
    while not (len(r1) == 1 and r1[0] == 0):
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
    if len(r0) != 1:
        raise DivisionByZero("element not invertible")
    c = r0[0]
    return [x / c for x in s0]


def e_of(x, order: int = None) -> CycNumber:
    """exp(2 pi i x) for rational x, optionally realised at a multiple of its order."""
    x = to_fraction(x)
    m = x.denominator
    k = x.numerator % m
    if order is None:
        return CycNumber.root_power(m, k)
    if order % m:
        raise ValueError("order %d is not a multiple of denominator %d" % (order, m))
    return CycNumber.root_power(order, k * (order // m))


def embed_float(a: CycNumber) -> Tuple[float, float]:
    z = complex(a)
    return (z.real, z.imag)


def sin_pi(x, order: int = None) -> CycNumber:
    """sin(pi x) = (e(x/2) - e(-x/2)) / (2i), as an exact cyclotomic number."""
    x = to_fraction(x)
    half = x / 2
    i = e_of(Fraction(1, 4))
    val = (e_of(half) - e_of(-half)) / (i * 2)
    if order is not None:
        val = val.lift(lcm(order, val.order))
    return val


def _proportional(x: Sequence[int], v: Sequence[int]) -> Optional[Fraction]:
    """c with x == c * v, or None."""
    c = None
    for a, b in zip(x, v):
        if b == 0:
            if a != 0:
                return None
        elif c is None:
            c = Fraction(a, b)
        elif a * c.denominator != b * c.numerator:
            return None
    return c


def _centered(k: int, n: int) -> Fraction:
    ex = Fraction(k, n)
    return ex - 1 if ex > Fraction(1, 2) else ex


def _root_label(k: int, n: int) -> str:
    return "e(%s)" % _centered(k, n)


def _scaled(coef: Fraction, base: str) -> str:
    if coef == 1:
        return base
    if coef == -1:
        return "-" + base
    return "%s*%s" % (coef, base)


def _join(terms: List[str]) -> str:
    out = terms[0]
    for t in terms[1:]:
        out += " - " + t[1:] if t.startswith("-") else " + " + t
    return out


def format_cyc(a: CycNumber) -> str:
    """Render as a Q-linear combination of e(k/n), exponents taken in (-1/2, 1/2].

    A single root of unity, or a rational plus one, is recognized even when
    it is not a power basis element; anything else falls back to the power
    basis.
    """
    if a.is_zero():
        return "0"
    if a.is_rational():
        return str(a.rational_value())
    n = a.order
    table = _power_table(n)
    x = a.num
    best = None
    for k in range(1, n):
        c = _proportional(x, table[k])
        if c is None:
            continue
        rank = (c > 0, -abs(_centered(k, n)))
        if best is None or rank > best[0]:
            best = (rank, k, c / a.den)
    if best is not None:
        return _scaled(best[2], _root_label(best[1], n))
    for k in range(1, n):
        v = table[k]
        c = _proportional(x[1:], v[1:])
        if c is not None and c != 0:
            q = Fraction(x[0] - c * v[0], a.den)
            return _join([str(q), _scaled(c / a.den, _root_label(k, n))])
    terms = []
    for k, c in enumerate(x):
        if not c:
            continue
        coef = Fraction(c, a.den)
        terms.append(str(coef) if k == 0 else _scaled(coef, _root_label(k, n)))
    return _join(terms)


class CycMatrix:
    """A dense matrix of CycNumbers sharing one order."""

    __slots__ = ("rows", "order")

    def __init__(self, rows, order: int = None):
        rows = [list(r) for r in rows]
        if order is None:
            order = 1
            for r in rows:
                for x in r:
                    if isinstance(x, CycNumber):
                        order = lcm(order, x.order)
        self.order = order
        self.rows = [
            [x.lift(order) if isinstance(x, CycNumber) else CycNumber.rational(x, order) for x in r]
            for r in rows
        ]

    @classmethod
    def identity(cls, n: int, order: int = 1) -> "CycMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], order)

    @classmethod
    def diagonal(cls, entries, order: int = None) -> "CycMatrix":
        entries = list(entries)
        n = len(entries)
        z = [[0] * n for _ in range(n)]
        for i, e in enumerate(entries):
            z[i][i] = e
        return cls(z, order)

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.rows), len(self.rows[0]) if self.rows else 0

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> List[CycNumber]:
        return [r[j] for r in self.rows]

    def __matmul__(self, other: "CycMatrix") -> "CycMatrix":
        n = lcm(self.order, other.order)
        A = self if self.order == n else self.lift(n)
        B = other if other.order == n else other.lift(n)
        cols = list(zip(*B.rows))
        zero = CycNumber.zero(n)
        out = []
        for r in A.rows:
            row = []
            for c in cols:
                acc = zero
                for x, y in zip(r, c):
                    if x.num and y.num:
                        acc = acc + x * y
                row.append(acc)
            out.append(row)
        return CycMatrix(out, n)

    def __mul__(self, scalar) -> "CycMatrix":
        return CycMatrix([[x * scalar for x in r] for r in self.rows])

    __rmul__ = __mul__

    def __add__(self, other):
        return CycMatrix([[x + y for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other):
        return CycMatrix([[x - y for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def lift(self, order: int) -> "CycMatrix":
        return CycMatrix(self.rows, order)

    def conj_transpose(self) -> "CycMatrix":
        return CycMatrix([[x.conj() for x in col] for col in zip(*self.rows)], self.order)

    def __eq__(self, other):
        if not isinstance(other, CycMatrix) or self.shape != other.shape:
            return False
        return all(x == y for r, s in zip(self.rows, other.rows) for x, y in zip(r, s))

    __hash__ = None

    def key(self):
        return tuple(tuple(x.key() for x in r) for r in self.rows)

    def is_diagonal(self) -> bool:
        return all(x.is_zero() for i, r in enumerate(self.rows) for j, x in enumerate(r) if i != j)

    def to_complex(self):
        return [[complex(x) for x in r] for r in self.rows]

    def __repr__(self):
        return "CycMatrix(%r)" % [[format_cyc(x) for x in r] for r in self.rows]


def cyc_matrix_inverse(M: CycMatrix) -> CycMatrix:
    """Gauss-Jordan inverse over Q(zeta_n); raises Singular."""
    n, c = M.shape
    if n != c:
        raise ValueError("inverse of a non-square matrix")
    order = M.order
    one = CycNumber.one(order)
    zero = CycNumber.zero(order)
    A = [list(r) + [one if i == j else zero for j in range(n)] for i, r in enumerate(M.rows)]
    for col in range(n):
        p = next((i for i in range(col, n) if not A[i][col].is_zero()), None)
        if p is None:
            raise Singular("cyclotomic matrix is singular")
        A[col], A[p] = A[p], A[col]
        inv = A[col][col].inv()
        A[col] = [x * inv if x.num else x for x in A[col]]
        for i in range(n):
            if i != col and not A[i][col].is_zero():
                f = A[i][col]
                A[i] = [x - f * y if y.num else x for x, y in zip(A[i], A[col])]
    return CycMatrix([r[n:] for r in A], order)
