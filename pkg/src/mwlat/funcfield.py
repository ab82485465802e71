"""Polynomials, rational functions and bivariate polynomials over a tower.

``Poly`` is univariate (variable ``t`` by default, ``s`` for the chart at
infinity, ``x`` for fiber cubics); ``RatFunc`` is a normalized quotient of two
``Poly``; ``BiPoly`` is a sparse polynomial in (t, x) used for plane curves.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import isqrt, lcm

import mpmath

from .errors import DivisionByZero, NotInTower, SpecError, TowerMismatch
from .numfield import FieldElem, Tower

QQ = Tower.rationals()


def _const(tower, c):
    if isinstance(c, FieldElem):
        if c.tower is not tower:
            raise TowerMismatch("coefficient from a different tower")
        return c
    return tower(c)


class Poly:
    __slots__ = ("tower", "var", "coeffs", "_hash")

    def __init__(self, tower, coeffs=(), var="t"):
        cs = [_const(tower, c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.tower = tower
        self.var = var
        self.coeffs = tuple(cs)
        self._hash = None

    @classmethod
    def _trusted(cls, tower, cs, var):
        while cs and cs[-1].is_zero():
            cs.pop()
        p = object.__new__(cls)
        p.tower, p.var, p.coeffs, p._hash = tower, var, tuple(cs), None
        return p

    @classmethod
    def gen(cls, tower, var="t"):
        return cls._trusted(tower, [tower.zero, tower.one], var)

    @classmethod
    def const(cls, tower, c, var="t"):
        return cls._trusted(tower, [_const(tower, c)], var)

    # basic views -----------------------------------------------------
    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else self.tower.zero

    def coeff(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.tower.zero

    def is_const(self):
        return len(self.coeffs) <= 1

    def monic(self):
        if not self.coeffs:
            return self
        inv = self.lc.inverse()
        return Poly._trusted(self.tower, [c * inv for c in self.coeffs], self.var)

    def __call__(self, v):
        acc = self.tower.zero if not isinstance(v, (Poly, RatFunc)) else v * 0
        for c in reversed(self.coeffs):
            acc = acc * v + c
        return acc

    def derivative(self):
        return Poly._trusted(self.tower, [c * i for i, c in enumerate(self.coeffs)][1:], self.var)

    # arithmetic ------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.tower is not self.tower:
                raise TowerMismatch("polynomials over different towers")
            if other.var != self.var and other.degree > 0 and self.degree > 0:
                raise SpecError(f"variable mismatch {self.var} vs {other.var}")
            return other
        if isinstance(other, (int, Fraction, FieldElem)):
            return Poly.const(self.tower, other, self.var)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly._trusted(self.tower, out, self.var)

    __radd__ = __add__

    def __neg__(self):
        return Poly._trusted(self.tower, [-c for c in self.coeffs], self.var)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, FieldElem)):
            c = _const(self.tower, other)
            return Poly._trusted(self.tower, [a * c for a in self.coeffs], self.var)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self.coeffs or not o.coeffs:
            return Poly._trusted(self.tower, [], self.var)
        out = [self.tower.zero] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(o.coeffs):
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return Poly._trusted(self.tower, out, self.var)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = Poly.const(self.tower, 1, self.var)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __divmod__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise DivisionByZero("polynomial division by zero")
        rem = list(self.coeffs)
        db = o.degree
        if len(rem) - 1 < db:
            return Poly._trusted(self.tower, [], self.var), self
        inv = o.lc.inverse()
        quo = [self.tower.zero] * (len(rem) - db)
        bc = o.coeffs
        for i in range(len(rem) - 1, db - 1, -1):
            c = rem[i]
            if c.is_zero():
                continue
            q = c * inv
            quo[i - db] = q
            for j in range(db):
                if not bc[j].is_zero():
                    rem[i - db + j] = rem[i - db + j] - q * bc[j]
            rem[i] = self.tower.zero
        return Poly._trusted(self.tower, quo, self.var), Poly._trusted(self.tower, rem[:db], self.var)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other):
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ArithmeticError("inexact polynomial division")
        return q

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, FieldElem)):
            c = _const(self.tower, other)
            if c.is_zero():
                raise DivisionByZero("division by zero constant")
            inv = c.inverse()
            return Poly._trusted(self.tower, [a * inv for a in self.coeffs], self.var)
        if isinstance(other, Poly):
            return RatFunc(self, other)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction, FieldElem)):
            return RatFunc(Poly.const(self.tower, other, self.var), self)
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.tower is other.tower and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction, FieldElem)):
            if not self.coeffs:
                return other == 0
            return len(self.coeffs) == 1 and self.coeffs[0] == other
        if isinstance(other, RatFunc):
            return other == self
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.coeffs) if len(self.coeffs) != 1 else hash(self.coeffs[0])
        return self._hash

    def shift(self, n):
        """Multiply by var^n."""
        if not self.coeffs:
            return self
        return Poly._trusted(self.tower, [self.tower.zero] * n + list(self.coeffs), self.var)

    def reverse(self, n=None):
        """var^n * p(1/var), n defaulting to the degree."""
        n = self.degree if n is None else n
        cs = list(self.coeffs) + [self.tower.zero] * (n + 1 - len(self.coeffs))
        return Poly._trusted(self.tower, cs[::-1], self.var)

    def with_var(self, var):
        return Poly._trusted(self.tower, list(self.coeffs), var)

    def rational_coords(self):
        """Coordinate polynomials over Q, one per basis monomial (nonzero only)."""
        out = {}
        for m in range(self.tower.size):
            cs = [Fraction(c.num[m], c.den) for c in self.coeffs]
            if any(cs):
                out[m] = Poly(QQ, cs, self.var)
        return out

    def to_json(self):
        return [c.to_dict() for c in self.coeffs]

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            mono = "" if i == 0 else (self.var if i == 1 else f"{self.var}^{i}")
            cs = str(c)
            if not mono:
                parts.append(cs)
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"({cs})*{mono}")
        return " + ".join(reversed(parts)).replace("+ -", "- ")

    def __repr__(self):
        return f"Poly({self})"


def poly_gcd(a, b):
    """Monic gcd (zero if both are zero)."""
    # monic remainders keep coefficient growth in check
    if not b.is_zero():
        b = b.monic()
    while not b.is_zero():
        r = a % b
        a, b = b, (r.monic() if not r.is_zero() else r)
    return a.monic() if not a.is_zero() else a


def poly_arith(a, b, kind):
    if kind == "add":
        return a + b
    if kind == "mul":
        return a * b
    if kind == "divrem":
        return divmod(a, b)
    if kind == "gcd":
        return poly_gcd(a, b)
    raise ValueError(f"unknown operation {kind!r}")


class RatFunc:
    """num/den with gcd(num, den) = 1 and den monic."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None):
        if den is None:
            den = Poly.const(num.tower, 1, num.var)
        if isinstance(num, RatFunc) or isinstance(den, RatFunc):
            q = _as_rf(num) / _as_rf(den)
            num, den = q.num, q.den
        if den.is_zero():
            raise DivisionByZero("rational function with zero denominator")
        if num.is_zero():
            den = Poly.const(num.tower, 1, num.var)
        elif den.degree > 0:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num = num.exact_div(g)
                den = den.exact_div(g)
        if den.lc != 1:
            inv = den.lc.inverse()
            num = num * inv
            den = den * inv
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def gen(cls, tower, var="t"):
        return cls(Poly.gen(tower, var))

    @property
    def tower(self):
        return self.num.tower

    @property
    def var(self):
        return self.num.var

    def is_poly(self):
        return self.den.degree == 0

    def is_zero(self):
        return self.num.is_zero()

    @property
    def degree(self):
        """deg num - deg den (the negative of the order at infinity)."""
        return self.num.degree - self.den.degree

    def __call__(self, t0):
        d = self.den(t0)
        if d.is_zero():
            raise DivisionByZero("evaluation at a pole")
        return self.num(t0) / d

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, Poly):
            return RatFunc(other)
        if isinstance(other, (int, Fraction, FieldElem)):
            return RatFunc(Poly.const(self.tower, other, self.var))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        r = object.__new__(RatFunc)
        r.num, r.den, r._hash = -self.num, self.den, None
        return r

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, FieldElem)):
            r = object.__new__(RatFunc)
            r.num, r.den, r._hash = self.num * other, self.den, None
            if r.num.is_zero():
                r.den = Poly.const(self.tower, 1, self.var)
            return r
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.is_poly() and o.is_poly():
            return RatFunc(self.num * o.num)
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise DivisionByZero("division by the zero rational function")
        return RatFunc(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return RatFunc(self.den, self.num) ** (-n)
        r = object.__new__(RatFunc)
        r.num, r.den, r._hash = self.num ** n, self.den ** n, None
        return r

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.num) if self.is_poly() else hash((self.num, self.den))
        return self._hash

    def at_infinity(self, weight, var="s"):
        """s^weight * f(1/s) as a rational function in the chart variable."""
        n, d = self.num, self.den
        e = weight - n.degree + d.degree
        num = n.reverse().with_var(var)
        den = d.reverse().with_var(var)
        if e >= 0:
            num = num.shift(e)
        else:
            den = den.shift(-e)
        return RatFunc(num, den)

    def to_json(self):
        if self.is_poly():
            return self.num.to_json()
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    def __str__(self):
        if self.is_poly():
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"RatFunc({self})"


def _as_rf(v):
    if isinstance(v, RatFunc):
        return v
    return RatFunc(v)


class BiPoly:
    """Sparse polynomial in (t, x): {(deg_t, deg_x): coefficient}."""

    __slots__ = ("tower", "terms", "_hash")

    def __init__(self, tower, terms=None):
        self.tower = tower
        clean = {}
        for k, v in (terms or {}).items():
            v = _const(tower, v)
            if not v.is_zero():
                clean[(int(k[0]), int(k[1]))] = v
        self.terms = clean
        self._hash = None

    @classmethod
    def t(cls, tower):
        return cls(tower, {(1, 0): 1})

    @classmethod
    def x(cls, tower):
        return cls(tower, {(0, 1): 1})

    @classmethod
    def const(cls, tower, c):
        return cls(tower, {(0, 0): c})

    @classmethod
    def from_x_coeffs(cls, coeffs):
        """Build from a list of Poly in t, indexed by the power of x."""
        tower = coeffs[0].tower
        terms = {}
        for j, p in enumerate(coeffs):
            for i, c in enumerate(p.coeffs):
                if not c.is_zero():
                    terms[(i, j)] = c
        return cls(tower, terms)

    def _coerce(self, other):
        if isinstance(other, BiPoly):
            if other.tower is not self.tower:
                raise TowerMismatch("bivariate polynomials over different towers")
            return other
        if isinstance(other, (int, Fraction, FieldElem)):
            return BiPoly.const(self.tower, other)
        if isinstance(other, Poly):
            return BiPoly(self.tower, {(i, 0): c for i, c in enumerate(other.coeffs)})
        return None

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for k, v in o.terms.items():
            out[k] = out[k] + v if k in out else v
        return BiPoly(self.tower, out)

    __radd__ = __add__

    def __neg__(self):
        return BiPoly(self.tower, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = {}
        for (i1, j1), a in self.terms.items():
            for (i2, j2), b in o.terms.items():
                k = (i1 + i2, j1 + j2)
                out[k] = out[k] + a * b if k in out else a * b
        return BiPoly(self.tower, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, FieldElem)):
            inv = _const(self.tower, other).inverse()
            return BiPoly(self.tower, {k: v * inv for k, v in self.terms.items()})
        return NotImplemented

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = BiPoly.const(self.tower, 1)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    @property
    def deg_x(self):
        return max((j for _, j in self.terms), default=-1)

    @property
    def deg_t(self):
        return max((i for i, _ in self.terms), default=-1)

    @property
    def total_degree(self):
        return max((i + j for i, j in self.terms), default=-1)

    def x_coeffs(self, var="t"):
        """Coefficients as Poly in t, indexed by power of x."""
        n = self.deg_x
        rows = [[self.tower.zero] * (self.deg_t + 1) for _ in range(n + 1)]
        for (i, j), c in self.terms.items():
            rows[j][i] = c
        return [Poly._trusted(self.tower, r, var) for r in rows]

    def t_coeffs(self, var="x"):
        n = self.deg_t
        rows = [[self.tower.zero] * (self.deg_x + 1) for _ in range(n + 1)]
        for (i, j), c in self.terms.items():
            rows[i][j] = c
        return [Poly._trusted(self.tower, r, var) for r in rows]

    def swap(self):
        return BiPoly(self.tower, {(j, i): c for (i, j), c in self.terms.items()})

    def diff_t(self):
        return BiPoly(self.tower, {(i - 1, j): c * i for (i, j), c in self.terms.items() if i})

    def diff_x(self):
        return BiPoly(self.tower, {(i, j - 1): c * j for (i, j), c in self.terms.items() if j})

    def __call__(self, t0, x0):
        acc = self.tower.zero
        for (i, j), c in self.terms.items():
            acc = acc + c * t0 ** i * x0 ** j
        return acc

    def at_t(self, t0):
        """Univariate polynomial in x after setting t = t0."""
        cs = [p(t0) for p in self.x_coeffs()]
        return Poly(self.tower, cs, "x")

    def subs_x(self, value):
        """Substitute x = value (Poly or RatFunc in t)."""
        acc = None
        for p in reversed(self.x_coeffs()):
            acc = p if acc is None else acc * value + p
        return acc

    def homogeneous_terms(self, d=None):
        d = self.total_degree if d is None else d
        return {(i, j, d - i - j): c for (i, j), c in self.terms.items()}

    def projective_substitute(self, T, X, Z, d=None):
        """F(T, X, Z) for the degree-d homogenization F, with T, X, Z given as BiPoly."""
        d = self.total_degree if d is None else d
        acc = BiPoly(self.tower)
        for (i, j, k), c in self.homogeneous_terms(d).items():
            acc = acc + (T ** i) * (X ** j) * (Z ** k) * c
        return acc

    def to_json(self):
        return [[i, j, c.to_dict()] for (i, j), c in sorted(self.terms.items())]

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (i, j), c in sorted(self.terms.items(), key=lambda kv: (-(kv[0][0] + kv[0][1]), -kv[0][1])):
            mono = "*".join(
                m for m in (
                    ("t" if i == 1 else f"t^{i}") if i else "",
                    ("x" if j == 1 else f"x^{j}") if j else "",
                ) if m
            )
            cs = str(c)
            if not mono:
                parts.append(cs)
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"({cs})*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"BiPoly({self})"


@dataclass(frozen=True)
class Place:
    """A point of the base P^1: finite t = t0, or infinity."""

    kind: str
    t0: FieldElem | None = None

    @classmethod
    def finite(cls, t0):
        return cls("finite", t0)

    @classmethod
    def infinity(cls):
        return cls("infinity", None)

    @property
    def is_infinity(self):
        return self.kind == "infinity"

    def sort_key(self):
        if self.is_infinity:
            return (1, 0.0, 0.0)
        re, im = self.t0.sort_key()
        return (0, re, im)

    def to_json(self):
        return "inf" if self.is_infinity else self.t0.to_dict()

    def __str__(self):
        return "t=inf" if self.is_infinity else f"t={self.t0}"


def ord_at(r, v):
    """Order of vanishing of a Poly/RatFunc at a place (negative for poles)."""
    if isinstance(r, Poly):
        r = RatFunc(r)
    if r.is_zero():
        return float("inf")
    if v.is_infinity:
        return r.den.degree - r.num.degree
    if v.t0.tower is not r.tower:
        raise NotInTower("place is not defined over the function's tower")
    return _ord_poly(r.num, v.t0) - _ord_poly(r.den, v.t0)


def _ord_poly(p, t0):
    n = 0
    lin = Poly(p.tower, [-t0, 1], p.var)
    while not p.is_zero() and p(t0).is_zero():
        p = p.exact_div(lin)
        n += 1
    return n


def squarefree_decomp(p):
    """Yun's algorithm: [(monic squarefree factor, exponent), ...]."""
    if p.is_zero():
        raise ValueError("squarefree decomposition of zero")
    out = []
    if p.degree <= 0:
        return out
    f = p.monic()
    fp = f.derivative()
    a = poly_gcd(f, fp)
    b = f.exact_div(a)
    c = fp.exact_div(a)
    d = c - b.derivative()
    i = 1
    while b.degree > 0:
        a = poly_gcd(b, d)
        b = b.exact_div(a)
        c = d.exact_div(a)
        d = c - b.derivative()
        if a.degree > 0:
            out.append((a, i))
        i += 1
    return out


def _sylvester(f, g):
    m, n = len(f) - 1, len(g) - 1
    zero = f[0] * 0
    size = m + n
    rows = []
    for i in range(n):
        row = [zero] * size
        for j, c in enumerate(reversed(f)):
            row[i + j] = c
        rows.append(row)
    for i in range(m):
        row = [zero] * size
        for j, c in enumerate(reversed(g)):
            row[i + j] = c
        rows.append(row)
    return rows


def det_bareiss(mat):
    """Fraction-free determinant of a square matrix over K[t]."""
    M = [list(r) for r in mat]
    n = len(M)
    if n == 0:
        return None
    sign = 1
    prev = None
    for k in range(n - 1):
        if M[k][k].is_zero():
            piv = next((i for i in range(k + 1, n) if not M[i][k].is_zero()), None)
            if piv is None:
                return M[0][0] * 0
            M[k], M[piv] = M[piv], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                v = M[k][k] * M[i][j] - M[i][k] * M[k][j]
                M[i][j] = v if prev is None else v.exact_div(prev)
        prev = M[k][k]
    return M[n - 1][n - 1] * sign


def resultant_x(f, g, var="t"):
    """Sylvester resultant of two BiPoly with respect to x, as a Poly in t."""
    fc, gc = f.x_coeffs(var), g.x_coeffs(var)
    if len(fc) < 2 or len(gc) < 2:
        raise ValueError("resultant_x needs positive x-degree in both arguments")
    return det_bareiss(_sylvester(fc, gc))


def resultant(f, g):
    """Resultant of two univariate Poly (a field element)."""
    fc = [Poly.const(f.tower, c) for c in f.coeffs]
    gc = [Poly.const(g.tower, c) for c in g.coeffs]
    d = det_bareiss(_sylvester(fc, gc))
    return d.coeff(0)


def _rational_roots_qq(h):
    """Rational roots of a squarefree Poly over QQ."""
    cs = [c.rational() for c in h.coeffs]
    d = reduce(lcm, (c.denominator for c in cs), 1)
    ints = [int(c * d) for c in cs]
    roots = []
    while ints and ints[0] == 0:
        roots.append(Fraction(0))
        ints = ints[1:]
    if len(ints) <= 1:
        return roots
    an = ints[-1]
    if len(ints) == 2:
        return roots + [Fraction(-ints[0], ints[1])]
    with mpmath.workdps(60):
        try:
            approx = mpmath.polyroots(list(reversed(ints)), maxsteps=400, extraprec=200)
        except mpmath.libmp.NoConvergence:
            approx = []
    seen = set()
    for z in approx:
        if abs(mpmath.im(z)) > mpmath.mpf("1e-10") * (1 + abs(z)):
            continue
        cand = Fraction(int(mpmath.nint(mpmath.re(z) * an)), an)
        if cand in seen:
            continue
        val = sum(c * cand ** i for i, c in enumerate(ints))
        if val == 0:
            seen.add(cand)
            roots.append(cand)
    return roots


def _rational_square_root(q):
    if q < 0:
        return None
    n, d = isqrt(q.numerator), isqrt(q.denominator)
    if n * n == q.numerator and d * d == q.denominator:
        return Fraction(n, d)
    return None


def _sqrt_in_tower(D, hints):
    tower = D.tower
    cands = []
    for mask in range(tower.size):
        mono = tower.one
        for j, name in enumerate(tower.names):
            if mask >> j & 1:
                mono = mono * tower.gen(name)
        cands.append(mono)
    cands.extend(h for h in hints if not h.is_zero())
    for c in cands:
        ratio = D / (c * c)
        if ratio.is_rational():
            r = _rational_square_root(ratio.rational())
            if r is not None:
                return c * r
    return None


def roots_in_tower(p, hints=()):
    """Split off linear factors of p with roots in its tower.

    Returns (roots, unresolved): roots as [(t0, multiplicity)], leftovers as
    [(monic factor, multiplicity)] that the search could not split.
    """
    if p.is_zero():
        raise ValueError("roots of the zero polynomial")
    tower = p.tower
    roots = {}
    unresolved = []
    for fac, e in squarefree_decomp(p):
        rest = fac
        coords = rest.rational_coords()
        h = reduce(poly_gcd, coords.values()) if coords else None
        if h is not None and h.degree > 0:
            for q in _rational_roots_qq(h):
                r = tower(q)
                if rest(r).is_zero():
                    rest = rest.exact_div(Poly(tower, [-r, 1], p.var))
                    roots[r] = roots.get(r, 0) + e
        for hint in hints:
            if rest.degree <= 0:
                break
            hint = _const(tower, hint)
            if rest(hint).is_zero():
                rest = rest.exact_div(Poly(tower, [-hint, 1], p.var))
                roots[hint] = roots.get(hint, 0) + e
        if rest.degree == 1:
            r = -rest.coeff(0) / rest.coeff(1)
            roots[r] = roots.get(r, 0) + e
        elif rest.degree == 2:
            a, b, c = rest.coeff(2), rest.coeff(1), rest.coeff(0)
            sq = _sqrt_in_tower(b * b - 4 * a * c, [_const(tower, h) for h in hints])
            if sq is None:
                unresolved.append((rest.monic(), e))
            else:
                for r in ((-b + sq) / (2 * a), (-b - sq) / (2 * a)):
                    roots[r] = roots.get(r, 0) + e
        elif rest.degree > 2:
            unresolved.append((rest.monic(), e))
    ordered = sorted(roots.items(), key=lambda kv: kv[0].sort_key())
    return ordered, unresolved
