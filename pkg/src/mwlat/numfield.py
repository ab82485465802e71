"""Exact arithmetic in towers of quadratic extensions of Q.

A tower with generators g_1, ..., g_k (g_j^2 = radicand_j, an element of the
tower on g_1..g_{j-1}) stores elements densely in the multilinear basis
prod g_j^{e_j}, e_j in {0, 1}.  Index bit j-1 of a basis position records
whether g_j is present, so the top half of a vector is the g_k-part.

Internally an element is an integer vector plus one positive common
denominator; this keeps multiplication in Python ints instead of Fractions.
Each generator carries a complex pin that fixes which square root it denotes.
It is consulted for display, ordering and validation only, never for
equality.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm

import mpmath

from .errors import (
    DivisionByZero,
    InvalidTower,
    MalformedRadicand,
    PinMismatch,
    SpecError,
    TowerMismatch,
)

MAX_GENERATORS = 16
PIN_TOLERANCE = mpmath.mpf("1e-20")
DEFAULT_PIN_DIGITS = 40


def _sum_terms(terms, n):
    """Sum (vector, denominator) pairs of length n."""
    if not terms:
        return [0] * n, 1
    if len(terms) == 1:
        return terms[0]
    d = reduce(lcm, (t[1] for t in terms))
    out = [0] * n
    for vec, den in terms:
        f = d // den
        for i, c in enumerate(vec):
            if c:
                out[i] += c * f
    return out, d


def _to_mpc(pin):
    if isinstance(pin, mpmath.mpc):
        return pin
    if isinstance(pin, dict):
        return mpmath.mpc(mpmath.mpf(str(pin.get("re", "0"))), mpmath.mpf(str(pin.get("im", "0"))))
    if isinstance(pin, (tuple, list)):
        return mpmath.mpc(mpmath.mpf(str(pin[0])), mpmath.mpf(str(pin[1])))
    if isinstance(pin, complex):
        return mpmath.mpc(pin.real, pin.imag)
    return mpmath.mpc(mpmath.mpf(str(pin)))


class Tower:
    """A validated tower of quadratic extensions.

    Towers are compared by identity: elements from two separately built
    towers never mix, even if the towers have the same generators.
    """

    def __init__(self, names=(), radicands=(), pins=(), _parent=None):
        self.names = tuple(names)
        self.k = len(self.names)
        if self.k > MAX_GENERATORS:
            raise SpecError(f"at most {MAX_GENERATORS} generators are supported")
        self.size = 1 << self.k
        # radicand j as (int vector of length 2^j, positive denominator)
        self._rad = tuple(radicands)
        self.pins = tuple(pins)
        self._parent = _parent
        self._gen_cache = {}
        self._index = {n: j for j, n in enumerate(self.names)}

    # construction ----------------------------------------------------
    @classmethod
    def rationals(cls):
        return cls()

    def extend(self, name, radicand, pin):
        """Return a new tower with one more generator, sqrt(radicand)."""
        if not name.isidentifier() or name in ("t", "x", "s", "b"):
            raise SpecError(f"invalid generator name {name!r}")
        if name in self._index:
            raise SpecError(f"duplicate generator name {name!r}")
        if not isinstance(radicand, FieldElem):
            radicand = self(radicand)
        if radicand.tower is not self:
            raise MalformedRadicand(f"radicand of {name} must live in the tower on {list(self.names)}")
        if radicand.is_zero():
            raise MalformedRadicand(f"radicand of {name} is zero")
        with mpmath.workdps(60):
            pin = _to_mpc(pin)
            target = self.embed(radicand, 60)
            err = abs(pin * pin - target)
            if err > PIN_TOLERANCE * abs(target):
                raise PinMismatch(
                    f"pin for {name} squares to {mpmath.nstr(pin * pin, 15)}, radicand is {mpmath.nstr(target, 15)}",
                    generator=name,
                )
        rad = (list(radicand.num), radicand.den)
        return Tower(self.names + (name,), self._rad + (rad,), self.pins + (pin,), _parent=self)

    def prefix(self, j):
        """The tower on the first j generators."""
        tw = self
        while tw.k > j:
            tw = tw._parent
        return tw

    # element factories -----------------------------------------------
    def __call__(self, value=0):
        """Coerce an int, Fraction, rational string or element of this tower."""
        if isinstance(value, FieldElem):
            if value.tower is not self:
                raise TowerMismatch("element belongs to a different tower")
            return value
        if isinstance(value, str):
            return self.parse(value)
        q = Fraction(value)
        vec = [0] * self.size
        vec[0] = q.numerator
        return FieldElem._raw(self, vec, q.denominator)

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def gen(self, name):
        try:
            j = self._index[name]
        except KeyError:
            raise SpecError(f"unknown generator {name!r}") from None
        vec = [0] * self.size
        vec[1 << j] = 1
        return FieldElem._raw(self, vec, 1)

    def gens(self):
        return [self.gen(n) for n in self.names]

    def key_to_mask(self, key):
        key = key.strip()
        if key in ("", "1"):
            return 0
        mask = 0
        for part in key.split("*"):
            part = part.strip()
            if part not in self._index:
                raise SpecError(f"unknown generator {part!r} in basis key {key!r}")
            bit = 1 << self._index[part]
            if mask & bit:
                raise SpecError(f"repeated generator in basis key {key!r}")
            mask |= bit
        return mask

    def mask_to_key(self, mask):
        if mask == 0:
            return "1"
        return "*".join(n for j, n in enumerate(self.names) if mask >> j & 1)

    def element(self, coeffs):
        """Build an element from {basis key: rational} or a dense coefficient list."""
        if isinstance(coeffs, dict):
            fr = [Fraction(0)] * self.size
            for key, val in coeffs.items():
                fr[self.key_to_mask(key)] += Fraction(val)
        else:
            if len(coeffs) != self.size:
                raise SpecError(f"expected {self.size} coefficients, got {len(coeffs)}")
            fr = [Fraction(c) for c in coeffs]
        d = reduce(lcm, (c.denominator for c in fr), 1)
        return FieldElem._raw(self, [c.numerator * (d // c.denominator) for c in fr], d)

    def parse(self, text, names=None):
        from .expr import evaluate

        env = {n: self.gen(n) for n in self.names}
        if names:
            env.update(names)
        val = evaluate(text, env, const=self)
        if not isinstance(val, FieldElem):
            raise SpecError(f"expression {text!r} is not a constant of the tower")
        return val

    # embeddings ------------------------------------------------------
    def generator_values(self, dps):
        """Complex values of all generators at dps digits, branch fixed by pins."""
        if dps in self._gen_cache:
            return self._gen_cache[dps]
        vals = []
        with mpmath.workdps(dps + 10):
            for j in range(self.k):
                rad = self._embed_vec(self._rad[j][0], self._rad[j][1], vals)
                r = mpmath.sqrt(rad)
                if abs(r - self.pins[j]) > abs(-r - self.pins[j]):
                    r = -r
                vals.append(r)
        self._gen_cache[dps] = vals
        return vals

    @staticmethod
    def _embed_vec(vec, den, vals):
        total = mpmath.mpc(0)
        for mask, c in enumerate(vec):
            if not c:
                continue
            term = mpmath.mpc(c)
            j = 0
            m = mask
            while m:
                if m & 1:
                    term *= vals[j]
                m >>= 1
                j += 1
            total += term
        return total / den

    def embed(self, a, digits=30):
        vals = self.generator_values(digits)
        with mpmath.workdps(digits + 10):
            return self._embed_vec(a.num, a.den, vals)

    # exact kernels ---------------------------------------------------
    def _mul(self, a, b, k):
        if k == 0:
            return [a[0] * b[0]], 1
        h = 1 << (k - 1)
        al, ah, bl, bh = a[:h], a[h:], b[:h], b[h:]
        nz_al, nz_ah, nz_bl, nz_bh = any(al), any(ah), any(bl), any(bh)
        lo_terms, hi_terms = [], []
        if nz_al and nz_bl:
            lo_terms.append(self._mul(al, bl, k - 1))
        if nz_ah and nz_bh:
            hh, d1 = self._mul(ah, bh, k - 1)
            rv, rd = self._rad[k - 1]
            hr, d2 = self._mul(hh, rv, k - 1)
            lo_terms.append((hr, d1 * d2 * rd))
        if nz_al and nz_bh:
            hi_terms.append(self._mul(al, bh, k - 1))
        if nz_ah and nz_bl:
            hi_terms.append(self._mul(ah, bl, k - 1))
        lo, dl = _sum_terms(lo_terms, h)
        hi, dh = _sum_terms(hi_terms, h)
        if dl == dh:
            return lo + hi, dl
        d = lcm(dl, dh)
        fl, fh = d // dl, d // dh
        return [c * fl for c in lo] + [c * fh for c in hi], d

    def _inv(self, v, k):
        """(w, d) with v * w / d == 1 for a nonzero integer vector v."""
        if k == 0:
            if v[0] < 0:
                return [-1], -v[0]
            return [1], v[0]
        h = 1 << (k - 1)
        x, y = v[:h], v[h:]
        if not any(y):
            w, d = self._inv(x, k - 1)
            return w + [0] * h, d
        xx, d1 = self._mul(x, x, k - 1)
        yy, d2 = self._mul(y, y, k - 1)
        rv, rd = self._rad[k - 1]
        yyr, d3 = self._mul(yy, rv, k - 1)
        norm, dn = _sum_terms([(xx, d1), ([-c for c in yyr], d2 * d3 * rd)], h)
        if not any(norm):
            raise InvalidTower(
                f"radicand of {self.names[k - 1]} is a square in the tower below it (zero divisor found)",
                generator=self.names[k - 1],
            )
        w, dw = self._inv(norm, k - 1)
        # 1/v = (x - y g) * dn * w / dw
        a, da = self._mul(x, w, k - 1)
        b, db = self._mul(y, w, k - 1)
        lo, hi = a, [-c for c in b]
        if da != db:
            d = lcm(da, db)
            lo = [c * (d // da) for c in lo]
            hi = [c * (d // db) for c in hi]
            da = d
        return [c * dn for c in lo + hi], dw * da

    def __repr__(self):
        return f"Tower({list(self.names)})"


class FieldElem:
    """Immutable tower element: ``num / den`` in the multilinear basis."""

    __slots__ = ("tower", "num", "den", "_hash")

    def __init__(self, tower, num, den=1):
        obj = FieldElem._raw(tower, list(num), den)
        self.tower, self.num, self.den, self._hash = obj.tower, obj.num, obj.den, None

    @classmethod
    def _raw(cls, tower, vec, den):
        if den == 0:
            raise DivisionByZero("zero denominator")
        if den < 0:
            vec = [-c for c in vec]
            den = -den
        g = gcd(den, *vec)
        if g > 1:
            vec = [c // g for c in vec]
            den //= g
        obj = object.__new__(cls)
        obj.tower = tower
        obj.num = tuple(vec)
        obj.den = den
        obj._hash = None
        return obj

    # coercion --------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, FieldElem):
            if other.tower is not self.tower:
                raise TowerMismatch("elements belong to different towers")
            return other
        if isinstance(other, (int, Fraction)):
            return self.tower(other)
        return None

    # ring operations -------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return FieldElem._raw(self.tower, [a + b for a, b in zip(self.num, o.num)], self.den)
        d = lcm(self.den, o.den)
        fa, fb = d // self.den, d // o.den
        return FieldElem._raw(self.tower, [a * fa + b * fb for a, b in zip(self.num, o.num)], d)

    __radd__ = __add__

    def __neg__(self):
        return FieldElem._raw(self.tower, [-a for a in self.num], self.den)

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
        if isinstance(other, int):
            return FieldElem._raw(self.tower, [a * other for a in self.num], self.den)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_rational():
            return FieldElem._raw(self.tower, [a * o.num[0] for a in self.num], self.den * o.den)
        if self.is_rational():
            return FieldElem._raw(self.tower, [a * self.num[0] for a in o.num], self.den * o.den)
        vec, d = self.tower._mul(list(self.num), list(o.num), self.tower.k)
        return FieldElem._raw(self.tower, vec, d * self.den * o.den)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        w, d = self.tower._inv(list(self.num), self.tower.k)
        return FieldElem._raw(self.tower, [c * self.den for c in w], d)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = self.tower.one
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # predicates ------------------------------------------------------
    def is_zero(self):
        return not any(self.num)

    def __bool__(self):
        return not self.is_zero()

    def is_rational(self):
        return not any(self.num[1:])

    def rational(self):
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self.num[0], self.den)

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            if other.tower is not self.tower:
                raise TowerMismatch("cannot compare elements of different towers")
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return self.is_rational() and Fraction(self.num[0], self.den) == q
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(Fraction(self.num[0], self.den))
            else:
                self._hash = hash((self.num, self.den))
        return self._hash

    # views -----------------------------------------------------------
    @property
    def coeffs(self):
        return tuple(Fraction(c, self.den) for c in self.num)

    def coeff(self, key):
        return Fraction(self.num[self.tower.key_to_mask(key)], self.den)

    def to_dict(self):
        """JSON literal: basis key -> rational string, zero entries omitted."""
        return {
            self.tower.mask_to_key(m): str(Fraction(c, self.den))
            for m, c in enumerate(self.num)
            if c
        }

    def embed(self, digits=30):
        return self.tower.embed(self, digits)

    def sort_key(self, digits=30):
        z = self.embed(digits)
        return (float(mpmath.nstr(z.real, 20)), float(mpmath.nstr(z.imag, 20)))

    def __str__(self):
        parts = []
        for m, c in enumerate(self.num):
            if not c:
                continue
            q = Fraction(c, self.den)
            key = self.tower.mask_to_key(m)
            if m == 0:
                parts.append(str(q))
            elif q == 1:
                parts.append(key)
            elif q == -1:
                parts.append("-" + key)
            else:
                parts.append(f"({q})*{key}" if q.denominator != 1 else f"{q}*{key}")
        if not parts:
            return "0"
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"FieldElem({self})"


def tower_build(generators):
    """Build a tower from a list of generator records.

    Each record is a dict (or tuple) ``name, radicand, pin``; the radicand may
    be an int, a rational string, an expression string in the earlier
    generators, a basis-key dict, or an element of the prefix tower.
    """
    tower = Tower.rationals()
    later = set()
    recs = []
    for g in generators:
        if isinstance(g, dict):
            recs.append((g["name"], g["radicand"], g.get("pin")))
        else:
            recs.append(tuple(g))
    all_names = [r[0] for r in recs]
    for idx, (name, rad, pin) in enumerate(recs):
        later = set(all_names[idx:])
        if pin is None:
            raise SpecError(f"generator {name} has no pin")
        if isinstance(rad, FieldElem):
            if rad.tower is not tower:
                raise MalformedRadicand(f"radicand of {name} is not over the preceding generators")
            value = rad
        elif isinstance(rad, dict):
            bad = [k for k in rad for part in k.split("*") if part.strip() in later]
            if bad:
                raise MalformedRadicand(f"radicand of {name} refers forward: {bad}")
            value = tower.element(rad)
        elif isinstance(rad, str):
            from .expr import free_names

            fwd = free_names(rad) & later
            if fwd:
                raise MalformedRadicand(f"radicand of {name} refers to {sorted(fwd)} which are not yet defined")
            value = tower.parse(rad)
        else:
            value = tower(rad)
        tower = tower.extend(name, value, pin)
    return tower


def fe_arith(a, b, kind):
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    raise ValueError(f"unknown operation {kind!r}")


def fe_inv(a):
    return a.inverse()


def fe_embed(a, digits=30):
    """(re, im) decimal strings with the requested number of significant digits."""
    z = a.embed(digits)
    return mpmath.nstr(z.real, digits), mpmath.nstr(z.imag, digits)


def principal_sqrt_pin(value, digits=DEFAULT_PIN_DIGITS):
    """Principal square root of an embedded value, as a pin record."""
    with mpmath.workdps(digits + 10):
        r = mpmath.sqrt(value)
        return {"re": mpmath.nstr(r.real, digits), "im": mpmath.nstr(r.imag, digits)}
