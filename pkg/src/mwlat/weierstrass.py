"""Weierstrass models y^2 = x^3 + b2 x^2 + b3 x + b4 over K(t) and their group law."""

from __future__ import annotations

from fractions import Fraction

from .errors import DegreeBound, SingularModel, TowerMismatch
from .funcfield import BiPoly, Poly, RatFunc

DEFAULT_BOUNDS = (2, 3, 4)
# coefficient degree bounds of the chart at infinity (weights 2, 4, 6)
CHART_BOUNDS = (2, 4, 6)


def _as_poly(tower, p, var):
    if isinstance(p, Poly):
        if p.tower is not tower:
            raise TowerMismatch("model coefficients live in different towers")
        return p.with_var(var) if p.var != var else p
    if isinstance(p, RatFunc):
        if not p.is_poly():
            raise DegreeBound("model coefficients must be polynomials")
        return _as_poly(tower, p.num, var)
    return Poly.const(tower, p, var)


def cubic_discriminant(a, b, c):
    """Discriminant of x^3 + a x^2 + b x + c (works for any ring elements)."""
    return a * a * b * b - 4 * b ** 3 - 4 * a ** 3 * c - 27 * c * c + 18 * a * b * c


class CurveModel:
    """y^2 = x^3 + b2(t) x^2 + b3(t) x + b4(t) with deg b_i bounded."""

    def __init__(self, b2, b3, b4, tower=None, var="t", bounds=DEFAULT_BOUNDS):
        if tower is None:
            tower = next(p.tower for p in (b2, b3, b4) if isinstance(p, (Poly, RatFunc)))
        self.tower = tower
        self.var = var
        self.bounds = tuple(bounds)
        self.b2 = _as_poly(tower, b2, var)
        self.b3 = _as_poly(tower, b3, var)
        self.b4 = _as_poly(tower, b4, var)
        for name, p, bound in zip(("b2", "b3", "b4"), (self.b2, self.b3, self.b4), self.bounds):
            if p.degree > bound:
                raise DegreeBound(f"deg {name} = {p.degree} exceeds {bound}", coefficient=name)
        self.disc = cubic_discriminant(self.b2, self.b3, self.b4)
        if self.disc.is_zero():
            raise SingularModel("discriminant vanishes identically")
        self.delta = self.disc * 16

    def f(self, x):
        """Evaluate the cubic at x (Poly, RatFunc or field element)."""
        return ((x + self.b2) * x + self.b3) * x + self.b4

    def f_bipoly(self):
        t = self.tower
        return BiPoly.from_x_coeffs([self.b4, self.b3, self.b2, Poly.const(t, 1, self.var)])

    def fiber_cubic(self, t0):
        """The cubic in x over the fiber t = t0."""
        return Poly(self.tower, [self.b4(t0), self.b3(t0), self.b2(t0), 1], "x")

    def gen(self):
        return RatFunc.gen(self.tower, self.var)

    def __eq__(self, other):
        if not isinstance(other, CurveModel):
            return NotImplemented
        return (self.tower is other.tower and self.var == other.var
                and (self.b2, self.b3, self.b4) == (other.b2, other.b3, other.b4))

    def __hash__(self):
        return hash((self.b2, self.b3, self.b4, self.var))

    def to_json(self):
        return {"b2": self.b2.to_json(), "b3": self.b3.to_json(), "b4": self.b4.to_json()}

    def __repr__(self):
        return f"CurveModel(b2={self.b2}, b3={self.b3}, b4={self.b4})"


def curve_new(b2, b3, b4, tower=None):
    return CurveModel(b2, b3, b4, tower=tower)


class Point:
    """A K(t)-rational point: the zero section O, or affine (x, y)."""

    __slots__ = ("x", "y")

    def __init__(self, x=None, y=None):
        if (x is None) != (y is None):
            raise ValueError("affine points need both coordinates")
        if x is not None:
            x = x if isinstance(x, RatFunc) else RatFunc(x)
            y = y if isinstance(y, RatFunc) else RatFunc(y)
        self.x = x
        self.y = y

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def affine(cls, x, y):
        return cls(x, y)

    @property
    def is_zero(self):
        return self.x is None

    def is_integral(self):
        """Polynomial coordinates of degree at most 2 and 3."""
        return (not self.is_zero and self.x.is_poly() and self.y.is_poly()
                and self.x.degree <= 2 and self.y.degree <= 3)

    def __eq__(self, other):
        if not isinstance(other, Point):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return self.is_zero and other.is_zero
        return self.x == other.x and self.y == other.y

    def __hash__(self):
        return hash(None) if self.is_zero else hash((self.x, self.y))

    def to_json(self):
        if self.is_zero:
            return "O"
        return {"x": self.x.to_json(), "y": self.y.to_json()}

    def __str__(self):
        return "O" if self.is_zero else f"[{self.x}, {self.y}]"

    def __repr__(self):
        return f"Point({self})"


def on_curve(C, P):
    if P.is_zero:
        return True
    if P.x.tower is not C.tower or P.y.tower is not C.tower:
        raise TowerMismatch("point and curve are over different towers")
    # cross-multiplied, so no gcd normalization is needed
    xn, xd = P.x.num, P.x.den
    yn, yd = P.y.num, P.y.den
    rhs = ((xn + C.b2 * xd) * xn + C.b3 * xd * xd) * xn + C.b4 * xd * xd * xd
    return yn * yn * xd * xd * xd == rhs * yd * yd


def ec_neg(C, P):
    if P.is_zero:
        return P
    return Point(P.x, -P.y)


def _from_slope(C, P, Q, lam):
    x3 = lam * lam - C.b2 - P.x - Q.x
    y3 = lam * (P.x - x3) - P.y
    return Point(x3, y3)


def ec_double(C, P):
    if P.is_zero or P.y.is_zero():
        return Point.zero()
    lam = (P.x * P.x * 3 + P.x * C.b2 * 2 + C.b3) / (P.y * 2)
    return _from_slope(C, P, P, lam)


def ec_add(C, P, Q):
    """Chord-tangent addition."""
    if P.is_zero:
        return Q
    if Q.is_zero:
        return P
    if P.x == Q.x:
        if P.y == Q.y:
            return ec_double(C, P)
        return Point.zero()
    lam = (Q.y - P.y) / (Q.x - P.x)
    return _from_slope(C, P, Q, lam)


def ec_sub(C, P, Q):
    return ec_add(C, P, ec_neg(C, Q))


def ec_mul(C, n, P):
    """[n]P by double-and-add."""
    if n < 0:
        return ec_neg(C, ec_mul(C, -n, P))
    result = Point.zero()
    base = P
    while n:
        if n & 1:
            result = ec_add(C, result, base)
        n >>= 1
        if n:
            base = ec_double(C, base)
    return result


def meets_zero_section(C, P):
    """True if x_P has a pole at a finite place or at infinity (in the chart)."""
    if P.is_zero:
        return False
    return not P.x.is_poly() or P.x.degree > C.bounds[0]


def torsion_order(C, P, bound=12):
    """Least n <= bound with [n]P = O, or None.

    Torsion sections of an elliptic surface with chi >= 1 never meet O, so
    the search stops as soon as a multiple acquires a pole.
    """
    Q = P
    for n in range(1, bound + 1):
        if Q.is_zero:
            return n
        if meets_zero_section(C, Q):
            return None
        Q = ec_add(C, Q, P)
    return None


def linear_combination(C, coeffs, points):
    acc = Point.zero()
    for c, P in zip(coeffs, points):
        c = int(Fraction(c)) if not isinstance(c, int) else c
        if c:
            acc = ec_add(C, acc, ec_mul(C, c, P))
    return acc


__all__ = [
    "CurveModel", "Point", "curve_new", "on_curve", "ec_add", "ec_sub", "ec_neg",
    "ec_double", "ec_mul", "torsion_order", "linear_combination", "cubic_discriminant",
    "DEFAULT_BOUNDS", "CHART_BOUNDS",
]
