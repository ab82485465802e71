"""Singular fibers: Kodaira types, component indices and local height contributions."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import BadIndex, DegreeBound, NonMinimalModel, UnsupportedFiber
from .funcfield import Place, Poly, ord_at, poly_gcd, roots_in_tower
from .numfield import FieldElem
from .weierstrass import CHART_BOUNDS, DEFAULT_BOUNDS, CurveModel, Point


INF = float("inf")   # order of an identically vanishing invariant


def _ord_json(o):
    return "inf" if o == INF else o


def model_invariants(C):
    """(c4, c6, delta) of the model; c4^3 - c6^2 = 1728 delta."""
    b2 = C.b2 * 4
    b4 = C.b3 * 2
    b6 = C.b4 * 4
    c4 = b2 * b2 - b4 * 24
    c6 = -(b2 ** 3) + b2 * b4 * 36 - b6 * 216
    return c4, c6, C.delta


def chart_at_infinity(C):
    """The model in s = 1/t with x* = s^2 x, y* = s^3 y."""
    if C.bounds != DEFAULT_BOUNDS:
        raise DegreeBound("the chart at infinity needs a model in the t-chart")
    coeffs = []
    for p, w in zip((C.b2, C.b3, C.b4), (2, 4, 6)):
        coeffs.append(p.reverse(w).with_var("s"))
    return CurveModel(*coeffs, tower=C.tower, var="s", bounds=CHART_BOUNDS)


def point_at_infinity_chart(P):
    if P.is_zero:
        return P
    return Point(P.x.at_infinity(2), P.y.at_infinity(3))


# Kodaira types -------------------------------------------------------

@dataclass(frozen=True)
class KodairaType:
    symbol: str        # "I", "I*", "II", "III", "IV", "IV*", "III*", "II*", "?"
    n: int = 0

    @property
    def name(self):
        if self.symbol == "I":
            return f"I{self.n}"
        if self.symbol == "I*":
            return f"I{self.n}*"
        return self.symbol

    @property
    def m_v(self):
        if self.symbol == "I":
            return max(self.n, 1)
        if self.symbol == "I*":
            return self.n + 5
        return {"II": 1, "III": 2, "IV": 3, "IV*": 7, "III*": 8, "II*": 9, "?": 0}[self.symbol]

    def __str__(self):
        return self.name


def kodaira_from_ords(o4, o6, od):
    """Classify from (ord c4, ord c6, ord delta) in characteristic zero."""
    if od >= 12 and o4 >= 4 and o6 >= 6:
        raise NonMinimalModel(f"non-minimal model (ord c4={o4}, c6={o6}, delta={od})")
    if od == 0:
        return KodairaType("I", 0)
    if o4 == 0:
        return KodairaType("I", od)
    if o4 == 2 and o6 == 3 and od > 6:
        return KodairaType("I*", od - 6)
    table = {2: "II", 3: "III", 4: "IV", 6: "I*", 8: "IV*", 9: "III*", 10: "II*"}
    if od not in table:
        raise UnsupportedFiber(f"no Kodaira type for ords ({o4}, {o6}, {od})")
    sym = table[od]
    return KodairaType("I*", 0) if sym == "I*" else KodairaType(sym)


@dataclass(frozen=True)
class FiberReport:
    place: Place | None
    kodaira: KodairaType
    ord_delta: int
    ord_c4: int | None
    ord_c6: int | None
    sing_x: FieldElem | None = None
    factor: Poly | None = None      # unresolved conjugate places
    weight: int = 1                 # degree of the factor, 1 for a single place

    @property
    def m_v(self):
        return self.kodaira.m_v

    @property
    def kodaira_type(self):
        return self.kodaira.name

    @property
    def reducible(self):
        return self.place is not None and self.m_v >= 2

    @property
    def label(self):
        if self.place is not None:
            return str(self.place)
        return f"roots of {self.factor}"

    def to_json(self):
        out = {
            "place": self.place.to_json() if self.place is not None else None,
            "type": self.kodaira.name,
            "m_v": self.m_v,
            "ord_delta": self.ord_delta,
            "ord_c4": _ord_json(self.ord_c4),
            "ord_c6": _ord_json(self.ord_c6),
        }
        if self.sing_x is not None:
            out["sing_x"] = self.sing_x.to_dict()
        if self.factor is not None:
            out["factor"] = self.factor.to_json()
            out["places"] = self.weight
        return out


def _singular_x(cubic):
    """Root of gcd(F, F') for a fiber cubic with a unique singular point."""
    g = poly_gcd(cubic, cubic.derivative())
    if g.degree <= 0:
        return None
    # a double root a: g = x - a; a triple root: g = (x - a)^2
    sq = g.exact_div(poly_gcd(g, g.derivative()))
    if sq.degree != 1:
        return None
    return -sq.coeff(0)


def _report_at(model, t0, place, c4, c6, delta):
    od = ord_at(delta, Place.finite(t0))
    o4 = ord_at(c4, Place.finite(t0)) if not c4.is_zero() else INF
    o6 = ord_at(c6, Place.finite(t0)) if not c6.is_zero() else INF
    kt = kodaira_from_ords(o4, o6, od)
    sing = _singular_x(model.fiber_cubic(t0))
    return FiberReport(place, kt, od, o4, o6, sing)


def classify_fibers(C, hints=()):
    """Reports for every singular fiber, finite places sorted, infinity last."""
    c4, c6, delta = model_invariants(C)
    roots, unresolved = roots_in_tower(delta, hints)
    reports = []
    for t0, _mult in roots:
        reports.append(_report_at(C, t0, Place.finite(t0), c4, c6, delta))
    reports.sort(key=lambda r: r.place.sort_key())
    for fac, mult in unresolved:
        if poly_gcd(fac, c4).degree == 0:
            kt = KodairaType("I", mult)
            o4 = o6 = 0
        else:
            kt = KodairaType("?", 0)
            o4 = o6 = None
        reports.append(FiberReport(None, kt, mult, o4, o6, factor=fac, weight=fac.degree))
    chart = chart_at_infinity(C)
    c4s, c6s, ds = model_invariants(chart)
    zero = C.tower.zero
    od = ord_at(ds, Place.finite(zero))
    if od > 0:
        rep = _report_at(chart, zero, Place.infinity(), c4s, c6s, ds)
        reports.append(rep)
    return reports


def sum_ord_delta(reports):
    return sum(r.ord_delta * r.weight for r in reports)


def shioda_tate_tally(reports):
    """Sum of (m_v - 1) over all reducible fibers (conjugate places counted)."""
    return sum((r.m_v - 1) * r.weight for r in reports if r.m_v >= 2)


def reducible_fibers(reports):
    return [r for r in reports if r.m_v >= 2]


def component_index(C, report, P, override=None):
    """Index of the fiber component met by P (0 = identity component)."""
    if override is not None:
        if not 0 <= override < report.m_v:
            raise BadIndex(f"override {override} out of range for {report.kodaira_type}")
        return override
    if report.m_v == 1:
        return 0
    if report.m_v > 2 or report.place is None:
        raise UnsupportedFiber(
            f"automatic component detection needs a 2-component fiber, got {report.kodaira_type}",
            place=report.label,
        )
    if P.is_zero:
        return 0
    if report.place.is_infinity:
        Q = point_at_infinity_chart(P)
        t0 = C.tower.zero
    else:
        Q = P
        t0 = report.place.t0
    v = Place.finite(t0)
    if ord_at(Q.x, v) < 0:
        return 0
    if Q.x(t0) == report.sing_x and Q.y(t0).is_zero():
        return 1
    return 0


@dataclass(frozen=True)
class GammaVector:
    entries: tuple = field(default_factory=tuple)   # ((place, index), ...)

    @property
    def indices(self):
        return tuple(i for _, i in self.entries)

    def permuted(self, order):
        return tuple(self.indices[k] for k in order)

    def to_json(self):
        return [{"place": p.to_json(), "index": i} for p, i in self.entries]

    def __str__(self):
        return "(" + ", ".join(str(i) for i in self.indices) + ")"


def gamma_vector(C, reports, P, overrides=None):
    """Component indices at the reducible fibers in canonical place order."""
    overrides = overrides or {}
    entries = []
    for r in reducible_fibers(reports):
        ov = overrides.get(str(r.place)) if r.place is not None else None
        entries.append((r.place, component_index(C, r, P, ov)))
    return GammaVector(tuple(entries))


def contribution(report, i, j=None):
    """Local height correction contr_v(i) or contr_v(i, j)."""
    m = report.m_v
    for k in (i, j):
        if k is not None and not 0 <= k < m:
            raise BadIndex(f"component {k} out of range for {report.kodaira_type}")
    if j is None:
        j = i
    if i == 0 or j == 0:
        return Fraction(0)
    kt = report.kodaira
    if kt.symbol == "I":
        a, b = min(i, j), max(i, j)
        return Fraction(a * (kt.n - b), kt.n)
    if kt.symbol == "III":
        return Fraction(1, 2)
    if kt.symbol == "IV":
        return Fraction(2, 3) if i == j else Fraction(1, 3)
    if kt.symbol == "IV*":
        return Fraction(4, 3) if i == j else Fraction(2, 3)
    if kt.symbol == "III*":
        return Fraction(3, 2)
    if kt.symbol == "I*":
        # component 1 is the near simple component, 2 and 3 the far ones
        if i > 3 or j > 3:
            raise BadIndex("only simple components of I_n* carry sections")
        b = kt.n
        if i == j:
            return Fraction(1) if i == 1 else 1 + Fraction(b, 4)
        if 1 in (i, j):
            return Fraction(1, 2)
        return Fraction(1, 2) + Fraction(b, 4)
    raise BadIndex(f"no contribution table for {kt.name}")
