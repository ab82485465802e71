"""Plane side: quartics, lines and conics versus the Weierstrass model.

Plane curves live in the affine chart (t, x) = (T/Z, X/Z).  Intersection
counts are certified with x-resultants taken in a projective chart where the
first curve has a constant x-leading coefficient and nothing escapes to the
line at infinity; see ``intersection_chart``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    ChartFailure,
    ComponentLine,
    DegenerateConic,
    NonIntegralSection,
    NotIrreducible,
    NotQuarticNormalForm,
    OddMultiplicity,
    SingularContact,
    TowerMismatch,
)
from .funcfield import BiPoly, Poly, RatFunc, poly_gcd, resultant_x, roots_in_tower, squarefree_decomp
from .numfield import FieldElem
from .weierstrass import CurveModel, Point

# projective changes (mu, lam, kap): T -> T + mu X, Z -> Z + lam T + kap X,
# tried in order; the projection centre moves to [mu : 1 : kap]
CHARTS = [
    (0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0), (0, 0, 1), (1, 0, 1), (1, 1, 1),
    (-1, 2, 1), (2, -1, 3), (3, 1, -2), (-2, 3, 5), (5, -2, 7), (4, 7, -3), (-3, -5, 2),
]


@dataclass(frozen=True)
class PlaneCurve:
    poly: BiPoly
    name: str = ""

    @property
    def tower(self):
        return self.poly.tower

    @property
    def degree(self):
        return self.poly.total_degree

    def __call__(self, t0, x0):
        return self.poly(t0, x0)

    def to_json(self):
        return {"name": self.name, "terms": self.poly.to_json()}

    def __str__(self):
        return f"{self.name}: {self.poly} = 0" if self.name else f"{self.poly} = 0"


def _curve(c):
    return c if isinstance(c, PlaneCurve) else PlaneCurve(c)


# model extraction ------------------------------------------------------

@dataclass(frozen=True)
class ModelTransform:
    """Weierstrass X = x_scale * x, y^2 = q / c with q = c x^3 + ... the quartic."""

    c: FieldElem
    x_scale: FieldElem

    def plane_from_weierstrass(self, g):
        """g(t, X) rewritten in plane coordinates, g(t, x_scale * x)."""
        return BiPoly(g.tower, {(i, j): v * self.x_scale ** j for (i, j), v in g.terms.items()})

    def weierstrass_from_plane(self, h):
        inv = self.x_scale.inverse()
        return BiPoly(h.tower, {(i, j): v * inv ** j for (i, j), v in h.terms.items()})


def weierstrass_from_quartic(q, x_scale=1):
    """Model of the double cover branched along q with z_o = [0, 1, 0].

    With x_scale = lam: b2 = lam a2 / c, b3 = lam^2 a1 / c, b4 = lam^3 a0 / c;
    lam = c gives the monic substitution X = c x.
    """
    q = _curve(q)
    P = q.poly
    tw = P.tower
    if P.total_degree != 4 or P.deg_x != 3:
        raise NotQuarticNormalForm(f"need total degree 4 and x-degree 3, got {P.total_degree} and {P.deg_x}")
    a = P.x_coeffs()
    if a[3].degree != 0:
        raise NotQuarticNormalForm("the x^3 coefficient must be a nonzero constant")
    c = a[3].coeff(0)
    lam = tw(x_scale)
    cinv = c.inverse()
    b2 = a[2] * (lam * cinv)
    b3 = a[1] * (lam ** 2 * cinv)
    b4 = a[0] * (lam ** 3 * cinv)
    return CurveModel(b2, b3, b4, tower=tw), ModelTransform(c, lam)


def section_image(tr, P):
    """The plane curve x_scale * x - x_P(t) = 0 swept out by an integral section."""
    if P.is_zero or not P.x.is_poly() or P.x.degree > 2:
        raise NonIntegralSection("section image needs a polynomial x-coordinate of degree <= 2")
    xp = P.x.num
    terms = {(i, 0): -v for i, v in enumerate(xp.coeffs)}
    terms[(0, 1)] = tr.x_scale
    kind = "line" if xp.degree <= 1 else "conic"
    return PlaneCurve(BiPoly(xp.tower, terms), kind)


# conics ----------------------------------------------------------------

def conic_matrix(g):
    """Symmetric 3x3 matrix of the homogenized conic in (T, X, Z)."""
    h = g.homogeneous_terms(2)
    z = g.tower.zero
    get = lambda i, j, k: h.get((i, j, k), z)
    half = Fraction(1, 2)
    return [
        [get(2, 0, 0), get(1, 1, 0) * half, get(1, 0, 1) * half],
        [get(1, 1, 0) * half, get(0, 2, 0), get(0, 1, 1) * half],
        [get(1, 0, 1) * half, get(0, 1, 1) * half, get(0, 0, 2)],
    ]


def det3(m):
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))


def is_smooth_conic(g):
    return g.total_degree == 2 and not det3(conic_matrix(g)).is_zero()


def proportional(a, b):
    """True if a = k * b for a nonzero constant k."""
    if a.is_zero() or b.is_zero():
        return a.is_zero() and b.is_zero()
    if set(a.terms) != set(b.terms):
        return False
    key = next(iter(b.terms))
    k = a.terms[key] / b.terms[key]
    return all(a.terms[m] == k * b.terms[m] for m in b.terms)


def default_slope(P):
    """Leading coefficient of r forcing total degree 2: lc(x_P)^2 / lc(y_P)."""
    return P.x.num.lc ** 2 / P.y.num.lc


@dataclass
class ContactProof:
    chart: tuple
    resultant: Poly
    factors: list          # [(factor, exponent)]
    contact_count: int
    singular_check: str

    def to_json(self):
        return {
            "chart": dict(zip(("mu", "lam", "kap"), (str(c) for c in self.chart))),
            "resultant_degree": self.resultant.degree,
            "factors": [{"factor": f.to_json(), "exponent": e} for f, e in self.factors],
            "contact_points": self.contact_count,
            "singular_check": self.singular_check,
        }


@dataclass
class ConicCertificate:
    conic: PlaneCurve          # plane coordinates
    conic_weierstrass: BiPoly
    point: Point
    r: Poly
    factor_witness: bool
    contact_proof: ContactProof | None = None
    sign_convention: str = "bisection over the conic corresponds to -s_P"

    @property
    def smoothness_proof(self):
        return self.contact_proof.singular_check if self.contact_proof else None

    def to_json(self):
        out = {
            "conic": self.conic.poly.to_json(),
            "conic_text": str(self.conic.poly),
            "r": self.r.to_json(),
            "factor_witness": self.factor_witness,
            "sign_convention": self.sign_convention,
        }
        if self.contact_proof is not None:
            out["contact_proof"] = self.contact_proof.to_json()
        return out


def _as_poly_t(tower, r):
    if isinstance(r, RatFunc):
        if not r.is_poly():
            raise DegenerateConic("r must be a polynomial")
        return r.num
    if isinstance(r, Poly):
        return r
    return Poly.const(tower, r)


def contact_quotient(C, P, r):
    """(g, f - l^2) with f - l^2 = (X - x_P) g for l = r (X - x_P) + y_P; no smoothness check."""
    if P.is_zero or not (P.x.is_poly() and P.y.is_poly()):
        raise NonIntegralSection("contact conics need polynomial coordinates")
    tw = C.tower
    r = _as_poly_t(tw, r)
    xp, yp = P.x.num, P.y.num
    X = BiPoly.x(tw)
    line = X * r - xp * r + yp
    lhs = C.f_bipoly() - line * line
    # synthetic division by X - x_P over K[t]
    coeffs = lhs.x_coeffs()
    while len(coeffs) < 4:
        coeffs.append(Poly(tw, []))
    q2 = coeffs[3]
    q1 = coeffs[2] + q2 * xp
    q0 = coeffs[1] + q1 * xp
    rem = coeffs[0] + q0 * xp
    if not rem.is_zero():
        raise DegenerateConic("P is not on the curve: x - x_P does not divide f - l^2")
    return BiPoly.from_x_coeffs([q0, q1, q2]), lhs


def contact_conic(C, tr, P, r, quartic=None, certify=True):
    """g with f_T - l_P^2 = (X - x_P) g for l_P = r (X - x_P) + y_P."""
    r = _as_poly_t(C.tower, r)
    g, lhs = contact_quotient(C, P, r)
    X = BiPoly.x(C.tower)
    xp = P.x.num
    witness = (X - xp) * g == lhs
    if g.total_degree != 2:
        raise DegenerateConic(f"g has total degree {g.total_degree}, not 2", r=r)
    if not is_smooth_conic(g):
        raise DegenerateConic("g is a degenerate conic (vanishing determinant)", r=r)
    plane = PlaneCurve(tr.plane_from_weierstrass(g), "conic")
    cert = ConicCertificate(plane, g, P, r, witness)
    if certify and quartic is not None:
        cert.contact_proof = verify_contact(plane, quartic)
    return cert


# chart machinery ---------------------------------------------------------

def chart_transform(F, mu, lam, kap=0, d=None):
    """F(T + mu X, X, Z + lam T + kap X) in the affine chart Z = 1."""
    tw = F.tower
    if mu == 0 and lam == 0 and kap == 0:
        return F
    t, x, one = BiPoly.t(tw), BiPoly.x(tw), BiPoly.const(tw, 1)
    return F.projective_substitute(t + x * mu, x, one + t * lam + x * kap, d)


def _rem_x(gc, fc):
    """Remainder of G by F in x over K[t]; F has a constant leading coefficient."""
    r = list(gc)
    n = len(fc) - 1
    inv = fc[-1].coeff(0).inverse()
    for k in range(len(r) - 1, n - 1, -1):
        q = r[k] * inv
        if q.is_zero():
            continue
        for j in range(n + 1):
            r[k - n + j] = r[k - n + j] - q * fc[j]
    tw = fc[0].tower
    out = r[:n]
    while len(out) < n:
        out.append(Poly(tw, []))
    return out


def _homog_eval(G, A, B):
    """A^d * G(t, -B/A) for d = deg_x G, a polynomial in t."""
    cs = G.x_coeffs()
    d = len(cs) - 1
    acc = Poly(A.tower, [])
    for k, c in enumerate(cs):
        acc = acc + c * (-B) ** k * A ** (d - k)
    return acc


def squarefree_part(p):
    out = Poly.const(p.tower, 1, p.var)
    for f, _ in squarefree_decomp(p):
        out = out * f
    return out


@dataclass
class ChartData:
    chart: tuple
    F: BiPoly
    G: BiPoly
    R: Poly
    A: Poly
    B: Poly
    h: Poly      # squarefree part of R


def intersection_chart(F, G, charts=CHARTS):
    """First chart where Res_x(F, G) sees every intersection, one per root.

    Requirements: F has a nonzero constant leading x-coefficient of full
    degree, deg Res = deg F * deg G, and for deg F = 2, the remainder A x + B
    of G modulo F has A coprime to Res (one common point over each root).
    """
    dF, dG = F.total_degree, G.total_degree
    last = None
    for chart in charts:
        Fc = chart_transform(F, *chart, d=dF)
        if Fc.deg_x != dF:
            continue
        Gc = chart_transform(G, *chart, d=dG)
        if Gc.deg_x < 1:
            continue
        R = resultant_x(Fc, Gc)
        if R.is_zero():
            raise ChartFailure("the curves share a component")
        if R.degree != dF * dG:
            last = "intersection at infinity"
            continue
        h = squarefree_part(R)
        if dF == 1:
            A = Poly.const(F.tower, 1)
            B = Poly(F.tower, [])
            return ChartData(chart, Fc, Gc, R, A, B, h)
        fc = Fc.x_coeffs()
        gc = Gc.x_coeffs()
        B, A = _rem_x(gc, fc)
        if A.is_zero() or poly_gcd(h, A).degree > 0:
            last = "two intersections over one t"
            continue
        return ChartData(chart, Fc, Gc, R, A, B, h)
    raise ChartFailure(f"no admissible chart ({last})")


def verify_contact(conic, q):
    """Certify that a smooth conic meets q with even multiplicities at smooth points."""
    conic, q = _curve(conic), _curve(q)
    if conic.tower is not q.tower:
        raise TowerMismatch("conic and quartic over different towers")
    if conic.degree != 2 or not is_smooth_conic(conic.poly):
        raise DegenerateConic("verify_contact needs a smooth conic")
    data = intersection_chart(conic.poly, q.poly)
    Qc = data.G
    nx = _homog_eval(Qc.diff_x(), data.A, data.B)
    nt = _homog_eval(Qc.diff_t(), data.A, data.B)
    bad = poly_gcd(poly_gcd(data.h, nx), nt)
    if bad.degree > 0:
        raise SingularContact(f"contact at a singular point of the quartic (t in roots of {bad})")
    factors = squarefree_decomp(data.R)
    odd = [(f, e) for f, e in factors if e % 2]
    if odd:
        raise OddMultiplicity(f"odd intersection multiplicity {odd[0][1]} at roots of {odd[0][0]}")
    count = sum(f.degree for f, _ in factors)
    return ContactProof(data.chart, data.R, factors, count, "gcd(Res, q_x, q_t) = 1 at contact points")


def transversal(F, G):
    """True if F (a conic or line) and G meet in deg F * deg G distinct points."""
    F, G = _curve(F), _curve(G)
    if F.degree == 1 and G.degree == 2:
        F, G = G, F
    data = intersection_chart(F.poly, G.poly)
    return data.h.degree == data.R.degree


def common_point_free(C1, C2, C3):
    """True if the three curves have no common point (C1 a conic)."""
    C1, C2, C3 = _curve(C1), _curve(C2), _curve(C3)
    d12 = intersection_chart(C1.poly, C2.poly)
    F3 = chart_transform(C3.poly, *d12.chart, d=C3.degree)
    N = _homog_eval(F3, d12.A, d12.B)
    return poly_gcd(d12.h, N).degree == 0


# lines versus cubics ------------------------------------------------------

def line_coeffs(L):
    """(a, b, c) with L = a t + b x + c."""
    L = _curve(L)
    if L.degree != 1:
        raise ValueError("not a line")
    z = L.tower.zero
    g = L.poly.terms
    return g.get((1, 0), z), g.get((0, 1), z), g.get((0, 0), z)


@dataclass
class TangencyResult:
    kind: str                       # transversal | tangent | inflectional
    point: tuple | None = None      # (t, x) of the tangency; None if at infinity
    multiplicities: list = field(default_factory=list)
    points: list = field(default_factory=list)   # intersection points found in the tower

    def to_json(self):
        def fmt(p):
            return None if p is None else [p[0].to_dict(), p[1].to_dict()]
        return {"kind": self.kind, "point": fmt(self.point),
                "multiplicities": self.multiplicities, "points": [fmt(p) for p in self.points]}


def _restrict_to_line(L, F):
    """Parametrize L and return (univariate restriction, param -> (t, x))."""
    a, b, c = line_coeffs(L)
    tw = L.tower
    if not b.is_zero():
        # x = -(a t + c) / b, parameter t
        xs = Poly(tw, [-c / b, -a / b])
        res = F.poly.subs_x(xs)
        res = res if isinstance(res, Poly) else res.num
        return res, lambda u: (u, xs(u))
    t0 = -c / a
    res = F.poly.at_t(t0).with_var("t")
    return res, lambda u: (t0, u)


def tangency_classify(line, cubic, hints=()):
    line, cubic = _curve(line), _curve(cubic)
    res, point_of = _restrict_to_line(line, cubic)
    if res.is_zero():
        raise ComponentLine("the line is a component of the cubic")
    d = cubic.degree
    mults = []
    special = None
    for fac, e in squarefree_decomp(res):
        mults.extend([e] * fac.degree)
        if e >= 2:
            special = (fac, e)
    at_inf = d - res.degree
    if at_inf > 0:
        mults.append(at_inf)
    mults.sort(reverse=True)
    roots, _ = roots_in_tower(res, hints)
    pts = [point_of(r) for r, _ in roots]
    top = mults[0] if mults else 0
    if top == 1:
        return TangencyResult("transversal", None, mults, pts)
    kind = "tangent" if top == 2 else "inflectional"
    pt = None
    if special is not None and special[1] == top and special[0].degree == 1:
        u = -special[0].coeff(0)
        pt = point_of(u)
    return TangencyResult(kind, pt, mults, pts)


# cubic singularities -----------------------------------------------------

@dataclass
class CubicAnalysis:
    kind: str                          # smooth | nodal | other
    singular_points: list = field(default_factory=list)
    at_infinity: bool = False

    @property
    def node(self):
        return self.singular_points[0] if self.kind == "nodal" else None

    def to_json(self):
        return {"kind": self.kind,
                "singular_points": [[p[0].to_dict(), p[1].to_dict()] for p in self.singular_points],
                "singular_at_infinity": self.at_infinity}


def _affine_singular_points(F, hints=()):
    Ft, Fx = F.diff_t(), F.diff_x()
    pts = []
    unresolved = 0
    # t-candidates: common roots of Res(F, F_x) and Res(F, F_t) (or the x-free cases)
    polys = []
    for G in (Fx, Ft):
        if G.is_zero():
            continue
        if G.deg_x >= 1 and F.deg_x >= 1:
            polys.append(resultant_x(F, G))
        else:
            # G depends on t only
            polys.append(G.x_coeffs()[0])
    if not polys:
        return pts, 0
    g = polys[0]
    for p in polys[1:]:
        g = poly_gcd(g, p) if not g.is_zero() else p
    if g.is_zero() or g.degree <= 0:
        return pts, 0
    roots, unres = roots_in_tower(g, hints)
    unresolved = sum(f.degree for f, _ in unres)
    for t0, _ in roots:
        polys_x = [H.at_t(t0) for H in (F, Fx, Ft)]
        common = None
        for p in polys_x:
            if p.is_zero():
                continue
            common = p if common is None else poly_gcd(common, p)
        if common is None:
            raise NotIrreducible("a vertical line is a component")
        if common.degree <= 0:
            continue
        xr, xu = roots_in_tower(common, hints)
        unresolved += sum(f.degree for f, _ in xu)
        pts.extend((t0, x0) for x0, _ in xr)
    return pts, unresolved


def _singular_at_infinity(F):
    d = F.total_degree
    hom = F.homogeneous_terms(d)
    tw = F.tower
    top = BiPoly(tw, {(i, j): v for (i, j, k), v in hom.items() if k == 0})
    sub = BiPoly(tw, {(i, j): v for (i, j, k), v in hom.items() if k == 1})
    parts = [top, top.diff_t(), top.diff_x(), sub]
    # point [0:1:0]
    if all(p(tw.zero, tw.one).is_zero() for p in parts):
        return True
    # points [1:x:0]
    common = None
    for p in parts:
        u = p.at_t(tw.one)
        if u.is_zero():
            continue
        common = u if common is None else poly_gcd(common, u)
    return common is not None and common.degree > 0


def cubic_analysis(cubic, hints=()):
    cubic = _curve(cubic)
    F = cubic.poly
    pts, unresolved = _affine_singular_points(F, hints)
    inf = _singular_at_infinity(F)
    total = len(pts) + unresolved + (1 if inf else 0)
    if total == 0:
        return CubicAnalysis("smooth")
    if total >= 2:
        raise NotIrreducible(f"{total} singular points: the cubic is reducible")
    if inf or unresolved:
        return CubicAnalysis("other", pts, inf)
    t0, x0 = pts[0]
    Ftt = F.diff_t().diff_t()(t0, x0)
    Fxx = F.diff_x().diff_x()(t0, x0)
    Ftx = F.diff_t().diff_x()(t0, x0)
    if Ftt.is_zero() and Fxx.is_zero() and Ftx.is_zero():
        raise NotIrreducible("triple point: the cubic is a union of lines")
    if not (Ftt * Fxx - Ftx * Ftx).is_zero():
        return CubicAnalysis("nodal", pts)
    # degenerate tangent cone: cusp, unless the tangent line is a component
    tw = F.tower
    if not Fxx.is_zero():
        # tangent direction (dt, dx) = (Fxx, -Ftx) up to scale
        dt, dx = Fxx, -Ftx
    else:
        dt, dx = tw.zero, tw.one
    L = BiPoly(tw, {(1, 0): dx, (0, 1): -dt, (0, 0): -(dx * t0 - dt * x0)})
    res, _ = _restrict_to_line(PlaneCurve(L), cubic)
    if res.is_zero():
        raise NotIrreducible("the tangent line at the singular point is a component")
    return CubicAnalysis("other", pts)


# combinatorics validators -------------------------------------------------

@dataclass
class Clause:
    name: str
    passed: bool
    detail: str = ""

    def to_json(self):
        return {"clause": self.name, "passed": self.passed, "detail": self.detail}


@dataclass
class CombinatoricsReport:
    kind: str
    clauses: list

    @property
    def passed(self):
        return all(c.passed for c in self.clauses)

    def failing(self):
        return [c.name for c in self.clauses if not c.passed]

    def to_json(self):
        return {"kind": self.kind, "passed": self.passed, "clauses": [c.to_json() for c in self.clauses]}


def _guard(clauses, name, fn):
    try:
        ok, detail = fn()
    except Exception as exc:  # failures are report entries
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    clauses.append(Clause(name, bool(ok), detail))
    return ok


def _fmt_pt(p):
    return f"({p[0]}, {p[1]})"


def _base_clauses(clauses, E, Lo, cubic_kind, hints):
    state = {}

    def c1():
        an = cubic_analysis(E, hints)
        state["cubic"] = an
        return an.kind == cubic_kind, f"cubic is {an.kind}"

    def c2():
        tc = tangency_classify(Lo, E, hints)
        state["p"] = tc.points
        ok = tc.kind == "transversal" and len(tc.points) == 3
        return ok, f"{tc.kind}; p = {[_fmt_pt(p) for p in tc.points]}"

    _guard(clauses, "(i) cubic type", c1)
    _guard(clauses, "(ii) L_o transversal to E", c2)
    return state


def _on_curve(L, p):
    return _curve(L)(p[0], p[1]).is_zero()


def _concurrent(lines):
    m = [list(line_coeffs(L)) for L in lines]
    return det3(m).is_zero()


def verify_combinatorics(kind, curves, hints=()):
    """Clause-by-clause check of a named combinatorics.

    curves: 1a/1b -> [E, L_o, L_1, L_2, L_3]; 2 -> [E, L_o, C, L];
    3a/3b -> [E, L_o, C_1, C_2, C_3].
    """
    curves = [_curve(c) for c in curves]
    clauses = []
    E, Lo = curves[0], curves[1]
    if kind in ("1a", "1b"):
        st = _base_clauses(clauses, E, Lo, "smooth" if kind == "1a" else "nodal", hints)
        lines = curves[2:5]
        ps = st.get("p", [])
        sing = st["cubic"].singular_points if "cubic" in st else []
        hit = []

        def c3():
            details = []
            ok = True
            for k, L in enumerate(lines, 1):
                through = [j for j, p in enumerate(ps) if _on_curve(L, p)]
                tc = tangency_classify(L, E, hints)
                good = (len(through) == 1 and tc.kind == "tangent" and tc.point is not None
                        and tc.point != ps[through[0]] and tc.point not in sing)
                if through:
                    hit.append(through[0])
                details.append(f"L{k}: through p{[j + 1 for j in through]}, {tc.kind} at "
                               f"{_fmt_pt(tc.point) if tc.point else None}")
                ok = ok and good
            ok = ok and sorted(hit) == [0, 1, 2]
            return ok, "; ".join(details)

        _guard(clauses, "(iii) L_i through p_i, tangent to E elsewhere", c3)
        _guard(clauses, "(iv) L_1, L_2, L_3 not concurrent",
               lambda: (not _concurrent(lines), "line determinant"))
    elif kind == "2":
        st = _base_clauses(clauses, E, Lo, "nodal", hints)
        C, L = curves[2], curves[3]
        ps = st.get("p", [])

        def c3():
            node = st["cubic"].node
            through = [j for j, p in enumerate(ps) if _on_curve(L, p)]
            ok = node is not None and _on_curve(L, node) and len(through) == 1
            return ok, f"node {_fmt_pt(node) if node else None}; through p{[j + 1 for j in through]}"

        def c4():
            Q = PlaneCurve(E.poly * Lo.poly)
            proof = verify_contact(C, Q)
            tr = transversal(C, L)
            return tr, f"contact points {proof.contact_count}; transversal to L: {tr}"

        _guard(clauses, "(iii) L joins the node and some p_i", c3)
        _guard(clauses, "(iv) C contact conic to E + L_o, transversal to L", c4)
    elif kind in ("3a", "3b"):
        _base_clauses(clauses, E, Lo, "smooth" if kind == "3a" else "nodal", hints)
        conics = curves[2:5]
        Q = PlaneCurve(E.poly * Lo.poly)

        def c3():
            counts = [verify_contact(C, Q).contact_count for C in conics]
            return all(n == 4 for n in counts), f"contact points {counts}"

        def c4():
            pairs = [(0, 1), (0, 2), (1, 2)]
            tv = [transversal(conics[i], conics[j]) for i, j in pairs]
            empty = common_point_free(*conics)
            return all(tv) and empty, f"pairwise transversal {tv}; triple intersection empty: {empty}"

        _guard(clauses, "(iii) C_i contact conics tangent at four points", c3)
        _guard(clauses, "(iv) C_i pairwise transversal, no common point", c4)
    else:
        raise ValueError(f"unknown combinatorics kind {kind!r}")
    return CombinatoricsReport(kind, clauses)
