"""Curve-spec JSON files: towers, models, points, plane curves and expected data.

A spec is a JSON object with ``"version": 1``.  All numbers are strings.
Expressions use Python arithmetic with ``^`` for powers, over ``t`` (and
``x`` for plane curves), the tower generators and any declared aliases.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .errors import MwlatError, SpecError
from .expr import evaluate, free_names
from .funcfield import BiPoly, Poly, RatFunc
from .numfield import FieldElem, tower_build
from .planegeom import PlaneCurve, weierstrass_from_quartic
from .weierstrass import CurveModel, Point, ec_add, ec_mul, ec_neg, on_curve

EXAMPLES = {"5.1a": "ex5_1a.json", "5.1b": "ex5_1b.json", "5.2": "ex5_2.json", "5.3": "ex5_3.json"}


class _PointExpr:
    """Point wrapper so combos like "P2 - P3 + Ptau" evaluate through expr."""

    def __init__(self, curve, point):
        self.curve, self.point = curve, point

    def __add__(self, other):
        return _PointExpr(self.curve, ec_add(self.curve, self.point, other.point))

    def __sub__(self, other):
        return _PointExpr(self.curve, ec_add(self.curve, self.point, ec_neg(self.curve, other.point)))

    def __neg__(self):
        return _PointExpr(self.curve, ec_neg(self.curve, self.point))

    def __pos__(self):
        return self

    def __rmul__(self, n):
        if not isinstance(n, int):
            raise SpecError("points can only be scaled by integers")
        return _PointExpr(self.curve, ec_mul(self.curve, n, self.point))

    __mul__ = __rmul__


def _ratfunc(tower, v):
    if isinstance(v, RatFunc):
        return v
    if isinstance(v, Poly):
        return RatFunc(v)
    return RatFunc(Poly.const(tower, v))


def _bipoly(tower, v):
    if isinstance(v, BiPoly):
        return v
    if isinstance(v, Poly):
        return BiPoly(tower, {(i, 0): c for i, c in enumerate(v.coeffs)})
    return BiPoly.const(tower, v)


@dataclass
class CurveSpec:
    raw: dict
    tower: object
    names: dict                       # generator and alias values
    curve: CurveModel
    transform: object = None          # ModelTransform when built from a quartic
    quartic: PlaneCurve | None = None
    points: dict = field(default_factory=dict)
    hints: list = field(default_factory=list)
    source: str = ""

    # expression helpers ----------------------------------------------
    def env_t(self, extra=None):
        env = dict(self.names)
        env["t"] = Poly.gen(self.tower)
        env.update(extra or {})
        return env

    def env_tx(self, extra=None):
        env = dict(self.names)
        env["t"] = BiPoly.t(self.tower)
        env["x"] = BiPoly.x(self.tower)
        env.update(extra or {})
        return env

    def element(self, text):
        v = evaluate(str(text), dict(self.names), const=self.tower)
        if not isinstance(v, FieldElem):
            raise SpecError(f"{text!r} is not a constant")
        return v

    def poly_t(self, text, extra=None):
        v = evaluate(str(text), self.env_t(extra), const=self.tower)
        r = _ratfunc(self.tower, v)
        if not r.is_poly():
            raise SpecError(f"{text!r} is not a polynomial in t")
        return r.num

    def ratfunc(self, text, extra=None):
        return _ratfunc(self.tower, evaluate(str(text), self.env_t(extra), const=self.tower))

    def bipoly(self, text, extra=None):
        return _bipoly(self.tower, evaluate(str(text), self.env_tx(extra), const=self.tower))

    def point(self, name):
        try:
            return self.points[name]
        except KeyError:
            raise SpecError(f"unknown point {name!r}") from None

    def point_expr(self, text):
        env = {n: _PointExpr(self.curve, P) for n, P in self.points.items()}
        v = evaluate(text, env)
        if not isinstance(v, _PointExpr):
            raise SpecError(f"{text!r} does not evaluate to a point")
        return v.point

    def plane_curve(self, name, params=None):
        """Instantiate a named plane curve, binding free parameters such as b."""
        curves = self.raw.get("curves", {})
        if name not in curves:
            raise SpecError(f"unknown curve {name!r}")
        rec = curves[name]
        extra = {k: self.element(v) for k, v in (params or {}).items()}
        if isinstance(rec, str):
            rec = {"expr": rec}
        if "expr" in rec:
            missing = free_names(rec["expr"]) - set(self.env_tx(extra))
            if missing:
                raise SpecError(f"curve {name} needs values for {sorted(missing)}")
            return PlaneCurve(self.bipoly(rec["expr"], extra), name)
        if "section_of" in rec:
            from .planegeom import section_image

            return PlaneCurve(section_image(self.transform, self.point(rec["section_of"])).poly, name)
        if "conic_of" in rec:
            cert = self.conic_certificate(name, params)
            return cert.conic
        if "product" in rec:
            poly = BiPoly.const(self.tower, 1)
            for part in rec["product"]:
                poly = poly * self.plane_curve(part, params).poly
            return PlaneCurve(poly, name)
        raise SpecError(f"curve {name!r} has no expr, section_of or product")

    def conic_certificate(self, name, params=None, certify=False):
        """Contact conic of a "conic_of" curve record for the given parameters."""
        from .planegeom import contact_conic

        rec = self.raw.get("curves", {}).get(name)
        if not isinstance(rec, dict) or "conic_of" not in rec:
            raise SpecError(f"curve {name!r} is not a contact-conic record")
        extra = {k: self.element(v) for k, v in (params or {}).items()}
        missing = free_names(rec["r"]) - set(self.env_t(extra))
        if missing:
            raise SpecError(f"curve {name} needs values for {sorted(missing)}")
        r = self.poly_t(rec["r"], extra)
        quartic = self.quartic if certify else None
        cert = contact_conic(self.curve, self.transform, self.point(rec["conic_of"]), r, quartic=quartic)
        cert.conic = PlaneCurve(cert.conic.poly, name)
        return cert

    def curve_ref(self, ref):
        """A curve reference: a name, or {"name": ..., "params": {...}}."""
        if isinstance(ref, str):
            return self.plane_curve(ref)
        return self.plane_curve(ref["name"], ref.get("params"))

    @property
    def checks(self):
        return self.raw.get("checks", [])


def _build_tower(rec):
    gens = []
    for g in rec.get("generators", []):
        try:
            gens.append((g["name"], str(g["radicand"]), g["pin"]))
        except KeyError as exc:
            raise SpecError(f"generator record missing {exc}") from None
    tower = tower_build(gens)
    names = {n: tower.gen(n) for n in tower.names}
    for alias, a in rec.get("aliases", {}).items():
        if alias in names or alias in ("t", "x"):
            raise SpecError(f"alias {alias!r} clashes with an existing name")
        value = evaluate(a["value"], names, const=tower)
        if not isinstance(value, FieldElem):
            raise SpecError(f"alias {alias} must be a constant")
        if "square_of" in a:
            target = evaluate(a["square_of"], names, const=tower)
            if value * value != target:
                raise SpecError(f"alias {alias}: value squared is not {a['square_of']}")
            if a.get("principal", True):
                _check_principal(alias, value, target)
        names[alias] = value
    return tower, names


def _check_principal(alias, value, target):
    import mpmath

    with mpmath.workdps(40):
        v = value.embed(40)
        root = mpmath.sqrt(target.embed(40))
        if abs(v - root) > mpmath.mpf("1e-25") * (1 + abs(root)):
            raise SpecError(f"alias {alias} is not the principal square root of its square")


def load_spec(data, source=""):
    """Parse a spec dict (already JSON-decoded), resolving "extends"."""
    if isinstance(data, (str, Path)):
        return load_spec_file(data)
    if data.get("version") not in (1, "1"):
        raise SpecError("spec must declare version 1")
    base = data.get("extends")
    if base:
        parent = _read_json(_resolve(base, source))
        merged = dict(parent)
        for k, v in data.items():
            if isinstance(v, dict) and isinstance(merged.get(k), dict):
                merged[k] = {**merged[k], **v}
            else:
                merged[k] = v
        merged.pop("extends", None)
        data = merged
    tower, names = _build_tower(data.get("tower", {}))
    spec = CurveSpec(data, tower, names, None, source=source)
    if "quartic" in data:
        q = PlaneCurve(spec.bipoly(data["quartic"]), "Q")
        curve, tr = weierstrass_from_quartic(q, spec.element(data.get("x_scale", "1")))
        spec.curve, spec.transform, spec.quartic = curve, tr, q
    elif "model" in data:
        m = data["model"]
        spec.curve = CurveModel(*(spec.poly_t(m[k]) for k in ("b2", "b3", "b4")), tower=tower)
    else:
        raise SpecError("spec needs a quartic or a model")
    spec.hints = [spec.element(h) for h in data.get("place_hints", [])]
    for name, rec in data.get("points", {}).items():
        spec.points[name] = _load_point(spec, name, rec)
    return spec


def _load_point(spec, name, rec):
    if rec == "O":
        return Point.zero()
    if "combo" in rec:
        P = spec.point_expr(rec["combo"])
        if "x" in rec:
            want = Point(spec.ratfunc(rec["x"]), spec.ratfunc(rec["y"]))
            if want != P:
                raise SpecError(f"point {name}: combination {rec['combo']} does not match the stated coordinates")
        return P
    P = Point(spec.ratfunc(rec["x"]), spec.ratfunc(rec["y"]))
    if not on_curve(spec.curve, P):
        raise SpecError(f"point {name} is not on the curve")
    return P


def _resolve(name, source):
    if name in EXAMPLES.values() or name.endswith(".json") and not Path(name).is_absolute():
        if source:
            cand = Path(source).parent / name
            if cand.exists():
                return cand
        return resources.files("mwlat.data").joinpath(name)
    return Path(name)


def _read_json(path):
    try:
        text = Path(str(path)).read_text(encoding="utf-8") if not hasattr(path, "read_text") else path.read_text(encoding="utf-8")
    except OSError as exc:
        raise SpecError(f"cannot read {path}: {exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def load_spec_file(path):
    data = _read_json(path)
    if not isinstance(data, dict):
        raise SpecError(f"{path}: top level must be an object")
    return load_spec(data, source=str(path))


def load_example(example_id):
    if example_id not in EXAMPLES:
        raise SpecError(f"unknown example {example_id!r}; choose from {sorted(EXAMPLES)}")
    path = resources.files("mwlat.data").joinpath(EXAMPLES[example_id])
    return load_spec(_read_json(path), source=str(path))


def rational(text):
    return Fraction(str(text))


__all__ = ["CurveSpec", "load_spec", "load_spec_file", "load_example", "EXAMPLES", "MwlatError", "rational"]
