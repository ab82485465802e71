"""Find the parameters b at which a contact-conic family degenerates.

The determinant of the conic's 3x3 matrix is a polynomial in b of degree
at most 6; it is interpolated exactly from 7 sample values and its roots
are searched in the coefficient tower.

    python3 scripts/scan_degenerate_b.py 5.2 Cj
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass

from mwlat.funcfield import Poly, roots_in_tower
from mwlat.planegeom import conic_matrix, contact_quotient, det3
from mwlat.specfile import load_example, load_spec_file

DEGREE = 6


@dataclass
class Config:
    spec: str
    curve: str
    samples: int = DEGREE + 1


def determinant_at(spec, rec, b):
    r = spec.poly_t(rec["r"], {"b": b})
    g, _ = contact_quotient(spec.curve, spec.point(rec["conic_of"]), r)
    return det3(conic_matrix(g)) if g.total_degree == 2 else None


def interpolate(tower, xs, ys):
    """Lagrange interpolation over the tower."""
    acc = Poly(tower, [], "b")
    for i, xi in enumerate(xs):
        term = Poly.const(tower, ys[i], "b")
        for j, xj in enumerate(xs):
            if j != i:
                inv = (xi - xj).inverse()
                term = term * Poly(tower, [-xj * inv, inv], "b")
        acc = acc + term
    return acc


def scan(cfg):
    spec = load_example(cfg.spec) if not cfg.spec.endswith(".json") else load_spec_file(cfg.spec)
    rec = spec.raw.get("curves", {}).get(cfg.curve)
    if not isinstance(rec, dict) or "conic_of" not in rec:
        raise SystemExit(f"{cfg.curve} is not a contact-conic family in {cfg.spec}")
    tw = spec.tower
    xs, ys = [], []
    k = 0
    while len(xs) < cfg.samples:
        b = tw(k)
        d = determinant_at(spec, rec, b)
        if d is None:
            raise SystemExit(f"b = {k}: the quotient is not a conic; check the slope of r")
        xs.append(b)
        ys.append(d)
        k += 1
    det_b = interpolate(tw, xs, ys)
    roots, unresolved = roots_in_tower(det_b, spec.hints)
    return det_b, roots, unresolved


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("spec", help="example id or spec path")
    p.add_argument("curve", help="name of a conic_of curve record")
    a = p.parse_args()
    det_b, roots, unresolved = scan(Config(a.spec, a.curve))
    print(f"det(b) = {det_b}")
    for b, m in roots:
        print(f"degenerate at b = {b}  (multiplicity {m})")
    for f, m in unresolved:
        print(f"degenerate at roots of {f}  (multiplicity {m}, outside the tower)")


if __name__ == "__main__":
    main()
