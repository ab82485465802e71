"""mwlat: command-line front end.

Exit status: 0 when every check passes, 1 on a verification failure,
2 on bad input (unreadable spec, unknown names, malformed expressions).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from .errors import MwlatError, SpecError
from .fibers import classify_fibers, shioda_tate_tally, sum_ord_delta
from .mwlattice import HeightContext, decompose, gram, height
from .planegeom import verify_combinatorics
from .reproduce import Runner
from .specfile import EXAMPLES, load_example, load_spec_file

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


@dataclass
class OutputConfig:
    fmt: str = "json"
    indent: int = 2


def dump(obj, cfg):
    """Deterministic JSON: sorted keys, fixed separators."""
    return json.dumps(obj, indent=cfg.indent, sort_keys=True, ensure_ascii=False)


def open_spec(ref):
    """A spec path, or the id of a bundled example."""
    if ref in EXAMPLES:
        return load_example(ref)
    if not Path(ref).exists():
        raise SpecError(f"no such spec file or example id: {ref!r}")
    return load_spec_file(ref)


def _names(text):
    return [n.strip() for n in text.split(",") if n.strip()] if text else []


def _curve_arg(text):
    """"Cj@b=1" -> {"name": "Cj", "params": {"b": "1"}}."""
    if "@" not in text:
        return text
    name, rest = text.split("@", 1)
    params = {}
    for item in rest.split(";"):
        key, _, val = item.partition("=")
        if not val:
            raise SpecError(f"bad curve parameter {item!r} in {text!r}")
        params[key.strip()] = val.strip()
    return {"name": name.strip(), "params": params}


def _table(rows, headers):
    widths = [max(len(str(r[k])) for r in rows + [headers]) for k in range(len(headers))]
    line = lambda r: "  ".join(str(v).ljust(w) for v, w in zip(r, widths))
    return "\n".join([line(headers), line(["-" * w for w in widths])] + [line(r) for r in rows])


# commands -----------------------------------------------------------------

def cmd_fibers(args, cfg):
    spec = open_spec(args.spec)
    reps = classify_fibers(spec.curve, spec.hints)
    if not reps:
        raise SpecError("the model has no singular fibers; not an elliptic surface with a section of this kind")
    out = {"fibers": [r.to_json() for r in reps], "shioda_tate_tally": shioda_tate_tally(reps),
           "sum_ord_delta": sum_ord_delta(reps)}
    if cfg.fmt == "table":
        rows = [[r.label, r.kodaira_type, r.m_v, r.ord_delta, r.ord_c4, r.ord_c6,
                 "" if r.sing_x is None else str(r.sing_x)] for r in reps]
        text = _table(rows, ["place", "type", "m_v", "ord_delta", "ord_c4", "ord_c6", "sing_x"])
        text += f"\nsum(m_v - 1) = {out['shioda_tate_tally']}, sum ord(delta) = {out['sum_ord_delta']}"
        return text, EXIT_OK
    return dump(out, cfg), EXIT_OK


def cmd_mw(args, cfg):
    spec = open_spec(args.spec)
    runner = Runner(spec)
    ctx = HeightContext.build(spec.curve, spec.hints, runner.overrides())
    names = _names(args.basis)
    if not names:
        raise SpecError("--basis needs at least one point name")
    basis = [runner.pt(n) for n in names]
    G = gram(ctx, basis)
    out = {"basis": names, "gram": G.to_json(),
           "heights": {n: str(height(ctx, P)) for n, P in zip(names, basis)},
           "decompositions": {}}
    status = EXIT_OK
    for t in _names(args.targets):
        try:
            coeffs, rest = decompose(ctx, basis, G, runner.pt(t))
            out["decompositions"][t] = {"coeffs": coeffs, "torsion": runner.torsion_name(rest)}
        except MwlatError as exc:
            out["decompositions"][t] = {"error": exc.to_json()}
            status = EXIT_FAIL
    if cfg.fmt == "table":
        rows = [[n] + list(r) for n, r in zip(names, G.to_json())]
        text = _table(rows, [""] + names)
        for t, d in out["decompositions"].items():
            text += f"\n{t}: {d}"
        return text, status
    return dump(out, cfg), status


def cmd_conic(args, cfg):
    spec = open_spec(args.spec)
    from .planegeom import contact_conic

    P = Runner(spec).pt(args.point)
    extra = {"b": spec.element(args.b)} if args.b is not None else {}
    r = spec.poly_t(args.r, extra)
    cert = contact_conic(spec.curve, spec.transform, P, r, quartic=spec.quartic,
                         certify=not args.no_certify)
    out = cert.to_json()
    if cfg.fmt == "table":
        text = f"conic: {cert.conic.poly} = 0\nwitness: {cert.factor_witness}"
        if cert.contact_proof:
            text += f"\ncontact parameters: {cert.contact_proof.contact_count}"
        return text, EXIT_OK
    return dump(out, cfg), EXIT_OK


def cmd_verify(args, cfg):
    spec = open_spec(args.spec)
    if args.curves:
        sets = [[_curve_arg(c) for c in _names(args.curves)]]
    else:
        sets = [rec["curves"] for rec in spec.checks
                if rec.get("check") == "combinatorics" and rec.get("kind") == args.kind]
        if not sets:
            raise SpecError(f"spec lists no curve sets of kind {args.kind}; pass --curves")
    reports = []
    for curves in sets:
        rep = verify_combinatorics(args.kind, [spec.curve_ref(c) for c in curves], spec.hints)
        reports.append(rep)
    ok = all(r.passed for r in reports)
    if cfg.fmt == "table":
        lines = []
        for r in reports:
            lines += [f"{'PASS' if c.passed else 'FAIL'}  {c.name}: {c.detail}" for c in r.clauses]
        return "\n".join(lines), EXIT_OK if ok else EXIT_FAIL
    return dump({"passed": ok, "reports": [r.to_json() for r in reports]}, cfg), EXIT_OK if ok else EXIT_FAIL


def cmd_reproduce(args, cfg):
    ids = sorted(EXAMPLES) if args.example == "all" else [args.example]
    if args.example != "all" and args.example not in EXAMPLES:
        raise SpecError(f"unknown example {args.example!r}; choose from {sorted(EXAMPLES)} or 'all'")
    only = set(_names(args.only)) or None
    reports = [Runner(load_example(i)).run_all(only) for i in ids]
    ok = all(r.passed for r in reports)
    if cfg.fmt == "table":
        lines = []
        for rep in reports:
            for r in rep.results:
                lines.append(f"{'PASS' if r.passed else 'FAIL'}  {rep.example:5} {r.check:16} {r.name}: {r.detail}")
            lines.append(f"{rep.example}: {'pass' if rep.passed else 'FAIL'} "
                         f"({len(rep.results) - len(rep.failing())}/{len(rep.results)})")
        return "\n".join(lines), EXIT_OK if ok else EXIT_FAIL
    if not args.verbose:
        payload = [{"example": r.example, "passed": r.passed,
                    "results": [{k: v for k, v in x.to_json().items() if k != "data"} for x in r.results]}
                   for r in reports]
    else:
        payload = [r.to_json() for r in reports]
    return dump(payload[0] if len(payload) == 1 else payload, cfg), EXIT_OK if ok else EXIT_FAIL


def build_parser():
    p = argparse.ArgumentParser(prog="mwlat", description="Mordell-Weil lattices of rational elliptic surfaces")
    p.add_argument("--format", choices=["json", "table"], default="json")
    sub = p.add_subparsers(dest="command", required=True)

    f = sub.add_parser("fibers", help="classify singular fibers")
    f.add_argument("spec")
    f.set_defaults(func=cmd_fibers)

    m = sub.add_parser("mw", help="Gram matrix, heights and decompositions")
    m.add_argument("spec")
    m.add_argument("--basis", required=True, help="comma-separated point names")
    m.add_argument("--targets", default="", help="comma-separated point expressions")
    m.set_defaults(func=cmd_mw)

    c = sub.add_parser("conic", help="contact conic l_P construction and certificate")
    c.add_argument("spec")
    c.add_argument("--point", required=True)
    c.add_argument("--r", required=True, help="polynomial in t; may use b")
    c.add_argument("--b", default=None)
    c.add_argument("--no-certify", action="store_true")
    c.set_defaults(func=cmd_conic)

    v = sub.add_parser("verify", help="check a combinatorics clause by clause")
    v.add_argument("spec")
    v.add_argument("--kind", required=True, choices=["1a", "1b", "2", "3a", "3b"])
    v.add_argument("--curves", default="", help="comma-separated curve names, e.g. E,Lo,Cj@b=1,L1")
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("reproduce", help="run the bundled example checks")
    r.add_argument("example", help=f"one of {sorted(EXAMPLES)} or 'all'")
    r.add_argument("--only", default="", help="comma-separated check kinds")
    r.add_argument("--verbose", action="store_true", help="include certificates and raw data")
    r.set_defaults(func=cmd_reproduce)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = OutputConfig(fmt=args.format)
    try:
        text, status = args.func(args, cfg)
    except MwlatError as exc:
        print(json.dumps({"error": exc.to_json()}, sort_keys=True))
        return EXIT_INPUT if exc.input_error else EXIT_FAIL
    print(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
