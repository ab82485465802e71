"""Run every bundled example and write one JSON report per example.

    python3 scripts/reproduce_all.py --out reports/
"""

from __future__ import annotations

import argparse
import json
import time
from dataclasses import dataclass
from pathlib import Path

from mwlat.reproduce import Runner
from mwlat.specfile import EXAMPLES, load_example


@dataclass
class Config:
    out: Path = Path("reports")
    examples: tuple = tuple(sorted(EXAMPLES))
    verbose: bool = False


def run(cfg):
    cfg.out.mkdir(parents=True, exist_ok=True)
    ok = True
    for ex in cfg.examples:
        start = time.perf_counter()
        report = Runner(load_example(ex)).run_all()
        elapsed = time.perf_counter() - start
        path = cfg.out / f"{ex.replace('.', '_')}.json"
        path.write_text(json.dumps(report.to_json(), indent=2, sort_keys=True) + "\n")
        bad = report.failing()
        print(f"{ex:5}  {len(report.results) - len(bad):3d}/{len(report.results):<3d} passed"
              f"  {elapsed:5.1f}s  -> {path}")
        for r in bad if cfg.verbose else bad[:5]:
            print(f"       FAIL {r.check} {r.name}: {r.detail}")
        ok &= report.passed
    return ok


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--out", type=Path, default=Config.out)
    p.add_argument("--only", nargs="*", choices=sorted(EXAMPLES), help="subset of example ids")
    p.add_argument("--verbose", action="store_true")
    a = p.parse_args()
    cfg = Config(a.out, tuple(a.only) if a.only else Config.examples, a.verbose)
    raise SystemExit(0 if run(cfg) else 1)


if __name__ == "__main__":
    main()
