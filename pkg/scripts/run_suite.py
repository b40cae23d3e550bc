#!/usr/bin/env python3
"""Run the theorem suite and print per-theorem counts plus every Fail.

    python scripts/run_suite.py                 # default corpus
    python scripts/run_suite.py --nmax 10 -o r.json
"""

import argparse
import json
import sys

from lap2.harness import THEOREMS, SuiteConfig, run_suite


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--nmax", type=int)
    ap.add_argument("--theorem", action="append", choices=THEOREMS)
    ap.add_argument("--workers", type=int)
    ap.add_argument("--show-fails", type=int, default=3, help="fails to print per theorem")
    ap.add_argument("-o", "--output")
    args = ap.parse_args()

    cfg = SuiteConfig(workers=args.workers)
    if args.theorem:
        cfg.theorems = tuple(args.theorem)
    if args.nmax:
        cfg = cfg.capped(args.nmax)
    rep = run_suite(cfg, args.output)

    for t, c in rep["summary"].items():
        print(f"{t:6} pass {c['pass']:7}  fail {c['fail']:6}  n/a {c['inapplicable']:7}")
    print("observations:", json.dumps(rep["observations"], sort_keys=True))
    shown: dict[str, int] = {}
    for r in rep["results"]:
        if r["verdict"] != "Fail" or shown.get(r["theorem"], 0) >= args.show_fails:
            continue
        shown[r["theorem"]] = shown.get(r["theorem"], 0) + 1
        inst = r["instance"]
        print(f"\n{r['theorem']} Fail: {json.dumps(inst, sort_keys=True)}")
    print(f"\n{rep['_elapsed_s']:.1f}s, exit status {rep['exit_status']}")
    return rep["exit_status"]


if __name__ == "__main__":
    sys.exit(main())
