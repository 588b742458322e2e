"""Run every built-in check and write the JSON report.

Usage: python scripts/verify_paper.py [--out report.json] [--lambda-grid SPEC] [--skip-suites]
"""

import argparse
import json
import sys
import time

from tropmech.counterexamples import parse_lambda_grid
from tropmech.reproduce import verify_paper


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out", default="verify_report.json")
    parser.add_argument("--lambda-grid", default="default")
    parser.add_argument("--skip-suites", action="store_true")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()
    start = time.perf_counter()
    report = verify_paper(parse_lambda_grid(args.lambda_grid), seed=args.seed,
                          suites=not args.skip_suites)
    elapsed = time.perf_counter() - start
    with open(args.out, "w") as fh:
        json.dump(report, fh, indent=2)
    for check in report["checks"]:
        print(f"{check['status']:4}  {check['id']}")
    s = report["summary"]
    print(f"{s['passed']}/{s['checks']} passed in {elapsed:.1f}s; report written to {args.out}")
    return 0 if not s["failed"] else 1


if __name__ == "__main__":
    sys.exit(main())
