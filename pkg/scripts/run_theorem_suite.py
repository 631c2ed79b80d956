#!/usr/bin/env python3
"""Run every acceptance group (and the extra invariant groups).

Exits nonzero on any failure; reproduction files land in --repro-dir.
"""

import argparse
import sys

from leibkit.harness import SuiteConfig, run_theorem_suite


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--scrambles", type=int, default=50)
    ap.add_argument("--tamperings", type=int, default=100)
    ap.add_argument("--workers", type=int, default=2)
    ap.add_argument("--repro-dir", default="repro")
    ap.add_argument("--group", action="append", help="run only the named group(s)")
    ap.add_argument("--no-extra", action="store_true", help="acceptance groups only")
    args = ap.parse_args(argv)
    cfg = SuiteConfig(scrambles=args.scrambles, tamperings=args.tamperings,
                      workers=args.workers, repro_dir=args.repro_dir)
    ok, results = run_theorem_suite(cfg, groups=args.group, extra=not args.no_extra)
    for r in results:
        print(r.line())
        for path in r.repro_files:
            print(f"    reproduction: {path}")
    print("all groups passed" if ok else "FAILURES")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
