#!/usr/bin/env python3
"""Exhaustive and sampled 2-generated subalgebra audits.

Scans every pair for weylheis(p) over GF(p) (p = 2 by default) and the
small solvable catalog entries, and runs the sampled audit for sl2 over Q.
Reports witness counts and the number of distinct generated subalgebras.
"""

import argparse
import time

from leibkit.catalog import catalog_build
from leibkit.exactfield import GF, Q
from leibkit.recognize import audit_two_recognizability


def row(label, A, r, dt):
    w = r.witness
    fmt = A.field.format
    first = "-" if w is None else f"#{w.index} x=({', '.join(fmt(A.field(c)) for c in w.x)})"
    print(f"{label:<18} {r.mode:<10} {r.pairs_checked:>7}/{r.pairs_total:<7} witnesses={r.witness_count!s:<5} "
          f"subalgebras={r.distinct_subalgebras:<4} theorem5={r.theorem5:<22} corollary6={r.corollary6:<22} "
          f"first={first} ({dt:.2f}s)")


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args(argv)
    jobs = [("weylheis(2)", GF(2)), ("heis3", GF(3)), ("r3", GF(3)), ("lie2", GF(5)), ("sl2", GF(3))]
    for name, F in jobs:
        A = catalog_build(name, F)
        t = time.perf_counter()
        r = audit_two_recognizability(A, "exhaustive", stop_at_first=False, workers=args.workers)
        row(f"{name}/{F}", A, r, time.perf_counter() - t)
    A = catalog_build("sl2", Q)
    t = time.perf_counter()
    r = audit_two_recognizability(A, "sampled", seed=args.seed, stop_at_first=False)
    row("sl2/Q", A, r, time.perf_counter() - t)


if __name__ == "__main__":
    main()
