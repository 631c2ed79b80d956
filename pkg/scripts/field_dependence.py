#!/usr/bin/env python3
"""Supersolvability of r3 as the field varies.

r3 is triangulable over every field but supersolvable only where -1 is a
square.  Prints one row per field with the witness polynomial when the
adjoint does not split.
"""

import argparse

from leibkit.catalog import catalog_build
from leibkit.decide import NonSplitting, is_supersolvable, is_triangulable
from leibkit.exactfield import FieldSpec, GF, Q, is_prime


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-prime", type=int, default=30)
    args = ap.parse_args(argv)
    fields = [Q] + [GF(p) for p in range(2, args.max_prime + 1) if is_prime(p)]
    print(f"{'field':>7}  triangulable  supersolvable  p mod 4  witness")
    for F in fields:
        A = catalog_build("r3", F)
        sup, data = is_supersolvable(A)
        wit = data.remainder.format() if isinstance(data, NonSplitting) else ""
        mod = "-" if F.p == 0 else str(F.p % 4)
        print(f"{str(F):>7}  {str(is_triangulable(A)[0]):>12}  {str(sup):>13}  {mod:>7}  {wit}")


if __name__ == "__main__":
    main()
