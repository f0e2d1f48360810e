#!/usr/bin/env python3
"""Invert the constant-one function on a divisor window and time it.

The convolution inverse of the all-ones function is the Moebius
function; this script solves for it exactly up to a bound, spot-checks
a handful of values, and reports the runtime split between enumeration,
decomposition tables and the inversion recursion.
"""

import argparse
import time

import dirconv as dc


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=10000, help="window bound")
    ap.add_argument("--show", type=int, default=30, help="values to print")
    args = ap.parse_args()

    t0 = time.perf_counter()
    enum = dc.enumerate_semigroup(dc.OrdinaryDirichlet(1), size_bound=args.n)
    t1 = time.perf_counter()
    pairs = sum(len(p) for p in enum.decomp)
    t2 = time.perf_counter()
    mu = dc.invert(dc.one(enum))
    t3 = time.perf_counter()

    print(f"window n <= {args.n}: {len(enum)} elements, {pairs} divisor pairs")
    print(f"enumerate {t1 - t0:.3f} s | decomposition tables {t2 - t1:.3f} s "
          f"| exact inversion {t3 - t2:.3f} s")
    row = [int(mu.values[i]) for i in range(min(args.show, len(enum)))]
    print(f"mu(1..{len(row)}) = {row}")

    squarefull = sum(1 for v in mu.values if v == 0)
    mertens = sum(int(v) for v in mu.values)
    print(f"zeros (non-squarefree): {squarefull}, "
          f"running sum at {args.n}: {mertens}")


if __name__ == "__main__":
    main()
