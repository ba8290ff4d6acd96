#!/usr/bin/env python3
"""Exhaustive fixed-point localization sweep with timing.

Checks lhs = rhs for every weight tuple up to the given length, every
monomial of admissible degree, and every nonzero evaluation residue.  The
case count grows like p^L * L^2, so lengths much beyond 6 get slow.
"""

import argparse
import time

from cobordlab.equivariant import localization_sweep_violations


def case_count(p, max_len):
    total = 0
    for length in range(1, max_len + 1):
        n = length - 1
        total += p**length * ((n + 1) * (n + 2) // 2) * (p - 1)
    return total


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("-p", "--prime", type=int, default=2)
    ap.add_argument("-L", "--max-len", type=int, default=5)
    args = ap.parse_args()

    t0 = time.perf_counter()
    bad = localization_sweep_violations(args.prime, args.max_len)
    dt = time.perf_counter() - t0
    total = case_count(args.prime, args.max_len)
    print(f"p={args.prime} lengths<={args.max_len}: {total} cases in {dt:.2f}s, {len(bad)} violations")
    for weights, y, r, lhs, rhs in bad[:20]:
        print(f"  weights={weights} y={y} r={r}: lhs={lhs} rhs={rhs}")
    if bad:
        raise SystemExit(1)


if __name__ == "__main__":
    main()
