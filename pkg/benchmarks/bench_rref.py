"""Time the Cython and pure-Python echelon backends on the same inputs.

Run with ``python benchmarks/bench_rref.py [--sizes 20 40 80] [--repeat 5]``.
Both backends must agree on every input; the script exits nonzero otherwise.
"""
from __future__ import annotations

import argparse
import random
import sys
import timeit
from fractions import Fraction

from forge import _pykernel

try:
    from forge import _ckernel
except ImportError:
    _ckernel = None


def random_rows(rng, n, p, density=0.5):
    bound = p if p else 7
    rows = []
    for _ in range(n):
        row = [rng.randrange(bound) if rng.random() < density else 0 for _ in range(n)]
        if not p:
            row = [Fraction(x, rng.randrange(1, 4)) if x else 0 for x in row]
        rows.append(row)
    return rows


def run_case(rows, n, p):
    if p:
        return (lambda mod: mod.rref_modp(rows, n, p))
    return (lambda mod: mod.rref_q(rows, n))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[16, 32, 64])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args(argv)
    if _ckernel is None:
        print("compiled backend not built; only timing the pure-Python path")
    rng = random.Random(args.seed)
    print(f"{'field':>6} {'n':>4} {'python ms':>10} {'cython ms':>10} {'speedup':>8}")
    for p in (0, 2, 3, 101):
        for n in args.sizes:
            rows = random_rows(rng, n, p)
            case = run_case(rows, n, p)
            py = min(timeit.repeat(lambda: case(_pykernel), number=1, repeat=args.repeat))
            if _ckernel is None:
                print(f"{p or 'Q':>6} {n:>4} {py * 1e3:>10.2f} {'-':>10} {'-':>8}")
                continue
            if case(_ckernel) != case(_pykernel):
                print(f"backends disagree for field {p or 'Q'} n={n}", file=sys.stderr)
                return 1
            cy = min(timeit.repeat(lambda: case(_ckernel), number=1, repeat=args.repeat))
            print(f"{p or 'Q':>6} {n:>4} {py * 1e3:>10.2f} {cy * 1e3:>10.2f} {py / cy:>7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
