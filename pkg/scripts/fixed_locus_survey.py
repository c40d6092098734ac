"""Ramification counts of fixed_locus over random non-square functions.

Tallies how many NonSquare inputs give a double cover with no rational
ramification (every valuation even), next to the parity check.

    python3 scripts/fixed_locus_survey.py [--p 13 --a 1 --b 0] [--n 200] [--seed 0]
"""

from __future__ import annotations

import argparse
import random
import sys
from collections import Counter

from conicbundles.field_curve import EllipticCurve
from conicbundles.funcfield import is_square_class, random_function
from conicbundles.pgl2 import fixed_locus


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--p", type=int, default=13)
    ap.add_argument("--a", type=int, default=1)
    ap.add_argument("--b", type=int, default=0)
    ap.add_argument("--n", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    e = EllipticCurve(args.p, args.a, args.b)
    rng = random.Random(args.seed)
    counts: Counter[int] = Counter()
    while sum(counts.values()) < args.n:
        f = random_function(e, rng)
        cls = is_square_class(f)
        if cls.is_square:
            continue
        counts[len(fixed_locus(f).ramification_points)] += 1
    print(f"{e!r}: {args.n} non-square functions")
    print("ramified points  count")
    for k in sorted(counts):
        print(f"{k:>15}  {counts[k]}")
    odd = sum(v for k, v in counts.items() if k % 2)
    print(f"odd counts: {odd}; unramified (0 points): {counts[0]}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
