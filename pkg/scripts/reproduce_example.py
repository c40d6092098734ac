"""Print the 4-torsion exceptional conic bundle report and time it.

    python3 scripts/reproduce_example.py [--p 5 --a -1 --b 0] [--json]
"""

from __future__ import annotations

import argparse
import sys
import time

from conicbundles import serialize as ser
from conicbundles.cli import render_text, reproduce_4torsion
from conicbundles.field_curve import EllipticCurve


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--p", type=int, default=5)
    ap.add_argument("--a", type=int, default=-1)
    ap.add_argument("--b", type=int, default=0)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args(argv)
    t0 = time.perf_counter()
    rep = reproduce_4torsion(EllipticCurve(args.p, args.a, args.b))
    elapsed = time.perf_counter() - t0
    print(ser.dumps(rep) if args.json else render_text(rep))
    print(f"# {elapsed:.3f}s", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
