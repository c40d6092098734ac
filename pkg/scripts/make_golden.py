"""Regenerate the classifier golden corpus under tests/golden.

Each model NAME gets three files: NAME.model.json (the input payload),
NAME.txt and NAME.json (the text and JSON reports of ``bundle classify``).

    python3 scripts/make_golden.py [--out DIR] [--check]
"""

from __future__ import annotations

import argparse
import io
import sys
from pathlib import Path

from conicbundles import serialize as ser
from conicbundles.cli import run
from conicbundles.divisor import Divisor
from conicbundles.field_curve import INFINITY, EllipticCurve, find_torsion
from conicbundles.funcfield import FunctionElement
from conicbundles.pgl2 import klein_four_extend, sigma
from conicbundles.surfaces import ConicBundleModel, SurfaceModel

ROOT = Path(__file__).resolve().parent.parent


def corpus() -> dict[str, object]:
    e5 = EllipticCurve(5, -1, 0)
    e13 = EllipticCurve(13, 1, 0)
    O = INFINITY
    p1 = find_torsion(e5, 4)
    delta = [O, p1, e5.mul(2, p1), e5.mul(3, p1)]
    p2 = delta[2]
    pts = lambda e, *P: Divisor.of_points(e, P)  # noqa: E731
    D_ex = pts(e5, O, p1)
    q = next(Q for Q in e5.points if Q not in delta)

    # KleinFour bundle: sigma_{x - x0} and its Klein partner over F_5
    P0 = next(Q for Q in e5.points if not Q.is_infinity and Q.y)
    f = FunctionElement.x(e5) - P0.x
    klein = (sigma(f), klein_four_extend(f))

    Q13 = next(Q for Q in e13.points if not Q.is_infinity and e13.mul(2, Q) != O)
    D13 = pts(e13, Q13) - pts(e13, O)

    return {
        "01_trivial": SurfaceModel.trivial(e5),
        "02_example_4torsion": ConicBundleModel(SurfaceModel.decomposable(D_ex), (), tuple(delta)),
        "03_exceptional_no_swap": ConicBundleModel(SurfaceModel.decomposable(D_ex), (), (O, p1, p2, q)),
        "04_exceptional_n1": ConicBundleModel(SurfaceModel.decomposable(pts(e5, p1) - pts(e5, O)), (O,), (p2,)),
        "05_klein_four_cb": ConicBundleModel(SurfaceModel.trivial(e5), (P0,), (e5.neg(P0),), klein),
        "06_atiyah_a0": SurfaceModel("AtiyahA0", e5),
        "07_atiyah_a1": SurfaceModel("AtiyahA1", e5),
        "08_deg0_2d_principal": SurfaceModel.decomposable(pts(e5, p2) - pts(e5, O)),
        "09_deg0_2d_not_principal": SurfaceModel.decomposable(pts(e5, p1) - pts(e5, O)),
        "10_deg_nonzero": SurfaceModel.decomposable(D_ex),
        "11_genus2_2d_not_principal": SurfaceModel("Decomposable", genus=2, degree=0, two_d_principal=False),
        "12_genus2_2d_principal": SurfaceModel("Decomposable", genus=2, degree=0, two_d_principal=True),
        "13_conic_not_exceptional": ConicBundleModel(SurfaceModel.trivial(e5), (p1, p2), ()),
        "14_d_principal": SurfaceModel.decomposable(pts(e5, p1, delta[3]) - 2 * pts(e5, O)),
        "15_f13_exceptional": ConicBundleModel(SurfaceModel.decomposable(D13), (O,), (e13.mul(2, Q13),)),
        "16_trivial_genus3": SurfaceModel.trivial(genus=3),
    }


def report(model_path: Path, as_json: bool) -> str:
    out = io.StringIO()
    argv = ["bundle", "classify", "--in", str(model_path)] + (["--json"] if as_json else [])
    code = run(argv, out)
    if code != 0:
        raise SystemExit(f"{model_path.name}: exit {code}\n{out.getvalue()}")
    return out.getvalue()


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=ROOT / "tests" / "golden")
    ap.add_argument("--check", action="store_true", help="compare instead of writing")
    args = ap.parse_args(argv)
    args.out.mkdir(parents=True, exist_ok=True)
    stale = []
    for name, model in corpus().items():
        mpath = args.out / f"{name}.model.json"
        payload = ser.dumps(model) + "\n"
        if args.check:
            if mpath.read_text(encoding="utf-8") != payload:
                stale.append(mpath.name)
                continue
        else:
            mpath.write_text(payload, encoding="utf-8")
        for suffix, as_json in ((".txt", False), (".json", True)):
            path = args.out / f"{name}{suffix}"
            text = report(mpath, as_json)
            if args.check:
                if path.read_text(encoding="utf-8") != text:
                    stale.append(path.name)
            else:
                path.write_text(text, encoding="utf-8")
    if stale:
        print("stale:", ", ".join(stale))
        return 1
    print(("checked" if args.check else "wrote"), len(corpus()), "models in", args.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
