"""Command-line interface.

    conicbundles GROUP VERB [--p P --a A --b B] [--json] [--in FILE] ...

Payloads are JSON objects read from --in FILE or stdin. Exit status is 0 on
success, 2 on a domain error (the error class name is printed) and 1 on a
usage error (the grammar is printed).
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from typing import Any

from . import serialize as ser
from .classify import classify_max
from .config import DEFAULT_KLEIN
from .divisor import (
    Divisor,
    group_sum,
    is_linearly_equivalent,
    is_principal,
    translate_divisor,
)
from .errors import DomainError, InvalidModel
from .field_curve import INFINITY, EllipticCurve, find_torsion, hasse_ok
from .funcfield import (
    FunctionElement,
    divisor_of,
    evaluate,
    is_square_class,
    principality_witness,
    random_function,
    random_principal_divisor,
    valuation_at,
)
from .pgl2 import (
    det_class,
    fixed_locus,
    involution_normal_form,
    involutions_conjugate,
    klein_four_extend,
    normalizer_decompose,
    pgl_mul,
    sigma,
)
from .surfaces import (
    ConicBundleModel,
    SurfaceModel,
    aut_c_conic,
    aut_c_ruled,
    elementary_transform_chain,
    is_exceptional,
    klein_four_certificate,
    segre_invariant,
    swap_involution,
)

GRAMMAR = {
    "curve": ["info", "points", "torsion"],
    "divisor": ["sum", "principal", "lineq", "witness", "translate"],
    "func": ["eval", "valuation", "divisor", "square-class"],
    "pgl": ["mul", "det-class", "normalize", "conjugate", "normalizer", "fixed-locus", "klein-extend"],
    "bundle": ["segre", "autc", "exceptional", "swap", "classify"],
    "chain": ["demo"],
    "reproduce": ["example-4torsion"],
}

GRAMMAR_TEXT = "usage:\n" + "\n".join(
    f"  conicbundles {g} {'|'.join(v)}" for g, v in GRAMMAR.items()
) + (
    "\noptions: --p P --a A --b B (curve, default y^2 = x^3 - x over F_5), --json,"
    "\n         --in FILE (payload, else stdin), --seed S, --degree-bound N,"
    "\n         --n N (curve torsion), --steps N --orbit K (chain demo)"
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--p", type=int, default=5)
    common.add_argument("--a", type=int, default=-1)
    common.add_argument("--b", type=int, default=0)
    common.add_argument("--json", action="store_true")
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--degree-bound", type=int, default=DEFAULT_KLEIN.degree_bound)
    common.add_argument("--in", dest="infile", default=None)
    common.add_argument("--n", type=int, default=4)
    common.add_argument("--steps", type=int, default=5)
    common.add_argument("--orbit", type=int, default=1)

    parser = _Parser(prog="conicbundles", add_help=False)
    groups = parser.add_subparsers(dest="group")
    for g, verbs in GRAMMAR.items():
        gp = groups.add_parser(g, add_help=False)
        vs = gp.add_subparsers(dest="verb")
        for v in verbs:
            vs.add_parser(v, parents=[common], add_help=False)
    return parser


# -- payloads --------------------------------------------------------------


class Context:
    def __init__(self, args, stdin=None):
        self.args = args
        self.stdin = stdin if stdin is not None else sys.stdin
        self.curve = EllipticCurve(args.p, args.a, args.b)
        self._payload = None
        self.rng = random.Random(args.seed) if args.seed is not None else None

    def payload(self, required: bool = True) -> dict | None:
        if self._payload is None:
            text = ""
            if self.args.infile:
                with open(self.args.infile, encoding="utf-8") as fh:
                    text = fh.read()
            elif not self.stdin.isatty():
                text = self.stdin.read()
            if not text.strip():
                if required and self.rng is None:
                    raise UsageError("this command needs a JSON payload (--in FILE or stdin)")
                self._payload = {}
            else:
                try:
                    self._payload = json.loads(text)
                except json.JSONDecodeError as exc:
                    raise UsageError(f"payload is not valid JSON: {exc}") from exc
                if "curve" in self._payload:
                    self.curve = ser.curve_from_json(self._payload["curve"])
        return self._payload

    def divisor(self, key: str = "D") -> Divisor:
        data = self.payload()
        if key not in data:
            if self.rng is not None:
                return random_principal_divisor(self.curve, self.rng)
            raise UsageError(f"payload lacks {key!r}")
        return ser.divisor_from_json(self.curve, data[key])

    def function(self, key: str = "f") -> FunctionElement:
        data = self.payload()
        if key not in data:
            if self.rng is not None:
                return random_function(self.curve, self.rng)
            raise UsageError(f"payload lacks {key!r}")
        return ser.function_from_json(self.curve, data[key])

    def point(self, key: str):
        data = self.payload()
        if key not in data:
            if self.rng is not None:
                return self.rng.choice(self.curve.points)
            raise UsageError(f"payload lacks {key!r}")
        return ser.point_from_json(self.curve, data[key])

    def matrix(self, key: str):
        data = self.payload()
        if key not in data:
            raise UsageError(f"payload lacks {key!r}")
        return ser.matrix_from_json(self.curve, data[key])

    def model(self):
        data = self.payload()
        raw = data.get("model", data)
        if "variant" not in raw:
            raise UsageError("payload lacks a model")
        return ser.model_from_json(raw, self.curve)


# -- commands --------------------------------------------------------------


def cmd_curve(ctx: Context, verb: str) -> dict:
    e = ctx.curve
    if verb == "info":
        return {
            "curve": e,
            "discriminant": e.discriminant,
            "j_invariant": e.j_invariant,
            "order": len(e.points),
            "group_structure": list(e.group_structure()),
            "hasse_ok": hasse_ok(e),
        }
    if verb == "points":
        return {"curve": e, "count": len(e.points), "points": list(e.points)}
    P = find_torsion(e, ctx.args.n)
    return {"curve": e, "n": ctx.args.n, "point": "NotFound" if P is None else P}


def cmd_divisor(ctx: Context, verb: str) -> dict:
    if verb == "lineq":
        d1, d2 = ctx.divisor("D1"), ctx.divisor("D2")
        return {"D1": d1, "D2": d2, "equivalent": is_linearly_equivalent(d1, d2)}
    d = ctx.divisor()
    if verb == "sum":
        return {"D": d, "degree": d.degree, "group_sum": group_sum(d)}
    if verb == "principal":
        return {"D": d, "principal": is_principal(d)}
    if verb == "witness":
        f = principality_witness(d)
        return {"D": d, "f": f, "divisor_of_f": divisor_of(f)}
    t = ctx.point("t")
    return {"D": d, "t": t, "translated": translate_divisor(d, t)}


def cmd_func(ctx: Context, verb: str) -> dict:
    f = ctx.function()
    if verb == "eval":
        P = ctx.point("point")
        return {"f": f, "point": P, "value": evaluate(f, P)}
    if verb == "valuation":
        P = ctx.point("point")
        return {"f": f, "point": P, "valuation": valuation_at(f, P)}
    if verb == "divisor":
        return {"f": f, "divisor": divisor_of(f)}
    return {"f": f, "square_class": is_square_class(f)}


def cmd_pgl(ctx: Context, verb: str) -> dict:
    if verb == "mul":
        A, B = ctx.matrix("A"), ctx.matrix("B")
        return {"A": A, "B": B, "product": pgl_mul(A, B)}
    if verb == "det-class":
        A = ctx.matrix("A")
        return {"A": A, "det": A.det(), "det_class": det_class(A)}
    if verb == "normalize":
        A = ctx.matrix("A")
        f, C = involution_normal_form(A)
        return {"A": A, "f": f, "conjugator": C}
    if verb == "conjugate":
        f, g = ctx.function("f"), ctx.function("g")
        r = involutions_conjugate(f, g)
        return {"f": f, "g": g, "conjugate": r.conjugate, "conjugator": r.conjugator, "residual": r.residual}
    f = ctx.function()
    if verb == "normalizer":
        M = ctx.matrix("M")
        return {"M": M, "f": f, "part": normalizer_decompose(M, f)}
    if verb == "fixed-locus":
        return {"f": f, "fixed_locus": fixed_locus(f)}
    tau = klein_four_extend(f, ctx.args.degree_bound)
    check = klein_four_certificate(sigma(f), tau)
    return {"f": f, "sigma": sigma(f), "tau": tau, "certificate": "Valid" if check.valid else check.reason}


def cmd_bundle(ctx: Context, verb: str) -> Any:
    m = ctx.model()
    if verb == "classify":
        return classify_max(m)
    if verb == "segre":
        base = m.base if isinstance(m, ConicBundleModel) else m
        return {"model": m, "segre": segre_invariant(base)}
    if verb == "autc":
        aut = aut_c_conic(m) if isinstance(m, ConicBundleModel) and (m.Z or m.P) else aut_c_ruled(
            m.base if isinstance(m, ConicBundleModel) else m
        )
        return {"model": m, "aut_c": aut}
    if not isinstance(m, ConicBundleModel):
        raise InvalidModel("this command needs a conic bundle (a model with Z and P)")
    if verb == "exceptional":
        exc = is_exceptional(m)
        return {
            "model": m,
            "exceptional": exc.exceptional,
            "n": exc.n,
            "self_intersections": list(m.self_intersections()),
        }
    sw = swap_involution(m)
    return {"model": m, "exists": sw.exists, "f": sw.f, "involution": sw.M}


def cmd_chain(ctx: Context, verb: str) -> dict:
    steps = ctx.args.steps
    if steps < 0 or ctx.args.orbit < 1:
        raise UsageError("--steps must be >= 0 and --orbit >= 1")
    chain = elementary_transform_chain(SurfaceModel.trivial(ctx.curve), [ctx.args.orbit] * steps)
    return {
        "curve": ctx.curve,
        "orbit_sizes": [ctx.args.orbit] * steps,
        "divisors": [m.D for m in chain],
        "segre": [segre_invariant(m) for m in chain],
    }


def reproduce_4torsion(e: EllipticCurve) -> dict:
    p1 = find_torsion(e, 4)
    if p1 is None:
        raise InvalidModel(f"{e} has no rational point of order 4")
    delta = [INFINITY, p1, e.mul(2, p1), e.mul(3, p1)]
    D = Divisor.of_points(e, delta[:2])
    base = SurfaceModel.decomposable(D)
    cb = ConicBundleModel(base, (), tuple(delta))
    sum_delta = Divisor.of_points(e, delta)
    moved = translate_divisor(D, p1)
    r = classify_max(cb)
    return {
        "curve": e,
        "p1": p1,
        "delta": delta,
        "D": D,
        "segre_base": segre_invariant(base),
        "minus_2D_equiv_minus_sum_delta": is_linearly_equivalent(-2 * D, -sum_delta),
        "exceptional_n": is_exceptional(cb).n,
        "f": r.witness.get("f"),
        "divisor_of_f": r.witness.get("divisor_of_f"),
        "involution": r.witness.get("involution"),
        "translate_D_by_p1": moved,
        "translate_equiv_D": is_linearly_equivalent(moved, D),
        "class": r.tag,
        "aut_c": "Gm⋊Z/2" if r.witness.get("aut_c") == "GmSemiZ2" else r.witness.get("aut_c"),
    }


def cmd_reproduce(ctx: Context, verb: str) -> dict:
    return reproduce_4torsion(ctx.curve)


DISPATCH = {
    "curve": cmd_curve,
    "divisor": cmd_divisor,
    "func": cmd_func,
    "pgl": cmd_pgl,
    "bundle": cmd_bundle,
    "chain": cmd_chain,
    "reproduce": cmd_reproduce,
}


# -- rendering -------------------------------------------------------------


def _text_value(v: Any) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_text_value(u) for u in v) + "]"
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}: {_text_value(u)}" for k, u in v.items()) + "}"
    if hasattr(v, "kind") and hasattr(v, "ramification_points"):
        return f"{v.kind} {_text_value(list(v.ramification_points))}"
    if type(v).__name__ == "SquareClass":
        if v.root is not None:
            return f"{v.verdict} (root {v.root!r}, constant {v.root_constant})"
        cert = v.odd_point if v.odd_point is not None else v.half_divisor
        return f"{v.verdict} ({_text_value(cert)})"
    return repr(v) if not isinstance(v, str) else v


def render_text(report: Any) -> str:
    if type(report).__name__ == "MaxClass":
        lines = [f"class: {report.tag}"]
        lines += [f"witness.{k}: {_text_value(v)}" for k, v in report.witness.items() if k != "chain"]
        if "chain" in report.witness:
            for i, m in enumerate(report.witness["chain"]):
                lines.append(f"witness.chain[{i}]: D = {_text_value(m.D if m.D is not None else m.degree)}")
        lines.append("citations: " + ", ".join(report.citations))
        return "\n".join(lines)
    if "segre" in report and "divisors" in report:
        lines = [f"curve: {report['curve']!r}", "step  segre  D"]
        for i, (s, d) in enumerate(zip(report["segre"], report["divisors"])):
            lines.append(f"{i:>4}  {s:>5}  {d!r}")
        return "\n".join(lines)
    if "aut_c" in report and "class" in report:
        keys = [k for k in report if k not in ("class", "aut_c")] + ["class", "aut_c"]
        names = {"aut_c": "Aut_C"}
        return "\n".join(f"{names.get(k, k)}: {_text_value(report[k])}" for k in keys)
    return "\n".join(f"{k}: {_text_value(v)}" for k, v in report.items())


def run(argv: list[str] | None = None, out=None, stdin=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        if not args.group or not getattr(args, "verb", None):
            raise UsageError("missing subcommand")
        try:
            ctx = Context(args, stdin)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        try:
            report = DISPATCH[args.group](ctx, args.verb)
        except DomainError:
            raise
        except (KeyError, TypeError, ValueError) as exc:
            raise UsageError(f"malformed payload: {exc!r}") from exc
    except UsageError as exc:
        print(f"error: {exc}", file=out)
        print(GRAMMAR_TEXT, file=out)
        return 1
    except DomainError as exc:
        print(f"{type(exc).__name__}: {exc}", file=out)
        return 2
    if args.json:
        print(ser.dumps(report), file=out)
    else:
        print(render_text(report), file=out)
    return 0


def main(argv: list[str] | None = None) -> int:
    try:
        sys.stdout.reconfigure(line_buffering=True, encoding="utf-8")
    except AttributeError:
        pass
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
