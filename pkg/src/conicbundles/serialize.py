"""JSON encodings for every value type, and their inverses.

Curve: {"p", "a", "b"}. Point: {"x", "y"} or "O". Divisor: a list of
{"point", "coefficient"}. Function: {"a", "b", "c"} coefficient arrays,
lowest degree first. Matrix: 2x2 nested list of functions. Models carry
"variant", "D", "genus", "asserted" and, for conic bundles, "Z" and "P".
"""

from __future__ import annotations

import json
from typing import Any

from . import poly
from .classify import MaxClass
from .divisor import Divisor
from .errors import InvalidModel
from .field_curve import INFINITY, CurvePoint, EllipticCurve
from .funcfield import FunctionElement, SquareClass
from .pgl2 import FixedLocus, NormalizerPart, PGLMat
from .surfaces import AutCGroup, ConicBundleModel, SurfaceModel


def dumps(obj: Any) -> str:
    """Deterministic rendering: sorted keys, two-space indent."""
    return json.dumps(to_json(obj), sort_keys=True, indent=2, ensure_ascii=False)


# -- encoders --------------------------------------------------------------


def curve_to_json(e: EllipticCurve) -> dict:
    return {"p": e.p, "a": e.a, "b": e.b}


def point_to_json(P: CurvePoint):
    return "O" if P.is_infinity else {"x": P.x, "y": P.y}


def divisor_to_json(d: Divisor) -> list:
    return [{"point": point_to_json(P), "coefficient": n} for P, n in d.terms]


def function_to_json(f: FunctionElement) -> dict:
    return {"a": poly.to_low(f.a), "b": poly.to_low(f.b), "c": poly.to_low(f.c)}


def matrix_to_json(M: PGLMat) -> list:
    return [
        [function_to_json(M.m00), function_to_json(M.m01)],
        [function_to_json(M.m10), function_to_json(M.m11)],
    ]


def model_to_json(m: SurfaceModel | ConicBundleModel) -> dict:
    if isinstance(m, ConicBundleModel):
        out = model_to_json(m.base)
        out["Z"] = [point_to_json(P) for P in m.Z]
        out["P"] = [point_to_json(P) for P in m.P]
        if m.klein is not None:
            out["klein"] = [matrix_to_json(M) for M in m.klein]
        return out
    asserted = {}
    if m.two_d_principal is not None:
        asserted["two_d_principal"] = m.two_d_principal
    if m.d_principal is not None:
        asserted["d_principal"] = m.d_principal
    out = {
        "variant": m.variant,
        "D": None if m.D is None else divisor_to_json(m.D),
        "genus": m.genus,
        "asserted": asserted,
    }
    if m.curve is not None:
        out["curve"] = curve_to_json(m.curve)
    if m.degree is not None:
        out["degree"] = m.degree
    return out


def to_json(obj: Any):
    if obj is None or isinstance(obj, (bool, int, str)):
        return obj
    if isinstance(obj, EllipticCurve):
        return curve_to_json(obj)
    if isinstance(obj, CurvePoint):
        return point_to_json(obj)
    if isinstance(obj, Divisor):
        return divisor_to_json(obj)
    if isinstance(obj, FunctionElement):
        return function_to_json(obj)
    if isinstance(obj, PGLMat):
        return matrix_to_json(obj)
    if isinstance(obj, (SurfaceModel, ConicBundleModel)):
        return model_to_json(obj)
    if isinstance(obj, SquareClass):
        out = {"verdict": obj.verdict}
        if obj.half_divisor is not None:
            out["half_divisor"] = divisor_to_json(obj.half_divisor)
        if obj.odd_point is not None:
            out["odd_point"] = point_to_json(obj.odd_point)
        if obj.root is not None:
            out["root"] = function_to_json(obj.root)
            out["root_constant"] = obj.root_constant
        return out
    if isinstance(obj, FixedLocus):
        return {"kind": obj.kind, "ramification_points": [point_to_json(P) for P in obj.ramification_points]}
    if isinstance(obj, NormalizerPart):
        return {"kind": obj.kind, "a": to_json(obj.a), "b": to_json(obj.b)}
    if isinstance(obj, AutCGroup):
        return {"kind": obj.kind, "witnesses": [matrix_to_json(M) for M in obj.witnesses], "note": obj.note}
    if isinstance(obj, MaxClass):
        return {"class": obj.tag, "witness": to_json(obj.witness), "citations": list(obj.citations)}
    if isinstance(obj, dict):
        return {k: to_json(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_json(v) for v in obj]
    raise TypeError(f"no JSON encoding for {type(obj).__name__}")


# -- decoders --------------------------------------------------------------


def curve_from_json(data: dict) -> EllipticCurve:
    return EllipticCurve(int(data["p"]), int(data["a"]), int(data["b"]))


def point_from_json(e: EllipticCurve, data) -> CurvePoint:
    if data == "O":
        return INFINITY
    if isinstance(data, (list, tuple)):
        return e.point(int(data[0]), int(data[1]))
    return e.point(int(data["x"]), int(data["y"]))


def divisor_from_json(e: EllipticCurve, data: list) -> Divisor:
    acc: dict[CurvePoint, int] = {}
    for item in data:
        P = point_from_json(e, item["point"])
        acc[P] = acc.get(P, 0) + int(item["coefficient"])
    return Divisor.from_mapping(e, acc)


def function_from_json(e: EllipticCurve, data: dict) -> FunctionElement:
    return FunctionElement.from_low(e, data.get("a", []), data.get("b", []), data.get("c", [1]))


def matrix_from_json(e: EllipticCurve, data: list) -> PGLMat:
    (a, b), (c, d) = data
    return PGLMat.make(*(function_from_json(e, u) for u in (a, b, c, d)))


def model_from_json(data: dict, e: EllipticCurve | None = None):
    """A SurfaceModel, or a ConicBundleModel when "Z" or "P" is present.

    The embedded "curve" wins over the curve passed in.
    """
    if "curve" in data:
        e = curve_from_json(data["curve"])
    variant = data.get("variant")
    genus = int(data.get("genus", 1))
    asserted = data.get("asserted") or {}
    D = data.get("D")
    if genus == 1 and e is None:
        raise InvalidModel("a genus-1 model needs a curve")
    base = SurfaceModel(
        variant,
        curve=e if genus == 1 else None,
        D=divisor_from_json(e, D) if D is not None else None,
        genus=genus,
        degree=data.get("degree"),
        two_d_principal=asserted.get("two_d_principal"),
        d_principal=asserted.get("d_principal"),
    )
    if "Z" not in data and "P" not in data:
        return base
    klein = data.get("klein")
    return ConicBundleModel(
        base,
        tuple(point_from_json(e, P) for P in data.get("Z", [])),
        tuple(point_from_json(e, P) for P in data.get("P", [])),
        None if klein is None else tuple(matrix_from_json(e, M) for M in klein),
    )


def square_class_from_json(e: EllipticCurve, data: dict) -> SquareClass:
    half = data.get("half_divisor")
    odd = data.get("odd_point")
    root = data.get("root")
    return SquareClass(
        data["verdict"],
        None if half is None else divisor_from_json(e, half),
        None if odd is None else point_from_json(e, odd),
        None if root is None else function_from_json(e, root),
        data.get("root_constant"),
    )


_WITNESS_FUNCTIONS = {"f", "beta"}
_WITNESS_MATRICES = {"involution", "sigma", "tau"}
_WITNESS_POINTS = {"group_sum_2D", "group_sum_D", "swap_obstruction"}


def max_class_from_json(data: dict, e: EllipticCurve | None) -> MaxClass:
    w = {}
    for k, v in data["witness"].items():
        if k in _WITNESS_FUNCTIONS:
            w[k] = function_from_json(e, v)
        elif k in _WITNESS_MATRICES:
            w[k] = matrix_from_json(e, v)
        elif k in _WITNESS_POINTS:
            w[k] = point_from_json(e, v)
        elif k == "divisor_of_f":
            w[k] = divisor_from_json(e, v)
        elif k == "chain":
            w[k] = [model_from_json(m, e) for m in v]
        elif k == "h_stabilizer":
            w[k] = {kk: [point_from_json(e, P) for P in vv] for kk, vv in v.items()}
        else:
            w[k] = v
    return MaxClass(data["class"], w, tuple(data["citations"]))
