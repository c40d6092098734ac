"""Divisors with rational support on an elliptic curve.

Linear equivalence is decided by Abel's criterion: a divisor is principal
iff it has degree 0 and its points sum to the neutral element. The function
realizing a principal divisor is built separately in ``funcfield``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import CurveMismatch
from .field_curve import INFINITY, CurvePoint, EllipticCurve


@dataclass(frozen=True)
class Divisor:
    curve: EllipticCurve
    terms: tuple[tuple[CurvePoint, int], ...] = ()

    @classmethod
    def from_mapping(cls, curve: EllipticCurve, coeffs: Mapping[CurvePoint, int]) -> Divisor:
        curve.check(*coeffs)
        items = sorted(((P, int(n)) for P, n in coeffs.items() if n), key=lambda t: t[0].sort_key())
        return cls(curve, tuple(items))

    @classmethod
    def of_points(cls, curve: EllipticCurve, points: Iterable[CurvePoint], sign: int = 1) -> Divisor:
        """sign * sum of (P) over the iterable, multiplicities counted."""
        acc: dict[CurvePoint, int] = {}
        for P in points:
            acc[P] = acc.get(P, 0) + sign
        return cls.from_mapping(curve, acc)

    @classmethod
    def zero(cls, curve: EllipticCurve) -> Divisor:
        return cls(curve, ())

    def as_dict(self) -> dict[CurvePoint, int]:
        return dict(self.terms)

    def coefficient(self, P: CurvePoint) -> int:
        return self.as_dict().get(P, 0)

    @property
    def support(self) -> tuple[CurvePoint, ...]:
        return tuple(P for P, _ in self.terms)

    @property
    def degree(self) -> int:
        return sum(n for _, n in self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def _same_curve(self, other: Divisor) -> None:
        if self.curve != other.curve:
            raise CurveMismatch(f"{self.curve} vs {other.curve}")

    def __add__(self, other: Divisor) -> Divisor:
        self._same_curve(other)
        acc = self.as_dict()
        for P, n in other.terms:
            acc[P] = acc.get(P, 0) + n
        return Divisor.from_mapping(self.curve, acc)

    def __neg__(self) -> Divisor:
        return Divisor(self.curve, tuple((P, -n) for P, n in self.terms))

    def __sub__(self, other: Divisor) -> Divisor:
        return self + (-other)

    def __mul__(self, k: int) -> Divisor:
        if not k:
            return Divisor.zero(self.curve)
        return Divisor(self.curve, tuple((P, k * n) for P, n in self.terms))

    __rmul__ = __mul__

    def __repr__(self):
        if not self.terms:
            return "0"
        out = ""
        for i, (P, n) in enumerate(self.terms):
            mag = "" if abs(n) == 1 else str(abs(n))
            if i == 0:
                out = f"{'-' if n < 0 else ''}{mag}{P!r}"
            else:
                out += f" {'-' if n < 0 else '+'} {mag}{P!r}"
        return out


def group_sum(d: Divisor) -> CurvePoint:
    e = d.curve
    acc = INFINITY
    for P, n in d.terms:
        acc = e.add(acc, e.mul(n, P))
    return acc


def is_principal(d: Divisor) -> bool:
    return d.degree == 0 and group_sum(d).is_infinity


def is_linearly_equivalent(d1: Divisor, d2: Divisor) -> bool:
    d1._same_curve(d2)
    return is_principal(d1 - d2)


def translate_divisor(d: Divisor, t: CurvePoint) -> Divisor:
    """Pull back along x -> x + t: each point P moves to P - t."""
    e = d.curve
    e.check(t)
    return Divisor.from_mapping(e, {e.sub(P, t): n for P, n in d.terms})


def invert_divisor(d: Divisor) -> Divisor:
    """Pull back along x -> -x."""
    e = d.curve
    return Divisor.from_mapping(e, {e.neg(P): n for P, n in d.terms})
