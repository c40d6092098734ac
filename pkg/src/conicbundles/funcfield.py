"""The function field F_p(E) of an elliptic curve y^2 = F(x).

Every element is stored as (a(x) + b(x) y) / c(x) with c monic and
gcd(a, b, c) = 1, which makes the representation unique.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache

from . import poly
from .config import DEFAULT_SAMPLING
from .divisor import Divisor, group_sum, is_principal
from .errors import DivisionByZero, NonRationalSupport, NotPrincipal, NotRegular, ZeroFunction
from .field_curve import INFINITY, CurvePoint, EllipticCurve
from .poly import Poly


@lru_cache(maxsize=None)
def curve_poly(e: EllipticCurve) -> Poly:
    return poly.make([1, 0, e.a, e.b], e.p)


@dataclass(frozen=True)
class FunctionElement:
    curve: EllipticCurve
    a: Poly
    b: Poly
    c: Poly = poly.ONE

    @classmethod
    def make(cls, curve: EllipticCurve, a: Poly, b: Poly = poly.ZERO, c: Poly = poly.ONE) -> FunctionElement:
        p = curve.p
        if not c:
            raise DivisionByZero("zero denominator")
        if not a and not b:
            return cls(curve, poly.ZERO, poly.ZERO, poly.ONE)
        g = poly.gcd(poly.gcd(a, b, p), c, p)
        if poly.degree(g) > 0:
            a, b, c = (poly.exact_quo(u, g, p) if u else u for u in (a, b, c))
        k, c = poly.monic(c, p)
        inv = pow(k, -1, p)
        return cls(curve, poly.scale(a, inv, p), poly.scale(b, inv, p), c)

    @classmethod
    def constant(cls, curve: EllipticCurve, value: int) -> FunctionElement:
        return cls.make(curve, poly.const(value, curve.p))

    @classmethod
    def x(cls, curve: EllipticCurve) -> FunctionElement:
        return cls.make(curve, (1, 0))

    @classmethod
    def y(cls, curve: EllipticCurve) -> FunctionElement:
        return cls.make(curve, poly.ZERO, poly.ONE)

    @classmethod
    def from_low(cls, curve: EllipticCurve, a, b=(), c=(1,)) -> FunctionElement:
        p = curve.p
        return cls.make(curve, poly.from_low(a, p), poly.from_low(b, p), poly.from_low(c, p))

    # -- predicates -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.a and not self.b

    def is_constant(self) -> bool:
        return not self.b and poly.degree(self.a) <= 0 and self.c == poly.ONE

    def constant_value(self) -> int:
        if not self.is_constant():
            raise ValueError("not a constant function")
        return poly.lc(self.a)

    # -- arithmetic -------------------------------------------------------

    def _lift(self, other) -> FunctionElement:
        if isinstance(other, FunctionElement):
            if other.curve != self.curve:
                raise ValueError("functions on different curves")
            return other
        return FunctionElement.constant(self.curve, int(other))

    def __add__(self, other):
        g = self._lift(other)
        p = self.curve.p
        a = poly.add(poly.mul(self.a, g.c, p), poly.mul(g.a, self.c, p), p)
        b = poly.add(poly.mul(self.b, g.c, p), poly.mul(g.b, self.c, p), p)
        return FunctionElement.make(self.curve, a, b, poly.mul(self.c, g.c, p))

    __radd__ = __add__

    def __neg__(self):
        p = self.curve.p
        return FunctionElement(self.curve, poly.neg(self.a, p), poly.neg(self.b, p), self.c)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        g = self._lift(other)
        p = self.curve.p
        F = curve_poly(self.curve)
        a = poly.add(poly.mul(self.a, g.a, p), poly.mul(poly.mul(self.b, g.b, p), F, p), p)
        b = poly.add(poly.mul(self.a, g.b, p), poly.mul(self.b, g.a, p), p)
        return FunctionElement.make(self.curve, a, b, poly.mul(self.c, g.c, p))

    __rmul__ = __mul__

    def conjugate(self) -> FunctionElement:
        """Image under the hyperelliptic involution y -> -y."""
        return FunctionElement(self.curve, self.a, poly.neg(self.b, self.curve.p), self.c)

    def norm_numerator(self) -> Poly:
        """a^2 - b^2 F, the norm of a + b y down to F_p(x)."""
        p = self.curve.p
        F = curve_poly(self.curve)
        return poly.sub(poly.mul(self.a, self.a, p), poly.mul(poly.mul(self.b, self.b, p), F, p), p)

    def inverse(self) -> FunctionElement:
        if self.is_zero():
            raise DivisionByZero("inverse of the zero function")
        p = self.curve.p
        N = self.norm_numerator()
        return FunctionElement.make(
            self.curve, poly.mul(self.c, self.a, p), poly.neg(poly.mul(self.c, self.b, p), p), N
        )

    def __truediv__(self, other):
        g = self._lift(other)
        if g.is_zero():
            raise DivisionByZero("division by the zero function")
        return self * g.inverse()

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = FunctionElement.constant(self.curve, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __repr__(self):
        def show(f: Poly) -> str:
            if not f:
                return "0"
            terms = []
            d = poly.degree(f)
            for i, co in enumerate(f):
                k = d - i
                if not co:
                    continue
                if k == 0:
                    terms.append(str(co))
                else:
                    mono = "x" if k == 1 else f"x^{k}"
                    terms.append(mono if co == 1 else f"{co}*{mono}")
            return " + ".join(terms)

        num = show(self.a)
        if self.b:
            if self.b == poly.ONE:
                ypart = "y"
            elif poly.degree(self.b) == 0:
                ypart = f"{self.b[0]}*y"
            else:
                ypart = f"({show(self.b)})*y"
            num = f"{num} + {ypart}" if self.a else ypart
        if self.c == poly.ONE:
            return num
        return f"({num})/({show(self.c)})"


def ff_arith(op: str, f: FunctionElement, g: FunctionElement) -> FunctionElement:
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    if op == "div":
        return f / g
    raise ValueError(f"unknown operation {op!r}")


# -- local expansions ------------------------------------------------------
#
# Uniformizers: x - x0 at an affine point with y0 != 0, y at a 2-torsion
# point, x/y at infinity. Each helper returns (valuation, leading coefficient)
# with respect to that uniformizer.


def _poly_lead(f: Poly, P: CurvePoint, e: EllipticCurve) -> tuple[int, int]:
    p = e.p
    if P.is_infinity:
        # x = t^-2 (1 + O(t^4))
        return -2 * poly.degree(f), poly.lc(f)
    k, q = poly.root_order(f, P.x, p)
    lead = poly.evaluate(q, P.x, p)
    if P.y == 0:
        # x - x0 = y^2 / h(x) with h = F / (x - x0), h(x0) != 0
        h0 = _two_torsion_cofactor(e, P.x)
        return 2 * k, lead * pow(h0, -k, p) % p
    return k, lead


@lru_cache(maxsize=4096)
def _two_torsion_cofactor(e: EllipticCurve, x0: int) -> int:
    h = poly.exact_quo(curve_poly(e), poly.linear(x0, e.p), e.p)
    return poly.evaluate(h, x0, e.p)


def _norm(a: Poly, b: Poly, e: EllipticCurve) -> Poly:
    """a^2 - b^2 F, the norm of a + b y down to F_p(x)."""
    p = e.p
    return poly.sub(poly.mul(a, a, p), poly.mul(poly.mul(b, b, p), curve_poly(e), p), p)


def _numerator_lead(
    a: Poly, b: Poly, P: CurvePoint, e: EllipticCurve, norm: Poly | None = None
) -> tuple[int, int]:
    """Expansion of a + b y; at least one of a, b is nonzero."""
    p = e.p
    if not b:
        return _poly_lead(a, P, e)
    vb, lb = _poly_lead(b, P, e)
    if P.is_infinity:
        vb, lb = vb - 3, lb  # y = t^-3 (1 + O(t^4))
    elif P.y == 0:
        vb += 1  # y is the uniformizer
    else:
        lb = lb * P.y % p
    if not a:
        return vb, lb
    if P.is_infinity or P.y == 0:
        # the two terms have valuations of different parity, no cancellation
        va, la = _poly_lead(a, P, e)
        return (va, la) if va < vb else (vb, lb)
    x0, y0 = P.x, P.y
    a0, b0 = poly.evaluate(a, x0, p), poly.evaluate(b, x0, p)
    value = (a0 + b0 * y0) % p
    if value:
        return 0, value
    conj_value = (a0 - b0 * y0) % p
    if conj_value:
        # v_P(a + b y) = v_P(a^2 - b^2 F) since a - b y is a unit at P
        k, q = poly.root_order(_norm(a, b, e) if norm is None else norm, x0, p)
        return k, poly.evaluate(q, x0, p) * pow(conj_value, -1, p) % p
    # both a(x0) and b(x0) vanish: pull out one factor of the uniformizer
    lin = poly.linear(x0, p)
    v, lead = _numerator_lead(poly.exact_quo(a, lin, p), poly.exact_quo(b, lin, p), P, e)
    return v + 1, lead


def local_expansion(f: FunctionElement, P: CurvePoint) -> tuple[int, int]:
    """(valuation at P, leading coefficient in the chosen uniformizer)."""
    if f.is_zero():
        raise ZeroFunction("the zero function has no valuation")
    e = f.curve
    e.check(P)
    vn, ln = _numerator_lead(f.a, f.b, P, e)
    vd, ld = _poly_lead(f.c, P, e)
    return vn - vd, ln * pow(ld, -1, e.p) % e.p


def valuation_at(f: FunctionElement, P: CurvePoint) -> int:
    return local_expansion(f, P)[0]


def evaluate(f: FunctionElement, P: CurvePoint) -> int:
    """f(P) for f regular and nonzero at P."""
    v, lead = local_expansion(f, P)
    if v != 0:
        raise NotRegular(f"function has valuation {v} at {P}, no finite nonzero value")
    return lead


def evaluate_on_divisor(f: FunctionElement, d: Divisor) -> int:
    """Product of f(P)^n over the terms n(P) of d."""
    p = f.curve.p
    acc = 1
    for P, n in d.terms:
        acc = acc * pow(evaluate(f, P), n, p) % p
    return acc


def rational_valuations(f: FunctionElement) -> dict[CurvePoint, int]:
    """Nonzero valuations of f at rational points (no support check)."""
    if f.is_zero():
        raise ZeroFunction("the zero function has no divisor")
    out = {}
    for P in f.curve.points:
        v = valuation_at(f, P)
        if v:
            out[P] = v
    return out


def divisor_of(f: FunctionElement) -> Divisor:
    """div(f), raising NonRationalSupport if a zero or pole is not rational.

    The numerator a + b y has exactly -v_O(a + b y) zeros and c has exactly
    2 deg c zeros (with multiplicity) over the algebraic closure; the support
    is rational iff the rational affine points account for all of them.
    """
    if f.is_zero():
        raise ZeroFunction("the zero function has no divisor")
    e = f.curve
    num_total = -_numerator_lead(f.a, f.b, INFINITY, e)[0]
    den_total = 2 * poly.degree(f.c)
    p = e.p
    # a + b y is a unit above x0 unless the norm vanishes there
    norm = _norm(f.a, f.b, e)
    num_seen = den_seen = 0
    coeffs: dict[CurvePoint, int] = {}
    for P in e.points:
        if P.is_infinity:
            continue
        if poly.evaluate(norm, P.x, p) and poly.evaluate(f.c, P.x, p):
            continue
        vn = _numerator_lead(f.a, f.b, P, e, norm)[0]
        vd = _poly_lead(f.c, P, e)[0] if den_total else 0
        num_seen += vn
        den_seen += vd
        if vn != vd:
            coeffs[P] = vn - vd
    if num_seen != num_total or den_seen != den_total:
        raise NonRationalSupport(f"{f} has zeros or poles outside E(F_{e.p})")
    v_inf = -num_total + den_total
    if v_inf:
        coeffs[INFINITY] = v_inf
    d = Divisor.from_mapping(e, coeffs)
    assert d.degree == 0
    return d


# -- principality witnesses ------------------------------------------------


def vertical(e: EllipticCurve, R: CurvePoint) -> FunctionElement:
    """x - x_R, with divisor (R) + (-R) - 2(O); the constant 1 at infinity."""
    return FunctionElement.make(e, _vertical_poly(e, R))


def line(e: EllipticCurve, P: CurvePoint, Q: CurvePoint) -> FunctionElement:
    """The chord (tangent if P = Q) through affine P, Q with P + Q != O."""
    return FunctionElement.make(e, _line_poly(e, P, Q), poly.ONE)


def _vertical_poly(e: EllipticCurve, R: CurvePoint) -> Poly:
    return poly.ONE if R.is_infinity else poly.linear(R.x, e.p)


def _line_poly(e: EllipticCurve, P: CurvePoint, Q: CurvePoint) -> Poly:
    """The x-part of y - y_P - lam (x - x_P)."""
    p = e.p
    if P == Q:
        lam = (3 * P.x * P.x + e.a) * pow(2 * P.y, -1, p) % p
    else:
        lam = (Q.y - P.y) * pow(Q.x - P.x, -1, p) % p
    return poly.make([-lam, lam * P.x - P.y], p)


# Miller products are accumulated unreduced as (a, b, c) meaning
# (a + b y) / c, with c a product of vertical lines; a single canonical
# reduction happens at the end.

_Raw = tuple[Poly, Poly, Poly]


def _raw_mul(f: _Raw, g: _Raw, e: EllipticCurve) -> _Raw:
    if f == _RAW_ONE:
        return g
    if g == _RAW_ONE:
        return f
    p = e.p
    a1, b1, c1 = f
    a2, b2, c2 = g
    a = poly.add(poly.mul(a1, a2, p), poly.mul(poly.mul(b1, b2, p), curve_poly(e), p), p)
    b = poly.add(poly.mul(a1, b2, p), poly.mul(b1, a2, p), p)
    return a, b, poly.mul(c1, c2, p)


_RAW_ONE: _Raw = (poly.ONE, poly.ZERO, poly.ONE)


def _combine(e: EllipticCurve, P: CurvePoint, Q: CurvePoint) -> tuple[CurvePoint, _Raw]:
    """(R, g) with (P) - (O) + (Q) - (O) = (R) - (O) + div(g)."""
    if P.is_infinity:
        return Q, _RAW_ONE
    if Q.is_infinity:
        return P, _RAW_ONE
    if P.x == Q.x and (P.y + Q.y) % e.p == 0:
        return INFINITY, (_vertical_poly(e, P), poly.ZERO, poly.ONE)
    R = e.add(P, Q)
    return R, (_line_poly(e, P, Q), poly.ONE, _vertical_poly(e, R))


def _miller_raw(e: EllipticCurve, n: int, P: CurvePoint) -> tuple[CurvePoint, _Raw]:
    R, f = P, _RAW_ONE
    for bit in bin(n)[3:]:
        R, g = _combine(e, R, R)
        f = _raw_mul(_raw_mul(f, f, e), g, e)
        if bit == "1":
            R, g = _combine(e, R, P)
            f = _raw_mul(f, g, e)
    return R, f


def miller(e: EllipticCurve, n: int, P: CurvePoint) -> tuple[CurvePoint, FunctionElement]:
    """(nP, f) with n((P) - (O)) = (nP) - (O) + div(f), for n >= 1."""
    R, (a, b, c) = _miller_raw(e, n, P)
    return R, FunctionElement.make(e, a, b, c)


def principality_witness(d: Divisor) -> FunctionElement:
    """A function whose divisor is exactly d; NotPrincipal if none exists.

    The candidate is built by chord-and-tangent reduction without looking at
    the group sum; its divisor is then computed and compared with d.
    """
    e = d.curve
    if d.degree != 0:
        raise NotPrincipal(f"degree {d.degree} != 0")
    f = _RAW_ONE
    acc = INFINITY
    for P, n in d.terms:
        if P.is_infinity:
            continue
        if n < 0:
            # -((P) - (O)) = (-P) - (O) - div(x - x_P)
            f = (f[0], f[1], poly.mul(f[2], poly.power(_vertical_poly(e, P), -n, e.p), e.p))
            P, n = e.neg(P), -n
        R, g = _miller_raw(e, n, P)
        acc, h = _combine(e, acc, R)
        f = _raw_mul(_raw_mul(f, g, e), h, e)
    # now d = (acc) - (O) + div(f); cheap rejection first, on the raw
    # triple: the candidate's valuation at the residual point
    if not acc.is_infinity and (f[0] or f[1]):
        v = _numerator_lead(f[0], f[1], acc, e)[0] - _poly_lead(f[2], acc, e)[0]
        if v != d.coefficient(acc):
            raise NotPrincipal(f"{d!r} is not principal (residual point {acc!r})")
    fe = FunctionElement.make(e, *f)
    if divisor_of(fe) != d:
        raise NotPrincipal(f"{d!r} is not principal (residual point {acc!r})")
    return fe


# -- square classes modulo constants ---------------------------------------


@dataclass(frozen=True)
class SquareClass:
    """Class of a function in K* / (k* K*^2).

    A Square verdict carries half_divisor H with div(f) = 2H and H principal,
    or, when f has zeros or poles off the rational points, an explicit root
    g and constant c with f = c g^2. A NonSquare verdict carries either a
    point of odd valuation or (when every valuation is even) the
    non-principal half divisor.
    """

    verdict: str
    half_divisor: Divisor | None = None
    odd_point: CurvePoint | None = None
    root: FunctionElement | None = None
    root_constant: int | None = None

    @property
    def is_square(self) -> bool:
        return self.verdict == "Square"


def algebraic_root(f: FunctionElement) -> tuple[FunctionElement, int] | None:
    """(g, c) with f = c g^2, c in F_p*, or None if no such pair exists.

    With f c_f^2 = A + B y integral, a root h = u + v y is integral too
    (the affine curve is smooth), so N(A + B y) = (c N(h))^2 has an exact
    square root mu in F_p[x], and then A + mu = 2c u^2, A - mu = 2c v^2 F
    for one choice of sign.
    """
    e = f.curve
    p = e.p
    F = curve_poly(e)
    A, B = poly.mul(f.a, f.c, p), poly.mul(f.b, f.c, p)
    n = poly.sub(poly.mul(A, A, p), poly.mul(poly.mul(B, B, p), F, p), p)
    mu = poly.sqrt_exact(n, p)
    if mu is None:
        return None
    half = pow(2, -1, p)
    for m in (mu, poly.neg(mu, p)):
        P1 = poly.scale(poly.add(A, m, p), half, p)
        q, r = poly.divmod_(poly.sub(A, m, p), F, p)
        if r:
            continue
        P2 = poly.scale(q, half, p)
        c = poly.lc(P1) or poly.lc(P2)
        if not c:
            continue
        inv = pow(c, -1, p)
        u = poly.sqrt_exact(poly.scale(P1, inv, p), p)
        v = poly.sqrt_exact(poly.scale(P2, inv, p), p)
        if u is None or v is None:
            continue
        for vv in (v, poly.neg(v, p)):
            h = FunctionElement.make(e, u, vv, f.c)
            if h * h * c == f:
                return h, c
    return None


def is_square_class(f: FunctionElement) -> SquareClass:
    vals = rational_valuations(f)
    for P, v in vals.items():
        if v % 2:
            # an odd valuation is a certificate whatever the rest of the support
            return SquareClass("NonSquare", odd_point=P)
    try:
        d = divisor_of(f)
    except NonRationalSupport:
        found = algebraic_root(f)
        if found is None:
            raise
        return SquareClass("Square", root=found[0], root_constant=found[1])
    half = Divisor(d.curve, tuple((P, n // 2) for P, n in d.terms))
    if is_principal(half):
        return SquareClass("Square", half_divisor=half)
    return SquareClass("NonSquare", half_divisor=half)


def square_root(f: FunctionElement) -> tuple[FunctionElement, int]:
    """(g, c) with f = c * g^2 and c a nonzero constant; f must be a square class."""
    cls = is_square_class(f)
    if not cls.is_square:
        raise NotPrincipal("function is not a square modulo constants")
    if cls.root is not None:
        return cls.root, cls.root_constant
    g = principality_witness(cls.half_divisor)
    c = f / (g * g)
    return g, c.constant_value()


# -- random generation -----------------------------------------------------


def random_principal_divisor(
    e: EllipticCurve,
    rng: random.Random,
    max_support: int = DEFAULT_SAMPLING.max_support,
    max_coeff: int = DEFAULT_SAMPLING.max_coeff,
    avoid: frozenset = frozenset(),
) -> Divisor:
    """A random nonzero principal divisor whose support avoids ``avoid``.

    Draws a few random terms, then closes them up with n(R) + (Q) where
    n = -(deg + 1) fixes the degree and Q fixes the group sum.
    """
    pts = [P for P in e.points if P not in avoid]
    if len(pts) < 2:
        raise ValueError("not enough points to build a divisor")
    nonzero = [c for c in range(-max_coeff, max_coeff + 1) if c]
    while True:
        chosen = rng.sample(pts, min(rng.randint(1, max(1, max_support - 2)), len(pts)))
        d = Divisor.from_mapping(e, {P: rng.choice(nonzero) for P in chosen})
        R = rng.choice(pts)
        n = -(d.degree + 1)
        Q = e.sub(e.mul(-n, R), group_sum(d))
        total = d + Divisor.from_mapping(e, {R: n}) + Divisor.from_mapping(e, {Q: 1})
        if total.is_zero() or any(P in avoid for P in total.support):
            continue
        if len(total.support) > max_support:
            continue
        return total


def random_function(
    e: EllipticCurve, rng: random.Random, avoid: frozenset = frozenset(), **kw
) -> FunctionElement:
    """A random nonzero function with rational support avoiding ``avoid``."""
    d = random_principal_divisor(e, rng, avoid=avoid, **kw)
    scale = rng.randrange(1, e.p)
    return principality_witness(d) * scale
