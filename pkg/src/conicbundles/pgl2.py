"""PGL(2, K) over the function field K = F_p(E).

Matrices are kept in canonical scaling (first nonzero entry in row-major
order equal to 1), so equality of projective classes is entry equality.
Determinant classes are taken modulo constants, like every square class in
``funcfield``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from sympy.ntheory import sqrt_mod

from . import poly
from .config import DEFAULT_KLEIN
from .errors import NotInvolution, SearchExhausted, SingularMatrix, SquareF, ZeroFunction
from .field_curve import CurvePoint, EllipticCurve
from .funcfield import (
    FunctionElement,
    SquareClass,
    divisor_of,
    is_square_class,
    rational_valuations,
    square_root,
)

FE = FunctionElement


@dataclass(frozen=True)
class PGLMat:
    m00: FunctionElement
    m01: FunctionElement
    m10: FunctionElement
    m11: FunctionElement

    @classmethod
    def make(cls, m00, m01, m10, m11) -> PGLMat:
        entries = [m00, m01, m10, m11]
        curve = next(e.curve for e in entries if isinstance(e, FunctionElement))
        entries = [e if isinstance(e, FunctionElement) else FE.constant(curve, int(e)) for e in entries]
        if (entries[0] * entries[3] - entries[1] * entries[2]).is_zero():
            raise SingularMatrix("determinant is zero")
        lead = next(e for e in entries if not e.is_zero())
        return cls(*(e / lead for e in entries))

    @classmethod
    def identity(cls, curve: EllipticCurve) -> PGLMat:
        return cls.make(FE.constant(curve, 1), 0, 0, 1)

    @classmethod
    def diag(cls, u: FunctionElement, v) -> PGLMat:
        return cls.make(u, 0, 0, v)

    @property
    def curve(self) -> EllipticCurve:
        return self.m00.curve

    @property
    def entries(self) -> tuple[FunctionElement, ...]:
        return (self.m00, self.m01, self.m10, self.m11)

    def det(self) -> FunctionElement:
        """Determinant of the canonical representative."""
        return self.m00 * self.m11 - self.m01 * self.m10

    def __matmul__(self, other: PGLMat) -> PGLMat:
        return pgl_mul(self, other)

    def inverse(self) -> PGLMat:
        return PGLMat.make(self.m11, -self.m01, -self.m10, self.m00)

    def is_identity(self) -> bool:
        return self == PGLMat.identity(self.curve)

    def act(self, z: FunctionElement | None) -> FunctionElement | None:
        """Moebius action on P^1(K); None stands for the point at infinity."""
        if z is None:
            return None if self.m10.is_zero() else self.m00 / self.m10
        num = self.m00 * z + self.m01
        den = self.m10 * z + self.m11
        return None if den.is_zero() else num / den

    def __repr__(self):
        return f"[[{self.m00!r}, {self.m01!r}], [{self.m10!r}, {self.m11!r}]]"


def pgl_mul(A: PGLMat, B: PGLMat) -> PGLMat:
    return PGLMat.make(
        A.m00 * B.m00 + A.m01 * B.m10,
        A.m00 * B.m01 + A.m01 * B.m11,
        A.m10 * B.m00 + A.m11 * B.m10,
        A.m10 * B.m01 + A.m11 * B.m11,
    )


def sigma(f: FunctionElement) -> PGLMat:
    """The involution [[0, f], [1, 0]]."""
    if f.is_zero():
        raise ZeroFunction("sigma_f needs f != 0")
    return PGLMat.make(0, f, 1, 0)


def det_class(A: PGLMat) -> SquareClass:
    return is_square_class(A.det())


def is_involution(A: PGLMat) -> bool:
    return not A.is_identity() and (A @ A).is_identity()


# -- normal forms and conjugacy --------------------------------------------


def involution_normal_form(A: PGLMat) -> tuple[FunctionElement, PGLMat]:
    """(f, C) with C A C^-1 = sigma_f.

    For an involution the trace vanishes, so A^2 = f I with f = -det A.
    In a basis (v, A v) with v not an eigenvector the matrix becomes sigma_f;
    C is the inverse of that change of basis.
    """
    if not is_involution(A):
        raise NotInvolution(f"{A!r} is not an involution")
    m00, m01, m10, m11 = A.entries
    if not m10.is_zero():
        # representative with m10 = 1, so sigma_g comes back as (g, identity)
        m00, m01, m11 = m00 / m10, m01 / m10, m11 / m10
        m10 = FE.constant(A.curve, 1)
    f = m01 * m10 - m00 * m11
    one = FE.constant(A.curve, 1)
    if not m10.is_zero():
        B = PGLMat.make(one, m00, 0, m10)
    elif not m01.is_zero():
        B = PGLMat.make(0, m01, one, m11)
    else:
        B = PGLMat.make(one, m00, one, m11)
    return f, B.inverse()


@dataclass(frozen=True)
class Conjugacy:
    """Outcome of comparing sigma_f with sigma_g.

    When conjugate, ``conjugator`` C satisfies C sigma_f C^-1 = sigma_{r g}
    with r = ``residual`` a nonzero constant (1 whenever r can be absorbed
    over F_p; otherwise a square only over the algebraic closure).
    """

    conjugate: bool
    conjugator: PGLMat | None = None
    residual: int | None = None


def involutions_conjugate(f: FunctionElement, g: FunctionElement) -> Conjugacy:
    if f.is_zero() or g.is_zero():
        raise ZeroFunction("involution data must be nonzero")
    q = f / g
    if not is_square_class(q).is_square:
        return Conjugacy(False)
    lam, c = square_root(q)
    # q = c lam^2 and diag(1, lam) sigma_f diag(1, lam)^-1 = sigma_{f / lam^2} = sigma_{c g}
    p = f.curve.p
    root = _const_sqrt(c, p)
    if root is not None:
        lam = lam * root
        c = 1
    return Conjugacy(True, PGLMat.diag(FE.constant(f.curve, 1), lam), c)


def _const_sqrt(c: int, p: int) -> int | None:
    return sqrt_mod(c % p, p)


# -- the normalizer of sigma_f ---------------------------------------------


@dataclass(frozen=True)
class NormalizerPart:
    """EvenPart (a, b) ~ [[a, b f], [b, a]], OddPart ~ [[a, -b f], [b, -a]].

    (a, b) is scaled so that b = 1, or a = 1 when b = 0.
    """

    kind: str  # "EvenPart" | "OddPart" | "NotMember"
    a: FunctionElement | None = None
    b: FunctionElement | None = None


def _scaled_pair(a: FunctionElement, b: FunctionElement) -> tuple[FunctionElement, FunctionElement]:
    s = b if not b.is_zero() else a
    return a / s, b / s


def normalizer_decompose(M: PGLMat, f: FunctionElement) -> NormalizerPart:
    if is_square_class(f).is_square:
        raise SquareF("sigma_f has trivial determinant class")
    m00, m01, m10, m11 = M.entries
    if m11 == m00 and m01 == m10 * f:
        return NormalizerPart("EvenPart", *_scaled_pair(m00, m10))
    if m11 == -m00 and m01 == -(m10 * f):
        return NormalizerPart("OddPart", *_scaled_pair(m00, m10))
    return NormalizerPart("NotMember")


def even_element(a: FunctionElement, b: FunctionElement, f: FunctionElement) -> PGLMat:
    return PGLMat.make(a, b * f, b, a)


def odd_element(a: FunctionElement, b: FunctionElement, f: FunctionElement) -> PGLMat:
    return PGLMat.make(a, -(b * f), b, -a)


def sqrt_product(
    u: tuple[FunctionElement, FunctionElement], v: tuple[FunctionElement, FunctionElement], f
) -> tuple[FunctionElement, FunctionElement]:
    """(a1 + b1 r)(a2 + b2 r) with r^2 = f, as a pair."""
    (a1, b1), (a2, b2) = u, v
    return a1 * a2 + b1 * b2 * f, a1 * b2 + a2 * b1


# -- fixed loci ------------------------------------------------------------


@dataclass(frozen=True)
class FixedLocus:
    kind: str  # "TwoSections" | "DoubleCover"
    ramification_points: tuple[CurvePoint, ...] = ()


def fixed_locus(f: FunctionElement) -> FixedLocus:
    """Fixed curve of sigma_f, u^2 = f v^2.

    A square class splits into two sections. Otherwise the double cover is
    branched exactly over the points where f has odd valuation; the list can
    be empty when div f = 2D with D non-principal (an unramified cover).
    """
    if f.is_zero():
        raise ZeroFunction("fixed locus of sigma_0 is undefined")
    cls = is_square_class(f)
    if cls.is_square:
        return FixedLocus("TwoSections")
    d = divisor_of(f)
    return FixedLocus("DoubleCover", tuple(P for P, n in d.terms if n % 2))


# -- Klein four extension --------------------------------------------------


def _has_odd_valuation(g: FunctionElement) -> bool:
    return any(v % 2 for v in rational_valuations(g).values())


def _polys_of_weight(w: int, p: int, monic: bool):
    """Polynomials with exactly w coefficients (degree w - 1; w = 0 is zero),
    lexicographic in low-to-high coefficients."""
    if w == 0:
        yield poly.ZERO
        return
    leads = [1] if monic else range(1, p)
    for lead in leads:
        for low in itertools.product(range(p), repeat=w - 1):
            yield poly.from_low(list(low) + [lead], p)


def klein_four_candidates(p: int, degree_bound: int):
    """Triples (a0, a1, b) of polynomials, a = a0 + a1 y, ordered by total
    weight (number of coefficients), then by the split, then lexicographically.

    b is monic since (a, b) and (c a, c b) give the same matrix. The y part of
    a is needed: at 2-torsion points y is the only uniformizer available.
    """
    top = degree_bound + 1
    for total in range(1, 3 * top + 1):
        for wb in range(1, min(total, top) + 1):
            for w1 in range(min(total - wb, top) + 1):
                w0 = total - wb - w1
                if w0 > top or w0 + w1 == 0:
                    continue
                for b in _polys_of_weight(wb, p, monic=True):
                    for a1 in _polys_of_weight(w1, p, monic=False):
                        for a0 in _polys_of_weight(w0, p, monic=False):
                            yield a0, a1, b


def klein_four_extend(f: FunctionElement, degree_bound: int = DEFAULT_KLEIN.degree_bound) -> PGLMat:
    """tau = [[a, -b f], [b, -a]] commuting with sigma_f, with det tau and
    det(sigma_f tau) both non-squares.

    A candidate is accepted only with an odd-valuation certificate for both
    determinants, so acceptance never depends on a support computation (the
    norm a^2 - b^2 f usually has zeros off the rational points).
    """
    if f.is_zero():
        raise ZeroFunction("klein_four_extend needs f != 0")
    if is_square_class(f).is_square:
        raise SquareF("f is a square class; sigma_f has trivial determinant")
    e = f.curve
    for a0, a1, b_ in klein_four_candidates(e.p, degree_bound):
        a = FE.make(e, a0, a1)
        b = FE.make(e, b_)
        norm = a * a - b * b * f  # det tau = -norm, det(sigma tau) = f * norm
        if norm.is_zero():
            continue
        if _has_odd_valuation(norm) and _has_odd_valuation(f * norm):
            return odd_element(a, b, f)
    raise SearchExhausted(f"no tau with coefficient degrees <= {degree_bound}")
