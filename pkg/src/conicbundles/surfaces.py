"""Symbolic ruled surfaces and conic bundles over a curve.

A decomposable surface P(O(D) + O) is stored through its divisor D; the
sections s1 (from O(D)) and s2 (from O) have self-intersection -deg D and
+deg D. Blow-ups are plain lists of base points on s1 (Z) and s2 (P). Nothing
geometric is constructed: every answer comes from integer and divisor
bookkeeping.

Genus >= 2 is supported only abstractly, through an asserted degree and
asserted principality flags.
"""

from __future__ import annotations

from dataclasses import dataclass

from .divisor import Divisor, is_linearly_equivalent, is_principal
from .errors import (
    AbstractModeMissingData,
    ContextMismatch,
    InvalidModel,
    NotExceptionalInput,
    PointExhaustion,
)
from .field_curve import CurvePoint, EllipticCurve
from .funcfield import FunctionElement, principality_witness
from .pgl2 import PGLMat, det_class, is_involution, pgl_mul, sigma

VARIANTS = ("Trivial", "Decomposable", "AtiyahA0", "AtiyahA1")


# -- the lattice Num(S) ----------------------------------------------------


@dataclass(frozen=True)
class NumClass:
    """a * sigma + b * fibre, on a surface where sigma^2 = e."""

    a: int
    b: int
    e: int


def num_intersect(c1: NumClass, c2: NumClass) -> int:
    if c1.e != c2.e:
        raise ContextMismatch(f"classes live on surfaces with sigma^2 = {c1.e} and {c2.e}")
    return c1.a * c2.a * c1.e + c1.a * c2.b + c2.a * c1.b


def section_classes(e: int, bound: int) -> list[NumClass]:
    """Numerical classes sigma + b f, |b| <= bound, that a section can have.

    Here sigma is a minimal section (sigma^2 = e <= 0). Any other section C
    meets sigma non-negatively, so C.sigma >= 0 unless C = sigma.
    """
    sig = NumClass(1, 0, e)
    out = [sig]
    for b in range(-bound, bound + 1):
        c = NumClass(1, b, e)
        if b != 0 and num_intersect(c, sig) >= 0:
            out.append(c)
    return out


def disjoint_section_pairs(e: int, bound: int) -> list[tuple[NumClass, NumClass]]:
    """Unordered pairs of candidate section classes with intersection 0.

    The minimal section may pair with itself only when e = 0; two distinct
    sections in the class sigma (e = 0) are disjoint.
    """
    cands = section_classes(e, bound)
    pairs = []
    for i, c1 in enumerate(cands):
        for c2 in cands[i:]:
            if c1 == c2 and e < 0:
                continue
            if num_intersect(c1, c2) == 0:
                pairs.append((c1, c2))
    return pairs


# -- surface models --------------------------------------------------------


@dataclass(frozen=True)
class SurfaceModel:
    """A P^1-bundle over a curve.

    Concrete mode: genus 1 with ``curve`` set, and ``D`` for Decomposable.
    Abstract mode: genus >= 2, Decomposable only, with ``degree`` and the
    asserted flags ``two_d_principal`` / ``d_principal`` standing in for D.
    """

    variant: str
    curve: EllipticCurve | None = None
    D: Divisor | None = None
    genus: int = 1
    degree: int | None = None
    two_d_principal: bool | None = None
    d_principal: bool | None = None

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise InvalidModel(f"unknown variant {self.variant!r}")
        if self.genus < 1:
            raise InvalidModel("genus must be positive")
        if self.variant.startswith("Atiyah") and self.genus != 1:
            raise InvalidModel("Atiyah surfaces live over elliptic curves")
        if self.variant == "Decomposable" and self.genus == 1:
            if self.D is None:
                raise InvalidModel("a concrete decomposable surface needs D")
            if self.curve is not None and self.D.curve != self.curve:
                raise InvalidModel("D lives on another curve")
            if self.curve is None:
                object.__setattr__(self, "curve", self.D.curve)
        if self.genus >= 2 and self.D is not None:
            raise InvalidModel("divisors are only concrete in genus 1")

    @classmethod
    def trivial(cls, curve: EllipticCurve | None = None, genus: int = 1) -> SurfaceModel:
        return cls("Trivial", curve=curve, genus=genus)

    @classmethod
    def decomposable(cls, D: Divisor) -> SurfaceModel:
        return cls("Decomposable", curve=D.curve, D=D)

    @property
    def is_abstract(self) -> bool:
        return self.genus >= 2

    def divisor_degree(self) -> int:
        if self.variant == "Trivial":
            return 0
        if self.variant != "Decomposable":
            raise InvalidModel(f"{self.variant} has no divisor")
        if self.D is not None:
            return self.D.degree
        if self.degree is None:
            raise AbstractModeMissingData("abstract decomposable surface needs a degree")
        return self.degree

    def divisor_or_zero(self) -> Divisor:
        if self.D is not None:
            return self.D
        if self.curve is None:
            raise AbstractModeMissingData("no concrete curve")
        return Divisor.zero(self.curve)


def segre_invariant(s: SurfaceModel) -> int:
    if s.variant in ("Trivial", "AtiyahA0"):
        return 0
    if s.variant == "AtiyahA1":
        return 1
    return -abs(s.divisor_degree())


# -- Aut_C -----------------------------------------------------------------

AUT_KINDS = ("FullPGL2k", "Gm", "GmSemiZ2", "KleinFour", "Trivial", "Z2", "Ga")


@dataclass(frozen=True)
class AutCGroup:
    """Fibrewise automorphism group, named by kind.

    ``Ga`` is used for the A0 surface. ``witnesses`` are generators of the
    finite part when they are computable.
    """

    kind: str
    witnesses: tuple[PGLMat, ...] = ()
    note: str | None = None


def _d_flags(s: SurfaceModel) -> tuple[bool, bool]:
    """(D principal, 2D principal), computed or asserted."""
    if s.D is not None:
        return is_principal(s.D), is_principal(2 * s.D)
    if s.two_d_principal is None:
        raise AbstractModeMissingData("abstract mode needs an asserted two_d_principal")
    return bool(s.d_principal), s.two_d_principal


def aut_c_ruled(s: SurfaceModel) -> AutCGroup:
    if s.variant == "Trivial":
        return AutCGroup("FullPGL2k")
    if s.variant == "AtiyahA1":
        return AutCGroup("KleinFour", note="kernel (Z/2)^2, symbolic")
    if s.variant == "AtiyahA0":
        return AutCGroup("Ga", note="kernel G_a, symbolic")
    if s.divisor_degree() != 0:
        return AutCGroup("Gm", note="deg D != 0: outside the certified range, Gm reported as placeholder")
    d_pr, two_d_pr = _d_flags(s)
    if d_pr:
        return AutCGroup("FullPGL2k", note="D is principal, the surface is trivial")
    if not two_d_pr:
        return AutCGroup("Gm")
    if s.D is None:
        return AutCGroup("GmSemiZ2", note="asserted, no witness in abstract mode")
    beta = principality_witness(2 * s.D)
    return AutCGroup("GmSemiZ2", (sigma(beta),))


# -- elementary transformations --------------------------------------------


def _fresh_points(e: EllipticCurve, used: set[CurvePoint], k: int) -> list[CurvePoint]:
    out = []
    for P in e.points:
        if P not in used:
            out.append(P)
            if len(out) == k:
                return out
    raise PointExhaustion(f"{e} has no {k} unused rational points")


def _normalized_start(s: SurfaceModel) -> SurfaceModel:
    if s.variant == "Trivial":
        if s.is_abstract:
            return SurfaceModel("Decomposable", genus=s.genus, degree=0)
        if s.curve is None:
            raise AbstractModeMissingData("a trivial concrete surface needs its curve")
        return SurfaceModel.decomposable(Divisor.zero(s.curve))
    if s.variant != "Decomposable":
        raise InvalidModel("elementary transformation chains start from a decomposable surface")
    # P(O(D) + O) = P(O(-D) + O): work with deg D >= 0
    if s.D is not None:
        return SurfaceModel.decomposable(-s.D) if s.D.degree < 0 else s
    return SurfaceModel("Decomposable", genus=s.genus, degree=abs(s.divisor_degree()))


def elementary_transform_chain(s: SurfaceModel, orbit_sizes: list[int]) -> list[SurfaceModel]:
    """Surfaces S_0, ..., S_n with S_{i+1} obtained by k_i elementary
    transformations at fresh points: D grows by k_i points and the Segre
    invariant drops by k_i.

    Fresh points are the smallest rational points (in point order) not yet in
    any divisor of the chain.
    """
    if any(k < 1 for k in orbit_sizes):
        raise InvalidModel("orbit sizes must be positive")
    cur = _normalized_start(s)
    chain = [cur]
    if cur.D is None:
        for k in orbit_sizes:
            cur = SurfaceModel("Decomposable", genus=cur.genus, degree=cur.degree + k)
            chain.append(cur)
        return chain
    e = cur.D.curve
    used = set(cur.D.support)
    for k in orbit_sizes:
        pts = _fresh_points(e, used, k)
        used.update(pts)
        cur = SurfaceModel.decomposable(cur.D + Divisor.of_points(e, pts))
        chain.append(cur)
    return chain


def validate_chain(chain: list[SurfaceModel], orbit_sizes: list[int]) -> bool:
    if len(chain) != len(orbit_sizes) + 1:
        return False
    seg = [segre_invariant(m) for m in chain]
    for i, k in enumerate(orbit_sizes):
        if seg[i + 1] != seg[i] - k:
            return False
        a, b = chain[i], chain[i + 1]
        if a.D is not None:
            step = b.D - a.D
            if step.degree != k or any(n != 1 for _, n in step.terms):
                return False
            if set(step.support) & set(a.D.support):
                return False
    return True


# -- conic bundles ---------------------------------------------------------


@dataclass(frozen=True)
class ConicBundleModel:
    """Blow-up of a decomposable surface at Z on s1 and P on s2.

    ``klein`` optionally carries a pair (sigma, tau) of fibrewise involutions
    claimed to generate Aut_C.
    """

    base: SurfaceModel
    Z: tuple[CurvePoint, ...] = ()
    P: tuple[CurvePoint, ...] = ()
    klein: tuple[PGLMat, PGLMat] | None = None

    def __post_init__(self):
        if self.base.variant not in ("Decomposable", "Trivial"):
            raise InvalidModel("conic bundles are built on decomposable surfaces")
        if self.base.is_abstract:
            raise InvalidModel("conic bundles are only modelled in genus 1")
        object.__setattr__(self, "Z", tuple(self.Z))
        object.__setattr__(self, "P", tuple(self.P))
        pts = self.Z + self.P
        if len(set(pts)) != len(pts):
            raise InvalidModel("two blown-up points lie in the same fibre")
        e = self.curve
        if e is None:
            raise InvalidModel("conic bundle needs a concrete curve")
        try:
            e.check(*pts)
        except Exception as exc:
            raise InvalidModel(str(exc)) from exc

    @property
    def curve(self) -> EllipticCurve | None:
        return self.base.curve

    @property
    def D(self) -> Divisor:
        return self.base.divisor_or_zero()

    def self_intersections(self) -> tuple[int, int]:
        d = self.D.degree
        return -d - len(self.Z), d - len(self.P)


@dataclass(frozen=True)
class Exceptionality:
    exceptional: bool
    n: int | None = None


def is_exceptional(cb: ConicBundleModel) -> Exceptionality:
    s1, s2 = cb.self_intersections()
    if s1 == s2 < 0:
        return Exceptionality(True, -s1)
    return Exceptionality(False)


def swap_target(cb: ConicBundleModel) -> Divisor:
    """sum Z - sum P + 2D, principal iff a swapping involution exists."""
    e = cb.curve
    return Divisor.of_points(e, cb.Z) - Divisor.of_points(e, cb.P) + 2 * cb.D


@dataclass(frozen=True)
class SwapInvolution:
    exists: bool
    f: FunctionElement | None = None
    M: PGLMat | None = None


def swap_involution(cb: ConicBundleModel) -> SwapInvolution:
    e = cb.curve
    lhs = -2 * cb.D
    rhs = Divisor.of_points(e, cb.Z) - Divisor.of_points(e, cb.P)
    if not is_linearly_equivalent(lhs, rhs):
        return SwapInvolution(False)
    f = principality_witness(swap_target(cb))
    return SwapInvolution(True, f, sigma(f))


def aut_c_conic(cb: ConicBundleModel) -> AutCGroup:
    if not is_exceptional(cb).exceptional:
        raise NotExceptionalInput("Aut_C of a conic bundle is only computed for exceptional ones")
    sw = swap_involution(cb)
    if sw.exists:
        return AutCGroup("GmSemiZ2", (sw.M,))
    return AutCGroup("Gm")


@dataclass(frozen=True)
class KleinCheck:
    valid: bool
    reason: str | None = None


def klein_four_certificate(sig: PGLMat, tau: PGLMat) -> KleinCheck:
    if sig == tau:
        return KleinCheck(False, "equal")
    if sig.is_identity() or tau.is_identity():
        return KleinCheck(False, "identity")
    if not is_involution(sig) or not is_involution(tau):
        return KleinCheck(False, "not an involution")
    st = pgl_mul(sig, tau)
    if st != pgl_mul(tau, sig):
        return KleinCheck(False, "not commuting")
    for name, m in (("sigma", sig), ("tau", tau), ("sigma*tau", st)):
        if det_class(m).is_square:
            return KleinCheck(False, f"det square ({name})")
    return KleinCheck(True)
