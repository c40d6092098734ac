"""Prime fields F_p (p > 3) and short Weierstrass elliptic curves over them."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import lcm

from sympy import isprime
from sympy.ntheory import sqrt_mod

from .errors import PointNotOnCurve


def check_modulus(p: int) -> None:
    if p <= 3 or not isprime(p):
        raise ValueError(f"modulus must be a prime > 3, got {p}")


@dataclass(frozen=True)
class FieldElement:
    value: int
    p: int

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % self.p)

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.p != self.p:
                raise ValueError("field elements over different primes")
            return other.value
        return int(other)

    def __add__(self, other):
        return FieldElement(self.value + self._coerce(other), self.p)

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.value - self._coerce(other), self.p)

    def __rsub__(self, other):
        return FieldElement(self._coerce(other) - self.value, self.p)

    def __mul__(self, other):
        return FieldElement(self.value * self._coerce(other), self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(-self.value, self.p)

    def inverse(self) -> FieldElement:
        if self.value == 0:
            raise ZeroDivisionError("0 has no inverse in F_p")
        return FieldElement(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other):
        return self * FieldElement(self._coerce(other), self.p).inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return FieldElement(pow(self.value, n, self.p), self.p)

    def is_square(self) -> bool:
        return self.value == 0 or pow(self.value, (self.p - 1) // 2, self.p) == 1

    def sqrt(self) -> FieldElement | None:
        r = sqrt_mod(self.value, self.p)
        return None if r is None else FieldElement(r, self.p)

    def __int__(self):
        return self.value


@dataclass(frozen=True)
class CurvePoint:
    """An affine point (x, y) or the point at infinity (x = y = None)."""

    x: int | None = None
    y: int | None = None

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def sort_key(self) -> tuple:
        return (0, 0, 0) if self.x is None else (1, self.x, self.y)

    def __lt__(self, other: CurvePoint) -> bool:
        return self.sort_key() < other.sort_key()

    def __repr__(self):
        return "O" if self.x is None else f"({self.x},{self.y})"


INFINITY = CurvePoint()


def is_square_mod(v: int, p: int) -> bool:
    v %= p
    return v == 0 or pow(v, (p - 1) // 2, p) == 1


@dataclass(frozen=True)
class EllipticCurve:
    """y^2 = x^3 + a x + b over F_p."""

    p: int
    a: int
    b: int

    def __post_init__(self):
        check_modulus(self.p)
        object.__setattr__(self, "a", self.a % self.p)
        object.__setattr__(self, "b", self.b % self.p)
        if self.discriminant == 0:
            raise ValueError(f"singular curve: 4a^3 + 27b^2 = 0 mod {self.p}")

    @property
    def discriminant(self) -> int:
        return (4 * self.a**3 + 27 * self.b**2) % self.p

    @property
    def j_invariant(self) -> int:
        p = self.p
        num = 1728 * 4 * self.a**3
        return num * pow(self.discriminant, -1, p) % p

    def rhs(self, x: int) -> int:
        return (x * x * x + self.a * x + self.b) % self.p

    def contains(self, P: CurvePoint) -> bool:
        if P.is_infinity:
            return True
        if not (0 <= P.x < self.p and 0 <= P.y < self.p):
            return False
        return (P.y * P.y - self.rhs(P.x)) % self.p == 0

    def point(self, x: int, y: int) -> CurvePoint:
        P = CurvePoint(x % self.p, y % self.p)
        if not self.contains(P):
            raise PointNotOnCurve(f"{P} is not on {self}")
        return P

    def check(self, *points: CurvePoint) -> None:
        for P in points:
            if not self.contains(P):
                raise PointNotOnCurve(f"{P} is not on {self}")

    def neg(self, P: CurvePoint) -> CurvePoint:
        if P.is_infinity:
            return P
        return CurvePoint(P.x, (-P.y) % self.p)

    def add(self, P: CurvePoint, Q: CurvePoint) -> CurvePoint:
        if P.is_infinity:
            return Q
        if Q.is_infinity:
            return P
        p = self.p
        if P.x == Q.x:
            if (P.y + Q.y) % p == 0:
                return INFINITY
            lam = (3 * P.x * P.x + self.a) * pow(2 * P.y, -1, p) % p
        else:
            lam = (Q.y - P.y) * pow(Q.x - P.x, -1, p) % p
        x3 = (lam * lam - P.x - Q.x) % p
        y3 = (lam * (P.x - x3) - P.y) % p
        return CurvePoint(x3, y3)

    def sub(self, P: CurvePoint, Q: CurvePoint) -> CurvePoint:
        return self.add(P, self.neg(Q))

    def mul(self, n: int, P: CurvePoint) -> CurvePoint:
        """n * P by double-and-add; negative n allowed."""
        if n < 0:
            return self.mul(-n, self.neg(P))
        result, addend = INFINITY, P
        while n:
            if n & 1:
                result = self.add(result, addend)
            addend = self.add(addend, addend)
            n >>= 1
        return result

    def order(self, P: CurvePoint) -> int:
        k, Q = 1, P
        while not Q.is_infinity:
            Q = self.add(Q, P)
            k += 1
        return k

    @cached_property
    def points(self) -> tuple[CurvePoint, ...]:
        pts = [INFINITY]
        for x in range(self.p):
            r = self.rhs(x)
            if r == 0:
                pts.append(CurvePoint(x, 0))
            elif is_square_mod(r, self.p):
                y = sqrt_mod(r, self.p)
                pts.extend(sorted([CurvePoint(x, y), CurvePoint(x, self.p - y)]))
        return tuple(pts)

    def group_structure(self) -> tuple[int, int]:
        """(n1, n2) with E(F_p) = Z/n1 x Z/n2 and n1 | n2."""
        n = len(self.points)
        exponent = 1
        for P in self.points:
            o = self.order(P)
            exponent = lcm(exponent, o)
        return n // exponent, exponent

    def __repr__(self):
        return f"EllipticCurve(y^2 = x^3 + {self.a}x + {self.b} over F_{self.p})"


def point_add(e: EllipticCurve, P: CurvePoint, Q: CurvePoint) -> CurvePoint:
    e.check(P, Q)
    return e.add(P, Q)


def enumerate_points(e: EllipticCurve) -> list[CurvePoint]:
    return list(e.points)


def hasse_ok(e: EllipticCurve) -> bool:
    n = len(e.points)
    # |N - p - 1| <= 2 sqrt(p)  <=>  (N - p - 1)^2 <= 4p
    return (n - e.p - 1) ** 2 <= 4 * e.p


def find_torsion(e: EllipticCurve, n: int) -> CurvePoint | None:
    """Smallest point (in sort order) of exact order n, or None."""
    if n < 1:
        raise ValueError("torsion order must be positive")
    for P in e.points:
        if e.mul(n, P).is_infinity and e.order(P) == n:
            return P
    return None


def all_curves(p: int) -> list[EllipticCurve]:
    """Every nonsingular (a, b) pair over F_p."""
    check_modulus(p)
    return [
        EllipticCurve(p, a, b)
        for a in range(p)
        for b in range(p)
        if (4 * a**3 + 27 * b**2) % p
    ]

