"""Dense univariate polynomials over F_p.

Polynomials are tuples of ints, highest degree first (the convention of
``sympy.polys.galoistools``, which does the heavy lifting). The zero
polynomial is the empty tuple.
"""

from __future__ import annotations

from sympy.ntheory import sqrt_mod
from sympy.polys import galoistools as gt
from sympy.polys.domains import PythonIntegerRing

Poly = tuple[int, ...]

_ZZ = PythonIntegerRing()

ZERO: Poly = ()
ONE: Poly = (1,)


def _t(seq) -> Poly:
    # galoistools may hand back gmpy integers from modular inversion
    return tuple(int(c) for c in seq)


def _strip(out: list[int]) -> Poly:
    i = 0
    while i < len(out) and not out[i]:
        i += 1
    return tuple(out[i:])


def make(coeffs, p: int) -> Poly:
    """Build from an iterable of ints, highest degree first."""
    return _strip([int(c) % p for c in coeffs])


def from_low(coeffs, p: int) -> Poly:
    """Build from coefficients listed lowest degree first."""
    return make(list(coeffs)[::-1], p)


def to_low(f: Poly) -> list[int]:
    return list(f[::-1])


def const(c: int, p: int) -> Poly:
    c %= p
    return (c,) if c else ZERO


def linear(root: int, p: int) -> Poly:
    """The monic polynomial x - root."""
    return make([1, -root], p)


def degree(f: Poly) -> int:
    return len(f) - 1


def lc(f: Poly) -> int:
    return f[0] if f else 0


def add(f: Poly, g: Poly, p: int) -> Poly:
    if len(f) < len(g):
        f, g = g, f
    d = len(f) - len(g)
    return _strip(list(f[:d]) + [(a + b) % p for a, b in zip(f[d:], g)])


def sub(f: Poly, g: Poly, p: int) -> Poly:
    return add(f, neg(g, p), p)


def neg(f: Poly, p: int) -> Poly:
    return tuple(-c % p for c in f)


def mul(f: Poly, g: Poly, p: int) -> Poly:
    if not f or not g:
        return ZERO
    out = [0] * (len(f) + len(g) - 1)
    for i, fi in enumerate(f):
        if fi:
            for j, gj in enumerate(g):
                out[i + j] += fi * gj
    return tuple(c % p for c in out)


def scale(f: Poly, c: int, p: int) -> Poly:
    c %= p
    if not c:
        return ZERO
    return tuple(a * c % p for a in f)


def divmod_(f: Poly, g: Poly, p: int) -> tuple[Poly, Poly]:
    q, r = gt.gf_div(list(f), list(g), p, _ZZ)
    return _t(q), _t(r)


def exact_quo(f: Poly, g: Poly, p: int) -> Poly:
    q, r = divmod_(f, g, p)
    if r:
        raise ArithmeticError("polynomial division is not exact")
    return q


def gcd(f: Poly, g: Poly, p: int) -> Poly:
    """Monic gcd; gcd(0, 0) is 0."""
    return _t(gt.gf_gcd(list(f), list(g), p, _ZZ))


def monic(f: Poly, p: int) -> tuple[int, Poly]:
    if not f:
        return 0, ZERO
    c, m = gt.gf_monic(list(f), p, _ZZ)
    return int(c), _t(m)


def evaluate(f: Poly, x: int, p: int) -> int:
    acc = 0
    for c in f:
        acc = (acc * x + c) % p
    return acc


def root_order(f: Poly, root: int, p: int) -> tuple[int, Poly]:
    """Return (k, q) with f = (x - root)^k * q and q(root) != 0.

    ``f`` must be nonzero. Uses synthetic division.
    """
    if not f:
        raise ValueError("zero polynomial has no finite root order")
    root %= p
    k = 0
    while len(f) > 1:
        out = []
        acc = 0
        for c in f:
            acc = (acc * root + c) % p
            out.append(acc)
        if out[-1]:
            break
        f = tuple(out[:-1])
        k += 1
    return k, f


def power(f: Poly, n: int, p: int) -> Poly:
    return _t(gt.gf_pow(list(f), n, p, _ZZ))


def sqrt_exact(f: Poly, p: int) -> Poly | None:
    """r with r^2 = f, or None when f is not a square in F_p[x]."""
    if not f:
        return ZERO
    s = sqrt_mod(f[0], p)
    if s is None:
        return None
    _, m = monic(f, p)
    _, factors = gt.gf_sqf_list(list(m), p, _ZZ)
    r = ONE
    for g, k in factors:
        if k % 2:
            return None
        r = mul(r, power(_t(g), k // 2, p), p)
    r = scale(r, s, p)
    return r if mul(r, r, p) == f else None
