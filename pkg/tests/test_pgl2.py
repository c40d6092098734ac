import random

import pytest

from conicbundles.errors import NotInvolution, SearchExhausted, SingularMatrix, SquareF, ZeroFunction
from conicbundles.funcfield import FunctionElement as FE
from conicbundles.funcfield import is_square_class, random_function
from conicbundles.pgl2 import (
    PGLMat,
    det_class,
    even_element,
    fixed_locus,
    involution_normal_form,
    involutions_conjugate,
    klein_four_candidates,
    klein_four_extend,
    normalizer_decompose,
    odd_element,
    pgl_mul,
    sigma,
    sqrt_product,
)
from conicbundles.surfaces import klein_four_certificate


def random_matrix(e, rng, length=3):
    """Word in diagonal, unipotent and sigma generators.

    Its determinant is a product of functions with rational support, so
    square classes stay decidable in the rational model.
    """
    M = PGLMat.identity(e)
    for _ in range(length):
        g = random_function(e, rng)
        kind = rng.randrange(3)
        if kind == 0:
            G = PGLMat.diag(g, 1)
        elif kind == 1:
            G = PGLMat.make(1, g, 0, 1)
        else:
            G = sigma(g)
        M = M @ G
    return M


def nonsquare_functions(e, rng, n):
    out = []
    while len(out) < n:
        f = random_function(e, rng)
        if not is_square_class(f).is_square:
            out.append(f)
    return out


def test_canonical_scaling(e5):
    x = FE.x(e5)
    A = PGLMat.make(2 * x, 4, x, 1)
    assert A.m00 == FE.constant(e5, 1)
    assert A == PGLMat.make(x, 2, 3 * x, 3)
    with pytest.raises(SingularMatrix):
        PGLMat.make(x, x, 1, 1)


def test_mul_examples(e13):
    rng = random.Random(1)
    A = random_matrix(e13, rng)
    assert pgl_mul(A, A.inverse()).is_identity()
    f = random_function(e13, rng)
    assert (sigma(f) @ sigma(f)).is_identity()
    a1, b1, a2, b2 = (random_function(e13, rng) for _ in range(4))
    prod = even_element(a1, b1, f) @ even_element(a2, b2, f)
    assert prod == PGLMat.make(
        a1 * a2 + b1 * b2 * f, (a1 * b2 + a2 * b1) * f, a2 * b1 + a1 * b2, a1 * a2 + b1 * b2 * f
    )


def test_det_class_examples(e13):
    assert det_class(PGLMat.identity(e13)).is_square
    # div x = 2((0,0) - O) with (0,0) - O not principal
    assert not det_class(sigma(FE.x(e13))).is_square
    rng = random.Random(2)
    g = random_function(e13, rng)
    assert det_class(PGLMat.diag(g, 1)).verdict == is_square_class(g).verdict


def test_det_class_multiplicative(e13):
    rng = random.Random(3)
    for _ in range(15):
        A, B = random_matrix(e13, rng), random_matrix(e13, rng)
        a, b = det_class(A).is_square, det_class(B).is_square
        ab = det_class(A @ B).is_square
        # classes form an F_2-vector space, not just Z/2
        if a and b:
            assert ab
        if a != b:
            assert not ab
        assert is_square_class((A @ B).det() / (A.det() * B.det())).is_square


def test_normal_form_examples(e13):
    rng = random.Random(4)
    g = random_function(e13, rng)
    f, C = involution_normal_form(sigma(g))
    assert f == g and C.is_identity()
    D = PGLMat.diag(FE.constant(e13, -1), 1)
    f, C = involution_normal_form(D)
    assert is_square_class(f).is_square
    assert C @ D @ C.inverse() == sigma(f)


def test_normal_form_of_conjugates(e13):
    rng = random.Random(5)
    for f in nonsquare_functions(e13, rng, 8):
        P = random_matrix(e13, rng)
        A = P @ sigma(f) @ P.inverse()
        f2, C = involution_normal_form(A)
        assert C @ A @ C.inverse() == sigma(f2)
        assert is_square_class(f2 / f).is_square
        assert det_class(A).verdict == is_square_class(-f2).verdict
        assert involutions_conjugate(f, f2).conjugate


def test_normal_form_rejects_non_involutions(e13):
    x = FE.x(e13)
    with pytest.raises(NotInvolution):
        involution_normal_form(PGLMat.identity(e13))
    with pytest.raises(NotInvolution):
        involution_normal_form(PGLMat.make(x, 1, 0, 1))


def test_conjugate_examples(e13):
    rng = random.Random(6)
    f = nonsquare_functions(e13, rng, 1)[0]
    assert involutions_conjugate(f, f).conjugate
    lam = random_function(e13, rng)
    r = involutions_conjugate(f, lam * lam * f)
    assert r.conjugate and r.residual == 1
    assert r.conjugator @ sigma(f) @ r.conjugator.inverse() == sigma(lam * lam * f)
    P = next(Q for Q in e13.points if not Q.is_infinity and Q.y)
    assert not involutions_conjugate(FE.x(e13) - P.x, FE.constant(e13, 1)).conjugate
    with pytest.raises(ZeroFunction):
        involutions_conjugate(f, FE.constant(e13, 0))


def test_conjugate_residual_constant(e13):
    # 2 is not a square mod 13, so sigma_f and sigma_{2f} are conjugate only
    # over the algebraic closure; the residual constant records that
    x = FE.x(e13)
    f = x - 1
    r = involutions_conjugate(f, 2 * f)
    assert r.conjugate and r.residual is not None
    assert r.conjugator @ sigma(f) @ r.conjugator.inverse() == sigma(r.residual * 2 * f)


def test_normalizer_examples(e13):
    x = FE.x(e13)
    f = x  # non-square class
    assert normalizer_decompose(sigma(f), f) == normalizer_decompose(even_element(FE.constant(e13, 0), FE.constant(e13, 1), f), f)
    part = normalizer_decompose(sigma(f), f)
    assert part.kind == "EvenPart" and part.a.is_zero() and part.b == FE.constant(e13, 1)
    part = normalizer_decompose(PGLMat.diag(FE.constant(e13, 1), -1), f)
    assert part.kind == "OddPart" and part.a == FE.constant(e13, 1) and part.b.is_zero()
    part = normalizer_decompose(PGLMat.make(x, f, 1, x), f)
    assert part.kind == "EvenPart" and part.a == x and part.b == FE.constant(e13, 1)
    assert normalizer_decompose(PGLMat.make(x, 1, 1, 2), f).kind == "NotMember"
    with pytest.raises(SquareF):
        normalizer_decompose(sigma(f), x * x)


def test_normalizer_homomorphism(e13):
    rng = random.Random(7)
    f = FE.x(e13) * (FE.x(e13) - 1)
    f = nonsquare_functions(e13, rng, 1)[0]
    for _ in range(15):
        u = (random_function(e13, rng), random_function(e13, rng))
        v = (random_function(e13, rng), random_function(e13, rng))
        prod = even_element(*u, f) @ even_element(*v, f)
        part = normalizer_decompose(prod, f)
        a, b = sqrt_product(u, v, f)
        expect = normalizer_decompose(even_element(a, b, f), f)
        assert part == expect


def test_diagonal_conjugation_flips_b(e13):
    rng = random.Random(8)
    f = FE.x(e13)
    D = PGLMat.diag(FE.constant(e13, 1), -1)
    for _ in range(5):
        a, b = random_function(e13, rng), random_function(e13, rng)
        assert D @ even_element(a, b, f) @ D.inverse() == even_element(a, -b, f)


def test_odd_elements_are_involutions(e13):
    rng = random.Random(9)
    f = FE.x(e13)
    for _ in range(5):
        t = odd_element(random_function(e13, rng), random_function(e13, rng), f)
        assert (t @ t).is_identity()
        assert t @ sigma(f) == sigma(f) @ t


def test_fixed_locus_examples(e13):
    rng = random.Random(10)
    g = random_function(e13, rng)
    assert fixed_locus(g * g).kind == "TwoSections"
    P = next(Q for Q in e13.points if not Q.is_infinity and Q.y)
    fl = fixed_locus(FE.x(e13) - P.x)
    assert fl.kind == "DoubleCover"
    assert set(fl.ramification_points) == {P, e13.neg(P)}
    with pytest.raises(ZeroFunction):
        fixed_locus(FE.constant(e13, 0))


def test_fixed_locus_parity(e13):
    rng = random.Random(11)
    for f in nonsquare_functions(e13, rng, 20):
        fl = fixed_locus(f)
        assert fl.kind == "DoubleCover"
        assert len(fl.ramification_points) % 2 == 0


def test_fixed_locus_unramified_cover(e13):
    # div x = 2D with D not principal: the cover u^2 = x is unramified
    fl = fixed_locus(FE.x(e13))
    assert fl.kind == "DoubleCover" and fl.ramification_points == ()


def test_klein_four_extend(e5, e13):
    rng = random.Random(12)
    fs = nonsquare_functions(e13, rng, 4) + [FE.x(e5), FE.x(e5) - 2]
    for f in fs:
        tau = klein_four_extend(f)
        s = sigma(f)
        assert (tau @ tau).is_identity()
        assert s @ tau == tau @ s
        assert not det_class(tau).is_square
        assert not det_class(s @ tau).is_square
        assert klein_four_certificate(s, tau).valid
        part = normalizer_decompose(tau, f)
        assert part.kind == "OddPart"
        norm = part.a * part.a - part.b * part.b * f
        # all three fixed curves are double covers: each datum is a non-square
        for g in (f, norm, f * norm):
            assert not is_square_class(g).is_square


def test_klein_four_extend_errors(e13):
    g = random_function(e13, random.Random(13))
    with pytest.raises(SquareF):
        klein_four_extend(g * g)
    with pytest.raises(ZeroFunction):
        klein_four_extend(FE.constant(e13, 0))
    with pytest.raises(SearchExhausted):
        klein_four_extend(FE.x(e13), degree_bound=-1)


def test_klein_candidates_order():
    cands = list(zip(range(20), klein_four_candidates(5, 1)))
    weights = [len(a0) + len(a1) + len(b) for _, (a0, a1, b) in cands]
    assert weights == sorted(weights)
    assert all(b[0] == 1 for _, (_, _, b) in cands)


def test_moebius_action(e13):
    rng = random.Random(13)
    A, B = random_matrix(e13, rng), random_matrix(e13, rng)
    for _ in range(5):
        z = random_function(e13, rng)
        assert (A @ B).act(z) == A.act(B.act(z))
    f = FE.x(e13)
    # the fixed points of sigma_f are the square roots of f, so none lie in K
    for _ in range(5):
        z = random_function(e13, rng)
        assert sigma(f).act(z) != z
    assert sigma(f).act(None) == FE.constant(e13, 0)
