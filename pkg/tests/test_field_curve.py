import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conicbundles.errors import PointNotOnCurve
from conicbundles.field_curve import (
    INFINITY,
    CurvePoint,
    EllipticCurve,
    FieldElement,
    all_curves,
    enumerate_points,
    find_torsion,
    hasse_ok,
    point_add,
)
from oracles import brute_add, legendre_count, scan_points


def test_field_element_arithmetic():
    a, b = FieldElement(3, 7), FieldElement(5, 7)
    assert (a + b).value == 1
    assert (a - b).value == 5
    assert (a * b).value == 1
    assert (a / b * b) == a
    assert (a**-1 * a).value == 1
    assert FieldElement(-1, 7).value == 6


def test_field_element_sqrt():
    for v in range(13):
        r = FieldElement(v, 13).sqrt()
        assert (r is not None) == FieldElement(v, 13).is_square()
        if r is not None:
            assert (r * r).value == v


def test_zero_has_no_inverse():
    with pytest.raises(ZeroDivisionError):
        FieldElement(0, 5).inverse()


@pytest.mark.parametrize("p", [2, 3, 9, 1])
def test_bad_modulus(p):
    with pytest.raises(ValueError):
        EllipticCurve(p, 1, 1)


def test_singular_curve_rejected():
    with pytest.raises(ValueError):
        EllipticCurve(5, 0, 0)


def test_add_identity(e5):
    for P in e5.points:
        assert point_add(e5, P, INFINITY) == P
        assert point_add(e5, INFINITY, P) == P


def test_doubling_example(e5):
    P = CurvePoint(2, 1)
    assert point_add(e5, P, P) == CurvePoint(0, 0)
    assert brute_add(e5, P, P) == CurvePoint(0, 0)


def test_two_torsion_sum(e5b):
    assert point_add(e5b, CurvePoint(0, 0), CurvePoint(2, 0)) == CurvePoint(3, 0)
    assert brute_add(e5b, CurvePoint(0, 0), CurvePoint(2, 0)) == CurvePoint(3, 0)


def test_add_rejects_foreign_point(e5):
    with pytest.raises(PointNotOnCurve):
        point_add(e5, CurvePoint(1, 1), INFINITY)
    with pytest.raises(PointNotOnCurve):
        e5.point(1, 1)


@pytest.mark.parametrize("p", [5, 7])
def test_group_law_matches_brute_force(p):
    for e in all_curves(p)[::3]:
        for P, Q in itertools.combinations_with_replacement(e.points, 2):
            assert e.add(P, Q) == brute_add(e, P, Q)


def test_point_counts(e5, e5b):
    assert len(enumerate_points(e5b)) == 4
    assert len(enumerate_points(e5)) == 8
    assert INFINITY in enumerate_points(e5)


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_enumeration_matches_scan_and_hasse(p):
    for e in all_curves(p):
        pts = enumerate_points(e)
        assert set(pts) == scan_points(e)
        assert len(pts) == len(set(pts)) == legendre_count(e)
        assert hasse_ok(e)


@pytest.mark.parametrize("p", [5, 7])
def test_group_axioms_exhaustive(p):
    for e in all_curves(p):
        pts = e.points
        for P in pts:
            assert e.add(P, e.neg(P)) == INFINITY
            for Q in pts:
                assert e.add(P, Q) == e.add(Q, P)
                assert e.contains(e.add(P, Q))
        for P, Q, R in itertools.product(pts, repeat=3):
            assert e.add(e.add(P, Q), R) == e.add(P, e.add(Q, R))


def test_group_axioms_larger_curves():
    for e in [EllipticCurve(13, 1, 0), EllipticCurve(11, 1, 3)]:
        pts = e.points
        for P, Q, R in itertools.product(pts, repeat=3):
            assert e.add(e.add(P, Q), R) == e.add(P, e.add(Q, R))


@pytest.mark.parametrize("p", [5, 7, 11])
def test_scalar_multiplication(p):
    for e in all_curves(p)[::4]:
        N = len(e.points)
        for P in e.points:
            acc = INFINITY
            for n in range(N + 1):
                assert e.mul(n, P) == acc
                assert e.mul(-n, P) == e.neg(acc)
                acc = e.add(acc, P)


def test_find_torsion_examples(e5, e5b):
    p1 = find_torsion(e5, 4)
    assert p1 == CurvePoint(2, 1)
    assert not e5.mul(2, p1).is_infinity and e5.mul(4, p1).is_infinity
    assert find_torsion(e5b, 4) is None
    assert find_torsion(e5, 1) == INFINITY
    with pytest.raises(ValueError):
        find_torsion(e5, 0)


def test_find_torsion_exact_order():
    for e in all_curves(7):
        for n in range(1, 13):
            P = find_torsion(e, n)
            orders = [e.order(Q) for Q in e.points]
            assert (P is None) == (n not in orders)
            if P is not None:
                assert e.order(P) == n


def test_group_structure(e5, e5b, e13):
    assert e5.group_structure() == (2, 4)
    assert e5b.group_structure() == (2, 2)
    assert e13.group_structure() == (2, 10)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10), st.integers(0, 10), st.data())
def test_random_sums_stay_on_curve(a, b, data):
    if (4 * a**3 + 27 * b**2) % 11 == 0:
        return
    e = EllipticCurve(11, a, b)
    P = data.draw(st.sampled_from(e.points))
    Q = data.draw(st.sampled_from(e.points))
    assert e.contains(e.add(P, Q))
    assert e.sub(e.add(P, Q), Q) == P
