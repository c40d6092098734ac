import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conicbundles.classify import TAGS, MaxClass, classify_max, h_stabilizer, validate_max_class
from conicbundles.divisor import Divisor, group_sum
from conicbundles.errors import InvalidModel, MissingAssertion
from conicbundles.field_curve import INFINITY, EllipticCurve
from conicbundles.funcfield import FunctionElement as FE
from conicbundles.funcfield import divisor_of
from conicbundles.pgl2 import PGLMat, det_class, is_involution, klein_four_extend, sigma
from conicbundles.surfaces import ConicBundleModel, SurfaceModel, swap_target


def test_example_4torsion(e5, delta, example_D):
    cb = ConicBundleModel(SurfaceModel.decomposable(example_D), (), tuple(delta))
    r = classify_max(cb)
    assert r.tag == "ExceptionalCB"
    assert r.witness["aut_c"] == "GmSemiZ2" and r.witness["n"] == 2
    f = r.witness["f"]
    assert r.witness["involution"] == sigma(f)
    assert divisor_of(f) == swap_target(cb)
    assert validate_max_class(cb, r)


def test_trivial_everywhere():
    for e in (EllipticCurve(5, -1, 0), EllipticCurve(7, 3, 2), EllipticCurve(13, 1, 0)):
        r = classify_max(SurfaceModel.trivial(e))
        assert r.tag == "TrivialBundle" and validate_max_class(SurfaceModel.trivial(e), r)
    assert classify_max(SurfaceModel.trivial(genus=4)).tag == "TrivialBundle"


def test_atiyah(e5):
    assert classify_max(SurfaceModel("AtiyahA0", e5)).tag == "AtiyahA0Max"
    assert classify_max(SurfaceModel("AtiyahA1", e5)).tag == "KleinFourRuled"


def test_decomposable_degree_zero(e5, delta):
    O, p1, p2, _ = delta
    m = SurfaceModel.decomposable(Divisor.of_points(e5, [p2]) - Divisor.of_points(e5, [O]))
    r = classify_max(m)
    assert r.tag == "DecomposableDeg0Max" and r.witness["aut_c"] == "GmSemiZ2"
    M = r.witness["involution"]
    assert is_involution(M) and not det_class(M).is_square
    assert validate_max_class(m, r)
    m = SurfaceModel.decomposable(Divisor.of_points(e5, [p1]) - Divisor.of_points(e5, [O]))
    r = classify_max(m)
    assert r.tag == "DecomposableDeg0Max" and r.witness["aut_c"] == "Gm"
    assert group_sum(2 * m.D) != INFINITY
    assert validate_max_class(m, r)


def test_principal_D_is_trivial(e5, delta):
    O, p1, _, p3 = delta
    m = SurfaceModel.decomposable(Divisor.of_points(e5, [p1, p3]) - 2 * Divisor.of_points(e5, [O]))
    assert classify_max(m).tag == "TrivialBundle"


def test_abstract_genus(e5):
    m = SurfaceModel("Decomposable", genus=2, degree=0, two_d_principal=False)
    r = classify_max(m)
    assert r.tag == "NotMaximal"
    seg = r.witness["segre"]
    assert all(a > b for a, b in zip(seg, seg[1:]))
    assert validate_max_class(m, r)
    m = SurfaceModel("Decomposable", genus=2, degree=0, two_d_principal=True)
    assert classify_max(m).tag == "DecomposableDeg0Max"
    assert classify_max(SurfaceModel("Decomposable", genus=2, degree=3)).tag == "NotMaximal"
    with pytest.raises(MissingAssertion):
        classify_max(SurfaceModel("Decomposable", genus=2, degree=0))
    with pytest.raises(MissingAssertion):
        classify_max(SurfaceModel("Decomposable", genus=2))


def test_nonzero_degree_chain(e5, example_D):
    m = SurfaceModel.decomposable(example_D)
    r = classify_max(m)
    assert r.tag == "NotMaximal"
    assert len(r.witness["chain"]) == 4
    assert validate_max_class(m, r)


def test_exceptional_without_swap(e5, delta, example_D):
    q = next(Q for Q in e5.points if Q not in delta)
    cb = ConicBundleModel(SurfaceModel.decomposable(example_D), (), (delta[0], delta[1], delta[2], q))
    r = classify_max(cb)
    assert r.tag == "NotMaximal" and r.witness["aut_c"] == "Gm"
    assert r.witness["swap_obstruction"] != INFINITY
    assert validate_max_class(cb, r)


def test_klein_four_cb(e5):
    P0 = next(Q for Q in e5.points if not Q.is_infinity and Q.y)
    f = FE.x(e5) - P0.x
    pair = (sigma(f), klein_four_extend(f))
    cb = ConicBundleModel(SurfaceModel.trivial(e5), (P0,), (e5.neg(P0),), pair)
    r = classify_max(cb)
    assert r.tag == "KleinFourCB" and validate_max_class(cb, r)
    bad = ConicBundleModel(SurfaceModel.trivial(e5), (P0,), (e5.neg(P0),), (sigma(f), sigma(f)))
    with pytest.raises(InvalidModel):
        classify_max(bad)


def test_classify_rejects_other_types():
    with pytest.raises(InvalidModel):
        classify_max("not a model")


def test_validator_rejects_tampering(e5, delta, example_D):
    cb = ConicBundleModel(SurfaceModel.decomposable(example_D), (), tuple(delta))
    r = classify_max(cb)
    w = dict(r.witness)
    w["f"] = w["f"] * 2 + 1
    assert not validate_max_class(cb, MaxClass(r.tag, w, r.citations))
    w = dict(r.witness)
    w["involution"] = PGLMat.identity(e5)
    assert not validate_max_class(cb, MaxClass(r.tag, w, r.citations))
    assert not validate_max_class(cb, MaxClass("Maximalish"))
    m = SurfaceModel.decomposable(example_D)
    r = classify_max(m)
    w = dict(r.witness)
    w["segre"] = list(reversed(w["segre"]))
    assert not validate_max_class(m, MaxClass(r.tag, w, r.citations))


def test_h_stabilizer(e5, delta, example_D):
    cb = ConicBundleModel(SurfaceModel.decomposable(example_D), (), tuple(delta))
    h = h_stabilizer(cb)
    # delta is the subgroup generated by p1: every element translates it onto itself
    assert set(h["translations"]) == set(delta)


def _random_model(e, rng):
    pts = rng.sample(e.points, 6)
    kind = rng.randrange(4)
    if kind == 0:
        return SurfaceModel.trivial(e)
    d = rng.randrange(-1, 3)
    pos = pts[4 : 4 + max(d, 0) + 1]
    D = Divisor.of_points(e, pos) - Divisor.of_points(e, pts[5:6]) * (len(pos) - d)
    base = SurfaceModel.decomposable(D)
    if kind == 1:
        return base
    nz, npp = rng.randrange(3), rng.randrange(4)
    return ConicBundleModel(base, pts[:nz], pts[nz : nz + npp])


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_total_deterministic_valid(seed):
    e = EllipticCurve(13, 1, 0)
    m = _random_model(e, random.Random(seed))
    r1, r2 = classify_max(m), classify_max(m)
    assert r1.tag in TAGS
    assert r1 == r2
    assert validate_max_class(m, r1)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_permutation_invariance(seed):
    e = EllipticCurve(13, 1, 0)
    rng = random.Random(seed)
    m = _random_model(e, rng)
    if not isinstance(m, ConicBundleModel):
        return
    Z, P = list(m.Z), list(m.P)
    rng.shuffle(Z)
    rng.shuffle(P)
    m2 = ConicBundleModel(m.base, Z, P)
    assert classify_max(m2).tag == classify_max(m).tag
    assert classify_max(m2).witness.get("f") == classify_max(m).witness.get("f")


def test_chain_config(e5, example_D):
    from conicbundles.config import ChainConfig

    m = SurfaceModel.decomposable(example_D)
    r = classify_max(m, ChainConfig((2, 1)))
    assert r.witness["orbit_sizes"] == [2, 1]
    assert r.witness["segre"] == [-2, -4, -5]
    assert validate_max_class(m, r)
