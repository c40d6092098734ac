"""Maximality classes of automorphism groups of ruled surfaces and conic bundles.

``classify_max`` returns a tag together with a witness payload that the
validators in this module re-check independently. Citations are stable
string keys naming the rule that produced the verdict.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .config import DEFAULT_CHAIN, ChainConfig
from .divisor import group_sum, is_principal
from .errors import AbstractModeMissingData, InvalidModel, MissingAssertion
from .funcfield import divisor_of
from .pgl2 import det_class, involution_normal_form, is_involution, sigma
from .surfaces import (
    ConicBundleModel,
    SurfaceModel,
    aut_c_conic,
    aut_c_ruled,
    elementary_transform_chain,
    is_exceptional,
    klein_four_certificate,
    segre_invariant,
    swap_involution,
    swap_target,
    validate_chain,
)

TAGS = (
    "TrivialBundle",
    "ExceptionalCB",
    "KleinFourCB",
    "KleinFourRuled",
    "AtiyahA0Max",
    "DecomposableDeg0Max",
    "NotMaximal",
)

# citation keys
C_TRIVIAL = "max:trivial-bundle"
C_EXCEPTIONAL = "max:exceptional-conic-bundle"
C_EXC_DICHOTOMY = "rule:exceptional-swap-dichotomy"
C_SWAP = "rule:swap-iff-minus-2D-equivalent"
C_KLEIN_CB = "max:klein-four-conic-bundle"
C_KLEIN_RULED = "max:atiyah-A1-klein-four"
C_A0 = "max:atiyah-A0"
C_DEC0 = "max:decomposable-degree-zero"
C_RULED_RULE = "rule:ruled-maximal-iff-g1-or-2D-principal"
C_CHAIN = "rule:infinite-increasing-chain"
C_DEC_AUT = "rule:decomposable-aut-c"

CHAIN_STEPS = DEFAULT_CHAIN.orbit_sizes


@dataclass(frozen=True)
class MaxClass:
    tag: str
    witness: dict[str, Any] = field(default_factory=dict)
    citations: tuple[str, ...] = ()


def _chain_witness(s: SurfaceModel, reason: str, cfg: ChainConfig) -> dict[str, Any]:
    chain = elementary_transform_chain(s, list(cfg.orbit_sizes))
    return {
        "reason": reason,
        "orbit_sizes": list(cfg.orbit_sizes),
        "chain": chain,
        "segre": [segre_invariant(m) for m in chain],
    }


def h_stabilizer(cb: ConicBundleModel) -> dict[str, Any]:
    """Translations x -> x + t and inversions x -> -x + t of the curve that
    preserve the set of singular-fibre base points. Reported, not asserted."""
    e = cb.curve
    S = set(cb.Z) | set(cb.P)
    trans, inv = [], []
    for t in e.points:
        if {e.add(Q, t) for Q in S} == S:
            trans.append(t)
        if {e.add(e.neg(Q), t) for Q in S} == S:
            inv.append(t)
    return {"translations": trans, "inversions": inv}


def _classify_surface(s: SurfaceModel, cfg: ChainConfig) -> MaxClass:
    if s.variant == "Trivial":
        return MaxClass("TrivialBundle", {"aut_c": "FullPGL2k"}, (C_TRIVIAL,))
    if s.variant == "AtiyahA0":
        return MaxClass("AtiyahA0Max", {"aut_c": "Ga", "segre": 0}, (C_A0,))
    if s.variant == "AtiyahA1":
        return MaxClass("KleinFourRuled", {"aut_c": "KleinFour", "segre": 1}, (C_KLEIN_RULED,))
    try:
        deg = s.divisor_degree()
    except AbstractModeMissingData as exc:
        raise MissingAssertion(str(exc)) from exc
    if deg != 0:
        return MaxClass("NotMaximal", _chain_witness(s, "deg D != 0", cfg), (C_RULED_RULE, C_CHAIN))
    if s.D is None and s.two_d_principal is None:
        raise MissingAssertion("abstract degree-0 surface needs asserted two_d_principal")
    if s.D is not None and is_principal(s.D) or s.D is None and s.d_principal:
        return MaxClass("TrivialBundle", {"aut_c": "FullPGL2k", "D_principal": True}, (C_TRIVIAL,))
    aut = aut_c_ruled(s)
    two_d = aut.kind == "GmSemiZ2"
    if s.is_abstract and not two_d:
        return MaxClass(
            "NotMaximal",
            _chain_witness(s, "genus >= 2 and 2D not principal", cfg),
            (C_RULED_RULE, C_CHAIN),
        )
    witness: dict[str, Any] = {"aut_c": aut.kind, "two_d_principal": two_d, "genus": s.genus}
    if s.D is not None:
        witness["group_sum_2D"] = group_sum(2 * s.D)
        witness["group_sum_D"] = group_sum(s.D)
    if aut.witnesses:
        M = aut.witnesses[0]
        witness["involution"] = M
        witness["beta"] = involution_normal_form(M)[0]
    return MaxClass("DecomposableDeg0Max", witness, (C_DEC0, C_DEC_AUT))


def _classify_conic(cb: ConicBundleModel, cfg: ChainConfig) -> MaxClass:
    if not cb.Z and not cb.P:
        return _classify_surface(cb.base, cfg)
    h = h_stabilizer(cb)
    if cb.klein is not None:
        sig, tau = cb.klein
        check = klein_four_certificate(sig, tau)
        if not check.valid:
            raise InvalidModel(f"Klein four certificate rejected: {check.reason}")
        return MaxClass(
            "KleinFourCB", {"aut_c": "KleinFour", "sigma": sig, "tau": tau, "h_stabilizer": h}, (C_KLEIN_CB,)
        )
    exc = is_exceptional(cb)
    if not exc.exceptional:
        s1, s2 = cb.self_intersections()
        w = _chain_witness(cb.base, "conic bundle is neither exceptional nor Klein four", cfg)
        w["self_intersections"] = [s1, s2]
        w["h_stabilizer"] = h
        return MaxClass("NotMaximal", w, (C_EXC_DICHOTOMY, C_CHAIN))
    aut = aut_c_conic(cb)
    if aut.kind == "GmSemiZ2":
        sw = swap_involution(cb)
        witness = {
            "n": exc.n,
            "aut_c": "GmSemiZ2",
            "f": sw.f,
            "involution": sw.M,
            "divisor_of_f": divisor_of(sw.f),
            "h_stabilizer": h,
        }
        return MaxClass("ExceptionalCB", witness, (C_EXCEPTIONAL, C_SWAP))
    w = _chain_witness(cb.base, "exceptional conic bundle without a swapping involution", cfg)
    w["n"] = exc.n
    w["aut_c"] = "Gm"
    w["swap_obstruction"] = group_sum(swap_target(cb))
    w["h_stabilizer"] = h
    return MaxClass("NotMaximal", w, (C_EXC_DICHOTOMY, C_SWAP, C_CHAIN))


def classify_max(m: SurfaceModel | ConicBundleModel, config: ChainConfig = DEFAULT_CHAIN) -> MaxClass:
    if isinstance(m, ConicBundleModel):
        return _classify_conic(m, config)
    if isinstance(m, SurfaceModel):
        return _classify_surface(m, config)
    raise InvalidModel(f"cannot classify {type(m).__name__}")


# -- validators ------------------------------------------------------------


def validate_max_class(m: SurfaceModel | ConicBundleModel, r: MaxClass) -> bool:
    """Independent re-check of the witness attached to a verdict."""
    if r.tag not in TAGS:
        return False
    w = r.witness
    if r.tag == "NotMaximal":
        chain = w.get("chain")
        if not chain or not validate_chain(chain, w["orbit_sizes"]):
            return False
        seg = w["segre"]
        return all(a > b for a, b in zip(seg, seg[1:]))
    if r.tag == "ExceptionalCB":
        M, f = w["involution"], w["f"]
        return (
            isinstance(m, ConicBundleModel)
            and is_involution(M)
            and M == sigma(f)
            and divisor_of(f) == swap_target(m)
            and is_exceptional(m).n == w["n"]
        )
    if r.tag == "KleinFourCB":
        return klein_four_certificate(w["sigma"], w["tau"]).valid
    if r.tag == "DecomposableDeg0Max":
        M = w.get("involution")
        if M is None:
            # Aut_C = Gm, or an abstract model whose flags were asserted
            return w["aut_c"] == "Gm" or m.D is None
        beta = w["beta"]
        return (
            is_involution(M)
            and M == sigma(beta)
            and divisor_of(beta) == 2 * m.D
            and not det_class(M).is_square
        )
    return True
