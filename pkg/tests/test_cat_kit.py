import itertools
import random

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from oracles import is_order_iso, monotone_maps, natural_posets, quotient_pushout, random_monotone, random_poset
from pastelab.cat_kit import (
    ONE,
    TWO,
    ChainComplexSSet,
    FinPoset,
    HornStep,
    InnerAnodyneCertificate,
    PosetInclusion,
    PosetMap,
    adjoin_terminal,
    certify_inner_anodyne,
    check_dwyer_witness,
    dwyer_witness,
    nerve,
    poset_product,
    pushout_along_dwyer,
    pushout_of_nerves,
    verify_certificate,
)
from pastelab.errors import NotAPoset, NotDwyer, NotFull, NotSubcomplex, PreconditionFailed
from pastelab.hom_poset import hom_poset
from pastelab.scheme_core import build_theta2


def vertex(B, a):
    """Inclusion of the one-point poset picking ``a``."""
    return PosetInclusion(ONE, B, {0: a})


def brute_is_dwyer(incl) -> bool:
    """Sieve plus some retraction on the generated cosieve that is right adjoint, by search."""
    A, B = incl.sub, incl.ambient
    image = incl.image()
    if any(B.leq(b, i) and b not in image for i in image for b in B.elements):
        return False
    W = [b for b in B.elements if any(B.leq(i, b) for i in image)]
    Wp = B.subposet(W)
    for R in monotone_maps(Wp, A):
        if all(R[incl(a)] == a for a in A.elements) and all(
            B.leq(incl(a), w) == A.leq(a, R[w]) for a in A.elements for w in W
        ):
            return True
    return False


def random_dwyer(rng, n_max=8):
    """A random Dwyer inclusion of a nonempty sieve, or None."""
    B = random_poset(rng, rng.randint(1, n_max))
    seeds = rng.sample(B.elements, rng.randint(1, len(B)))
    sieve = sorted({b for s in seeds for b in B.down(s)})
    incl = PosetInclusion(B.subposet(sieve), B)
    wit = dwyer_witness(incl)
    if wit is None:
        return None
    incl.witness = wit
    return incl


# -- posets -------------------------------------------------------------------------------

def test_poset_rejects_non_orders():
    with pytest.raises(NotAPoset):
        FinPoset([0, 1], [[True, True], [True, True]])
    with pytest.raises(NotAPoset):
        FinPoset([0, 1, 2], [[1, 1, 0], [0, 1, 1], [0, 0, 1]])
    with pytest.raises(NotAPoset):
        FinPoset([0], [[False]])


def test_natural_poset_counts():
    # number of unlabelled posets on n points
    assert [len(natural_posets(n)) for n in range(1, 5)] == [1, 2, 5, 16]


# -- Dwyer maps ---------------------------------------------------------------------------

def test_dwyer_examples():
    wit = dwyer_witness(vertex(TWO, 0))
    assert wit is not None
    assert wit.cosieve == frozenset({0, 1}) and wit.retraction == {0: 0, 1: 0}
    assert dwyer_witness(vertex(TWO, 1)) is None
    pair = FinPoset.discrete(["a", "b"])
    _, incl = adjoin_terminal(pair)
    assert dwyer_witness(incl) is None


def test_dwyer_requires_full():
    # the discrete pair mapped identically into 2 is not full
    incl = PosetInclusion(FinPoset.discrete([0, 1]), TWO)
    with pytest.raises(NotFull):
        dwyer_witness(incl)


def test_adjoin_terminal_examples():
    B, incl = adjoin_terminal(ONE)
    assert len(B) == 2 and B.leq(0, B.elements[1]) and incl.witness is not None
    chain = hom_poset(build_theta2([2]), "0", "1").to_finposet()
    B, incl = adjoin_terminal(chain)
    assert len(B) == 4 and B.height() == 3 and incl.witness is not None


def test_dwyer_detection_matches_exhaustive_search():
    for n in range(1, 5):
        for B in natural_posets(n):
            for r in range(1, n + 1):
                for subset in itertools.combinations(B.elements, r):
                    incl = PosetInclusion(B.subposet(subset), B)
                    wit = dwyer_witness(incl)
                    assert (wit is not None) == brute_is_dwyer(incl)
                    if wit is not None:
                        assert check_dwyer_witness(incl, wit)


def test_product_examples():
    incl = vertex(TWO, 0)
    unit = poset_product(ONE, incl)
    assert len(unit.sub) == 1 and len(unit.ambient) == 2
    square = poset_product(TWO, incl)
    assert len(square.sub) == 2 and len(square.ambient) == 4
    assert check_dwyer_witness(square, square.witness)
    empty = poset_product(FinPoset([], np.zeros((0, 0))), incl)
    assert len(empty.sub) == len(empty.ambient) == 0
    with pytest.raises(NotDwyer):
        poset_product(TWO, vertex(TWO, 1))


@settings(max_examples=100, deadline=None)
@given(seed=st.integers(0, 10**9))
def test_dwyer_closed_under_product_and_pushout(seed):
    rng = random.Random(seed)
    incl = random_dwyer(rng)
    assume(incl is not None)
    C = random_poset(rng, rng.randint(1, 4))
    prod = poset_product(C, incl)
    assert check_dwyer_witness(prod, prod.witness)
    target = random_poset(rng, rng.randint(1, 5))
    f = random_monotone(rng, incl.sub, target)
    assume(f is not None)
    po = pushout_along_dwyer(PosetMap(incl.sub, target, f), incl)
    assert check_dwyer_witness(po.from_c, po.witness)


# -- pushouts -----------------------------------------------------------------------------

def test_pushout_adds_a_top():
    chain = FinPoset.chain(3)
    po = pushout_along_dwyer(PosetMap(ONE, chain, {0: 2}), vertex(TWO, 0))
    expected, _ = adjoin_terminal(chain)
    assert len(po.D) == 4 and po.D.height() == 3
    top = po.from_b(1)
    assert all(po.D.leq(x, top) for x in po.D.elements)
    assert len(expected) == len(po.D)


def test_pushout_along_identity():
    B = FinPoset.from_relation("abc", [("a", "b"), ("a", "c")])
    A = B.subposet(["a"])
    incl = PosetInclusion(A, B)
    po = pushout_along_dwyer(PosetMap(A, A, {"a": "a"}), incl)
    assert is_order_iso(B, po.D, po.from_b.mapping)


def test_pushout_matches_quotient_oracle():
    rng = random.Random(7)
    checked = 0
    while checked < 150:
        incl = random_dwyer(rng, 6)
        if incl is None:
            continue
        C = random_poset(rng, rng.randint(1, 5))
        f = random_monotone(rng, incl.sub, C)
        if f is None:
            continue
        F = PosetMap(incl.sub, C, f)
        po = pushout_along_dwyer(F, incl)
        D, via_c, via_b = quotient_pushout(F, incl)
        iso = {po.from_c(c): via_c[c] for c in C.elements}
        iso.update({po.from_b(b): via_b[b] for b in incl.ambient.elements})
        assert is_order_iso(po.D, D, iso)
        checked += 1


def test_pushout_universal_property():
    # every cocone into a small poset factors through D by a monotone map
    rng = random.Random(11)
    targets = [Q for n in range(1, 6) for Q in natural_posets(n)]
    instances = 0
    while instances < 20:
        incl = random_dwyer(rng, 4)
        if incl is None:
            continue
        C = random_poset(rng, rng.randint(1, 3))
        f = random_monotone(rng, incl.sub, C)
        if f is None:
            continue
        F = PosetMap(incl.sub, C, f)
        po = pushout_along_dwyer(F, incl)
        for Q in targets:
            for u in monotone_maps(C, Q):
                for v in monotone_maps(incl.ambient, Q):
                    if any(u[F(a)] != v[incl(a)] for a in incl.sub.elements):
                        continue
                    h = {}
                    for c in C.elements:
                        h[po.from_c(c)] = u[c]
                    for b in incl.ambient.elements:
                        assert h.setdefault(po.from_b(b), v[b]) == v[b]
                    assert set(h) == set(po.D.elements)
                    assert PosetMap(po.D, Q, h).is_monotone()
        instances += 1


def test_hom_after_bottom_attachment_is_a_pushout():
    from pastelab.path_kit import attach_at_bottom

    ps = build_theta2([2])
    bigger, fid = attach_at_bottom(ps, "0", "1")
    hom = hom_poset(ps, "0", "1").to_finposet()
    face = bigger.face(fid)
    po = pushout_along_dwyer(PosetMap(ONE, hom, {0: face.dom}), vertex(TWO, 0))
    target = hom_poset(bigger, "0", "1").to_finposet()
    iso = {po.from_c(p): p for p in hom.elements}
    iso[po.from_b(1)] = face.cod
    assert is_order_iso(po.D, target, iso)


# -- nerves -------------------------------------------------------------------------------

def test_nerve_examples():
    assert nerve(FinPoset.chain(3)).counts() == [3, 3, 1]
    assert len(nerve(ONE)) == 1
    grid = TWO.product(TWO)
    assert nerve(grid).counts() == [4, 5, 2]


def test_nerve_counts_match_formula():
    # chains of an n-chain are nonempty subsets
    for n in range(1, 7):
        N = nerve(FinPoset.chain(n))
        assert N.counts() == [len(list(itertools.combinations(range(n), k + 1))) for k in range(n)]


def test_generated_union_intersection():
    P = FinPoset.chain(3)
    spine = ChainComplexSSet.generated_by(P, [(0, 1), (1, 2)])
    assert spine.counts() == [3, 2]
    edge = ChainComplexSSet.generated_by(P, [(0, 2)])
    assert spine.union(edge).counts() == [3, 3]
    assert spine.intersection(edge).counts() == [2]
    assert spine.is_subcomplex_of(nerve(P)) and not nerve(P).is_subcomplex_of(spine)
    with pytest.raises(NotSubcomplex):
        ChainComplexSSet(P, [(0, 1)])
    with pytest.raises(NotSubcomplex):
        ChainComplexSSet(P, [(1,), (0,), (1, 0)])


def test_image_collapses_repeats():
    P, Q = FinPoset.chain(3), FinPoset.chain(2)
    squash = PosetMap(P, Q, {0: 0, 1: 0, 2: 1})
    assert nerve(P).image(squash).counts() == [2, 1]


@settings(max_examples=50, deadline=None)
@given(seed=st.integers(0, 10**9))
def test_monotone_maps_send_chains_to_chains(seed):
    rng = random.Random(seed)
    P, Q = random_poset(rng, rng.randint(1, 6)), random_poset(rng, rng.randint(1, 6))
    f = random_monotone(rng, P, Q)
    assume(f is not None)
    img = nerve(P).image(PosetMap(P, Q, f))
    assert img.is_subcomplex_of(nerve(Q)) or img.chains <= nerve(Q).chains


# -- pushout of nerves ----------------------------------------------------------------------

def test_nerve_pushout_along_identity_is_everything():
    B = FinPoset.from_relation("abc", [("a", "b"), ("b", "c")])
    A = B.subposet(["a"])
    res = pushout_of_nerves(PosetMap(A, A, {"a": "a"}), PosetInclusion(A, B))
    assert res.mono and res.sub.chains == nerve(res.pushout.D).chains


def test_nerve_pushout_glued_at_top():
    chain = FinPoset.chain(3)
    res = pushout_of_nerves(PosetMap(ONE, chain, {0: 2}), vertex(TWO, 0))
    assert res.mono
    assert res.sub.counts() == [4, 4, 1]
    assert nerve(res.pushout.D).counts() == [4, 6, 4, 1]
    cert = certify_inner_anodyne(res.sub)
    assert cert and verify_certificate(res.sub, cert)


def test_nerve_pushout_preconditions():
    chain = FinPoset.chain(3)
    with pytest.raises(PreconditionFailed):
        pushout_of_nerves(PosetMap(ONE, chain, {0: 2}), vertex(TWO, 1))
    squash = PosetMap(TWO, ONE, {0: 0, 1: 0})
    with pytest.raises(PreconditionFailed):
        pushout_of_nerves(squash, PosetInclusion(TWO, FinPoset.chain(3)))


def test_nerve_pushout_union_count_matches_formula():
    rng = random.Random(3)
    done = 0
    while done < 40:
        incl = random_dwyer(rng, 5)
        if incl is None:
            continue
        C = random_poset(rng, rng.randint(len(incl.sub), len(incl.sub) + 3))
        embeddings = [f for f in monotone_maps(incl.sub, C) if PosetMap(incl.sub, C, f).is_injective()]
        embeddings = [f for f in embeddings if PosetMap(incl.sub, C, f).is_full()]
        if not embeddings:
            continue
        res = pushout_of_nerves(PosetMap(incl.sub, C, rng.choice(embeddings)), incl)
        assert res.mono
        done += 1


# -- certifier ------------------------------------------------------------------------------

def test_spine_of_triangle():
    P = FinPoset.chain(3)
    spine = ChainComplexSSet.generated_by(P, [(0, 1), (1, 2)])
    cert = certify_inner_anodyne(spine)
    assert [(s.chain, s.k) for s in cert] == [((0, 1, 2), 1)]
    assert verify_certificate(spine, cert)
    assert cert.to_json(P) == {"ambient": "ambient", "steps": [{"chain": ["0", "1", "2"], "k": 1}]}


def test_outer_horn_is_unknown():
    P = FinPoset.chain(3)
    horn = ChainComplexSSet.generated_by(P, [(0, 1), (0, 2)])
    result = certify_inner_anodyne(horn)
    assert not result and result.missing == 2


def test_full_nerve_needs_no_steps():
    N = nerve(FinPoset.chain(4))
    cert = certify_inner_anodyne(N)
    assert len(cert) == 0 and verify_certificate(N, cert)


def test_reordered_certificate_fails():
    P = FinPoset.chain(5)
    spine = ChainComplexSSet.generated_by(P, [(i, i + 1) for i in range(4)])
    cert = certify_inner_anodyne(spine)
    assert cert and verify_certificate(spine, cert)
    backwards = InnerAnodyneCertificate(list(reversed(cert.steps)))
    check = verify_certificate(spine, backwards)
    assert not check and check.failed_step == 0


def test_verifier_rejects_outer_and_bogus_steps():
    P = FinPoset.chain(3)
    spine = ChainComplexSSet.generated_by(P, [(0, 1), (1, 2)])
    assert not verify_certificate(spine, InnerAnodyneCertificate([HornStep((0, 1, 2), 0)]))
    assert not verify_certificate(spine, InnerAnodyneCertificate([HornStep((2, 1, 0), 1)]))
    assert not verify_certificate(spine, InnerAnodyneCertificate([]))


def test_budget_is_respected():
    P = FinPoset.chain(5)
    spine = ChainComplexSSet.generated_by(P, [(i, i + 1) for i in range(4)])
    result = certify_inner_anodyne(spine, budget=3)
    assert not result and result.explored == 3


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 10**9))
def test_certificates_are_sound(seed):
    rng = random.Random(seed)
    P = random_poset(rng, rng.randint(2, 6), density=0.5)
    chains = list(nerve(P).chains)
    gens = rng.sample(chains, rng.randint(1, len(chains)))
    sub = ChainComplexSSet.generated_by(P, gens)
    result = certify_inner_anodyne(sub, budget=5000)
    if result:
        assert verify_certificate(sub, result)
        present = set(sub.chains)
        for step in result:
            assert 0 < step.k < step.dim
            present |= {step.chain, step.face}
        assert present == nerve(P).chains
