"""Dwyer inclusions of posets and the constructions that preserve them."""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from ..errors import NotDwyer, NotFull, NotMonotone
from .poset import Apex, FinPoset, PosetInclusion, PosetMap


@dataclass(frozen=True)
class DwyerWitness:
    """Sieve indicator, the smallest cosieve containing the image, and its retraction."""

    chi: dict  # ambient element -> 0 on the image, 1 elsewhere
    cosieve: frozenset  # ambient elements
    retraction: dict  # cosieve element -> sub element


def dwyer_witness(incl: PosetInclusion) -> DwyerWitness | None:
    """The witness if ``incl`` is a Dwyer map, else None."""
    if not (incl.is_injective() and incl.is_full()):
        raise NotFull("inclusion is not an order embedding")
    A, B = incl.sub, incl.ambient
    image = incl.image()
    if not B.is_sieve(image):
        return None
    cosieve = B.up_closure(image)
    retraction = {}
    for w in cosieve:
        best = A.maximum([a for a in A.elements if B.leq(incl(a), w)])
        if best is None:
            return None
        retraction[w] = best
    chi = {b: 0 if b in image else 1 for b in B.elements}
    return DwyerWitness(chi, cosieve, retraction)


def check_dwyer_witness(incl: PosetInclusion, wit: DwyerWitness) -> bool:
    """Re-derive every witness axiom from scratch."""
    A, B = incl.sub, incl.ambient
    image = incl.image()
    if set(wit.chi) != set(B.elements) or {b for b, v in wit.chi.items() if v == 0} != set(image):
        return False
    if any(wit.chi[a] > wit.chi[b] for a, b in B.pairs()):
        return False
    minimal = {b for b in B.elements if any(B.leq(i, b) for i in image)}
    if set(wit.cosieve) != minimal or not B.is_cosieve(wit.cosieve):
        return False
    R = wit.retraction
    if set(R) != minimal:
        return False
    if any(R[incl(a)] != a for a in A.elements):
        return False
    if any(not A.leq(R[u], R[w]) for u, w in itertools.product(minimal, repeat=2) if B.leq(u, w)):
        return False
    return all(B.leq(incl(a), w) == A.leq(a, R[w]) for a in A.elements for w in minimal)


def adjoin_terminal(A: FinPoset) -> tuple:
    """A with a new top element, and the inclusion of A."""
    level = sum(1 for e in A.elements if isinstance(e, Apex))
    top = Apex(level)
    n = len(A)
    m = np.zeros((n + 1, n + 1), dtype=bool)
    m[:n, :n] = A.matrix
    m[:, n] = True
    B = FinPoset(A.elements + (top,), m, check=False)
    incl = PosetInclusion(A, B)
    wit = dwyer_witness(incl)
    if A.maximum(A.elements) is not None:
        assert wit is not None, "adjoining a top to a poset with a top is a Dwyer map"
    incl.witness = wit
    return B, incl


def poset_product(C: FinPoset, incl: PosetInclusion, right: FinPoset | None = None) -> PosetInclusion:
    """C x A -> C x B (or C x A x right -> C x B x right) with the product witness."""
    wit = incl.witness or dwyer_witness(incl)
    if wit is None:
        raise NotDwyer("the factor inclusion is not a Dwyer map")
    A, B = incl.sub, incl.ambient
    if right is None:
        sub, amb = C.product(A), C.product(B)
        mapping = {(c, a): (c, incl(a)) for c, a in sub.elements}
        chi = {(c, b): wit.chi[b] for c, b in amb.elements}
        cosieve = frozenset((c, w) for c in C.elements for w in wit.cosieve)
        retraction = {(c, w): (c, wit.retraction[w]) for c, w in cosieve}
    else:
        sub = _flatten(C.product(A).product(right))
        amb = _flatten(C.product(B).product(right))
        mapping = {(c, a, r): (c, incl(a), r) for c, a, r in sub.elements}
        chi = {(c, b, r): wit.chi[b] for c, b, r in amb.elements}
        cosieve = frozenset((c, w, r) for c in C.elements for w in wit.cosieve for r in right.elements)
        retraction = {(c, w, r): (c, wit.retraction[w], r) for c, w, r in cosieve}
    out = PosetInclusion(sub, amb, mapping)
    product_wit = DwyerWitness(chi, cosieve, retraction)
    assert check_dwyer_witness(out, product_wit), "product witness fails an axiom"
    out.witness = product_wit
    return out


def _flatten(P: FinPoset) -> FinPoset:
    return FinPoset([(a, b, r) for (a, b), r in P.elements], P.matrix, check=False)


@dataclass
class PosetPushout:
    D: FinPoset
    from_c: PosetMap  # C -> D
    from_b: PosetMap  # B -> D
    witness: DwyerWitness  # for C -> D


def pushout_along_dwyer(F: PosetMap, incl: PosetInclusion) -> PosetPushout:
    """Pushout of C <-F- A -> B along a Dwyer inclusion, computed directly.

    Elements are ``("C", c)`` for c in C and ``("B", b)`` for b outside the
    image of A.  Below a new element b sit exactly the c with
    c <= F(R(b)), where R is the retraction of the witness.
    """
    wit = incl.witness or dwyer_witness(incl)
    if wit is None:
        raise NotDwyer("the inclusion is not a Dwyer map")
    if F.source is not incl.sub and F.source != incl.sub:
        raise ValueError("the two legs must share their source")
    if not F.is_monotone():
        raise NotMonotone("the map A -> C is not monotone")
    A, B, C = incl.sub, incl.ambient, F.target
    image = incl.image()
    fresh = [b for b in B.elements if b not in image]
    elems = [("C", c) for c in C.elements] + [("B", b) for b in fresh]
    nc, n = len(C), len(elems)
    m = np.zeros((n, n), dtype=bool)
    m[:nc, :nc] = C.matrix
    idx = [B.index[b] for b in fresh]
    m[nc:, nc:] = B.matrix[np.ix_(idx, idx)]
    for j, b in enumerate(fresh):
        if b in wit.cosieve:
            anchor = F(wit.retraction[b])
            for i, c in enumerate(C.elements):
                m[i, nc + j] = C.leq(c, anchor)
    D = FinPoset(elems, m)
    from_c = PosetMap(C, D, {c: ("C", c) for c in C.elements})
    back = {incl(a): a for a in A.elements}
    from_b = PosetMap(B, D, {b: ("C", F(back[b])) if b in back else ("B", b) for b in B.elements})
    assert all(from_c(F(a)) == from_b(incl(a)) for a in A.elements), "square does not commute"
    assert from_b.is_monotone() and from_c.is_monotone()
    j_incl = PosetInclusion(C, D, from_c.mapping)
    j_wit = dwyer_witness(j_incl)
    assert j_wit is not None and check_dwyer_witness(j_incl, j_wit), "pushout leg is not Dwyer"
    j_incl.witness = j_wit
    return PosetPushout(D, j_incl, from_b, j_wit)
