"""Simplicial sets presented as face-closed sets of chains in a finite poset.

A chain is a tuple of element indices, strictly increasing in the poset
order; a chain with n + 1 entries is a nondegenerate n-simplex.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from ..errors import NotSubcomplex, PreconditionFailed
from .dwyer import PosetPushout, dwyer_witness, pushout_along_dwyer
from .poset import FinPoset, PosetInclusion, PosetMap


def faces_of(chain: tuple):
    """(k, k-th face) for every face of a chain with at least two entries."""
    if len(chain) < 2:
        return
    for k in range(len(chain)):
        yield k, chain[:k] + chain[k + 1:]


def all_chains(P: FinPoset, max_dim: int | None = None) -> list:
    """Every strictly increasing chain of P, up to ``max_dim`` + 1 entries."""
    limit = len(P) if max_dim is None else max_dim + 1
    succ = [np.flatnonzero(P.strict[i]).tolist() for i in range(len(P))]
    out = []
    stack = [(i,) for i in reversed(range(len(P)))]
    while stack:
        c = stack.pop()
        out.append(c)
        if len(c) < limit:
            stack.extend(c + (j,) for j in reversed(succ[c[-1]]))
    return out


class ChainComplexSSet:
    """A subcomplex of the (possibly truncated) nerve of ``ambient``."""

    def __init__(self, ambient: FinPoset, chains: Iterable[tuple], max_dim: int | None = None, check: bool = True):
        self.ambient = ambient
        self.max_dim = max_dim
        self.chains = frozenset(tuple(c) for c in chains)
        if check:
            self._check()

    def _check(self):
        strict = self.ambient.strict
        for c in self.chains:
            if not c:
                raise NotSubcomplex("empty chain")
            if self.max_dim is not None and len(c) > self.max_dim + 1:
                raise NotSubcomplex(f"chain {c} exceeds dimension {self.max_dim}")
            if any(not strict[a, b] for a, b in zip(c, c[1:])):
                raise NotSubcomplex(f"{c} is not strictly increasing")
            for _, f in faces_of(c):
                if f not in self.chains:
                    raise NotSubcomplex(f"face {f} of {c} is missing")

    # -- constructors
    @classmethod
    def full(cls, P: FinPoset, max_dim: int | None = None) -> "ChainComplexSSet":
        return cls(P, all_chains(P, max_dim), max_dim, check=False)

    @classmethod
    def generated_by(cls, P: FinPoset, chains, max_dim: int | None = None) -> "ChainComplexSSet":
        """Smallest subcomplex containing ``chains`` (given as index tuples)."""
        out, stack = set(), [tuple(c) for c in chains]
        while stack:
            c = stack.pop()
            if c in out:
                continue
            out.add(c)
            stack.extend(f for _, f in faces_of(c))
        return cls(P, out, max_dim)

    @classmethod
    def from_elements(cls, P: FinPoset, chains, max_dim: int | None = None) -> "ChainComplexSSet":
        return cls.generated_by(P, [tuple(P.index[e] for e in c) for c in chains], max_dim)

    # -- queries
    def __len__(self) -> int:
        return len(self.chains)

    def __contains__(self, chain) -> bool:
        return tuple(chain) in self.chains

    def __eq__(self, other) -> bool:
        return isinstance(other, ChainComplexSSet) and self.ambient is other.ambient and self.chains == other.chains

    __hash__ = None

    def counts(self) -> list:
        """Number of nondegenerate simplices in each dimension."""
        c = Counter(len(ch) - 1 for ch in self.chains)
        return [c[d] for d in range(max(c, default=-1) + 1)]

    def elements_of(self, chain) -> tuple:
        return tuple(self.ambient.elements[i] for i in chain)

    def sorted_chains(self) -> list:
        return sorted(self.chains, key=lambda c: (len(c), c))

    def is_subcomplex_of(self, other: "ChainComplexSSet") -> bool:
        return self.ambient is other.ambient and self.chains <= other.chains

    def _same_frame(self, other):
        if self.ambient is not other.ambient:
            raise ValueError("subcomplexes of different ambient nerves")

    def union(self, other: "ChainComplexSSet") -> "ChainComplexSSet":
        self._same_frame(other)
        return ChainComplexSSet(self.ambient, self.chains | other.chains, self.max_dim, check=False)

    def intersection(self, other: "ChainComplexSSet") -> "ChainComplexSSet":
        self._same_frame(other)
        return ChainComplexSSet(self.ambient, self.chains & other.chains, self.max_dim, check=False)

    def image(self, F: PosetMap, max_dim: int | None = None) -> "ChainComplexSSet":
        """Image under a monotone map, collapsing repeated entries."""
        S, T = F.source, F.target
        out = set()
        for c in self.chains:
            mapped = [T.index[F(S.elements[i])] for i in c]
            squeezed = tuple(x for k, x in enumerate(mapped) if k == 0 or x != mapped[k - 1])
            out.add(squeezed)
        return ChainComplexSSet(T, out, self.max_dim if max_dim is None else max_dim)


def nerve(P: FinPoset, max_dim: int | None = None) -> ChainComplexSSet:
    return ChainComplexSSet.full(P, max_dim)


@dataclass
class NervePushout:
    sub: ChainComplexSSet  # union of both images inside nerve(D)
    pushout: PosetPushout
    mono: bool


def pushout_of_nerves(F: PosetMap, incl: PosetInclusion, max_dim: int | None = None) -> NervePushout:
    """Glue the nerves of C and B along the nerve of A inside the nerve of their pushout."""
    if (incl.witness or dwyer_witness(incl)) is None:
        raise PreconditionFailed("the inclusion is not a Dwyer map")
    if not (F.is_monotone() and F.is_injective() and F.is_full()):
        raise PreconditionFailed("A -> C must be an injective full monotone map")
    po = pushout_along_dwyer(F, incl)
    from_c = nerve(F.target, max_dim).image(po.from_c, max_dim)
    from_b = nerve(incl.ambient, max_dim).image(po.from_b, max_dim)
    sub = from_c.union(from_b)
    expected = len(nerve(F.target, max_dim)) + len(nerve(incl.ambient, max_dim)) - len(nerve(incl.sub, max_dim))
    return NervePushout(sub, po, len(sub) == expected)
