"""Finite posets stored as boolean order matrices, and monotone maps between them."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Hashable, Iterable, Mapping

import numpy as np

from ..errors import NotAPoset


@dataclass(frozen=True)
class Apex:
    """A freshly adjoined top element; ``level`` keeps repeated adjunctions distinct."""

    level: int = 0

    def __repr__(self) -> str:
        return "⊤" if self.level == 0 else f"⊤{self.level}"


def _closure(m: np.ndarray) -> np.ndarray:
    m = m.copy()
    for k in range(m.shape[0]):
        m |= m[:, k:k + 1] & m[k:k + 1, :]
    return m


class FinPoset:
    """A finite partial order; ``matrix[i, j]`` means elements[i] <= elements[j]."""

    def __init__(self, elements: Iterable[Hashable], matrix, check: bool = True):
        self.elements = tuple(elements)
        self.index = {e: i for i, e in enumerate(self.elements)}
        n = len(self.elements)
        if len(self.index) != n:
            raise NotAPoset("duplicate elements")
        self.matrix = np.array(matrix, dtype=bool).reshape(n, n)
        self.matrix.setflags(write=False)
        if check:
            self._check()

    def _check(self):
        m = self.matrix
        if not m.diagonal().all():
            raise NotAPoset("relation is not reflexive")
        off = m & m.T & ~np.eye(len(m), dtype=bool)
        if off.any():
            i, j = map(int, np.argwhere(off)[0])
            raise NotAPoset(f"{self.elements[i]!r} and {self.elements[j]!r} are mutually below each other")
        if (_closure(m) & ~m).any():
            raise NotAPoset("relation is not transitive")

    # -- constructors
    @classmethod
    def from_relation(cls, elements, pairs) -> "FinPoset":
        """Reflexive-transitive closure of ``pairs``."""
        elements = tuple(elements)
        idx = {e: i for i, e in enumerate(elements)}
        m = np.eye(len(elements), dtype=bool)
        for a, b in pairs:
            m[idx[a], idx[b]] = True
        return cls(elements, _closure(m))

    @classmethod
    def chain(cls, n: int) -> "FinPoset":
        """0 < 1 < ... < n-1."""
        return cls(range(n), np.triu(np.ones((n, n), dtype=bool)))

    @classmethod
    def discrete(cls, elements) -> "FinPoset":
        elements = tuple(elements)
        return cls(elements, np.eye(len(elements), dtype=bool))

    # -- queries
    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, e) -> bool:
        return e in self.index

    def __repr__(self) -> str:
        return f"FinPoset({list(self.elements)!r}, covers={self.covers()!r})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, FinPoset) or set(self.elements) != set(other.elements):
            return False
        return self.pairs() == other.pairs()

    __hash__ = None

    def leq(self, a, b) -> bool:
        return bool(self.matrix[self.index[a], self.index[b]])

    def lt(self, a, b) -> bool:
        return a != b and self.leq(a, b)

    @cached_property
    def strict(self) -> np.ndarray:
        return self.matrix & ~np.eye(len(self), dtype=bool)

    def pairs(self) -> frozenset:
        return frozenset((self.elements[i], self.elements[j]) for i, j in zip(*np.nonzero(self.matrix)))

    def down(self, a) -> frozenset:
        col = self.matrix[:, self.index[a]]
        return frozenset(self.elements[i] for i in np.flatnonzero(col))

    def up(self, a) -> frozenset:
        row = self.matrix[self.index[a]]
        return frozenset(self.elements[i] for i in np.flatnonzero(row))

    def up_closure(self, subset) -> frozenset:
        out = set()
        for a in subset:
            out |= self.up(a)
        return frozenset(out)

    def is_sieve(self, subset) -> bool:
        subset = set(subset)
        return all(self.down(a) <= subset for a in subset)

    def is_cosieve(self, subset) -> bool:
        subset = set(subset)
        return all(self.up(a) <= subset for a in subset)

    def maximum(self, subset):
        """Greatest element of ``subset`` or None."""
        subset = list(subset)
        for a in subset:
            if all(self.leq(b, a) for b in subset):
                return a
        return None

    def minimum(self, subset):
        subset = list(subset)
        for a in subset:
            if all(self.leq(a, b) for b in subset):
                return a
        return None

    def covers(self) -> list:
        """Hasse diagram as (lower, upper) pairs."""
        s = self.strict.astype(np.int64)
        two_step = (s @ s) > 0
        hasse = self.strict & ~two_step
        return [(self.elements[i], self.elements[j]) for i, j in zip(*np.nonzero(hasse))]

    def height(self) -> int:
        """Number of elements in a longest chain, minus one (0 for an antichain, -1 if empty)."""
        if not len(self):
            return -1
        order = sorted(range(len(self)), key=lambda i: int(self.matrix[:, i].sum()))
        depth = [0] * len(self)
        for j in order:
            below = [depth[i] + 1 for i in np.flatnonzero(self.strict[:, j])]
            depth[j] = max(below, default=0)
        return max(depth)

    # -- constructions
    def subposet(self, subset) -> "FinPoset":
        keep = [e for e in self.elements if e in set(subset)]
        idx = [self.index[e] for e in keep]
        return FinPoset(keep, self.matrix[np.ix_(idx, idx)], check=False)

    def product(self, other: "FinPoset") -> "FinPoset":
        elems = [(a, b) for a in self.elements for b in other.elements]
        return FinPoset(elems, np.kron(self.matrix, other.matrix), check=False)

    def relabel(self, f) -> "FinPoset":
        return FinPoset([f(e) for e in self.elements], self.matrix)

    def disjoint_union(self, other: "FinPoset", tags=(0, 1)) -> "FinPoset":
        n, m = len(self), len(other)
        mat = np.zeros((n + m, n + m), dtype=bool)
        mat[:n, :n] = self.matrix
        mat[n:, n:] = other.matrix
        elems = [(tags[0], e) for e in self.elements] + [(tags[1], e) for e in other.elements]
        return FinPoset(elems, mat, check=False)

    def to_json(self, label=str) -> dict:
        pos = {e: i for i, e in enumerate(self.elements)}
        return {
            "elements": [label(e) for e in self.elements],
            "covers": [[pos[a], pos[b]] for a, b in self.covers()],
        }


ONE = FinPoset.chain(1)
TWO = FinPoset.chain(2)


class PosetMap:
    """A function between the element sets of two posets."""

    def __init__(self, source: FinPoset, target: FinPoset, mapping: Mapping):
        self.source, self.target = source, target
        self.mapping = dict(mapping)
        missing = [a for a in source.elements if a not in self.mapping]
        if missing:
            raise ValueError(f"map undefined on {missing}")
        bad = [b for b in self.mapping.values() if b not in target]
        if bad:
            raise ValueError(f"map lands outside its target: {bad}")

    def __call__(self, a):
        return self.mapping[a]

    def image(self) -> frozenset:
        return frozenset(self.mapping[a] for a in self.source.elements)

    def is_monotone(self) -> bool:
        S, T = self.source, self.target
        return all(T.leq(self(a), self(b)) for a, b in S.pairs())

    def is_injective(self) -> bool:
        return len(self.image()) == len(self.source)

    def is_full(self) -> bool:
        """Order-reflecting as well as order-preserving."""
        S, T = self.source, self.target
        return all(S.leq(a, b) == T.leq(self(a), self(b)) for a, b in itertools.product(S.elements, repeat=2))

    def compose(self, after: "PosetMap") -> "PosetMap":
        """``after`` applied after ``self``."""
        return PosetMap(self.source, after.target, {a: after(self(a)) for a in self.source.elements})


class PosetInclusion(PosetMap):
    """An injective full map, optionally carrying a Dwyer witness."""

    def __init__(self, sub: FinPoset, ambient: FinPoset, mapping: Mapping | None = None, witness=None):
        if mapping is None:
            mapping = {a: a for a in sub.elements}
        super().__init__(sub, ambient, mapping)
        self.witness = witness

    @property
    def sub(self) -> FinPoset:
        return self.source

    @property
    def ambient(self) -> FinPoset:
        return self.target

