"""Finite categories given by hom-sets and a composition table, and the
closed-form pushout that freely adds arrows between two objects of a
one-way category."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Hashable, Mapping, Sequence

from ..errors import NotOneWay, NotStrictlyBelow


@dataclass(frozen=True)
class Identity:
    obj: Hashable

    def __repr__(self) -> str:
        return f"id[{self.obj!r}]"


@dataclass(frozen=True)
class Glued:
    """The class of ``after ∘ t ∘ before`` for a freely added arrow t."""

    after: Hashable
    new: Hashable
    before: Hashable


class FinCategory:
    """Objects, non-identity hom-sets and composition; identities are implicit.

    ``compose[(g, f)]`` is g after f.  Morphism labels must be distinct across
    all hom-sets.
    """

    def __init__(self, objects: Sequence, homs: Mapping, compose: Mapping):
        self.classes = {}  # filled by one_way_pushout: (a, b, member) -> label
        self.added = {}  # filled by one_way_pushout: new arrow -> its label
        self.objects = tuple(objects)
        self.homs = {k: tuple(v) for k, v in homs.items() if v}
        self.table = dict(compose)
        self.ends = {}
        for (a, b), arrows in self.homs.items():
            for f in arrows:
                if f in self.ends:
                    raise ValueError(f"label {f!r} used twice")
                self.ends[f] = (a, b)

    def source(self, f):
        return f.obj if isinstance(f, Identity) else self.ends[f][0]

    def target(self, f):
        return f.obj if isinstance(f, Identity) else self.ends[f][1]

    def hom(self, a, b) -> tuple:
        arrows = self.homs.get((a, b), ())
        return (Identity(a),) + arrows if a == b else arrows

    def compose(self, g, f):
        """g after f."""
        if self.target(f) != self.source(g):
            raise ValueError(f"{g!r} and {f!r} are not composable")
        if isinstance(f, Identity):
            return g
        if isinstance(g, Identity):
            return f
        return self.table[g, f]

    def leq(self, a, b) -> bool:
        return a == b or bool(self.homs.get((a, b)))

    def morphisms(self):
        for a in self.objects:
            for b in self.objects:
                yield from self.hom(a, b)

    def check(self) -> None:
        """Composition is total on composable pairs, well-typed and associative."""
        for (g, f), h in self.table.items():
            if self.ends[h] != (self.source(f), self.target(g)):
                raise ValueError(f"{g!r}∘{f!r} = {h!r} has the wrong type")
        arrows = list(self.ends)
        for f, g in itertools.product(arrows, repeat=2):
            if self.target(f) == self.source(g) and (g, f) not in self.table:
                raise ValueError(f"missing composite {g!r}∘{f!r}")
        for f, g, h in itertools.product(arrows, repeat=3):
            if self.target(f) == self.source(g) and self.target(g) == self.source(h):
                if self.compose(h, self.compose(g, f)) != self.compose(self.compose(h, g), f):
                    raise ValueError(f"composition is not associative at {h!r}, {g!r}, {f!r}")

    def is_one_way(self) -> bool:
        if any(a == b for a, b in self.homs):
            return False
        return not any(a != b and (b, a) in self.homs for a, b in self.homs)

    @classmethod
    def free(cls, objects, arrows) -> "FinCategory":
        """Free category on a finite acyclic multigraph given as (label, src, tgt)."""
        out_of = {}
        for label, a, b in arrows:
            out_of.setdefault(a, []).append((label, b))
        homs, paths = {}, []

        def extend(start, word, at):
            for label, b in out_of.get(at, ()):
                w = word + (label,)
                if len(w) > len(arrows):
                    raise ValueError("generating graph has a cycle")
                homs.setdefault((start, b), []).append(w)
                paths.append((w, start, b))
                extend(start, w, b)

        for a in objects:
            extend(a, (), a)
        ends = {w: (a, b) for w, a, b in paths}
        table = {(g, f): f + g for f in ends for g in ends if ends[f][1] == ends[g][0]}
        return cls(objects, homs, table)

    @classmethod
    def thin(cls, poset) -> "FinCategory":
        """A poset viewed as a category, arrows labelled by their endpoints."""
        homs = {(a, b): [(a, b)] for a, b in poset.pairs() if a != b}
        table = {}
        for (a, b), (c, d) in itertools.product(homs, repeat=2):
            if b == c:
                table[(c, d), (a, b)] = (a, d)
        return cls(poset.elements, homs, table)


def _find(parent: dict, a):
    while parent[a] != a:
        parent[a] = parent[parent[a]]
        a = parent[a]
    return a


def one_way_pushout(C: FinCategory, c0, c1, S: Sequence, T: Sequence, f: Mapping, g: Mapping) -> FinCategory:
    """Freely add arrows T from c0 to c1, identifying f(s) with g(s) for s in S.

    Each hom D(a, b) is the pushout of C(a, b) and C(c1, b) x T x C(a, c0)
    under C(c1, b) x S x C(a, c0).  A class is labelled by its first member,
    old arrows before new ones.
    """
    if not C.is_one_way():
        raise NotOneWay("the category has nontrivial endomorphisms or a two-way pair")
    if c0 == c1 or not C.leq(c0, c1):
        raise NotStrictlyBelow(f"{c0!r} is not strictly below {c1!r}")
    if set(f) != set(S) or not set(f.values()) <= set(T):
        raise ValueError("f must map S into T")
    if set(g) != set(S) or not set(g.values()) <= set(C.hom(c0, c1)):
        raise ValueError(f"g must map S into C({c0!r}, {c1!r})")

    label_of = {}  # (a, b, member) -> class label
    homs = {}
    for a, b in itertools.product(C.objects, repeat=2):
        old = list(C.homs.get((a, b), ()))
        after, before = C.hom(c1, b), C.hom(a, c0)
        new = [Glued(q, t, p) for q in after for t in T for p in before]
        members = old + new
        if not members:
            continue
        parent = {m: m for m in members}
        for q in after:
            for s in S:
                for p in before:
                    lhs = C.compose(q, C.compose(g[s], p))
                    rhs = Glued(q, f[s], p)
                    ra, rb = _find(parent, lhs), _find(parent, rhs)
                    if ra != rb:
                        parent[rb] = ra
        order = {m: i for i, m in enumerate(members)}
        rep = {}
        for m in members:
            root = _find(parent, m)
            if root not in rep or order[m] < order[rep[root]]:
                rep[root] = m
        for m in members:
            label_of[a, b, m] = rep[_find(parent, m)]
        homs[a, b] = [m for m in members if label_of[a, b, m] == m]

    def ends(m):
        if isinstance(m, Glued):
            return C.source(m.before), C.target(m.after)
        return C.ends[m]

    def raw_compose(h, k):
        # h after k
        if isinstance(k, Glued) and isinstance(h, Glued):
            raise AssertionError("two added arrows can never compose in a one-way category")
        if isinstance(k, Glued):
            return Glued(C.compose(h, k.after), k.new, k.before)
        if isinstance(h, Glued):
            return Glued(h.after, h.new, C.compose(h.before, k))
        return C.compose(h, k)

    table = {}
    for (a, b), left in homs.items():
        for (b2, c), right in homs.items():
            if b2 != b:
                continue
            for k in left:
                for h in right:
                    table[h, k] = label_of[a, c, raw_compose(h, k)]
    D = FinCategory(C.objects, homs, table)
    assert all(ends(m) == D.ends[m] for m in D.ends)
    D.classes = label_of
    D.added = {t: label_of[c0, c1, Glued(Identity(c1), t, Identity(c0))] for t in T}
    return D
