"""Hom-posets of the free 2-category on a pasting scheme.

Elements of the hom from x to y are the paths x -> y; there is an arrow
p -> q exactly when p lies above q.  As a poset we write p <= q for that
arrow, so the topmost path is the least element and the bottommost path the
greatest.  Coordinatization sends a full path to the 0/1 vector marking the
faces above it; under it the same order becomes the coordinatewise order.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import NotFullPath, NotInPge, NotParallel
from .path_kit import directly_above_order, enumerate_presentations, lies_above, presentation, sub_scheme_between
from .scheme_core import EXTERIOR, Path, PastingScheme

GOLD, SILVER = "gold", "silver"
_TOP, _BOTTOM = "<above dom>", "<below cod>"  # the two faces added by the augmentation


def enumerate_paths(ps: PastingScheme, x, y) -> list:
    """All paths x -> y, topmost branches first."""
    ps.check_vertex(x)
    ps.check_vertex(y)
    if not ps.leq(x, y):
        return []
    found = []

    def walk(v, verts, edges):
        if v == y:
            found.append(Path(tuple(verts), tuple(edges)))
            return
        for e in reversed(ps.out_order[v]):
            w = ps.edge_map[e].tgt
            if ps.leq(w, y):
                walk(w, verts + [w], edges + [e])

    walk(x, [x], [])
    return found


@dataclass(frozen=True, eq=False)
class HomPoset:
    x: str
    y: str
    elements: tuple
    above: np.ndarray  # above[i, j]: elements[i] lies above elements[j]

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    @cached_property
    def index(self) -> dict:
        return {p: i for i, p in enumerate(self.elements)}

    def leq(self, p: Path, q: Path) -> bool:
        """The poset order: p <= q iff p lies above q."""
        return bool(self.above[self.index[p], self.index[q]])

    def arrows(self, p: Path, q: Path) -> int:
        return int(self.leq(p, q))

    @property
    def top(self) -> Path | None:
        """The path lying above every other one (least element)."""
        hits = [p for i, p in enumerate(self.elements) if self.above[i].all()]
        return hits[0] if hits else None

    @property
    def bottom(self) -> Path | None:
        hits = [p for i, p in enumerate(self.elements) if self.above[:, i].all()]
        return hits[0] if hits else None

    def to_finposet(self):
        from .cat_kit import FinPoset
        return FinPoset(self.elements, self.above)

    def to_json(self) -> dict:
        return {
            "source": self.x,
            "target": self.y,
            "elements": [list(p.edges) for p in self.elements],
            "relation": self.above.astype(int).tolist(),
        }


def hom_poset(ps: PastingScheme, x, y) -> HomPoset:
    elems = tuple(enumerate_paths(ps, x, y))
    n = len(elems)
    above = np.zeros((n, n), dtype=bool)
    for i, p in enumerate(elems):
        for j, q in enumerate(elems):
            above[i, j] = lies_above(ps, p, q)
    return HomPoset(x, y, elems, above)


# --------------------------------------------------------------------------- cube coordinates

@dataclass(frozen=True)
class CubePoint:
    """A 0/1 value on each face, listed in ``faces`` order."""

    faces: tuple
    bits: tuple

    def __getitem__(self, fid) -> int:
        return self.bits[self.faces.index(fid)]

    def __le__(self, other: "CubePoint") -> bool:
        assert self.faces == other.faces
        return all(a <= b for a, b in zip(self.bits, other.bits))

    def meet(self, other: "CubePoint") -> "CubePoint":
        return CubePoint(self.faces, tuple(map(min, self.bits, other.bits)))

    def join(self, other: "CubePoint") -> "CubePoint":
        return CubePoint(self.faces, tuple(map(max, self.bits, other.bits)))

    def as_dict(self) -> dict:
        return dict(zip(self.faces, self.bits))

    def __str__(self) -> str:
        return "".join(map(str, self.bits))


def _find(parent: dict, a):
    while parent[a] != a:
        parent[a] = parent[parent[a]]
        a = parent[a]
    return a


def _augmented_sides(ps: PastingScheme, e: str) -> tuple:
    l, r = ps.left_face[e], ps.right_face[e]
    return (_TOP if l == EXTERIOR else l), (_BOTTOM if r == EXTERIOR else r)


def coordinatize(ps: PastingScheme, p: Path) -> CubePoint:
    """Mark with 1 the faces lying above the full path ``p``."""
    if p.start != ps.s or p.end != ps.t:
        raise NotFullPath(f"{p} does not run from {ps.s} to {ps.t}")
    parent = {f: f for f in (*ps.face_ids, _TOP, _BOTTOM)}
    on_p = set(p.edges)
    for e in ps.edges:
        if e.id not in on_p:
            a, b = _augmented_sides(ps, e.id)
            parent[_find(parent, a)] = _find(parent, b)
    top, bottom = _find(parent, _TOP), _find(parent, _BOTTOM)
    assert top != bottom, f"{p} does not separate the augmented scheme"
    bits = []
    for fid in ps.face_ids:
        root = _find(parent, fid)
        assert root in (top, bottom)
        bits.append(int(root == top))
    return CubePoint(ps.face_ids, tuple(bits))


def in_pge(ps: PastingScheme, f: CubePoint, below: dict | None = None) -> bool:
    if below is None:
        below = directly_above_order(ps)
    return all(f[a] >= f[b] for a, bs in below.items() for b in bs)


def edge_coloring(ps: PastingScheme, f: CubePoint) -> dict:
    """edge -> gold when the value left of it exceeds the value right of it."""
    value = {**f.as_dict(), _TOP: 1, _BOTTOM: 0}
    colors = {}
    for e in ps.edges:
        a, b = _augmented_sides(ps, e.id)
        colors[e.id] = GOLD if value[a] > value[b] else SILVER
    return colors


def pathify(ps: PastingScheme, f: CubePoint) -> Path:
    """The gold path of a cube point satisfying the directly-above constraints."""
    if f.faces != ps.face_ids:
        raise NotInPge("cube point is indexed by different faces")
    if not in_pge(ps, f):
        raise NotInPge(f"{f} breaks a directly-above constraint")
    colors = edge_coloring(ps, f)
    gold_out, gold_in = {}, {}
    for e in ps.edges:
        if colors[e.id] == GOLD:
            assert e.src not in gold_out and e.tgt not in gold_in, "two gold edges meet a vertex"
            gold_out[e.src] = e.id
            gold_in[e.tgt] = e.id
    edges, v = [], ps.s
    while v != ps.t:
        e = gold_out[v]
        edges.append(e)
        v = ps.edge_map[e].tgt
    assert len(edges) == len(gold_out), "gold edges off the gold path"
    return ps.path(edges)


def cube_points(ps: PastingScheme) -> list:
    """All cube points satisfying the directly-above constraints (brute force)."""
    out, below = [], directly_above_order(ps)
    for bits in itertools.product((0, 1), repeat=ps.num_faces):
        f = CubePoint(ps.face_ids, bits)
        if in_pge(ps, f, below):
            out.append(f)
    return out


def hom_poset_from_cube(ps: PastingScheme, x, y) -> HomPoset:
    """Second route to the hom: constrained cube points of the scheme between x and y."""
    if x == y:
        return hom_poset(ps, x, y)
    if not ps.leq(x, y):
        return HomPoset(x, y, (), np.zeros((0, 0), dtype=bool))
    sub = sub_scheme_between(ps, x, y)
    points = cube_points(sub)
    elems = tuple(pathify(sub, f) for f in points)
    n = len(points)
    above = np.array([[points[i] <= points[j] for j in range(n)] for i in range(n)], dtype=bool).reshape(n, n)
    return HomPoset(x, y, elems, above)


# --------------------------------------------------------------------------- lattice structure

class HomLattice:
    """Meets and joins in one hom, computed on coordinates of the local scheme."""

    def __init__(self, ps: PastingScheme, x, y):
        self.ps, self.x, self.y = ps, x, y
        self.local = None if x == y else sub_scheme_between(ps, x, y)

    def _check(self, p, q):
        if not (p.start == q.start == self.x and p.end == q.end == self.y):
            raise NotParallel(f"{p}, {q} are not paths {self.x} -> {self.y}")

    def _combine(self, p, q, how):
        self._check(p, q)
        if self.local is None:
            return p
        a, b = coordinatize(self.local, p), coordinatize(self.local, q)
        return pathify(self.local, how(a, b))

    def meet(self, p: Path, q: Path) -> Path:
        """Greatest lower bound, taken coordinatewise."""
        return self._combine(p, q, CubePoint.meet)

    def join(self, p: Path, q: Path) -> Path:
        return self._combine(p, q, CubePoint.join)


def lattice_ops(ps: PastingScheme, x, y) -> HomLattice:
    return HomLattice(ps, x, y)


def meet(ps: PastingScheme, p: Path, q: Path) -> Path:
    if not p.parallel_to(q):
        raise NotParallel(f"{p} and {q} are not parallel")
    return HomLattice(ps, p.start, p.end).meet(p, q)


def join(ps: PastingScheme, p: Path, q: Path) -> Path:
    if not p.parallel_to(q):
        raise NotParallel(f"{p} and {q} are not parallel")
    return HomLattice(ps, p.start, p.end).join(p, q)


# --------------------------------------------------------------------------- composition

def concat_ff_violation(ps: PastingScheme, x, y, z):
    """None if concatenation hom(y,z) x hom(x,y) -> hom(x,z) is an order embedding,
    else a witness tuple describing the failure."""
    first, second, whole = hom_poset(ps, x, y), hom_poset(ps, y, z), hom_poset(ps, x, z)
    pairs = [(p, q) for p in first for q in second]
    composite = {pq: pq[0] + pq[1] for pq in pairs}
    seen = {}
    for pq, c in composite.items():
        if c in seen:
            return ("not injective", seen[c], pq)
        seen[c] = pq
    for (p, q), (p2, q2) in itertools.product(pairs, repeat=2):
        lhs = first.leq(p, p2) and second.leq(q, q2)
        if lhs != whole.leq(composite[p, q], composite[p2, q2]):
            return ("not full", (p, q), (p2, q2))
    return None


def verify_concat_ff(ps: PastingScheme, x, y, z) -> bool:
    return concat_ff_violation(ps, x, y, z) is None


def power_composite(ps: PastingScheme) -> list:
    """dom_P = m_0 > m_1 > ... > m_n = cod_P, replayed from the canonical presentation."""
    chain = presentation(ps).replay(ps)
    assert chain[0] == ps.dom and chain[-1] == ps.cod and len(chain) == ps.num_faces + 1
    return chain


@dataclass(frozen=True)
class PowerCheck:
    presentations: int
    ok: bool
    problem: str | None = None


def check_power_uniqueness(ps: PastingScheme, cap: int = 500) -> PowerCheck:
    """Replay every enumerated presentation and check they all compose to the
    single arrow dom_P -> cod_P of a hom with at most one arrow per pair."""
    hom = hom_poset(ps, ps.s, ps.t)
    n = len(hom)
    twoway = hom.above & hom.above.T & ~np.eye(n, dtype=bool)
    if twoway.any():
        return PowerCheck(0, False, "two distinct paths lie above each other")
    count = 0
    for pres in enumerate_presentations(ps, cap):
        count += 1
        if len(pres) != ps.num_faces or not pres.check(ps):
            return PowerCheck(count, False, f"presentation {pres.to_json()} is malformed")
        chain = pres.replay(ps)
        for a, b in zip(chain, chain[1:]):
            if a == b or not hom.leq(a, b):
                return PowerCheck(count, False, f"rewrite {a} -> {b} is not a strict arrow")
    return PowerCheck(count, True)
