"""Parallel paths: the lies-above order, factorization into blocks, the
sub-scheme between two paths, top and bottom cells, and presentations."""
from __future__ import annotations

import graphlib
import itertools
from dataclasses import dataclass

from .errors import (
    CycleFound,
    NotAbove,
    NotBottomAttachable,
    NotBottomCell,
    NotParallel,
    NotReachable,
    NotTopCell,
    TrivialPath,
)
from .scheme_core import (
    EXTERIOR,
    IN,
    LEFT,
    OUT,
    Edge,
    Path,
    PastingScheme,
    PlaneGraph,
    validate_pasting_scheme,
)


# --------------------------------------------------------------------------- lies above

def _geq(rank: dict, a, b) -> bool:
    # None is the null point: comparable only with itself
    if a is None or b is None:
        return a is None and b is None
    return rank[a] >= rank[b]


def lies_above(ps: PastingScheme, p: Path, q: Path, half: str | None = None) -> bool:
    """True iff ``p`` lies above ``q``.

    ``half="pred"`` or ``half="succ"`` restricts the test to incoming or
    outgoing edges; both restrictions agree with the full test.
    """
    if not p.parallel_to(q):
        raise NotParallel(f"{p} and {q} have different endpoints")
    qi = q.incidence
    for v, (p_in, p_out) in p.incidence.items():
        other = qi.get(v)
        if other is None:
            continue
        q_in, q_out = other
        if half != "succ" and not _geq(ps.in_rank, p_in, q_in):
            return False
        if half != "pred" and not _geq(ps.out_rank, p_out, q_out):
            return False
    return True


@dataclass(frozen=True)
class ParallelFactorization:
    """p = r0 p1 r1 ... pn rn and q = r0 q1 r1 ... qn rn."""

    shared: tuple  # n + 1 paths, possibly empty
    blocks: tuple  # n pairs (p_i, q_i)

    def reassemble(self) -> tuple:
        p = q = self.shared[0]
        for (pi, qi), r in zip(self.blocks, self.shared[1:]):
            p = p + pi + r
            q = q + qi + r
        return p, q


def partition_parallel(ps: PastingScheme, p: Path, q: Path) -> ParallelFactorization:
    if not lies_above(ps, p, q):
        raise NotAbove(f"{p} does not lie above {q}")
    common = [v for v in p.vertices if v in q.incidence]
    assert common == [v for v in q.vertices if v in p.incidence], "common vertices out of order"
    shared, blocks = [], []
    run = Path.empty(common[0])
    for u, w in zip(common, common[1:]):
        pu, qu = p.between(u, w), q.between(u, w)
        if pu == qu:
            run = run + pu
        else:
            shared.append(run)
            blocks.append((pu, qu))
            run = Path.empty(w)
    shared.append(run)
    fact = ParallelFactorization(tuple(shared), tuple(blocks))
    assert fact.reassemble() == (p, q)
    return fact


def extremal_paths(ps: PastingScheme, x, y) -> tuple:
    """(top, bottom) path from x to y, by always taking the greatest (least) usable edge."""
    ps.check_vertex(x)
    ps.check_vertex(y)
    if x == y:
        return Path.empty(x), Path.empty(x)
    if not ps.leq(x, y):
        raise NotReachable(f"no path from {x} to {y}")

    def greedy(pick):
        v, edges = x, []
        while v != y:
            usable = [e for e in ps.out_order[v] if ps.leq(ps.edge_map[e].tgt, y)]
            e = pick(usable)
            edges.append(e)
            v = ps.edge_map[e].tgt
        return ps.path(edges)

    return greedy(lambda es: es[-1]), greedy(lambda es: es[0])


# --------------------------------------------------------------------------- sub-schemes

def induced_scheme(ps: PastingScheme, edge_ids, marker) -> PastingScheme:
    """The plane subgraph on ``edge_ids`` (rotations restricted), validated."""
    keep = set(edge_ids)
    edges = [e for e in ps.edges if e.id in keep]
    verts = {e.src for e in edges} | {e.tgt for e in edges}
    objects = [v for v in ps.objects if v in verts]
    rotation = {v: [d for d in ps.graph.rotation[v] if d[1] in keep] for v in objects}
    coords = None
    if ps.graph.coords is not None:
        coords = {v: c for v, c in ps.graph.coords.items() if v in verts}
    g = PlaneGraph.build(objects, edges, rotation, marker, coords)
    return validate_pasting_scheme(g)


def region_faces(ps: PastingScheme, p: Path, q: Path) -> list:
    """Faces enclosed between ``p`` and ``q`` (p above q), in face order."""
    fact = partition_parallel(ps, p, q)
    walls = set(p.edges) | set(q.edges)
    seen, stack = set(), [ps.right_face[e] for pi, _ in fact.blocks for e in pi.edges]
    while stack:
        fid = stack.pop()
        if fid in seen:
            continue
        assert fid != EXTERIOR, "region between parallel paths leaked to the exterior"
        seen.add(fid)
        for d in ps.face(fid).boundary:
            if d[1] not in walls:
                stack.append(ps.right_face[d[1]] if d[0] == OUT else ps.left_face[d[1]])
    return [f.id for f in ps.faces if f.id in seen]


def sub_scheme_pq(ps: PastingScheme, p: Path, q: Path) -> PastingScheme:
    """The scheme p/q of everything between ``p`` and ``q``; faces keep their ids."""
    if not p.edges or not q.edges:
        raise TrivialPath("p/q needs nonempty paths")
    faces = region_faces(ps, p, q)
    edges = set(p.edges) | set(q.edges)
    for fid in faces:
        f = ps.face(fid)
        edges |= set(f.dom.edges) | set(f.cod.edges)
    sub = induced_scheme(ps, edges, (p.edges[0], LEFT))
    assert sub.dom == p and sub.cod == q and set(sub.face_ids) == set(faces)
    return sub


def sub_scheme_between(ps: PastingScheme, x, y) -> PastingScheme:
    """The scheme of all vertices and faces lying between x and y."""
    if x == y or not ps.leq(x, y):
        raise NotReachable(f"{x} does not strictly precede {y}")
    top, bottom = extremal_paths(ps, x, y)
    return sub_scheme_pq(ps, top, bottom)


# --------------------------------------------------------------------------- cells

def top_cells(ps: PastingScheme) -> list:
    """Faces whose source path lies on dom_P, ordered along dom_P."""
    on_dom = set(ps.dom.edges)
    cells = [f for f in ps.faces if on_dom.issuperset(f.dom.edges)]
    assert cells or not ps.faces, "a scheme with faces always has a top cell"
    return [f.id for f in sorted(cells, key=lambda f: ps.dom.position(f.source))]


def bottom_cells(ps: PastingScheme) -> list:
    on_cod = set(ps.cod.edges)
    cells = [f for f in ps.faces if on_cod.issuperset(f.cod.edges)]
    assert cells or not ps.faces, "a scheme with faces always has a bottom cell"
    return [f.id for f in sorted(cells, key=lambda f: ps.cod.position(f.source))]


def _splice(path: Path, old: Path, new: Path) -> Path:
    i, j = path.position(old.start), path.position(old.end)
    assert path.segment(i, j) == old
    return path.segment(0, i) + new + path.segment(j, len(path))


def delete_top_cell(ps: PastingScheme, fid) -> PastingScheme:
    """Remove a top cell together with the interior of its source path."""
    if fid not in top_cells(ps):
        raise NotTopCell(f"{fid} is not a top cell")
    f = ps.face(fid)
    new_dom = _splice(ps.dom, f.dom, f.cod)
    keep = [e.id for e in ps.edges if e.id not in set(f.dom.edges)]
    out = induced_scheme(ps, keep, (new_dom.edges[0], LEFT))
    assert out.dom == new_dom and out.num_faces == ps.num_faces - 1
    return out


def delete_bottom_cell(ps: PastingScheme, fid) -> PastingScheme:
    if fid not in bottom_cells(ps):
        raise NotBottomCell(f"{fid} is not a bottom cell")
    f = ps.face(fid)
    new_cod = _splice(ps.cod, f.cod, f.dom)
    keep = [e.id for e in ps.edges if e.id not in set(f.cod.edges)]
    out = induced_scheme(ps, keep, (ps.dom.edges[0], LEFT))
    assert out.cod == new_cod and out.num_faces == ps.num_faces - 1
    return out


def _fresh_prefix(ps: PastingScheme, stem: str) -> str:
    taken = set(ps.edge_map) | set(ps.objects)
    for k in itertools.count():
        prefix = f"{stem}{k}"
        if not any(name.startswith(prefix + "_") or name == prefix for name in taken):
            return prefix


def attach_at_bottom(ps: PastingScheme, x, y, length: int = 1, stem: str = "c") -> tuple:
    """Glue a new cell below the bottom path from x to y.

    The new target path has ``length`` edges.  Returns the enlarged scheme
    and the id of the new face.
    """
    if length < 1:
        raise ValueError("the new target path needs at least one edge")
    if x == y or not ps.leq(x, y):
        raise NotBottomAttachable(f"{x} does not strictly precede {y}")
    bottom = extremal_paths(ps, x, y)[1]
    if not set(ps.cod.edges).issuperset(bottom.edges):
        raise NotBottomAttachable(f"bottom path {bottom} from {x} to {y} leaves cod_P")
    prefix = _fresh_prefix(ps, stem)
    chain = [x] + [f"{prefix}_v{i}" for i in range(1, length)] + [y]
    new_edges = [Edge(f"{prefix}_{i}", chain[i], chain[i + 1]) for i in range(length)]

    rotation = {v: list(ds) for v, ds in ps.graph.rotation.items()}
    ring = rotation[x]
    ring.insert(ring.index((OUT, bottom.edges[0])) + 1, (OUT, new_edges[0].id))
    ring = rotation[y]
    ring.insert(ring.index((IN, bottom.edges[-1])), (IN, new_edges[-1].id))
    for i, v in enumerate(chain[1:-1]):
        rotation[v] = [(IN, new_edges[i].id), (OUT, new_edges[i + 1].id)]
    coords = None
    if ps.graph.coords is not None:
        coords = dict(ps.graph.coords)
        (x0, y0), (x1, y1) = coords[x], coords[y]
        low = min(c[1] for c in coords.values()) - 1.0
        for i, v in enumerate(chain[1:-1], start=1):
            coords[v] = (x0 + (x1 - x0) * i / length, low)
    g = PlaneGraph.build(
        list(ps.objects) + chain[1:-1], list(ps.edges) + new_edges,
        rotation, (ps.dom.edges[0], LEFT), coords,
    )
    out = validate_pasting_scheme(g)
    new_face = next(f.id for f in out.faces if f.dom == bottom)
    assert out.face(new_face).cod.edges == tuple(e.id for e in new_edges)
    return out, new_face


# --------------------------------------------------------------------------- presentations

@dataclass(frozen=True)
class PresentationStep:
    face: str
    prefix: Path
    suffix: Path

    def to_json(self) -> dict:
        return {"face": self.face, "prefix": list(self.prefix.edges), "suffix": list(self.suffix.edges)}


@dataclass(frozen=True)
class Presentation:
    """A linear ordering of the faces as successive path rewrites."""

    steps: tuple

    def __len__(self) -> int:
        return len(self.steps)

    def replay(self, ps: PastingScheme) -> list:
        """The paths m_0 = dom_P, m_1, ..., m_n = cod_P visited by the rewrites."""
        if not self.steps:
            return [ps.dom]
        first = self.steps[0]
        chain = [first.prefix + ps.face(first.face).dom + first.suffix]
        for step in self.steps:
            f = ps.face(step.face)
            if chain[-1] != step.prefix + f.dom + step.suffix:
                raise ValueError(f"step {step.face} does not rewrite {chain[-1]}")
            chain.append(step.prefix + f.cod + step.suffix)
        return chain

    def check(self, ps: PastingScheme) -> bool:
        faces = [s.face for s in self.steps]
        if sorted(faces) != sorted(ps.face_ids):
            return False
        try:
            chain = self.replay(ps)
        except ValueError:
            return False
        return chain[0] == ps.dom and chain[-1] == ps.cod

    def to_json(self) -> list:
        return [s.to_json() for s in self.steps]


def presentation(ps: PastingScheme) -> Presentation:
    """Peel off top cells one at a time, earliest along the current dom first."""
    steps, cur = [], ps
    while cur.faces:
        fid = top_cells(cur)[0]
        f = cur.face(fid)
        i, j = cur.dom.position(f.source), cur.dom.position(f.target)
        steps.append(PresentationStep(fid, cur.dom.segment(0, i), cur.dom.segment(j, len(cur.dom))))
        cur = delete_top_cell(cur, fid)
    assert cur.dom == ps.cod
    return Presentation(tuple(steps))


def enumerate_presentations(ps: PastingScheme, cap: int = 500):
    """Yield up to ``cap`` presentations by rewriting paths (no re-validation)."""
    faces = {f.id: f for f in ps.faces}

    def grow(current: Path, remaining: frozenset, steps: tuple):
        if not remaining:
            yield Presentation(steps)
            return
        on_path = set(current.edges)
        movable = [fid for fid in faces if fid in remaining and on_path.issuperset(faces[fid].dom.edges)]
        assert movable, "no rewritable face left"
        for fid in movable:
            f = faces[fid]
            i, j = current.position(f.source), current.position(f.target)
            step = PresentationStep(fid, current.segment(0, i), current.segment(j, len(current)))
            yield from grow(step.prefix + f.cod + step.suffix, remaining - {fid}, steps + (step,))

    return itertools.islice(grow(ps.dom, frozenset(faces), ()), cap)


def directly_above_order(ps: PastingScheme) -> dict:
    """face -> faces directly below it (sharing an edge of its target path)."""
    owner = {e: f.id for f in ps.faces for e in f.dom.edges}
    below = {}
    for f in ps.faces:
        hits = {owner[e] for e in f.cod.edges if e in owner}
        below[f.id] = tuple(g for g in ps.face_ids if g in hits)
    try:
        tuple(graphlib.TopologicalSorter({k: set(v) for k, v in below.items()}).static_order())
    except graphlib.CycleError as exc:
        raise CycleFound(f"directly-above relation has a cycle: {exc.args[1]}") from None
    return below


def above_closure(ps: PastingScheme) -> set:
    """Pairs (a, b) with face a (weakly) above face b."""
    below = directly_above_order(ps)
    pairs = set()
    for a in below:
        stack, seen = [a], {a}
        while stack:
            for b in below[stack.pop()]:
                if b not in seen:
                    seen.add(b)
                    stack.append(b)
        pairs |= {(a, b) for b in seen}
    return pairs
