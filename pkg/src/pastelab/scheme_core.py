"""Plane graphs, face tracing and pasting-scheme validation.

A plane graph is stored as a rotation system: for every vertex, the darts
leaving it in clockwise drawn order.  A dart is a pair ``(direction, edge)``:
``("out", e)`` leaves ``src(e)`` along ``e`` and ``("in", e)`` leaves
``tgt(e)`` travelling backwards along ``e``.

Faces are the orbits of ``h -> cw_next(twin(h))``.  Every dart in an orbit
has that face on its left, so the face through ``("out", e)`` is the left
face of ``e`` and the face through ``("in", e)`` is its right face.
"""
from __future__ import annotations

import graphlib
import json
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .errors import (
    CycleFound,
    EmbeddingError,
    EmptyWidths,
    ExtremaViolation,
    InvalidScheme,
    MultipleSinks,
    MultipleSources,
    NotAnchorable,
    NotAPath,
    ParseError,
    PartitionViolation,
    ProhibitedConfiguration,
    StructureError,
    UnknownVertex,
)

OUT, IN = "out", "in"
LEFT, RIGHT = "left", "right"
EXTERIOR = "exterior"

Dart = tuple  # (OUT | IN, edge id)


def twin(d: Dart) -> Dart:
    return (IN if d[0] == OUT else OUT, d[1])


# --------------------------------------------------------------------------- paths

@dataclass(frozen=True)
class Path:
    """A directed path, stored with its vertex sequence.

    ``vertices`` always has one more entry than ``edges``; the empty path at
    ``v`` is ``Path((v,), ())``.
    """

    vertices: tuple
    edges: tuple = ()

    def __post_init__(self):
        if len(self.vertices) != len(self.edges) + 1:
            raise NotAPath(f"{len(self.vertices)} vertices for {len(self.edges)} edges")

    @classmethod
    def empty(cls, v: str) -> "Path":
        return cls((v,), ())

    @property
    def start(self) -> str:
        return self.vertices[0]

    @property
    def end(self) -> str:
        return self.vertices[-1]

    def __len__(self) -> int:
        return len(self.edges)

    def __add__(self, other: "Path") -> "Path":
        if self.end != other.start:
            raise NotAPath(f"cannot append a path from {other.start} to one ending at {self.end}")
        return Path(self.vertices + other.vertices[1:], self.edges + other.edges)

    def __str__(self) -> str:
        return "·".join(self.edges) if self.edges else f"id({self.start})"

    def parallel_to(self, other: "Path") -> bool:
        return self.start == other.start and self.end == other.end

    def position(self, v: str) -> int:
        return self.vertices.index(v)

    def segment(self, i: int, j: int) -> "Path":
        """Subpath from the i-th to the j-th vertex (inclusive)."""
        return Path(self.vertices[i:j + 1], self.edges[i:j])

    def between(self, u: str, v: str) -> "Path":
        return self.segment(self.position(u), self.position(v))

    @cached_property
    def incidence(self) -> dict:
        """vertex -> (incoming edge or None, outgoing edge or None)."""
        inc = {v: [None, None] for v in self.vertices}
        for i, e in enumerate(self.edges):
            inc[self.vertices[i]][1] = e
            inc[self.vertices[i + 1]][0] = e
        return {v: tuple(pair) for v, pair in inc.items()}

    def to_json(self) -> list:
        return list(self.edges)


# --------------------------------------------------------------------------- graphs

@dataclass(frozen=True)
class Edge:
    id: str
    src: str
    tgt: str


@dataclass(frozen=True)
class PlaneGraph:
    objects: tuple
    edges: tuple
    rotation: Mapping
    exterior: tuple  # (edge id, LEFT | RIGHT)
    coords: Mapping | None = None

    @classmethod
    def build(cls, objects, edges, rotation, exterior, coords=None) -> "PlaneGraph":
        """Assemble a graph from plain data and run the structural checks."""
        g = cls(
            objects=tuple(objects),
            edges=tuple(e if isinstance(e, Edge) else Edge(*e) for e in edges),
            rotation={v: tuple(tuple(d) for d in ds) for v, ds in rotation.items()},
            exterior=tuple(exterior),
            coords=None if coords is None else {v: tuple(c) for v, c in coords.items()},
        )
        _check_structure(g)
        return g

    @cached_property
    def edge_map(self) -> dict:
        return {e.id: e for e in self.edges}

    @cached_property
    def _rotation_pos(self) -> dict:
        return {v: {d: i for i, d in enumerate(ds)} for v, ds in self.rotation.items()}

    def tail(self, d: Dart) -> str:
        e = self.edge_map[d[1]]
        return e.src if d[0] == OUT else e.tgt

    def head(self, d: Dart) -> str:
        e = self.edge_map[d[1]]
        return e.tgt if d[0] == OUT else e.src

    def cw_next(self, d: Dart) -> Dart:
        v = self.tail(d)
        ring = self.rotation[v]
        return ring[(self._rotation_pos[v][d] + 1) % len(ring)]

    def face_step(self, d: Dart) -> Dart:
        return self.cw_next(twin(d))

    def darts(self) -> Iterable:
        for e in self.edges:
            yield (OUT, e.id)
            yield (IN, e.id)


def _check_structure(g: PlaneGraph) -> None:
    problems = []
    dup_obj = [v for v, c in Counter(g.objects).items() if c > 1]
    if dup_obj:
        problems.append(f"duplicate object ids {dup_obj}")
    dup_edge = [e for e, c in Counter(e.id for e in g.edges).items() if c > 1]
    if dup_edge:
        problems.append(f"duplicate edge ids {dup_edge}")
    if not g.edges:
        problems.append("the edge set is empty")
    objs = set(g.objects)
    for e in g.edges:
        for end in (e.src, e.tgt):
            if end not in objs:
                problems.append(f"edge {e.id} has dangling endpoint {end!r}")
    for v in g.rotation:
        if v not in objs:
            problems.append(f"rotation given for unknown vertex {v!r}")
    if problems:
        raise StructureError(problems)

    seen = Counter()
    for v in g.objects:
        for d in g.rotation.get(v, ()):
            if d[0] not in (OUT, IN) or d[1] not in g.edge_map:
                problems.append(f"vertex {v}: unknown dart {d}")
                continue
            seen[d] += 1
            if g.tail(d) != v:
                problems.append(f"dart {d[0]}:{d[1]} listed at {v} but belongs at {g.tail(d)}")
    for d in g.darts():
        if seen[d] != 1:
            problems.append(f"dart {d[0]}:{d[1]} appears {seen[d]} times in the rotations")
    edge_id, side = g.exterior
    if edge_id not in g.edge_map:
        problems.append(f"exterior marker names unknown edge {edge_id!r}")
    if side not in (LEFT, RIGHT):
        problems.append(f"exterior side must be left or right, not {side!r}")
    if problems:
        raise StructureError(problems)

    adj = {v: set() for v in g.objects}
    for e in g.edges:
        adj[e.src].add(e.tgt)
        adj[e.tgt].add(e.src)
    start = g.objects[0]
    stack, comp = [start], {start}
    while stack:
        for w in adj[stack.pop()]:
            if w not in comp:
                comp.add(w)
                stack.append(w)
    if len(comp) != len(objs):
        raise StructureError(f"graph is disconnected: {sorted(objs - comp)} unreachable from {start}")


# --------------------------------------------------------------------------- file format

def parse_scheme(text) -> PlaneGraph:
    """Parse the JSON scheme format into a structurally checked PlaneGraph."""
    if isinstance(text, (bytes, bytearray)):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"not UTF-8: {exc}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise ParseError("top level must be a JSON object")
    for key in ("objects", "edges", "rotation", "exterior"):
        if key not in data:
            raise ParseError(f"missing key {key!r}")

    objects = data["objects"]
    if not isinstance(objects, list) or not all(isinstance(v, str) for v in objects):
        raise ParseError("'objects' must be an array of strings")

    edges = []
    if not isinstance(data["edges"], list):
        raise ParseError("'edges' must be an array")
    for item in data["edges"]:
        if not isinstance(item, dict) or not all(isinstance(item.get(k), str) for k in ("id", "src", "tgt")):
            raise ParseError(f"bad edge record {item!r}")
        edges.append(Edge(item["id"], item["src"], item["tgt"]))

    rotation = {}
    if not isinstance(data["rotation"], dict):
        raise ParseError("'rotation' must be an object")
    for v, darts in data["rotation"].items():
        if not isinstance(darts, list):
            raise ParseError(f"rotation of {v!r} must be an array")
        ring = []
        for s in darts:
            if not isinstance(s, str) or ":" not in s:
                raise ParseError(f"bad dart {s!r} at {v!r}")
            direction, _, eid = s.partition(":")
            if direction not in (OUT, IN):
                raise ParseError(f"bad dart direction in {s!r}")
            ring.append((direction, eid))
        rotation[v] = tuple(ring)

    ext = data["exterior"]
    if not isinstance(ext, dict) or not isinstance(ext.get("edge"), str) or not isinstance(ext.get("side"), str):
        raise ParseError("'exterior' must be {\"edge\": id, \"side\": left|right}")

    coords = data.get("coords")
    if coords is not None:
        if not isinstance(coords, dict) or not all(
            isinstance(c, list) and len(c) == 2 and all(isinstance(x, (int, float)) for x in c)
            for c in coords.values()
        ):
            raise ParseError("'coords' must map vertex ids to [x, y]")
    return PlaneGraph.build(objects, edges, rotation, (ext["edge"], ext["side"]), coords)


def graph_to_dict(g: PlaneGraph) -> dict:
    out = {
        "objects": list(g.objects),
        "edges": [{"id": e.id, "src": e.src, "tgt": e.tgt} for e in g.edges],
        "rotation": {v: [f"{d[0]}:{d[1]}" for d in g.rotation.get(v, ())] for v in g.objects},
        "exterior": {"edge": g.exterior[0], "side": g.exterior[1]},
    }
    if g.coords is not None:
        out["coords"] = {v: list(c) for v, c in g.coords.items()}
    return out


def dumps_canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def serialize_graph(g, parent_face_map: Mapping | None = None) -> str:
    """Canonical JSON text: keys sorted, arrays kept in input order."""
    if isinstance(g, PastingScheme):
        g = g.graph
    data = graph_to_dict(g)
    if parent_face_map is not None:
        data["parent_face_map"] = dict(parent_face_map)
    return dumps_canonical(data)


# --------------------------------------------------------------------------- faces

@dataclass(frozen=True)
class Face:
    """A face as the cyclic walk of darts having it on their left."""

    id: str
    boundary: tuple
    exterior: bool
    dom: Path | None = None
    cod: Path | None = None
    problem: str | None = None

    @property
    def kind(self) -> str:
        return EXTERIOR if self.exterior else "interior"

    @property
    def anchored(self) -> bool:
        return self.dom is not None

    @property
    def source(self) -> str:
        return self.dom.start

    @property
    def target(self) -> str:
        return self.dom.end

    @property
    def cut_edges(self) -> frozenset:
        c = Counter(d[1] for d in self.boundary)
        return frozenset(e for e, k in c.items() if k == 2)

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "kind": self.kind,
            "dom": None if self.dom is None else list(self.dom.edges),
            "cod": None if self.cod is None else list(self.cod.edges),
        }


def _edges_to_path(g: PlaneGraph, edge_ids) -> Path | None:
    """Order a set of edges into a directed path, or return None."""
    edge_ids = list(edge_ids)
    if not edge_ids:
        return None
    out_of, into = {}, {}
    for eid in edge_ids:
        e = g.edge_map[eid]
        if e.src in out_of or e.tgt in into:
            return None
        out_of[e.src] = e
        into[e.tgt] = e
    starts = [v for v in out_of if v not in into]
    if len(starts) != 1:
        return None
    verts, edges = [starts[0]], []
    while verts[-1] in out_of:
        e = out_of[verts[-1]]
        edges.append(e.id)
        verts.append(e.tgt)
        if len(edges) > len(edge_ids):
            return None
    if len(edges) != len(edge_ids) or len(set(verts)) != len(verts):
        return None
    return Path(tuple(verts), tuple(edges))


def _anchor(g: PlaneGraph, boundary, exterior: bool):
    left = [d[1] for d in boundary if d[0] == OUT]
    right = [d[1] for d in boundary if d[0] == IN]
    dom_edges, cod_edges = (left, right) if exterior else (right, left)
    dom, cod = _edges_to_path(g, dom_edges), _edges_to_path(g, cod_edges)
    if dom is None or cod is None:
        which = "source" if dom is None else "target"
        return None, None, f"{which} boundary is not a nonempty directed path"
    if not dom.parallel_to(cod):
        return None, None, f"source path {dom.start}->{dom.end} and target path {cod.start}->{cod.end} are not parallel"
    if not exterior:
        if set(dom.edges) & set(cod.edges):
            return None, None, "source and target paths share an edge"
        if set(dom.vertices[1:-1]) & set(cod.vertices[1:-1]):
            return None, None, "source and target paths share an interior vertex"
    return dom, cod, None


def trace_faces(g: PlaneGraph) -> list:
    """All faces of ``g``, anchored where possible; exterior face flagged."""
    orbit_of, orbits = {}, []
    for d in g.darts():
        if d in orbit_of:
            continue
        walk, cur = [], d
        while cur not in orbit_of:
            orbit_of[cur] = len(orbits)
            walk.append(cur)
            cur = g.face_step(cur)
        if cur != d:
            raise EmbeddingError(f"face walk from {d} does not close up")
        orbits.append(tuple(walk))

    n_v, n_e, n_f = len(g.objects), len(g.edges), len(orbits)
    if n_v - n_e + n_f != 2:
        raise EmbeddingError(f"Euler characteristic V-E+F = {n_v}-{n_e}+{n_f} != 2")

    marker_edge, side = g.exterior
    ext_index = orbit_of[(OUT if side == LEFT else IN, marker_edge)]
    faces = []
    for i, walk in enumerate(orbits):
        is_ext = i == ext_index
        dom, cod, problem = _anchor(g, walk, is_ext)
        if is_ext:
            fid = EXTERIOR
        elif dom is not None:
            fid = f"{dom.edges[0]}=>{cod.edges[0]}"
        else:
            fid = f"face{i}"
        faces.append(Face(fid, walk, is_ext, dom, cod, problem))
    return faces


# --------------------------------------------------------------------------- pasting schemes

@dataclass(frozen=True, eq=False)
class PastingScheme:
    graph: PlaneGraph
    faces: tuple  # interior faces, in tracing order
    exterior: Face
    s: str
    t: str
    dom: Path
    cod: Path
    in_order: Mapping
    out_order: Mapping
    reach: Mapping

    # -- lookups
    @property
    def objects(self) -> tuple:
        return self.graph.objects

    @property
    def edges(self) -> tuple:
        return self.graph.edges

    @property
    def edge_map(self) -> dict:
        return self.graph.edge_map

    @property
    def num_faces(self) -> int:
        return len(self.faces)

    @cached_property
    def face_map(self) -> dict:
        return {f.id: f for f in self.faces}

    @property
    def face_ids(self) -> tuple:
        return tuple(f.id for f in self.faces)

    def face(self, fid) -> Face:
        if isinstance(fid, Face):
            return fid
        return self.face_map[fid]

    @cached_property
    def in_rank(self) -> dict:
        return {e: i for v in self.objects for i, e in enumerate(self.in_order[v])}

    @cached_property
    def out_rank(self) -> dict:
        return {e: i for v in self.objects for i, e in enumerate(self.out_order[v])}

    @cached_property
    def left_face(self) -> dict:
        return self._side_faces(OUT)

    @cached_property
    def right_face(self) -> dict:
        return self._side_faces(IN)

    def _side_faces(self, direction) -> dict:
        out = {}
        for f in (*self.faces, self.exterior):
            for d in f.boundary:
                if d[0] == direction:
                    out[d[1]] = f.id
        return out

    def check_vertex(self, v) -> str:
        if v not in self.reach:
            raise UnknownVertex(v)
        return v

    def leq(self, x, y) -> bool:
        return y in self.reach[x]

    def path(self, edge_ids: Sequence, start: str | None = None) -> Path:
        """Build a Path from edge ids (``start`` is needed for the empty path)."""
        edge_ids = tuple(edge_ids)
        if not edge_ids:
            if start is None:
                raise NotAPath("an empty path needs an explicit start vertex")
            return Path.empty(self.check_vertex(start))
        verts = [self.edge_map[edge_ids[0]].src]
        for eid in edge_ids:
            e = self.edge_map.get(eid)
            if e is None:
                raise NotAPath(f"unknown edge {eid!r}")
            if e.src != verts[-1]:
                raise NotAPath(f"edge {eid} does not start at {verts[-1]}")
            verts.append(e.tgt)
        if start is not None and verts[0] != start:
            raise NotAPath(f"path starts at {verts[0]}, not {start}")
        return Path(tuple(verts), edge_ids)

    def to_json(self) -> dict:
        return {
            "s": self.s,
            "t": self.t,
            "dom": list(self.dom.edges),
            "cod": list(self.cod.edges),
            "faces": [f.to_json() for f in self.faces],
        }


def _find_cycle(g: PlaneGraph):
    succ = {v: [] for v in g.objects}
    for e in g.edges:
        succ[e.src].append(e)
    color = dict.fromkeys(g.objects, 0)
    for root in g.objects:
        if color[root]:
            continue
        stack, trail = [(root, iter(succ[root]))], []
        color[root] = 1
        while stack:
            v, it = stack[-1]
            e = next(it, None)
            if e is None:
                color[v] = 2
                stack.pop()
                if trail:
                    trail.pop()
                continue
            if color[e.tgt] == 1:
                k = next((i for i, edge in enumerate(trail) if edge.src == e.tgt), len(trail))
                return [edge.id for edge in trail[k:]] + [e.id]
            if color[e.tgt] == 0:
                color[e.tgt] = 1
                trail.append(e)
                stack.append((e.tgt, iter(succ[e.tgt])))
    return None


def _reach(g: PlaneGraph) -> dict:
    preds = {v: set() for v in g.objects}
    succ = {v: [] for v in g.objects}
    for e in g.edges:
        preds[e.tgt].add(e.src)
        succ[e.src].append(e.tgt)
    order = list(graphlib.TopologicalSorter(preds).static_order())
    reach = {}
    for v in reversed(order):
        r = {v}
        for w in succ[v]:
            r |= reach[w]
        reach[v] = frozenset(r)
    return reach


def _cut_orders(g: PlaneGraph, v, face_of: dict):
    """Split the clockwise rotation at ``v`` into ordered (in(v), out(v))."""
    ring = g.rotation[v]
    n = len(ring)
    kinds = [d[0] for d in ring]
    if len(set(kinds)) == 2:
        out_start = next(i for i in range(n) if kinds[i] == OUT and kinds[i - 1] == IN)
        in_start = next(i for i in range(n) if kinds[i] == IN and kinds[i - 1] == OUT)
        out_arc = [ring[(out_start + j) % n][1] for j in range(kinds.count(OUT))]
        in_arc = [ring[(in_start + j) % n][1] for j in range(kinds.count(IN))]
        return tuple(in_arc), tuple(reversed(out_arc))
    # one-directional vertex: cut at the exterior gap
    gaps = [i for i in range(n) if face_of[ring[(i + 1) % n]] == EXTERIOR]
    assert len(gaps) == 1, f"vertex {v} meets the exterior face {len(gaps)} times"
    j = (gaps[0] + 1) % n
    arc = tuple(ring[(j + i) % n][1] for i in range(n))
    if kinds[0] == OUT:
        return (), tuple(reversed(arc))
    return arc, ()


def _switches(ring) -> int:
    return sum(1 for i in range(len(ring)) if ring[i][0] != ring[i - 1][0])


def validate_pasting_scheme(g: PlaneGraph) -> PastingScheme:
    """Check every pasting-scheme condition, collecting all violations."""
    faces = trace_faces(g)
    errors = []
    ext = next(f for f in faces if f.exterior)
    interior = tuple(f for f in faces if not f.exterior)
    for f in faces:
        if not f.anchored:
            errors.append(NotAnchorable(f"{f.kind} face {f.id}: {f.problem}", f.id))

    has_in = {e.tgt for e in g.edges}
    has_out = {e.src for e in g.edges}
    sources = [v for v in g.objects if v not in has_in]
    sinks = [v for v in g.objects if v not in has_out]
    s = ext.dom.start if ext.anchored else None
    t = ext.dom.end if ext.anchored else None
    if len(sources) != 1 or (s is not None and sources[0] != s):
        errors.append(MultipleSources(f"local sources {sources}, expected exactly one", sources))
    if len(sinks) != 1 or (t is not None and sinks[0] != t):
        errors.append(MultipleSinks(f"local sinks {sinks}, expected exactly one", sinks))

    cycle = _find_cycle(g)
    if cycle is not None:
        errors.append(CycleFound(f"directed cycle through edges {cycle}", cycle))

    for v in g.objects:
        if _switches(g.rotation[v]) > 2:
            errors.append(ProhibitedConfiguration(f"vertex {v} alternates out/in/out/in", v))

    if all(f.anchored for f in faces):
        for label, parts in (
            ("source", [f.dom for f in interior] + [ext.cod]),
            ("target", [f.cod for f in interior] + [ext.dom]),
        ):
            count = Counter(e for p in parts for e in p.edges)
            for e in g.edges:
                if count[e.id] != 1:
                    errors.append(PartitionViolation(
                        f"edge {e.id} lies on {count[e.id]} {label} paths of the edge partition", e.id))

    reach = None
    if cycle is None:
        reach = _reach(g)
        if s is not None and t is not None:
            bad = [v for v in g.objects if v not in reach[s] or t not in reach[v]]
            if bad:
                errors.append(ExtremaViolation(f"vertices {bad} are not between {s} and {t}", bad))

    if errors:
        raise InvalidScheme(errors)

    face_of = {d: f.id for f in faces for d in f.boundary}
    in_order, out_order = {}, {}
    for v in g.objects:
        in_order[v], out_order[v] = _cut_orders(g, v, face_of)
    dom_set, cod_set = set(ext.dom.edges), set(ext.cod.edges)
    first = out_order[s]
    assert first[0] in cod_set or first[-1] in dom_set, "tie rule fails at the source"
    last = in_order[t]
    assert last[0] in cod_set or last[-1] in dom_set, "tie rule fails at the sink"

    return PastingScheme(
        graph=g, faces=interior, exterior=ext, s=s, t=t, dom=ext.dom, cod=ext.cod,
        in_order=in_order, out_order=out_order, reach=reach,
    )


def load_scheme(text) -> PastingScheme:
    return validate_pasting_scheme(parse_scheme(text))


# --------------------------------------------------------------------------- queries

def in_out_order(ps: PastingScheme, v) -> tuple:
    ps.check_vertex(v)
    return ps.in_order[v], ps.out_order[v]


def pred_succ(ps: PastingScheme, p: Path, v) -> tuple:
    """(incoming edge of p at v, outgoing edge of p at v); None stands for the null point."""
    return p.incidence.get(v, (None, None))


def reachable(ps: PastingScheme, x, y) -> bool:
    ps.check_vertex(x)
    ps.check_vertex(y)
    return y in ps.reach[x]


# --------------------------------------------------------------------------- builders

def theta2_edge(j: int, i: int) -> str:
    """Id of the i-th edge (counted from the top) of column j."""
    return f"e{j}_{i}"


def theta2_graph(widths: Sequence[int]) -> PlaneGraph:
    widths = list(widths)
    if not widths:
        raise EmptyWidths("need at least one column")
    if any(k < 0 for k in widths):
        raise ValueError("widths must be nonnegative")
    n = len(widths)
    objects = [str(i) for i in range(n + 1)]
    edges = [
        Edge(theta2_edge(j, i), str(j - 1), str(j))
        for j in range(1, n + 1) for i in range(widths[j - 1] + 1)
    ]
    rotation = {}
    for v in range(n + 1):
        ring = []
        if v < n:
            ring += [(OUT, theta2_edge(v + 1, i)) for i in range(widths[v] + 1)]
        if v > 0:
            ring += [(IN, theta2_edge(v, i)) for i in reversed(range(widths[v - 1] + 1))]
        rotation[str(v)] = ring
    coords = {str(v): (float(v), 0.0) for v in range(n + 1)}
    return PlaneGraph.build(objects, edges, rotation, (theta2_edge(1, 0), LEFT), coords)


def build_theta2(widths: Sequence[int]) -> PastingScheme:
    """The scheme of ``len(widths)`` columns, column j holding ``widths[j]`` stacked cells."""
    return validate_pasting_scheme(theta2_graph(widths))


# --------------------------------------------------------------------------- DOT

def to_dot(obj, name: str = "scheme") -> str:
    g = obj.graph if isinstance(obj, PastingScheme) else obj
    lines = [f"digraph {json.dumps(name)} {{", "  rankdir=LR;"]
    if isinstance(obj, PastingScheme):
        lines.append(f"  // source {obj.s}, target {obj.t}")
        lines.append(f"  // exterior: dom {' '.join(obj.dom.edges)} ; cod {' '.join(obj.cod.edges)}")
        for f in obj.faces:
            lines.append(f"  // face {f.id}: dom {' '.join(f.dom.edges)} ; cod {' '.join(f.cod.edges)}")
    else:
        for f in trace_faces(g):
            lines.append(f"  // {f.kind} face {f.id}: " + " ".join(f"{d[0]}:{d[1]}" for d in f.boundary))
    for v in g.objects:
        lines.append(f"  {json.dumps(v)};")
    for e in g.edges:
        lines.append(f"  {json.dumps(e.src)} -> {json.dumps(e.tgt)} [label={json.dumps(e.id)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
