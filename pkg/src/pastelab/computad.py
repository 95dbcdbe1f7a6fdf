"""Truncated simplicial categories built from a pasting scheme.

``nerve_f2cat`` takes the nerve of every hom-poset of the free 2-category;
``graph_scat`` keeps the chains generated freely by edges and faces.  An
n-arrow from a to z is a weakly decreasing sequence of paths p_0 >= ... >= p_n
(each lying above the next); in hom-poset order that is a weakly increasing
sequence, so the nondegenerate ones are exactly the nerve's chains.
"""
from __future__ import annotations

import itertools
import os
import weakref
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .cat_kit import (
    ONE,
    TWO,
    ChainComplexSSet,
    FinPoset,
    PosetInclusion,
    PosetMap,
    certify_inner_anodyne,
    nerve,
    poset_product,
    pushout_along_dwyer,
    verify_certificate,
)
from .cat_kit.anodyne import InnerAnodyneCertificate, Unknown
from .errors import NotAnArrow, NotAnEdge, NotBottomAttachable, NotBottomCell
from .hom_poset import hom_poset
from .path_kit import bottom_cells, delete_bottom_cell, lies_above
from .scheme_core import IN, OUT, Edge, Path, PastingScheme, PlaneGraph, validate_pasting_scheme

DEFAULT_LEVEL = 4

_CACHE: "weakref.WeakKeyDictionary" = weakref.WeakKeyDictionary()


def hom_table(ps: PastingScheme) -> dict:
    """(a, z) -> HomPoset for every pair with a path a -> z; cached per scheme."""
    return _cached(ps)[0]


def _poset_table(ps: PastingScheme) -> dict:
    return _cached(ps)[1]


def _cached(ps: PastingScheme) -> tuple:
    hit = _CACHE.get(ps)
    if hit is None:
        homs = {(a, z): hom_poset(ps, a, z) for a in ps.objects for z in ps.objects if ps.leq(a, z)}
        hit = (homs, {pair: h.to_finposet() for pair, h in homs.items()})
        _CACHE[ps] = hit
    return hit


# --------------------------------------------------------------------------- atomic arrows

@dataclass(frozen=True)
class AtomicArrow:
    """An n-arrow whose outermost paths meet only at their endpoints."""

    chain: tuple  # paths p_0 >= ... >= p_n

    @property
    def dim(self) -> int:
        return len(self.chain) - 1

    @property
    def source(self):
        return self.chain[0].start

    @property
    def target(self):
        return self.chain[0].end

    @property
    def degenerate(self) -> bool:
        return any(a == b for a, b in zip(self.chain, self.chain[1:]))

    def __str__(self) -> str:
        return "(" + "≥".join(str(p) for p in self.chain) + ")"


def meets_only_at_ends(p: Path, q: Path) -> bool:
    return bool(p.edges) and set(p.vertices) & set(q.vertices) == {p.start, p.end}


def _check_arrow(ps: PastingScheme, chain: tuple):
    if not chain:
        raise NotAnArrow("an n-arrow needs at least one path")
    for p in chain:
        if not isinstance(p, Path):
            raise NotAnArrow(f"{p!r} is not a path")
        if not p.parallel_to(chain[0]):
            raise NotAnArrow(f"{p} is not parallel to {chain[0]}")
        for e in p.edges:
            if e not in ps.edge_map:
                raise NotAnArrow(f"unknown edge {e!r}")
    for p, q in zip(chain, chain[1:]):
        if not lies_above(ps, p, q):
            raise NotAnArrow(f"{p} does not lie above {q}")


def factor_atomic(ps: PastingScheme, chain, check: bool = True) -> list:
    """Split an n-arrow at every vertex shared by its outermost paths."""
    chain = tuple(chain)
    if check:
        _check_arrow(ps, chain)
    first, last = chain[0], chain[-1]
    cuts = [v for v in first.vertices if v in last.incidence]
    factors = []
    for u, w in zip(cuts, cuts[1:]):
        block = tuple(p.between(u, w) for p in chain)
        factors.append(AtomicArrow(block))
    assert all(meets_only_at_ends(f.chain[0], f.chain[-1]) for f in factors)
    return factors


def compose_simplices(*arrows) -> tuple:
    """Componentwise concatenation of equally long sequences of paths, left to right."""
    arrows = [a.chain if isinstance(a, AtomicArrow) else tuple(a) for a in arrows]
    if len({len(a) for a in arrows}) != 1:
        raise NotAnArrow("composed arrows must have the same dimension")
    out = arrows[0]
    for a in arrows[1:]:
        out = tuple(p + q for p, q in zip(out, a))
    return out


def weak_chains(P: FinPoset, n: int):
    """Weakly increasing sequences of n + 1 elements of P, as index tuples."""
    ups = [[j for j in range(len(P)) if P.matrix[i, j]] for i in range(len(P))]

    def grow(seq):
        if len(seq) == n + 1:
            yield seq
            return
        for j in ups[seq[-1]]:
            yield from grow(seq + (j,))

    for i in range(len(P)):
        yield from grow((i,))


def atomic_arrows(ps: PastingScheme, n: int, nondegenerate: bool = False) -> list:
    """Every atomic n-arrow, grouped by endpoint pair in object order."""
    if n < 0:
        raise ValueError("dimension must be nonnegative")
    out = []
    for (a, z), P in _poset_table(ps).items():
        if a == z:
            continue
        for seq in weak_chains(P, n):
            if nondegenerate and len(set(seq)) < len(seq):
                continue
            chain = tuple(P.elements[i] for i in seq)
            if meets_only_at_ends(chain[0], chain[-1]):
                out.append(AtomicArrow(chain))
    return out


def nerve_arrows(ps: PastingScheme, n: int) -> list:
    """All n-arrows of every hom (identities included), as tuples of paths."""
    out = []
    for (a, z), P in _poset_table(ps).items():
        for seq in weak_chains(P, n):
            out.append(tuple(P.elements[i] for i in seq))
    return out


def factorization_census(ps: PastingScheme, n: int) -> dict:
    """n-arrow -> number of composable strings of atomic n-arrows composing to it.

    Unique factorization means every value is 1.  Strings are grown edge by
    edge from each object, so this never consults ``factor_atomic``.
    """
    atoms = atomic_arrows(ps, n)
    by_source = {}
    for at in atoms:
        by_source.setdefault(at.source, []).append(at)
    counts = {arrow: 0 for arrow in nerve_arrows(ps, n)}

    def grow(v, acc):
        counts[acc] += 1
        for at in by_source.get(v, ()):
            grow(at.target, compose_simplices(acc, at.chain))

    for v in ps.objects:
        grow(v, tuple(Path.empty(v) for _ in range(n + 1)))
    return counts


# --------------------------------------------------------------------------- truncated simplicial categories

@dataclass
class TruncSCat:
    """Objects, a truncation level and one chain complex per reachable pair."""

    scheme: PastingScheme
    level: int
    homs: dict  # (a, z) -> ChainComplexSSet inside the nerve of the hom-poset

    @property
    def objects(self) -> tuple:
        return self.scheme.objects

    def hom(self, a, z) -> ChainComplexSSet | None:
        return self.homs.get((a, z))

    def pairs(self, strict: bool = True) -> list:
        return [p for p in self.homs if not strict or p[0] != p[1]]

    def chains(self, a, z) -> list:
        """Member chains as tuples of paths."""
        h = self.homs[a, z]
        return [h.elements_of(c) for c in h.sorted_chains()]

    def contains(self, chain) -> bool:
        chain = tuple(chain)
        h = self.homs.get((chain[0].start, chain[0].end))
        if h is None:
            return False
        idx = h.ambient.index
        squeezed = tuple(x for k, x in enumerate(chain) if k == 0 or x != chain[k - 1])
        return all(p in idx for p in squeezed) and tuple(idx[p] for p in squeezed) in h

    def compose(self, g, f) -> tuple:
        """g after f, for equally long chains f: a -> b and g: b -> z."""
        return compose_simplices(f, g)

    def chain_count(self) -> int:
        return sum(len(h) for h in self.homs.values())


def nerve_f2cat(ps: PastingScheme, N: int = DEFAULT_LEVEL) -> TruncSCat:
    if N < 0:
        raise ValueError("level must be nonnegative")
    return TruncSCat(ps, N, {pair: nerve(P, N) for pair, P in _poset_table(ps).items()})


def _face_index(ps: PastingScheme) -> dict:
    return {(f.dom, f.cod): f.id for f in ps.faces}


def in_graph_scat(ps: PastingScheme, chain, faces: dict | None = None) -> bool:
    """True iff every atomic factor is a constant edge or a single face's dom...cod block."""
    faces = _face_index(ps) if faces is None else faces
    for f in factor_atomic(ps, chain, check=False):
        first, last = f.chain[0], f.chain[-1]
        if first == last:
            continue
        if (first, last) not in faces or any(p not in (first, last) for p in f.chain):
            return False
    return True


def graph_scat(ps: PastingScheme, N: int = DEFAULT_LEVEL) -> TruncSCat:
    """The free simplicial category on edges and faces, as a subobject of ``nerve_f2cat``."""
    if N < 0:
        raise ValueError("level must be nonnegative")
    faces = _face_index(ps)
    homs = {}
    for pair, full in nerve_f2cat(ps, N).homs.items():
        keep = [c for c in full.chains if in_graph_scat(ps, full.elements_of(c), faces)]
        homs[pair] = ChainComplexSSet(full.ambient, keep, N)
    return TruncSCat(ps, N, homs)


def _degeneracies(chain: tuple):
    for i in range(len(chain)):
        yield chain[:i + 1] + chain[i:]


def subcomputad_violation(ps: PastingScheme, N: int = DEFAULT_LEVEL):
    """None when graph_scat sits in nerve_f2cat as a subcomputad, else a description."""
    if N < 1:
        raise ValueError("level must be at least 1")
    nf, g = nerve_f2cat(ps, N), graph_scat(ps, N)
    for pair, gh in g.homs.items():
        fh = nf.homs[pair]
        if gh.ambient != fh.ambient or not gh.chains <= fh.chains:
            return f"hom {pair} is not contained in the nerve"
        for c in gh.chains:
            chain = gh.elements_of(c)
            factors = factor_atomic(ps, chain, check=False)
            if pair[0] != pair[1] and compose_simplices(*factors) != chain:
                return f"{chain} does not recompose"
            for at in factors:
                if not meets_only_at_ends(at.chain[0], at.chain[-1]) or not g.contains(at.chain):
                    return f"factor {at} of {chain} is not an atomic arrow of the subobject"
                if len(at.chain) <= N:
                    for d in _degeneracies(at.chain):
                        if not meets_only_at_ends(d[0], d[-1]) or not g.contains(d):
                            return f"degeneracy {d} of {at} is not atomic"
    for (a, b), left in g.homs.items():
        for (b2, z), right in g.homs.items():
            if b2 != b or a == b or b == z:
                continue
            for c1 in left.chains:
                for c2 in right.chains:
                    if len(c1) == len(c2):
                        comp = compose_simplices(left.elements_of(c1), right.elements_of(c2))
                        if not g.contains(comp):
                            return f"composite {comp} leaves the subobject"
    return None


def is_subcomputad(ps: PastingScheme, N: int = DEFAULT_LEVEL) -> bool:
    return subcomputad_violation(ps, N) is None


def level_is_one_way(ps: PastingScheme) -> bool:
    """The category of n-arrows has trivial endo-homs and no two-way pairs (any n)."""
    table = _poset_table(ps)
    if any(len(table[a, a]) != 1 for a in ps.objects):
        return False
    return not any(a != z and (z, a) in table for a, z in table)


# --------------------------------------------------------------------------- bottom attachment

def _split_bottom(ps: PastingScheme, face):
    if face not in bottom_cells(ps):
        raise NotBottomAttachable(f"{face} is not a cell at the bottom")
    try:
        P = delete_bottom_cell(ps, face)
    except NotBottomCell as exc:
        raise NotBottomAttachable(str(exc)) from exc
    f = ps.face(face)
    return P, f


def _pair_poset(ps: PastingScheme, a, z) -> FinPoset:
    return _poset_table(ps).get((a, z)) or FinPoset([], [])


def verify_hom_pushouts(ps: PastingScheme, face, a, z) -> bool:
    """Check both hom-poset pushout squares for the bottom cell ``face`` at (a, z).

    Square one: the hom x -> y of the smaller scheme, glued to the arrow
    dom -> cod of the cell, is the hom x -> y of ``ps``.  Square two: the
    hom a -> z of the smaller scheme, glued along whiskered copies of that
    inclusion, is the hom a -> z of ``ps``.
    """
    P, f = _split_bottom(ps, face)
    x, y = f.source, f.target
    for v in (a, z):
        P.check_vertex(v)

    # square one
    small, big = _pair_poset(P, x, y), _pair_poset(ps, x, y)
    F = PosetMap(ONE, small, {0: f.dom})
    po = pushout_along_dwyer(F, PosetInclusion(ONE, TWO))
    if not _iso_onto(po.D, big, lambda d: d[1] if d[0] == "C" else f.cod):
        return False

    # square two
    incl = PosetInclusion(small, big)
    left, right = _pair_poset(P, y, z), _pair_poset(P, a, x)
    sub_to_whole = poset_product(left, incl, right=right)
    target = _pair_poset(P, a, z)
    glue = PosetMap(sub_to_whole.sub, target, {(q, m, r): r + m + q for q, m, r in sub_to_whole.sub.elements})
    po = pushout_along_dwyer(glue, sub_to_whole)
    whole = _pair_poset(ps, a, z)
    return _iso_onto(po.D, whole, lambda d: d[1] if d[0] == "C" else d[1][2] + d[1][1] + d[1][0])


def _iso_onto(D: FinPoset, H: FinPoset, to_path) -> bool:
    image = [to_path(d) for d in D.elements]
    if len(set(image)) != len(image) or set(image) != set(H.elements):
        return False
    return all(D.leq(d1, d2) == H.leq(p1, p2) for (d1, p1), (d2, p2) in itertools.product(zip(D.elements, image), repeat=2))


@dataclass
class BottomInclusion:
    """Domain and codomain of the comparison map for one bottom cell and pair."""

    sub: ChainComplexSSet
    full: ChainComplexSSet
    face: str
    pair: tuple

    @property
    def missing(self) -> int:
        return len(self.full) - len(self.sub)


def build_cor312_inclusion(ps: PastingScheme, face, a, z, N: int = DEFAULT_LEVEL) -> BottomInclusion:
    """The union of the nerve of the smaller hom a -> z and the whiskered
    nerve of hom(y, z) x (dom -> cod) x hom(a, x), inside the nerve of the hom
    a -> z of ``ps``."""
    P, f = _split_bottom(ps, face)
    x, y = f.source, f.target
    for v in (a, z):
        P.check_vertex(v)
    whole = _pair_poset(ps, a, z)
    full = nerve(whole, N)
    idx = whole.index
    chains = [tuple(idx[p] for p in c) for c in _chains_of(_pair_poset(P, a, z), N)]
    left, right = _pair_poset(P, y, z), _pair_poset(P, a, x)
    prism = FinPoset.product(left, FinPoset.chain(2)).product(right)
    for c in _chains_of(prism, N):
        chains.append(tuple(idx[r + (f.cod if m else f.dom) + q] for (q, m), r in c))
    sub = ChainComplexSSet(whole, chains, N)
    return BottomInclusion(sub, full, f.id, (a, z))


def _chains_of(P: FinPoset, N: int) -> list:
    h = nerve(P, N)
    return [h.elements_of(c) for c in h.chains]


# --------------------------------------------------------------------------- edge subdivision

def subdivide_edge(ps: PastingScheme, e: str, pieces: int) -> tuple:
    """Replace edge ``e`` by a path of ``pieces`` edges.

    Returns the new scheme and the path replacing ``e``.
    """
    if e not in ps.edge_map:
        raise NotAnEdge(e)
    if pieces < 1:
        raise ValueError("need at least one piece")
    old = ps.edge_map[e]
    if pieces == 1:
        return ps, ps.path([e])
    chain = [old.src] + [f"{e}~v{i}" for i in range(1, pieces)] + [old.tgt]
    new = [Edge(f"{e}~{i}", chain[i], chain[i + 1]) for i in range(pieces)]
    rotation = {}
    for v, ring in ps.graph.rotation.items():
        swap = {(OUT, e): (OUT, new[0].id), (IN, e): (IN, new[-1].id)}
        rotation[v] = [swap.get(d, d) for d in ring]
    for i, v in enumerate(chain[1:-1]):
        rotation[v] = [(IN, new[i].id), (OUT, new[i + 1].id)]
    edges = []
    for x in ps.edges:
        edges.extend(new if x.id == e else [x])
    objects = list(ps.objects) + chain[1:-1]
    marker = ps.graph.exterior
    if marker[0] == e:
        marker = (new[0].id, marker[1])
    coords = None
    if ps.graph.coords is not None:
        coords = dict(ps.graph.coords)
        (x0, y0), (x1, y1) = coords[old.src], coords[old.tgt]
        for i, v in enumerate(chain[1:-1], start=1):
            coords[v] = (x0 + (x1 - x0) * i / pieces, y0 + (y1 - y0) * i / pieces)
    out = validate_pasting_scheme(PlaneGraph.build(objects, edges, rotation, marker, coords))
    return out, out.path([d.id for d in new])


def _expand(path: Path, e: str, run: Path) -> Path:
    out = Path.empty(path.start)
    for i, x in enumerate(path.edges):
        out = out + (run if x == e else Path(path.vertices[i:i + 2], (x,)))
    return out


def _iso_via(src: FinPoset, dst: FinPoset, f) -> bool:
    image = [f(p) for p in src.elements]
    if len(set(image)) != len(image) or set(image) != set(dst.elements):
        return False
    return all(src.leq(p, q) == dst.leq(fp, fq) for (p, fp), (q, fq) in itertools.product(zip(src.elements, image), repeat=2))


@dataclass
class SubdivisionReport:
    ok: bool
    problems: list = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


def verify_edge_subdivision(ps: PastingScheme, e: str, n: int, N: int = 2) -> SubdivisionReport:
    """Subdivide ``e`` into n - 1 edges and compare homs and both simplicial categories."""
    if e not in ps.edge_map:
        raise NotAnEdge(e)
    if n < 2:
        raise ValueError("n counts the vertices of the replacing path and must be at least 2")
    fine, run = subdivide_edge(ps, e, n - 1)
    old = ps.edge_map[e]
    x, y = old.src, old.tgt
    inner = run.vertices[1:-1]
    problems = []
    coarse_P, fine_P = _poset_table(ps), _poset_table(fine)
    expand = lambda p: _expand(p, e, run)

    for (a, z), H in coarse_P.items():
        if not _iso_via(H, fine_P[a, z], expand):
            problems.append(f"hom({a},{z}) changes")
    for i, v in enumerate(inner, start=1):
        head, tail = run.segment(0, i), run.segment(i, len(run))
        for a in ps.objects:
            if ps.leq(a, x) and not _iso_via(coarse_P[a, x], fine_P[a, v], lambda p: expand(p) + head):
                problems.append(f"hom({a},{v}) is not hom({a},{x}) whiskered")
            if ps.leq(y, a) and not _iso_via(coarse_P[y, a], fine_P[v, a], lambda p: tail + expand(p)):
                problems.append(f"hom({v},{a}) is not hom({y},{a}) whiskered")
        for j, w in enumerate(inner, start=1):
            h = fine_P.get((v, w))
            size = 0 if h is None else len(h)
            if size != (1 if i <= j else 0):
                problems.append(f"hom({v},{w}) has {size} elements")

    for build in (nerve_f2cat, graph_scat):
        coarse, finer = build(ps, N), build(fine, N)
        for (a, z), h in coarse.homs.items():
            mapped = {tuple(expand(p) for p in h.elements_of(c)) for c in h.chains}
            fh = finer.homs[a, z]
            if mapped != {fh.elements_of(c) for c in fh.chains}:
                problems.append(f"{build.__name__} hom({a},{z}) does not correspond")
    return SubdivisionReport(not problems, problems)


# --------------------------------------------------------------------------- homwise theorem

@dataclass
class PairResult:
    pair: tuple
    g_chains: int
    nf_chains: int
    certificate: object  # InnerAnodyneCertificate or Unknown
    verified: bool

    @property
    def certified(self) -> bool:
        return isinstance(self.certificate, InnerAnodyneCertificate) and self.verified

    def to_json(self) -> dict:
        cert = self.certificate
        return {
            "pair": list(self.pair),
            "g_chain_count": self.g_chains,
            "nf_chain_count": self.nf_chains,
            "certificate_length": len(cert) if isinstance(cert, InnerAnodyneCertificate) else "unknown",
            "verified": self.verified,
        }


@dataclass
class HomwiseReport:
    level: int
    pairs: list
    subcomputad: bool
    one_way: bool

    @property
    def ok(self) -> bool:
        return self.subcomputad and self.one_way and all(r.certified for r in self.pairs)

    @property
    def unknown(self) -> list:
        return [r.pair for r in self.pairs if isinstance(r.certificate, Unknown)]

    def result(self, a, z) -> PairResult:
        return next(r for r in self.pairs if r.pair == (a, z))

    def to_json(self) -> dict:
        return {
            "level": self.level,
            "subcomputad": self.subcomputad,
            "one_way": self.one_way,
            "ok": self.ok,
            "pairs": [r.to_json() for r in self.pairs],
        }


def _certify_task(args):
    sub, budget = args
    return certify_inner_anodyne(sub, budget)


def default_workers() -> int:
    raw = os.environ.get("PASTELAB_THREADS", "")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def verify_main_theorem_homwise(ps: PastingScheme, N: int = DEFAULT_LEVEL, budget: int = 10**6, workers: int | None = None) -> HomwiseReport:
    """Certify graph_scat(a, z) in nerve_f2cat(a, z) for every pair a < z."""
    if N < 1:
        raise ValueError("level must be at least 1")
    nf, g = nerve_f2cat(ps, N), graph_scat(ps, N)
    pairs = sorted(g.pairs(), key=lambda p: (ps.objects.index(p[0]), ps.objects.index(p[1])))
    jobs = [(g.homs[p], budget) for p in pairs]
    workers = default_workers() if workers is None else workers
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            certs = list(pool.map(_certify_task, jobs))
    else:
        certs = [_certify_task(j) for j in jobs]
    results = []
    for p, cert in zip(pairs, certs):
        sub = g.homs[p]
        ok = isinstance(cert, InnerAnodyneCertificate) and bool(verify_certificate(sub, cert))
        results.append(PairResult(p, len(sub), len(nf.homs[p]), cert, ok))
    return HomwiseReport(N, results, is_subcomputad(ps, N), level_is_one_way(ps))
