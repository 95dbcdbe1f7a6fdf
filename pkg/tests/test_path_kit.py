import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from oracles import brute_directly_above, brute_paths, definitional_lies_above
from pastelab.corpus import random_scheme
from pastelab.errors import NotAbove, NotParallel, NotReachable, NotTopCell, TrivialPath
from pastelab.path_kit import (
    above_closure,
    attach_at_bottom,
    bottom_cells,
    delete_bottom_cell,
    delete_top_cell,
    directly_above_order,
    enumerate_presentations,
    extremal_paths,
    lies_above,
    partition_parallel,
    presentation,
    sub_scheme_between,
    sub_scheme_pq,
    top_cells,
)
from pastelab.scheme_core import Path, build_theta2


def parallel_pairs(ps):
    for x in ps.objects:
        for y in ps.objects:
            paths = brute_paths(ps, x, y)
            yield from itertools.product(paths, repeat=2)


@pytest.fixture
def column2():
    return build_theta2([2])


@pytest.fixture
def side_by_side():
    return build_theta2([1, 1])


# -- lies above ------------------------------------------------------------------------

def test_parallel_edges_ordered_by_rotation(column2):
    e0, e1 = column2.path(["e1_0"]), column2.path(["e1_1"])
    assert lies_above(column2, e0, e1)
    assert not lies_above(column2, e1, e0)


def test_crossed_paths_are_incomparable(side_by_side):
    ps = side_by_side
    top, bottom = ps.path(["e1_0", "e2_0"]), ps.path(["e1_1", "e2_1"])
    mixed1, mixed2 = ps.path(["e1_0", "e2_1"]), ps.path(["e1_1", "e2_0"])
    assert lies_above(ps, top, bottom)
    assert not lies_above(ps, mixed1, mixed2)
    assert not lies_above(ps, mixed2, mixed1)


def test_not_parallel(side_by_side):
    ps = side_by_side
    with pytest.raises(NotParallel):
        lies_above(ps, ps.path(["e1_0"]), ps.path(["e1_0", "e2_0"]))


def test_lies_above_matches_definition_and_halves(corpus):
    for ps in corpus[:60]:
        for p, q in parallel_pairs(ps):
            full = lies_above(ps, p, q)
            assert full == definitional_lies_above(ps, p, q)
            assert full == lies_above(ps, p, q, half="pred") == lies_above(ps, p, q, half="succ")


def test_lies_above_is_a_partial_order(corpus):
    for ps in corpus[:40]:
        for x in ps.objects:
            for y in ps.objects:
                paths = brute_paths(ps, x, y)
                rel = {(p, q) for p in paths for q in paths if lies_above(ps, p, q)}
                for p in paths:
                    assert (p, p) in rel
                for p, q in rel:
                    assert p == q or (q, p) not in rel
                for (p, q), (q2, r) in itertools.product(rel, rel):
                    if q == q2:
                        assert (p, r) in rel


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_lies_above_transitive_on_random_schemes(seed):
    ps, _ = random_scheme(random.Random(seed), 7)
    paths = brute_paths(ps, ps.s, ps.t)
    for p, q, r in itertools.product(paths, repeat=3):
        if lies_above(ps, p, q) and lies_above(ps, q, r):
            assert lies_above(ps, p, r)


# -- partition ----------------------------------------------------------------------------

def test_partition_identical_paths(side_by_side):
    p = side_by_side.dom
    fact = partition_parallel(side_by_side, p, p)
    assert fact.shared == (p,) and fact.blocks == ()


def test_partition_splits_at_shared_vertex(side_by_side):
    ps = side_by_side
    p, q = ps.path(["e1_0", "e2_0"]), ps.path(["e1_1", "e2_1"])
    fact = partition_parallel(ps, p, q)
    assert [r.vertices for r in fact.shared] == [("0",), ("1",), ("2",)]
    assert all(not r.edges for r in fact.shared)
    assert [(a.edges, b.edges) for a, b in fact.blocks] == [(("e1_0",), ("e1_1",)), (("e2_0",), ("e2_1",))]


def test_partition_single_block(column2):
    ps = column2
    fact = partition_parallel(ps, ps.path(["e1_0"]), ps.path(["e1_2"]))
    assert len(fact.blocks) == 1
    assert [r.vertices for r in fact.shared] == [("0",), ("1",)]


def test_partition_rejects_non_above(column2):
    with pytest.raises(NotAbove):
        partition_parallel(column2, column2.cod, column2.dom)


def test_partition_invariants(corpus):
    for ps in corpus[:60]:
        for p, q in parallel_pairs(ps):
            if not lies_above(ps, p, q):
                continue
            fact = partition_parallel(ps, p, q)
            assert fact.reassemble() == (p, q)
            for a, b in fact.blocks:
                assert a.edges and b.edges
                assert set(a.vertices) & set(b.vertices) == {a.start, a.end}


# -- extremal paths and sub-schemes -------------------------------------------------------------

def test_extremal_paths_examples(column2):
    ps = column2
    assert extremal_paths(ps, ps.s, ps.t) == (ps.dom, ps.cod)
    top, bottom = extremal_paths(ps, "0", "1")
    assert top.edges == ("e1_0",) and bottom.edges == ("e1_2",)
    assert extremal_paths(ps, "0", "0") == (Path.empty("0"), Path.empty("0"))
    with pytest.raises(NotReachable):
        extremal_paths(ps, "1", "0")


def test_extremal_paths_bound_everything(corpus):
    for ps in corpus[:60]:
        for x in ps.objects:
            for y in ps.objects:
                if x == y or not ps.leq(x, y):
                    continue
                top, bottom = extremal_paths(ps, x, y)
                for p in brute_paths(ps, x, y):
                    assert lies_above(ps, top, p) and lies_above(ps, p, bottom)


def test_sub_scheme_pq_examples(column2):
    ps = column2
    whole = sub_scheme_pq(ps, ps.dom, ps.cod)
    assert whole.face_ids == ps.face_ids and whole.dom == ps.dom
    bigon = sub_scheme_pq(ps, ps.path(["e1_0"]), ps.path(["e1_1"]))
    assert bigon.num_faces == 1 and bigon.faces[0].dom.edges == ("e1_0",)
    flat = sub_scheme_pq(ps, ps.dom, ps.dom)
    assert flat.num_faces == 0 and flat.dom == flat.cod == ps.dom
    with pytest.raises(TrivialPath):
        sub_scheme_pq(ps, Path.empty("0"), Path.empty("0"))


def test_sub_scheme_pq_paths_are_the_sandwiched_ones(corpus):
    # a path of P lies in p/q exactly when it is sandwiched between p and q
    for ps in corpus[:50]:
        everything = brute_paths(ps, ps.s, ps.t)
        for p, q in itertools.product(everything, repeat=2):
            if not lies_above(ps, p, q):
                continue
            sub = sub_scheme_pq(ps, p, q)
            inside = set(brute_paths(sub, sub.s, sub.t))
            sandwiched = {r for r in everything if lies_above(ps, p, r) and lies_above(ps, r, q)}
            assert inside == sandwiched
            for f in sub.faces:
                g = ps.face(f.id)
                assert (f.dom, f.cod) == (g.dom, g.cod)


def test_sub_scheme_between_examples():
    ps = build_theta2([2, 0, 3, 0])
    sub = sub_scheme_between(ps, "2", "3")
    assert (len(sub.objects), len(sub.edges), sub.num_faces) == (2, 4, 3)
    ps = build_theta2([1, 1])
    sub = sub_scheme_between(ps, "0", "1")
    assert (len(sub.objects), len(sub.edges), sub.num_faces) == (2, 2, 1)
    assert sub_scheme_between(ps, ps.s, ps.t).face_ids == ps.face_ids


def test_sub_scheme_between_membership(corpus):
    for ps in corpus[:60]:
        for x in ps.objects:
            for y in ps.objects:
                if x == y or not ps.leq(x, y):
                    continue
                sub = sub_scheme_between(ps, x, y)
                assert set(sub.objects) == {u for u in ps.objects if ps.leq(x, u) and ps.leq(u, y)}
                expected = {f.id for f in ps.faces if ps.leq(x, f.source) and ps.leq(f.target, y)}
                assert set(sub.face_ids) == expected


# -- cells -----------------------------------------------------------------------------------

def test_cells_of_a_column(column2):
    ps = column2
    assert len(top_cells(ps)) == 1 and len(bottom_cells(ps)) == 1
    assert ps.face(top_cells(ps)[0]).dom.edges == ("e1_0",)
    assert ps.face(bottom_cells(ps)[0]).cod.edges == ("e1_2",)


def test_cells_of_census_example():
    assert len(top_cells(build_theta2([2, 0, 3, 0]))) == 2
    assert top_cells(build_theta2([0, 0])) == []


def test_delete_top_cell_examples(column2):
    one = build_theta2([1])
    edge = delete_top_cell(one, one.face_ids[0])
    assert edge.num_faces == 0 and len(edge.edges) == 1
    smaller = delete_top_cell(column2, top_cells(column2)[0])
    assert sorted(e.id for e in smaller.edges) == ["e1_1", "e1_2"]
    assert smaller.num_faces == 1
    with pytest.raises(NotTopCell):
        delete_top_cell(column2, bottom_cells(column2)[0])


def test_deletions_on_corpus(corpus):
    for ps in corpus:
        for fid in top_cells(ps):
            out = delete_top_cell(ps, fid)
            assert out.num_faces == ps.num_faces - 1 and fid not in out.face_ids
        for fid in bottom_cells(ps):
            out = delete_bottom_cell(ps, fid)
            assert out.num_faces == ps.num_faces - 1 and fid not in out.face_ids


def test_attach_then_delete_round_trip(side_by_side):
    bigger, fid = attach_at_bottom(side_by_side, "0", "2", length=2)
    assert fid in bottom_cells(bigger)
    again = delete_bottom_cell(bigger, fid)
    assert again.cod == side_by_side.cod and again.face_ids == side_by_side.face_ids


# -- presentations ---------------------------------------------------------------------------

def test_presentation_examples(side_by_side):
    assert len(presentation(build_theta2([0]))) == 0
    assert len(presentation(build_theta2([2, 0, 3, 0]))) == 5
    pres = presentation(side_by_side)
    assert len(pres) == 2
    everything = list(enumerate_presentations(side_by_side))
    assert len(everything) == 2
    assert [s.face for s in pres.steps] == [s.face for s in everything[0].steps]


def test_presentations_on_corpus(corpus):
    for ps in corpus:
        pres = presentation(ps)
        assert pres.check(ps) and len(pres) == ps.num_faces
        chain = pres.replay(ps)
        assert chain[0] == ps.dom and chain[-1] == ps.cod
        for a, b in zip(chain, chain[1:]):
            assert lies_above(ps, a, b) and a != b


# -- directly above -----------------------------------------------------------------------

def test_directly_above_examples():
    ps = build_theta2([2])
    top, bottom = ps.face_ids[0], ps.face_ids[1]
    assert directly_above_order(ps) == {top: (bottom,), bottom: ()}
    assert all(v == () for v in directly_above_order(build_theta2([1, 1])).values())
    ps = build_theta2([3])
    order = directly_above_order(ps)
    a, b, c = (f.id for f in sorted(ps.faces, key=lambda f: f.dom.edges))
    assert order[a] == (b,) and order[b] == (c,) and order[c] == ()


def test_directly_above_matches_edge_intersection(corpus):
    for ps in corpus:
        order = directly_above_order(ps)
        assert {(a, b) for a, bs in order.items() for b in bs} == brute_directly_above(ps)
        closure = above_closure(ps)
        for a, b in closure:
            assert a == b or (b, a) not in closure
