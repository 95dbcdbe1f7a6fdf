import json

import pytest

from pastelab.errors import EmbeddingError, EmptyWidths, InvalidScheme, ParseError, StructureError
from pastelab.scheme_core import (
    Edge,
    PlaneGraph,
    build_theta2,
    graph_to_dict,
    in_out_order,
    load_scheme,
    parse_scheme,
    pred_succ,
    reachable,
    serialize_graph,
    theta2_graph,
    trace_faces,
    validate_pasting_scheme,
)


def graph(objects, edges, rotation, exterior):
    return PlaneGraph.build(
        objects,
        [Edge(*e) for e in edges],
        {v: [tuple(d.split(":")) for d in ring] for v, ring in rotation.items()},
        exterior,
    )


def single_edge():
    return graph(["a", "b"], [("e", "a", "b")], {"a": ["out:e"], "b": ["in:e"]}, ("e", "left"))


def inner_source_bigon():
    # a bigon A => C with a vertex B inside it and an edge B -> C
    return graph(
        ["A", "B", "C"],
        [("top", "A", "C"), ("bot", "A", "C"), ("mid", "B", "C")],
        {"A": ["out:top", "out:bot"], "B": ["out:mid"], "C": ["in:bot", "in:mid", "in:top"]},
        ("top", "left"),
    )


def inner_sink_bigon():
    return graph(
        ["A", "B", "C"],
        [("top", "A", "C"), ("bot", "A", "C"), ("mid", "A", "B")],
        {"A": ["out:top", "out:mid", "out:bot"], "B": ["in:mid"], "C": ["in:bot", "in:top"]},
        ("top", "left"),
    )


def two_cycle():
    return graph(
        ["a", "b"], [("x", "a", "b"), ("y", "b", "a")],
        {"a": ["out:x", "in:y"], "b": ["in:x", "out:y"]}, ("x", "left"),
    )


# -- parsing ---------------------------------------------------------------------

def test_parse_theta2_file():
    text = serialize_graph(build_theta2([2, 0, 3, 0]))
    g = parse_scheme(text.encode())
    assert len(g.objects) == 5 and len(g.edges) == 9


def test_parse_single_edge():
    text = json.dumps({
        "objects": ["a", "b"], "edges": [{"id": "e", "src": "a", "tgt": "b"}],
        "rotation": {"a": ["out:e"], "b": ["in:e"]}, "exterior": {"edge": "e", "side": "left"},
    })
    g = parse_scheme(text)
    assert len(g.objects) == 2 and len(g.edges) == 1
    assert all(len(g.rotation[v]) == 1 for v in g.objects)


def test_parse_dangling_endpoint():
    text = json.dumps({
        "objects": ["a"], "edges": [{"id": "e", "src": "a", "tgt": "zz"}],
        "rotation": {"a": ["out:e"]}, "exterior": {"edge": "e", "side": "left"},
    })
    with pytest.raises(StructureError):
        parse_scheme(text)


@pytest.mark.parametrize("text", ["", "[]", "{", '{"objects": []}', b"\xff\xfe"])
def test_parse_malformed(text):
    with pytest.raises(ParseError):
        parse_scheme(text)


def test_parse_rejects_bad_dart():
    d = graph_to_dict(single_edge())
    d["rotation"]["a"] = ["sideways:e"]
    with pytest.raises(ParseError):
        parse_scheme(json.dumps(d))


@pytest.mark.parametrize("mutate, fragment", [
    (lambda d: d["edges"].append(dict(d["edges"][0])), "duplicate"),
    (lambda d: d.update(edges=[], rotation={"a": [], "b": []}), "edge"),
    (lambda d: (d["objects"].append("c"), d["rotation"].update(c=[])), "disconnected"),
])
def test_structure_errors(mutate, fragment):
    d = graph_to_dict(single_edge())
    mutate(d)
    with pytest.raises(StructureError) as info:
        parse_scheme(json.dumps(d))
    assert fragment in str(info.value)


def test_unknown_keys_ignored():
    d = graph_to_dict(single_edge())
    d["comment"] = "hello"
    assert parse_scheme(json.dumps(d)).objects == ("a", "b")


# -- faces -----------------------------------------------------------------------------

def test_single_edge_has_one_face_with_cut_edge():
    faces = trace_faces(single_edge())
    assert len(faces) == 1 and faces[0].exterior
    assert len(faces[0].boundary) == 2 and faces[0].cut_edges == frozenset({"e"})


def test_bigon_has_two_faces():
    faces = trace_faces(theta2_graph([1]))
    assert sorted(f.exterior for f in faces) == [False, True]


def test_euler_for_census_example():
    g = theta2_graph([2, 0, 3, 0])
    faces = trace_faces(g)
    assert len(faces) == 6
    assert len(g.objects) - len(g.edges) + len(faces) == 2


def test_inconsistent_rotation_breaks_euler():
    # three parallel edges listed in the same clockwise order at both ends
    g = graph(["a", "b"], [("x", "a", "b"), ("y", "a", "b"), ("z", "a", "b")],
              {"a": ["out:x", "out:y", "out:z"], "b": ["in:x", "in:y", "in:z"]}, ("x", "left"))
    with pytest.raises(EmbeddingError):
        trace_faces(g)


# -- validation ---------------------------------------------------------------------------

def test_census_example_validates():
    ps = build_theta2([2, 0, 3, 0])
    assert (len(ps.objects), len(ps.edges), ps.num_faces) == (5, 9, 5)
    assert (ps.s, ps.t) == ("0", "4")
    assert len(ps.dom) == len(ps.cod) == 4


def test_inner_sink_reports_multiple_sinks():
    with pytest.raises(InvalidScheme) as info:
        validate_pasting_scheme(inner_sink_bigon())
    assert "MultipleSinks" in info.value.kinds


def test_inner_source_reports_multiple_sources():
    with pytest.raises(InvalidScheme) as info:
        validate_pasting_scheme(inner_source_bigon())
    assert "MultipleSources" in info.value.kinds


def test_two_cycle_is_found():
    with pytest.raises(InvalidScheme) as info:
        validate_pasting_scheme(two_cycle())
    cyc = [e for e in info.value.errors if e.kind == "CycleFound"]
    assert cyc and set(cyc[0].data) == {"x", "y"}


def test_all_violations_reported():
    with pytest.raises(InvalidScheme) as info:
        validate_pasting_scheme(inner_sink_bigon())
    assert len(info.value.errors) >= 2


# -- orders and reachability ----------------------------------------------------------------------

def test_out_order_at_source_of_three_parallel_edges():
    ps = build_theta2([2])
    ins, outs = in_out_order(ps, "0")
    assert ins == () and outs == ("e1_2", "e1_1", "e1_0")


def test_orders_at_interior_vertex():
    ps = build_theta2([1, 1])
    ins, outs = in_out_order(ps, "1")
    assert ins == ("e1_1", "e1_0") and outs == ("e2_1", "e2_0")


def test_orders_at_sink_of_single_edge():
    ps = validate_pasting_scheme(single_edge())
    assert in_out_order(ps, "b") == (("e",), ())


def test_pred_succ():
    ps = build_theta2([1, 1])
    assert pred_succ(ps, ps.dom, ps.s) == (None, ps.dom.edges[0])
    p = ps.path(["e1_0", "e2_0"])
    assert pred_succ(ps, p, "1") == ("e1_0", "e2_0")
    q = ps.path(["e1_0"])
    assert pred_succ(ps, q, "2") == (None, None)


def test_reachability_is_a_partial_order_with_extremes():
    ps = build_theta2([2, 0, 3, 0])
    for v in ps.objects:
        assert reachable(ps, v, v)
        assert reachable(ps, ps.s, v) and reachable(ps, v, ps.t)
        for w in ps.objects:
            if v != w:
                assert not (reachable(ps, v, w) and reachable(ps, w, v))
    assert not reachable(ps, ps.t, ps.s)


# -- builder -----------------------------------------------------------------------------------

def test_theta2_counts():
    ps = build_theta2([0])
    assert len(ps.edges) == 1 and ps.num_faces == 0
    ps = build_theta2([1, 1, 1])
    assert (len(ps.objects), len(ps.edges), ps.num_faces) == (4, 6, 3)
    for f in build_theta2([2, 3]).faces:
        assert len(f.dom) == len(f.cod) == 1


def test_theta2_rejects_empty():
    with pytest.raises(EmptyWidths):
        build_theta2([])


@pytest.mark.parametrize("widths", [[0], [1], [2, 0, 3, 0], [1, 1, 1], [0, 2, 1]])
def test_round_trip_is_bit_exact(widths):
    ps = build_theta2(widths)
    text = serialize_graph(ps)
    again = load_scheme(text)
    assert serialize_graph(again) == text
    assert again.dom == ps.dom and again.cod == ps.cod


def test_partition_and_cut_edges(corpus):
    for ps in corpus:
        doms = [e for f in ps.faces for e in f.dom.edges] + list(ps.cod.edges)
        cods = [e for f in ps.faces for e in f.cod.edges] + list(ps.dom.edges)
        every = sorted(e.id for e in ps.edges)
        assert sorted(doms) == every and sorted(cods) == every
        cut = {e.id for e in ps.edges if ps.left_face[e.id] == ps.right_face[e.id] == "exterior"}
        assert cut == set(ps.dom.edges) & set(ps.cod.edges)
