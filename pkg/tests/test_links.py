import json

import pytest

from groupbench.links import (
    DEFAULT_SEAM,
    LinkDataError,
    LinkGraph,
    REGULAR_CORNER,
    TriangleSpec,
    Y_LABELS,
    Y_TRIANGLES,
    add_path,
    build_glued_link,
    build_link,
    build_y_link,
    certify_models,
    complex_from_record,
    link_distance,
    shortest_injective_loop,
    subdivision_vertex_report,
)


def brute_unweighted_girth(link):
    """Independent oracle: depth-first enumeration of injective cycles."""
    adj = {}
    for eid, (u, v, _) in enumerate(link.edges):
        adj.setdefault(u, []).append((v, eid))
        adj.setdefault(v, []).append((u, eid))
    best = None

    def dfs(start, u, seen_v, seen_e, depth):
        nonlocal best
        for v, eid in adj.get(u, []):
            if eid in seen_e:
                continue
            if v == start:
                if best is None or depth + 1 < best:
                    best = depth + 1
                continue
            if v in seen_v:
                continue
            if best is not None and depth + 1 >= best:
                continue
            dfs(start, v, seen_v | {v}, seen_e | {eid}, depth + 1)

    for s in link.vertices:
        dfs(s, s, {s}, frozenset(), 0)
    return best


def test_triangle_spec_validation():
    with pytest.raises(LinkDataError):
        TriangleSpec((("a", 1), ("b", 1), ("c", -1)), (4, 4, 5))
    with pytest.raises(LinkDataError):
        TriangleSpec((("a", 1), ("b", 2), ("c", -1)))
    with pytest.raises(LinkDataError):
        TriangleSpec((("a", 1), ("b", 1)))


def test_build_link_census():
    link = build_y_link()
    assert len(link.vertices) == 10
    assert len(link.edges) == 12
    assert all(w == REGULAR_CORNER for _, _, w in link.edges)


def test_build_link_unknown_label():
    with pytest.raises(LinkDataError):
        build_link([TriangleSpec((("q", 1), ("b", 1), ("t", -1)))], Y_LABELS)


def test_single_triangle_link():
    link = build_link([TriangleSpec((("a", 1), ("a", 1), ("a", 1)))], ["a"])
    assert set(link.vertices) == {"a_out", "a_in"}
    assert len(link.edges) == 3
    # a_in - a_out edges three times over: girth = two parallel corners
    assert shortest_injective_loop(link).girth_units == 8


def test_empty_complex_has_infinite_girth():
    link = build_link([], ["a", "b"])
    assert len(link.vertices) == 4
    rep = shortest_injective_loop(link)
    assert rep.girth_units is None and rep.ok and rep.witness is None


def test_y_girth_exact():
    rep = shortest_injective_loop(build_y_link())
    assert rep.girth_units == 24
    assert rep.ok
    assert len(rep.witness) == 6


def test_y_girth_matches_brute_oracle():
    link = build_y_link()
    assert brute_unweighted_girth(link) * REGULAR_CORNER == 24


def test_girth_relabel_invariant():
    link = build_y_link()
    perm = {v: f"z{i}" for i, v in enumerate(link.vertices)}
    relabeled = LinkGraph(
        tuple(perm[v] for v in link.vertices),
        tuple((perm[u], perm[v], w) for u, v, w in reversed(link.edges)),
    )
    assert shortest_injective_loop(relabeled).girth_units == 24


def test_small_graph_girths():
    tri = LinkGraph(("u", "v", "w"), (("u", "v", 4), ("v", "w", 4), ("w", "u", 4)))
    rep = shortest_injective_loop(tri)
    assert rep.girth_units == 12 and not rep.ok
    loop = LinkGraph(("u",), (("u", "u", 6),))
    rep = shortest_injective_loop(loop)
    assert rep.girth_units == 6 and rep.witness == ("u",)
    pair = LinkGraph(("u", "v"), (("u", "v", 5), ("u", "v", 7)))
    assert shortest_injective_loop(pair).girth_units == 12


def test_distance_b_out_to_b_in_is_pi():
    assert link_distance(build_y_link(), "b_out", "b_in") == 12


def test_add_path_validation():
    y = build_y_link()
    with pytest.raises(LinkDataError):
        add_path(y, "b_out", "nowhere", 6, 3)
    with pytest.raises(LinkDataError):
        add_path(y, "b_out", "b_in", 7, 3)
    with pytest.raises(LinkDataError):
        add_path(y, "b_out", "b_in", 6, 0)


def test_add_path_is_pure_and_girth_arithmetic():
    y = build_y_link()
    base_girth = shortest_injective_loop(y).girth_units
    dist = link_distance(y, "b_out", "b_in")
    for total, segments in ((6, 3), (12, 3), (16, 4), (24, 2), (30, 5)):
        glued = add_path(y, "b_out", "b_in", total, segments)
        assert len(glued.vertices) == len(y.vertices) + segments - 1
        got = shortest_injective_loop(glued).girth_units
        assert got == min(base_girth, total + dist)
    # the input graph is unchanged
    assert shortest_injective_loop(y).girth_units == base_girth


def test_add_path_self_loop():
    y = build_y_link()
    looped = add_path(y, "a_in", "a_in", 30, 2)
    assert shortest_injective_loop(looped).girth_units == 24
    tight = add_path(y, "a_in", "a_in", 10, 2)
    assert shortest_injective_loop(tight).girth_units == 10


def test_certify_models_default_seam_fails_the_bound():
    y_rep, glued_rep = certify_models()
    assert y_rep.girth_units == 24 and y_rep.ok
    # seam of pi/2 across a gap of pi: girth 3*pi/2, below the 2*pi bound
    assert glued_rep.girth_units == 18
    assert not glued_rep.ok


def test_certify_models_with_seam_at_least_pi():
    _, rep_pi = certify_models(12, 3)
    assert rep_pi.girth_units == 24 and rep_pi.ok
    _, rep_four_thirds = certify_models(16, 4)
    assert rep_four_thirds.girth_units == 24 and rep_four_thirds.ok


def test_removing_a_triangle_still_reports():
    link = build_link(Y_TRIANGLES[:3], Y_LABELS)
    assert len(link.vertices) == 10 and len(link.edges) == 9
    rep = shortest_injective_loop(link)
    assert rep.girth_units is None or rep.girth_units >= 0


def test_subdivision_vertex_report():
    bare = subdivision_vertex_report(Y_TRIANGLES)
    assert bare["ok"] and bare["regular"] and bare["interior_vertex_angle_units"] == 24
    assert bare["edge_arcs_units"]["b"] == [12, 12]
    glued = subdivision_vertex_report(Y_TRIANGLES, cylinder_over="b")
    assert glued["ok"]
    assert glued["edge_arcs_units"]["b"] == [12, 12, 12]


def test_complex_record_round_trip():
    rec = {
        "edges": list(Y_LABELS),
        "triangles": [
            {"boundary": [list(e) for e in t.boundary], "corners": list(t.corners)}
            for t in Y_TRIANGLES
        ],
        "paths": [{"from": "b_out", "to": "b_in", "total": 12, "segments": 3}],
    }
    link = complex_from_record(json.loads(json.dumps(rec)))
    rep = shortest_injective_loop(link)
    assert rep.girth_units == 24 and rep.ok


def test_report_record_shape():
    rep = shortest_injective_loop(build_glued_link(*DEFAULT_SEAM))
    rec = rep.to_record()
    assert set(rec) == {"girth_units", "ok", "witness"}
    assert rec["girth_units"] == 18 and rec["ok"] is False
