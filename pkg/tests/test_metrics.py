import math

import pytest
from hypothesis import given, settings, strategies as st

from conftest import c4, connected_graphs, floyd_warshall, tree_path_length
from lowstretch.generators import cycle, random_multigraph
from lowstretch.graph import GraphError, build_graph
from lowstretch.metrics import (
    graph_distances_for_edges,
    reweight_for_metric_stretch,
    stretch_bound,
    stretch_report,
    tree_distance_pairs,
    tree_distances_for_edges,
)
from lowstretch.tree import SpanningTree, build_tree, low_stretch_tree


def test_path_tree_distance():
    g = build_graph(3, [(0, 1, 1), (1, 2, 1)])
    tree = SpanningTree.from_edges(g, [0, 1], 0)
    assert tree_distance_pairs(tree, [(0, 2)]) == [2]


def test_c4_stretch_report():
    g = c4()
    tree = SpanningTree.from_edges(g, [0, 1, 3], 0)
    rep = stretch_report(g, tree)
    assert [s for _, s in rep.per_edge] == [1, 1, 3, 1]
    assert rep.average == 1.5 and rep.total == 6 and rep.max == 3


def test_tree_input_report():
    g = random_multigraph(20, 19, seed=1, max_length=9.0)
    rep = stretch_report(g, SpanningTree.from_edges(g, range(19), 0))
    assert all(s == 1.0 for _, s in rep.per_edge) and rep.average == 1


def test_any_spanning_tree_of_cycle():
    g = cycle(9)
    for cut in range(9):
        tree = SpanningTree.from_edges(g, [e for e in range(9) if e != cut], 4)
        assert stretch_report(g, tree).average == pytest.approx(2 - 2 / 9)


def test_parallel_copies_and_loops_count_separately():
    g = build_graph(2, [(0, 1, 1.0), (0, 1, 2.0), (1, 1, 1.0)])
    rep = stretch_report(g, SpanningTree.from_edges(g, [0], 0))
    assert [s for _, s in rep.per_edge] == [1.0, 0.5, 0.0]
    assert rep.average == pytest.approx(0.5)


def test_tree_must_span():
    g = c4()
    tree = SpanningTree.from_edges(build_graph(3, [(0, 1, 1), (1, 2, 1)]), [0, 1], 0)
    with pytest.raises(GraphError):
        tree_distances_for_edges(g, tree)


def test_akpw_equals_standard_when_edges_are_shortest():
    g = c4()
    tree = build_tree(g, 0)
    assert stretch_report(g, tree, akpw=True).per_edge == stretch_report(g, tree).per_edge


def test_akpw_uses_graph_distance():
    g = build_graph(3, [(0, 1, 1.0), (1, 2, 1.0), (0, 2, 5.0)])
    tree = SpanningTree.from_edges(g, [0, 2], 0)
    rep = stretch_report(g, tree, akpw=True)
    assert rep.denominators == (1.0, 1.0, 2.0)
    assert [s for _, s in rep.per_edge] == [1.0, 6.0, 2.5]


def test_reweight_keeps_lengths():
    g = build_graph(3, [(0, 1, 1.0), (1, 2, 1.0), (0, 2, 5.0)])
    h = reweight_for_metric_stretch(g)
    assert h.lengths == g.lengths and h.weights == (1.0, 1.0, 0.5)


def test_stretch_bound_value():
    expected = 24 * math.sqrt(math.e) * math.log2(5) * math.log(4, 4 / 3) * math.log(10, 4 / 3)
    assert stretch_bound(4, 4) == pytest.approx(expected)


def test_report_serialization():
    g = c4()
    rep = stretch_report(g, build_tree(g, 0))
    data = rep.to_json()
    assert data["average"] == 1.5 and data["per_edge"] == [1.0, 1.0, 3.0, 1.0]
    lines = rep.to_csv(g).splitlines()
    assert lines[0] == "edge_id,u,v,length,tree_dist,stretch"
    assert lines[3] == "2,2,3,1.0,3.0,3.0"


@settings(max_examples=60, deadline=None)
@given(connected_graphs(max_n=40))
def test_tree_distances_match_parent_walk(g):
    tree = low_stretch_tree(g, 0)
    td = tree_distances_for_edges(g, tree)
    for eid, (u, v, _) in enumerate(g.edges()):
        assert math.isclose(td[eid], tree_path_length(tree, g, u, v), rel_tol=1e-9, abs_tol=1e-12)


@settings(max_examples=60, deadline=None)
@given(connected_graphs(max_n=40), st.data())
def test_tree_and_graph_distances_match_floyd_warshall(g, data):
    x0 = data.draw(st.integers(0, g.n - 1))
    tree = low_stretch_tree(g, x0)
    fw_tree = floyd_warshall(g, tree.edge_ids)
    fw = floyd_warshall(g)
    td = tree_distances_for_edges(g, tree)
    gd = graph_distances_for_edges(g)
    for eid, (u, v, _) in enumerate(g.edges()):
        assert math.isclose(td[eid], fw_tree[u, v], rel_tol=1e-9, abs_tol=1e-12)
        assert math.isclose(gd[eid], fw[u, v], rel_tol=1e-9, abs_tol=1e-12)
