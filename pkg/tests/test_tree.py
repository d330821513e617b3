import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import c4, connected_graphs
from lowstretch.generators import cycle, grid, random_multigraph
from lowstretch.graph import DisconnectedGraphError, GraphError, WeightedMultigraph, build_graph, radius_from
from lowstretch.metrics import SQRT_E, radius_factor, stretch_bound, stretch_report, validate_tree
from lowstretch.tree import (
    ALGORITHMS,
    BuilderParams,
    BuildStats,
    SpanningTree,
    build_tree,
    default_t,
    imp_low_stretch_tree,
    low_stretch_tree,
    unweighted_low_stretch_tree,
)


@pytest.mark.parametrize("algo", ALGORITHMS)
def test_c4_gives_three_edge_path(algo):
    tree = build_tree(c4(), 0, algo)
    assert tree.edge_ids == (0, 1, 3)
    assert stretch_report(c4(), tree).average == 1.5


@pytest.mark.parametrize("algo", ALGORITHMS)
def test_tree_input_returns_itself(algo):
    g = random_multigraph(40, 39, seed=4)
    tree = build_tree(g, 7, algo)
    assert tree.edge_ids == tuple(range(39))
    assert stretch_report(g, tree).average == 1.0


@pytest.mark.parametrize("algo", ALGORITHMS)
def test_grid_8x8_bounds(algo):
    g = grid(8, 8)
    tree = build_tree(g, 0, algo)
    assert validate_tree(g, tree).ok
    assert tree.radius <= radius_factor(algo) * 14
    assert stretch_report(g, tree).average <= stretch_bound(g.n, g.m)


def test_unit_graph_is_not_contracted():
    g = grid(6, 7)
    assert low_stretch_tree(g, 3) == unweighted_low_stretch_tree(g, 3)


def test_shortest_parallel_copy_is_chosen():
    g = build_graph(2, [(0, 1, 2.0), (0, 1, 1.0)])
    assert low_stretch_tree(g, 0).edge_ids == (1,)
    assert imp_low_stretch_tree(g, 0).edge_ids == (1,)


def test_single_vertex_gives_empty_tree():
    g = WeightedMultigraph(1, [(0, 0, 1.0)])
    for algo in ALGORITHMS:
        tree = build_tree(g, 0, algo)
        assert tree.edge_ids == () and tree.depth_len == (0.0,)


def test_unweighted_builder_rejects_lengths():
    with pytest.raises(GraphError):
        unweighted_low_stretch_tree(build_graph(2, [(0, 1, 2.0)]))


def test_disconnected_input_rejected():
    with pytest.raises(DisconnectedGraphError):
        low_stretch_tree(WeightedMultigraph(3, [(0, 1, 1.0)]))


def test_unknown_algorithm():
    with pytest.raises(GraphError):
        build_tree(c4(), 0, "fast")


def test_params():
    p = BuilderParams.for_graph(grid(4, 4))
    assert p.alpha == pytest.approx(1 / (2 * math.log(22, 4 / 3)))
    assert p.beta == pytest.approx(1 / (2 * math.log(48, 4 / 3)))
    assert p.t == default_t(16) == 2
    assert default_t(2) == 1 and default_t(1) == 1 and default_t(2**16) == 4
    with pytest.raises(GraphError):
        BuilderParams.for_graph(c4(), t=0)


def test_imp_rejects_small_m_hat():
    with pytest.raises(GraphError):
        imp_low_stretch_tree(c4(), 0, m_hat=3)


def test_spanning_tree_from_edges_checks():
    with pytest.raises(GraphError):
        SpanningTree.from_edges(c4(), [0, 1], 0)
    with pytest.raises(GraphError):
        SpanningTree.from_edges(build_graph(3, [(0, 1, 1), (0, 1, 1), (1, 2, 1)]), [0, 1], 0)


def test_validate_tree_flags_missing_edge():
    g = c4()
    tree = build_tree(g, 0)
    broken = SpanningTree(tree.edge_ids[:-1], tree.root, tree.parent, tree.parent_edge, tree.depth_len)
    assert validate_tree(g, broken).first_failure.startswith("spanning")


def test_unit_cycles_have_exact_average():
    for n in (3, 5, 8, 17, 40):
        g = cycle(n)
        for algo in ALGORITHMS:
            assert stretch_report(g, build_tree(g, 0, algo)).average == pytest.approx(2 - 2 / n, abs=1e-12)


@settings(max_examples=50, deadline=None)
@given(connected_graphs(max_n=60), st.data())
def test_builders_give_valid_short_trees(g, data):
    x0 = data.draw(st.integers(0, g.n - 1))
    rho = radius_from(g, x0)
    algos = ALGORITHMS if g.is_unit else ALGORITHMS[1:]
    for algo in algos:
        tree = build_tree(g, x0, algo)
        assert validate_tree(g, tree).ok
        assert tree.root == x0
        assert tree.radius <= radius_factor(algo) * rho * (1 + 1e-9)
        assert stretch_report(g, tree).average <= stretch_bound(g.n, g.m) + 1


@settings(max_examples=30, deadline=None)
@given(connected_graphs(max_n=60), st.data())
def test_builders_are_deterministic(g, data):
    x0 = data.draw(st.integers(0, g.n - 1))
    for algo in ALGORITHMS[1:]:
        assert build_tree(g, x0, algo) == build_tree(g, x0, algo)


@settings(max_examples=30, deadline=None)
@given(connected_graphs(max_n=60), st.data())
def test_single_tier_improved_equals_weighted(g, data):
    x0 = data.draw(st.integers(0, g.n - 1))
    assert imp_low_stretch_tree(g, x0, t=1) == low_stretch_tree(g, x0)


@settings(max_examples=30, deadline=None)
@given(connected_graphs(max_n=80), st.data())
def test_edge_lifetime_is_bounded(g, data):
    x0 = data.draw(st.integers(0, g.n - 1))
    params = BuilderParams.for_graph(g)
    for builder in (low_stretch_tree, imp_low_stretch_tree):
        stats = BuildStats()
        builder(g, x0, params=params, stats=stats)
        assert max(stats.presence, default=0) <= params.max_edge_lifetime
    if g.is_unit:
        stats = BuildStats()
        unweighted_low_stretch_tree(g, x0, params=params, stats=stats)
        assert max(stats.presence, default=0) <= params.max_edge_lifetime


def test_long_chain_does_not_hit_recursion_limit():
    rng = random.Random(2)
    g = WeightedMultigraph(3000, [(i, i + 1, rng.choice([1e-6, 1.0, 1e6])) for i in range(2999)])
    tree = low_stretch_tree(g, 0)
    assert len(tree.edge_ids) == 2999


def test_radius_factor_values():
    assert radius_factor("unweighted") == SQRT_E
    assert radius_factor("improved") == 2 * SQRT_E
