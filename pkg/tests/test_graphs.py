"""Core graph type and the structural helpers built on it."""
import math

import pytest
from hypothesis import given, strategies as st

from copsurvey.graphs import (
    Graph,
    closed_neighborhood,
    complete,
    cycle,
    dismantling_order,
    dominated_vertices,
    girth,
    induced_is_cycle,
    is_dismantleable,
    open_neighborhood,
    parse_edge_list,
    path,
    petersen,
    private_neighbors,
    to_edge_list,
)
from tests.conftest import random_connected_graph


def test_init_rejects_self_loops():
    with pytest.raises(ValueError):
        Graph(2, [1, 2])


def test_init_rejects_asymmetry():
    with pytest.raises(ValueError):
        Graph(2, [2, 0])


def test_init_rejects_out_of_range_bits():
    with pytest.raises(ValueError):
        Graph(2, [4, 0])


def test_degrees_and_edges():
    g = petersen()
    assert g.degrees() == [3] * 10
    assert g.edge_count() == 15
    assert g.min_degree() == g.max_degree() == 3


def test_connectivity():
    assert petersen().is_connected()
    assert not Graph(3, [2, 1, 0]).is_connected()
    assert Graph(1, [0]).is_connected()


def test_permute_preserves_structure():
    g = petersen()
    perm = [3, 1, 4, 0, 5, 9, 2, 6, 8, 7]
    h = g.permute(perm)
    for u, v in g.edges():
        assert h.has_edge(perm[u], perm[v])
    assert h.edge_count() == g.edge_count()


def test_edge_list_round_trip():
    g = petersen()
    assert parse_edge_list(to_edge_list(g)) == g


def test_edge_list_parse_errors():
    with pytest.raises(ValueError):
        parse_edge_list("2 1\n0 0\n")  # self loop
    with pytest.raises(ValueError):
        parse_edge_list("2 2\n0 1\n")  # declared edge count wrong


def test_neighborhoods():
    g = cycle(5)
    assert closed_neighborhood(g, [0]) == {4, 0, 1}
    assert open_neighborhood(g, [0, 1]) == {4, 2}
    assert closed_neighborhood(g, [0, 2]) == {4, 0, 1, 2, 3}


def test_private_neighbors():
    # U = {0, 2} on C5: 1 is adjacent to both, so no one owns it privately
    g = cycle(5)
    assert private_neighbors(g, [0, 2], 0) == {4}
    assert private_neighbors(g, [0, 2], 1) == {3}
    with pytest.raises(IndexError):
        private_neighbors(g, [0, 2], 2)


GIRTH_CASES = [
    (complete(3), 3),
    (complete(4), 3),
    (cycle(4), 4),
    (cycle(9), 9),
    (path(6), math.inf),
    (Graph(1, [0]), math.inf),
    (petersen(), 5),
]


@pytest.mark.parametrize("g,expect", GIRTH_CASES)
def test_girth(g, expect):
    assert girth(g) == expect


def test_girth_theta_graph():
    g = Graph.from_edges(
        6, [(0, 2), (2, 1), (0, 3), (3, 4), (4, 1), (0, 5), (5, 4)]
    )
    assert girth(g) == 4  # 0-3-4-5-0 beats the 5-cycle 0-2-1-4-3-0


def test_dominated_vertices():
    # leaf of a path is dominated by its neighbor
    assert (0, 1) in dominated_vertices(path(3))
    assert dominated_vertices(path(3)) == [(0, 1), (2, 1)]
    assert dominated_vertices(cycle(4)) == []
    assert dominated_vertices(petersen()) == []


def test_dismantling_order_path():
    # n - 1 deletions, ending with a single surviving vertex
    assert dismantling_order(path(5)) == [0, 1, 2, 3]
    assert dismantling_order(complete(4)) == [0, 1, 2]


def test_dismantling_cycle_fails():
    for n in (4, 5, 6):
        assert dismantling_order(cycle(n)) is None
        assert not is_dismantleable(cycle(n))


def test_dismantling_complete_and_trees():
    assert is_dismantleable(complete(5))
    assert is_dismantleable(path(8))
    spider = Graph.from_edges(7, [(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)])
    assert is_dismantleable(spider)


def test_dismantling_requires_connected():
    with pytest.raises(ValueError):
        dismantling_order(Graph(2, [0, 0]))


def test_petersen_not_dismantleable():
    assert not is_dismantleable(petersen())


def test_induced_is_cycle():
    g = cycle(6)
    assert induced_is_cycle(g, range(6), 6)
    assert not induced_is_cycle(g, [0, 1, 2], 3)  # path, not triangle
    assert induced_is_cycle(complete(3), [0, 1, 2], 3)
    assert not induced_is_cycle(complete(4), [0, 1, 2, 3], 4)  # chords


def test_petersen_construction():
    g = petersen()
    assert g.n == 10 and girth(g) == 5 and g.degrees() == [3] * 10
    # vertex-transitivity spot check: non-neighbors of any vertex induce a 6-cycle
    for v in range(10):
        rest = [u for u in range(10) if u != v and not g.has_edge(u, v)]
        assert induced_is_cycle(g, rest, 6)


@given(st.integers(2, 9), st.randoms(use_true_random=False))
def test_random_connected_graphs_are_connected(n, r):
    g = random_connected_graph(r, n)
    assert g.is_connected()


@given(st.integers(3, 9), st.randoms(use_true_random=False))
def test_girth_at_least_three(n, r):
    g = random_connected_graph(r, n)
    assert girth(g) >= 3
