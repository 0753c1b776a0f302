import networkx as nx
import numpy as np
import pytest

from src.graph.graph_core import (DegreeSequence, DisconnectedGraphError, GraphError, SeparatorKind,
                                  SeparatorWitness, complement, components, count_separating_triangles,
                                  count_triangles, degree_power_notation, degree_sequence, girth, goodman_total,
                                  is_independent_set, list_separating_4cycles, list_separating_triangles,
                                  make_graph, vertex_set)
from src.graph.named_graphs import (complete_bipartite, complete_graph, cube_graph, cycle_graph, empty_graph,
                                    icosahedron, octahedron, path_graph, stacked_triangulation)


def random_graph(rng, n, p=0.5):
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return make_graph(n, edges)


@pytest.fixture
def rng():
    return np.random.default_rng(12)


# Construction rejects bad input instead of repairing it
@pytest.mark.parametrize("order, edges", [
    (0, []),
    (65, []),
    (3, [(0, 0)]),
    (3, [(0, 3)]),
    (3, [(-1, 2)]),
])
def test_make_graph_rejects_invalid_input(order, edges):
    with pytest.raises(GraphError):
        make_graph(order, edges)


def test_edges_are_sorted_pairs():
    g = make_graph(4, [(3, 0), (2, 1), (1, 0), (0, 1)])
    assert g.edges() == [(0, 1), (0, 3), (1, 2)]
    assert g.size == 3
    assert g.neighbors(0) == [1, 3]


def test_without_edges_requires_present_edges():
    g = cycle_graph(4)
    assert g.without_edges([(0, 1)]).size == 3
    with pytest.raises(GraphError):
        g.without_edges([(0, 2)])


# Complement is an involution and partitions the edges of K_n
def test_complement_involution(rng):
    for _ in range(50):
        n = int(rng.integers(1, 13))
        g = random_graph(rng, n)
        h = complement(g)
        assert complement(h) == g
        assert g.size + h.size == n * (n - 1) // 2
        assert not set(g.edges()) & set(h.edges())


def test_complement_of_complete_graph_is_empty():
    assert complement(complete_graph(5)) == empty_graph(5)


def test_degree_power_notation():
    assert degree_power_notation(icosahedron()) == "5^12"
    ds = DegreeSequence.from_power_notation("3^1 5^10 7^1")
    assert ds.degrees == (7,) + (5,) * 10 + (3,)
    assert ds.power_notation() == "3^1 5^10 7^1"
    assert ds.sum_binomial_degrees() == 124


# Goodman's formula on random graphs
def test_goodman_identity_random_graphs(rng):
    for _ in range(1000):
        n = int(rng.integers(1, 11))
        g = random_graph(rng, n, p=float(rng.random()))
        total = count_triangles(g) + count_triangles(complement(g))
        assert total == goodman_total(degree_sequence(g), n, g.size)


def test_goodman_icosahedron():
    g = icosahedron()
    assert count_triangles(g) == 20
    assert count_triangles(complement(g)) == 20
    assert goodman_total(degree_sequence(g), 12, 30) == 40


def test_goodman_rejects_inconsistent_degrees():
    with pytest.raises(GraphError):
        goodman_total(DegreeSequence((2, 2, 2)), 4, 3)
    with pytest.raises(GraphError):
        goodman_total(DegreeSequence((2, 2, 1)), 3, 3)


def test_count_triangles_matches_networkx(rng):
    for _ in range(30):
        g = random_graph(rng, 9)
        nxg = nx.Graph(g.edges())
        nxg.add_nodes_from(range(g.order))
        assert count_triangles(g) == sum(nx.triangles(nxg).values()) // 3


def test_count_triangles_complete_graph():
    assert count_triangles(complete_graph(7)) == 35


def test_complement_of_five_cycle_is_five_cycle():
    h = complement(cycle_graph(5))
    assert h.size == 5
    assert nx.is_isomorphic(nx.Graph(h.edges()), nx.cycle_graph(5))


def test_components_match_networkx(rng):
    for _ in range(50):
        g = random_graph(rng, 10, p=0.2)
        nxg = nx.Graph(g.edges())
        nxg.add_nodes_from(range(g.order))
        ours = sorted(sorted(vertex_set(c)) for c in components(g))
        theirs = sorted(sorted(c) for c in nx.connected_components(nxg))
        assert ours == theirs
        assert g.is_connected() == nx.is_connected(nxg)


def test_separating_triangle_in_stacked_triangulation():
    g, parents = stacked_triangulation(5)
    witnesses = list_separating_triangles(g)
    assert len(witnesses) == 1
    assert witnesses[0].separator == parents[0]
    assert witnesses[0].kind is SeparatorKind.TRIANGLE
    assert witnesses[0].component_orders == (1, 1)


# Every inserted vertex is cut off by its parent triangle
def test_stacked_order12_parents_are_separating():
    g, parents = stacked_triangulation(12)
    separators = {w.separator for w in list_separating_triangles(g)}
    assert len(parents) == 8
    assert set(parents) <= separators

def test_icosahedron_has_no_separating_sets():
    g = icosahedron()
    assert list_separating_triangles(g) == []
    assert list_separating_4cycles(g) == []
    assert count_separating_triangles(g) == 0


def test_octahedron_separating_4cycles():
    witnesses = list_separating_4cycles(octahedron())
    assert len(witnesses) == 3
    assert all(w.kind is SeparatorKind.FOUR_CYCLE for w in witnesses)
    assert all(w.component_orders == (1, 1) for w in witnesses)


# Every 4-cycle of the cube is a face; removing it leaves the opposite face connected
def test_cube_has_no_separating_4cycle():
    assert list_separating_4cycles(cube_graph()) == []


def test_separators_need_connected_input():
    g = make_graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    with pytest.raises(DisconnectedGraphError):
        list_separating_triangles(g)
    with pytest.raises(DisconnectedGraphError):
        list_separating_4cycles(g)


def test_sides_can_realize_groups_components():
    w = SeparatorWitness((0, 1, 2), SeparatorKind.TRIANGLE, (1, 2, 6))
    assert w.sides_can_realize(3, 6)
    assert w.sides_can_realize(6, 3)
    assert not w.sides_can_realize(4, 5)
    assert not w.sides_can_realize(3, 5)


def test_is_independent_set():
    g = cycle_graph(6)
    assert is_independent_set(g, [0, 2, 4])
    assert not is_independent_set(g, [0, 1])
    assert is_independent_set(g, [])


@pytest.mark.parametrize("graph, expected", [
    (complete_graph(4), 3),
    (cube_graph(), 4),
    (cycle_graph(5), 5),
    (complete_bipartite(3, 3), 4),
    (path_graph(5), None),
])
def test_girth(graph, expected):
    assert girth(graph) == expected


def test_girth_matches_networkx(rng):
    for _ in range(30):
        g = random_graph(rng, 8, p=0.3)
        nxg = nx.Graph(g.edges())
        nxg.add_nodes_from(range(g.order))
        expected = nx.girth(nxg)
        assert girth(g) == (None if expected == float("inf") else expected)
