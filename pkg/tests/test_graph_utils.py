import pytest
import numpy as np
import networkx as nx

from oddcycletools.graph_utils import (Graph, build_graph, cycle_graph,
                                       iter_bits, bits_to_mask,
                                       distances_from, sphere,
                                       shortest_odd_closed_walk,
                                       odd_girth, odd_girth_at_least,
                                       BlowupSpec, blowup, cycle_blowup,
                                       balanced_blobs, blowup_structure,
                                       is_balanced_blowup, INFINITE)


@pytest.fixture
def k4():
    return build_graph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])


@pytest.fixture
def k33():
    return build_graph(6, [(u, v) for u in range(3) for v in range(3, 6)])


@pytest.fixture
def petersen():
    return Graph.from_networkx(nx.petersen_graph())


def test_bits_helpers():
    assert list(iter_bits(0b101001)) == [0, 3, 5]
    assert list(iter_bits(0)) == []
    assert bits_to_mask([0, 3, 5]) == 0b101001
    assert bits_to_mask([]) == 0


def test_build_graph(k4):
    assert k4.n == 4
    assert len(k4) == 4
    assert k4.number_of_edges() == 6
    assert k4.degrees() == [3, 3, 3, 3]
    assert k4.edges() == [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
    assert k4.neighbors(2) == [0, 1, 3]


def test_build_graph_merges_repeated_edges():
    actual_graph = build_graph(3, [(0, 1), (1, 0), (0, 1), (1, 2)])
    assert actual_graph.number_of_edges() == 2
    assert actual_graph.edges() == [(0, 1), (1, 2)]


def test_build_graph_errors():
    with pytest.raises(ValueError):
        build_graph(3, [(0, 3)])
    with pytest.raises(ValueError):
        build_graph(3, [(-1, 0)])
    with pytest.raises(ValueError):
        build_graph(3, [(1, 1)])
    with pytest.raises(ValueError):
        build_graph(-1, [])
    with pytest.raises(ValueError):
        build_graph(513, [])


def test_graph_rows_are_validated():
    with pytest.raises(ValueError):
        Graph(2, [0b10, 0b00])  # not symmetric
    with pytest.raises(ValueError):
        Graph(2, [0b01, 0b00])  # loop
    with pytest.raises(ValueError):
        Graph(2, [0b100, 0b00])  # neighbour out of range
    with pytest.raises(ValueError):
        Graph(3, [0, 0])  # wrong row count


def test_graph_equality_and_hash(k4):
    same = build_graph(4, [(2, 3), (1, 3), (1, 2), (0, 3), (0, 2), (0, 1)])
    assert same == k4
    assert hash(same) == hash(k4)
    assert {k4: 1}[same] == 1
    assert k4 != cycle_graph(4)


def test_has_edge_and_errors(k4):
    assert k4.has_edge(0, 3)
    assert not cycle_graph(4).has_edge(0, 2)
    with pytest.raises(ValueError):
        k4.has_edge(0, 4)
    with pytest.raises(ValueError):
        k4.degree(7)


def test_induced_subgraph_and_relabel():
    c5 = cycle_graph(5)
    actual_path = c5.induced_subgraph([1, 2, 3])
    assert actual_path.edges() == [(0, 1), (1, 2)]

    actual_relabelled = c5.relabel([0, 2, 4, 1, 3])
    assert actual_relabelled.number_of_edges() == 5
    assert not actual_relabelled.has_edge(0, 1)
    assert actual_relabelled.has_edge(0, 2)

    with pytest.raises(ValueError):
        c5.relabel([0, 1, 2, 3, 3])
    with pytest.raises(ValueError):
        c5.induced_subgraph([0, 0])


def test_edge_toggle_and_new_vertex():
    c4 = cycle_graph(4)
    actual_chorded = c4.with_edge_toggled(0, 2)
    assert actual_chorded.number_of_edges() == 5
    assert actual_chorded.with_edge_toggled(2, 0) == c4
    with pytest.raises(ValueError):
        c4.with_edge_toggled(1, 1)

    actual_extended = c4.with_new_vertex(0b0101)
    assert actual_extended.n == 5
    assert actual_extended.neighbors(4) == [0, 2]
    assert actual_extended.neighbors(0) == [1, 3, 4]
    with pytest.raises(ValueError):
        c4.with_new_vertex(0b10000)


def test_numpy_views(petersen):
    mat = petersen.adjacency_matrix()
    assert mat.shape == (10, 10)
    assert mat.dtype == np.uint8
    assert (mat == mat.T).all()
    assert mat.sum() == 30

    indptr, indices = petersen.to_csr()
    assert indptr.tolist()[-1] == 30
    assert indices[indptr[0]:indptr[1]].tolist() == petersen.neighbors(0)


def test_networkx_interop(petersen):
    G = petersen.to_networkx()
    assert nx.is_isomorphic(G, nx.petersen_graph())
    assert Graph.from_networkx(G) == petersen

    labelled = nx.Graph([('b', 'a'), ('c', 'b')])
    actual_graph = Graph.from_networkx(labelled)
    assert actual_graph.edges() == [(0, 1), (1, 2)]


def test_distances_from():
    c7 = cycle_graph(7)
    assert distances_from(c7, 0) == [0, 1, 2, 3, 3, 2, 1]

    two_parts = build_graph(4, [(0, 1), (2, 3)])
    assert distances_from(two_parts, 0) == [0, 1, INFINITE, INFINITE]
    assert str(INFINITE) == 'inf'
    with pytest.raises(ValueError):
        distances_from(two_parts, 4)


def test_distances_against_matrix_powers():
    rng = np.random.default_rng(7)
    for _ in range(20):
        n = int(rng.integers(2, 12))
        coins = np.triu(rng.random((n, n)) < 0.3, 1)
        g = build_graph(n, [(int(u), int(v)) for u, v in zip(*np.nonzero(coins))])
        mat = g.adjacency_matrix().astype(np.int64)
        reach = np.eye(n, dtype=np.int64)
        expected = [INFINITE] * n
        expected[0] = 0
        for step in range(1, n):
            reach = np.minimum(reach @ mat + reach, 1)
            for v in range(n):
                if reach[0, v] and expected[v] is INFINITE:
                    expected[v] = step
        assert distances_from(g, 0) == expected


def test_sphere():
    c7 = cycle_graph(7)
    assert list(iter_bits(sphere(c7, 0, 2))) == [2, 5]
    assert list(iter_bits(sphere(c7, 0, 3))) == [3, 4]
    assert sphere(c7, 0, 4) == 0
    assert sphere(c7, 0, 0) == 1


def test_odd_girth(k4, k33, petersen):
    assert odd_girth(cycle_graph(5)) == 5
    assert odd_girth(cycle_graph(9)) == 9
    assert odd_girth(k4) == 3
    assert odd_girth(petersen) == 5
    assert odd_girth(k33) is INFINITE
    assert odd_girth(cycle_graph(8)) is INFINITE
    assert odd_girth(Graph(0, [])) is INFINITE
    assert odd_girth(Graph(3, [0, 0, 0])) is INFINITE


def test_odd_girth_matches_networkx_cycles():
    rng = np.random.default_rng(11)
    for _ in range(30):
        n = int(rng.integers(3, 10))
        coins = np.triu(rng.random((n, n)) < 0.35, 1)
        g = build_graph(n, [(int(u), int(v)) for u, v in zip(*np.nonzero(coins))])
        odd_lengths = [len(c) for c in nx.simple_cycles(g.to_networkx())
                       if len(c) % 2 == 1]
        expected = min(odd_lengths) if odd_lengths else INFINITE
        assert odd_girth(g) == expected


def test_odd_girth_at_least(petersen):
    assert odd_girth_at_least(cycle_graph(7), 7)
    assert not odd_girth_at_least(cycle_graph(7), 9)
    assert odd_girth_at_least(cycle_graph(8), 101)
    assert not odd_girth_at_least(petersen, 7)


def test_shortest_odd_closed_walk():
    assert shortest_odd_closed_walk(cycle_graph(7), 3) == 7
    # a pendant vertex on a triangle closes an odd walk of length 5
    g = build_graph(4, [(0, 1), (1, 2), (0, 2), (2, 3)])
    assert shortest_odd_closed_walk(g, 3) == 5
    assert shortest_odd_closed_walk(cycle_graph(6), 0) is INFINITE


def test_blowup_of_pentagon():
    actual_graph = cycle_blowup(5, [2, 2, 2, 1, 1])
    assert actual_graph.n == 8
    assert actual_graph.number_of_edges() == 13
    assert actual_graph.degrees() == [3, 3, 4, 4, 3, 3, 3, 3]
    # blobs are independent:
    assert not actual_graph.has_edge(0, 1)
    assert odd_girth(actual_graph) == 5


def test_blowup_of_general_pattern(k4):
    actual_graph = blowup(BlowupSpec(k4, (1, 2, 0, 1)))
    assert actual_graph.n == 4
    assert actual_graph.number_of_edges() == 5
    assert nx.is_isomorphic(actual_graph.to_networkx(),
                            nx.complete_multipartite_graph(1, 2, 1))


def test_blowup_spec_errors(k4):
    with pytest.raises(ValueError):
        BlowupSpec(k4, (1, 1, 1))
    with pytest.raises(ValueError):
        BlowupSpec(k4, (1, 1, -1, 1))


def test_cycle_blowup_unit_blobs_is_cycle():
    assert cycle_blowup(7, [1] * 7) == cycle_graph(7)


def test_balanced_blobs():
    assert balanced_blobs(10, 7) == [2, 2, 2, 1, 1, 1, 1]
    assert balanced_blobs(14, 7) == [2] * 7
    assert balanced_blobs(3, 5) == [1, 1, 1, 0, 0]
    assert sum(balanced_blobs(101, 9)) == 101
    with pytest.raises(ValueError):
        balanced_blobs(5, 0)


def test_blowup_structure():
    pattern, blobs = blowup_structure(cycle_blowup(5, [3, 1, 2, 1, 1]))
    assert sorted(len(b) for b in blobs) == [1, 1, 1, 2, 3]
    assert nx.is_isomorphic(pattern.to_networkx(), nx.cycle_graph(5))
    assert blowup_structure(Graph(2, [0, 0])) is None


def test_is_balanced_blowup():
    assert is_balanced_blowup(cycle_blowup(7, [2] * 7), 7)
    assert is_balanced_blowup(cycle_graph(7), 7)
    assert is_balanced_blowup(cycle_blowup(7, [2, 2, 2, 1, 1, 1, 1]), 7)
    assert not is_balanced_blowup(cycle_blowup(7, [3, 1, 1, 1, 1, 1, 1]), 7)
    assert is_balanced_blowup(cycle_blowup(5, [2, 2, 2, 1, 1]), 5)
    assert not is_balanced_blowup(cycle_blowup(5, [2, 2, 2, 1, 1]), 7)
    # relabelling does not matter
    order = [5, 0, 12, 3, 7, 1, 9, 2, 13, 4, 11, 6, 8, 10]
    assert is_balanced_blowup(cycle_blowup(7, [2] * 7).relabel(order), 7)
    # two disjoint triangles are 2-regular on 6 vertices but not C6:
    assert not is_balanced_blowup(
        build_graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]), 6)
