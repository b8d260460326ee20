import random

import networkx as nx
import pytest

from consetlab.graphcore import (
    EmptyGraphError,
    Graph,
    GraphError,
    InvalidCharacterError,
    OrderTooLargeError,
    PaddingError,
    TrailingDataError,
    TruncatedDataError,
    complete_graph,
    cycle_graph,
    delete_vertex,
    double_star_graph,
    empty_graph,
    hypercube_graph,
    is_connected,
    is_connected_set,
    is_path_graph,
    is_tree,
    local_connectivity,
    make_generator,
    min_degree,
    parse_graph6,
    path_graph,
    petersen_graph,
    prism_graph,
    random_connected_graph,
    random_graphs,
    star_graph,
    to_graph6,
    vertex_connectivity,
    vertices,
)

FAMILY = [
    path_graph(1), path_graph(2), path_graph(7), cycle_graph(5), complete_graph(6),
    hypercube_graph(3), star_graph(4), double_star_graph(3, 2), prism_graph(4),
    petersen_graph(), empty_graph(3), complete_graph(13),
]


# ============================================================
# GRAPH
# ============================================================
def test_graph_rejects_asymmetric_adjacency():
    with pytest.raises(GraphError):
        Graph(2, (0b10, 0b00))


def test_graph_rejects_self_loop_and_stray_bits():
    with pytest.raises(GraphError):
        Graph(2, (0b01, 0b00))
    with pytest.raises(GraphError):
        Graph(2, (0b100, 0b000))


def test_graph_order_limits():
    with pytest.raises(GraphError):
        Graph(0, ())
    with pytest.raises(GraphError):
        Graph(65, (0,) * 65)


def test_from_edge_mask_uses_graph6_pair_order():
    # pairs: (0,1) (0,2) (1,2) -> mask 0b101 is 0-1, 1-2
    assert Graph.from_edge_mask(3, 0b101).edges() == [(0, 1), (1, 2)]


# ============================================================
# GRAPH6
# ============================================================
def test_parse_triangle():
    g = parse_graph6("Bw")
    assert g.n == 3 and g.m == 3


def test_parse_single_vertex():
    g = parse_graph6("@")
    assert g.n == 1 and g.m == 0


def test_parse_ignores_line_ending():
    assert parse_graph6("Bw\n") == complete_graph(3)


@pytest.mark.parametrize(
    "text, error",
    [
        ("B?x", TrailingDataError),
        ("B!", InvalidCharacterError),
        ("?", EmptyGraphError),
        ("C", TruncatedDataError),
        ("", TruncatedDataError),
        ("~?A?", OrderTooLargeError),
        ("~~??????", OrderTooLargeError),
        ("~?", TruncatedDataError),
        ("Bx", PaddingError),
    ],
)
def test_parse_errors_are_distinct(text, error):
    with pytest.raises(error):
        parse_graph6(text)


def test_encode_examples():
    assert to_graph6(complete_graph(3)) == "Bw"
    assert to_graph6(path_graph(1)) == "@"


@pytest.mark.parametrize("g", FAMILY + [path_graph(63), cycle_graph(64)], ids=repr)
def test_codec_round_trip(g):
    assert parse_graph6(to_graph6(g)) == g


@pytest.mark.parametrize("g", FAMILY + [cycle_graph(64)], ids=repr)
def test_codec_agrees_with_networkx(g):
    other = nx.from_graph6_bytes(to_graph6(g).encode())
    assert other.number_of_nodes() == g.n
    assert sorted(tuple(sorted(e)) for e in other.edges()) == sorted(g.edges())


# ============================================================
# GENERATORS
# ============================================================
def test_path_edges():
    assert path_graph(3).edges() == [(0, 1), (1, 2)]


def test_complete_four():
    g = complete_graph(4)
    assert g.m == 6
    assert all(g.degree(v) == 3 for v in range(4))


def test_hypercube_three():
    g = hypercube_graph(3)
    assert (g.n, g.m) == (8, 12)
    assert all(g.degree(v) == 3 for v in range(8))
    assert all(bin(u ^ v).count("1") == 1 for u, v in g.edges())


def test_cycle_closes():
    assert cycle_graph(5).has_edge(4, 0)


def test_star_and_double_star():
    assert star_graph(3).neighbors(0) == [1, 2, 3]
    g = double_star_graph(3, 2)
    assert g.n == 7 and g.has_edge(0, 1)
    assert g.neighbors(0) == [1, 2, 3, 4]
    assert g.neighbors(1) == [0, 5, 6]


def test_complete_bipartite():
    g = make_generator("complete_bipartite", [3, 3])
    assert (g.n, g.m) == (6, 9)
    assert not g.has_edge(0, 1)


def test_prism_and_petersen_are_cubic():
    for g in (prism_graph(3), petersen_graph()):
        assert min_degree(g) == 3 and max(g.degree(v) for v in range(g.n)) == 3
    assert petersen_graph().m == 15


@pytest.mark.parametrize(
    "kind, params",
    [("cycle", [2]), ("hypercube", [7]), ("path", [0]), ("path", [65]), ("path", [3, 4]),
     ("nope", [3]), ("prism", [2]), ("complete_bipartite", [0, 3])],
)
def test_generator_parameter_errors(kind, params):
    with pytest.raises(GraphError):
        make_generator(kind, params)


def test_random_graphs_are_connected_and_seeded():
    first = list(random_graphs(9, 30, seed=5, count=20))
    again = list(random_graphs(9, 30, seed=5, count=20))
    assert first == again
    assert all(is_connected(g) for g in first)


# ============================================================
# STRUCTURE
# ============================================================
def test_delete_vertex_examples():
    for v in range(4):
        h = delete_vertex(cycle_graph(4), v)
        assert h.n == 3 and is_path_graph(h)
        assert delete_vertex(complete_graph(4), v) == complete_graph(3)
    assert delete_vertex(path_graph(2), 0) == path_graph(1)


def test_delete_vertex_relabels_in_order():
    # removing 1 from the path 0-1-2-3 leaves 0 isolated and 1-2 (old 2-3)
    assert delete_vertex(path_graph(4), 1).edges() == [(1, 2)]


def test_delete_vertex_errors():
    with pytest.raises(GraphError):
        delete_vertex(path_graph(3), 3)
    with pytest.raises(GraphError):
        delete_vertex(path_graph(1), 0)


def test_connectivity_queries():
    assert is_connected(path_graph(5))
    assert not is_connected(empty_graph(2))
    assert is_connected(path_graph(1))
    assert is_connected_set(path_graph(4), 0b0110)
    assert not is_connected_set(path_graph(4), 0b1001)
    assert not is_connected_set(path_graph(4), 0)


def test_vertex_connectivity_examples():
    assert vertex_connectivity(complete_graph(5)) == 4
    assert vertex_connectivity(cycle_graph(6)) == 2
    assert vertex_connectivity(path_graph(5)) == 1
    assert vertex_connectivity(hypercube_graph(3)) == 3
    assert vertex_connectivity(petersen_graph()) == 3
    assert vertex_connectivity(empty_graph(3)) == 0
    assert vertex_connectivity(path_graph(1)) == 0


def test_local_connectivity_counts_disjoint_paths():
    assert local_connectivity(cycle_graph(6), 0, 3) == 2
    assert local_connectivity(hypercube_graph(3), 0, 7) == 3
    with pytest.raises(GraphError):
        local_connectivity(cycle_graph(6), 0, 1)


def test_vertex_connectivity_matches_networkx(random_connected):
    for g in random_connected(60, 4, 11):
        other = nx.Graph(g.edges())
        other.add_nodes_from(range(g.n))
        assert vertex_connectivity(g) == nx.node_connectivity(other), to_graph6(g)


def test_connectivity_bounded_by_min_degree_and_deletion(random_connected):
    for g in random_connected(40, 3, 9, seed=7):
        kappa = vertex_connectivity(g)
        assert kappa <= min_degree(g)
        for v in range(g.n):
            h = delete_vertex(g, v)
            if kappa >= 2:
                assert is_connected(h)
            assert vertex_connectivity(h) >= kappa - 1


def test_min_degree():
    assert min_degree(complete_graph(4)) == 3
    assert min_degree(star_graph(3)) == 1
    assert min_degree(cycle_graph(5)) == 2


def test_is_path_graph():
    assert all(is_path_graph(path_graph(n)) for n in range(1, 20))
    assert not any(is_path_graph(cycle_graph(n)) for n in range(3, 10))
    assert not any(is_path_graph(complete_graph(n)) for n in range(3, 8))
    assert not any(is_path_graph(star_graph(k)) for k in range(3, 8))
    # two components, degrees look like a path plus a vertex
    assert not is_path_graph(Graph.from_edges(4, [(0, 1), (2, 3)]))


def test_is_tree():
    assert is_tree(star_graph(4))
    assert not is_tree(cycle_graph(4))
    assert not is_tree(empty_graph(2))


def test_vertices_helper():
    assert vertices(0b10110) == [1, 2, 4]
    rng = random.Random(1)
    g = random_connected_graph(6, 50, rng)
    assert vertices(g.full_mask) == list(range(6))
