import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import small_graphs
from hopsets import WeightedGraph, all_pairs_distances, dijkstra, generate_graph, load_graph, save_graph
from hopsets.errors import GraphParseError, NegativeWeightError, OracleCapError, UsageError
from hopsets.io import parse_dimacs, parse_edge_list


def path_graph(n, w=1.0):
    return WeightedGraph.from_edges(n, [(i, i + 1, w) for i in range(n - 1)])


# --- loading -----------------------------------------------------------------

def test_load_edge_list(tmp_path):
    p = tmp_path / "g.txt"
    p.write_text("0 1 2.5\n1 2 1.0\n")
    g = load_graph(p)
    assert g.n == 3 and g.m == 2
    assert g.edges == ((0, 1, 2.5), (1, 2, 1.0))


def test_parallel_edges_collapse_to_minimum():
    g = parse_edge_list("0 1 2.5\n1 0 3.0\n")
    assert g.edges == ((0, 1, 2.5),)


def test_negative_weight_rejected(tmp_path):
    p = tmp_path / "g.txt"
    p.write_text("0 1 -1\n")
    with pytest.raises(NegativeWeightError):
        load_graph(p)


def test_malformed_line_reports_line_number():
    with pytest.raises(GraphParseError) as exc:
        parse_edge_list("# header\n0 1 2\n0 1\n")
    assert exc.value.lineno == 3


def test_self_loops_dropped_and_counted(caplog):
    g = parse_edge_list("0 0 1\n0 1 1\n1 1 4\n")
    assert g.m == 1 and g.self_loops_dropped == 2
    assert "self-loop" in caplog.text


def test_sparse_ids_remapped_with_labels():
    g = parse_edge_list("10 30 1\n30 20 2\n")
    assert g.n == 3
    assert g.labels == (10, 20, 30)
    assert g.edges == ((0, 2, 1.0), (1, 2, 2.0))


def test_comments_and_blank_lines():
    g = parse_edge_list("# a comment\n\n0 1 1.5  # trailing\n")
    assert g.edges == ((0, 1, 1.5),)


def test_dimacs():
    text = "c sample\np sp 4 4\na 1 2 3\na 2 1 3\na 2 3 1.5\na 4 3 2\n"
    g = parse_dimacs(text)
    assert g.n == 4
    assert g.edges == ((0, 1, 3.0), (1, 2, 1.5), (2, 3, 2.0))


def test_dimacs_arc_direction_duplicates_keep_minimum():
    g = parse_dimacs("p sp 2 2\na 1 2 5\na 2 1 4\n")
    assert g.edges == ((0, 1, 4.0),)


@pytest.mark.parametrize("text", ["a 1 2 3\n", "p sp 2 1\na 1 3 1\n", "p sp 2 1\nx 1 2\n", "p sp 2 1\na 1 2 -3\n"])
def test_dimacs_errors(text):
    with pytest.raises(GraphParseError):
        parse_dimacs(text)


@given(small_graphs(max_w=1000))
def test_serialize_round_trip(g):
    assert parse_edge_list(g.serialize()) == g


def test_round_trip_preserves_isolated_vertices_and_exact_weights(tmp_path):
    g = WeightedGraph.from_edges(5, [(0, 1, 0.1), (1, 2, 1 / 3)])
    p = tmp_path / "g.txt"
    save_graph(g, p)
    h = load_graph(p)
    assert h.n == 5 and h.edges == g.edges
    assert h.fingerprint == g.fingerprint


@given(small_graphs())
def test_adjacency_consistent(g):
    g.check_invariants()


def test_from_edges_rejects_out_of_range():
    with pytest.raises(UsageError):
        WeightedGraph.from_edges(2, [(0, 2, 1.0)])


# --- dijkstra ------------------------------------------------------------------

def test_dijkstra_path():
    assert dijkstra(path_graph(3), {0}).dist.tolist() == [0, 1, 2]


def test_dijkstra_multi_source():
    assert dijkstra(path_graph(3), {0, 2}).dist.tolist() == [0, 1, 0]


def test_dijkstra_unreachable():
    g = WeightedGraph.from_edges(4, [(0, 1, 1.0), (2, 3, 1.0)])
    d = dijkstra(g, {0}).dist
    assert d[1] == 1 and math.isinf(d[2]) and math.isinf(d[3])


def test_dijkstra_empty_sources():
    with pytest.raises(UsageError):
        dijkstra(path_graph(3), set())


def test_dijkstra_origin_ties_pick_smallest_id():
    # vertex 2 is equidistant from sources 0 and 4
    d = dijkstra(path_graph(5), {4, 0})
    assert d.origin.tolist() == [0, 0, 0, 4, 4]


def test_dijkstra_origin_ties_through_zero_edges():
    g = WeightedGraph.from_edges(4, [(3, 1, 0.0), (1, 2, 1.0), (0, 2, 1.0)])
    d = dijkstra(g, {3, 0})
    assert d.dist.tolist() == [0, 0, 1, 0]
    assert d.origin.tolist() == [0, 3, 0, 3]


@given(small_graphs(), st.data())
def test_dijkstra_settled_condition(g, data):
    s = data.draw(st.integers(0, g.n - 1))
    dv = dijkstra(g, {s})
    d = dv.dist
    assert d[s] == 0
    for u, v, w in g.edges:
        assert d[v] <= d[u] + w and d[u] <= d[v] + w
    for v in range(g.n):
        p = dv.parent[v]
        if p >= 0:
            assert d[v] == d[p] + dict(g.adjacency[v])[p]
        else:
            assert v == s or math.isinf(d[v])


@given(small_graphs(), st.data())
def test_multi_source_is_min_over_sources(g, data):
    srcs = data.draw(st.sets(st.integers(0, g.n - 1), min_size=1))
    multi = dijkstra(g, srcs)
    single = np.min([dijkstra(g, {s}).dist for s in srcs], axis=0)
    assert np.array_equal(multi.dist, single)
    for v in range(g.n):
        if not math.isinf(single[v]):
            best = min(s for s in srcs if dijkstra(g, {s}).dist[v] == single[v])
            assert multi.origin[v] == best


# --- all pairs -----------------------------------------------------------------

def test_all_pairs_triangle():
    g = WeightedGraph.from_edges(3, [(0, 1, 1.0), (1, 2, 1.0), (0, 2, 5.0)])
    d = all_pairs_distances(g)
    assert d.tolist() == [[0, 1, 2], [1, 0, 1], [2, 1, 0]]


def test_all_pairs_single_vertex():
    assert all_pairs_distances(WeightedGraph.from_edges(1, [])).tolist() == [[0.0]]


def test_all_pairs_cap():
    with pytest.raises(OracleCapError):
        all_pairs_distances(WeightedGraph.from_edges(30, []), cap=20)


@given(small_graphs(max_n=20))
def test_all_pairs_matches_dijkstra_property(g):
    d = all_pairs_distances(g)
    assert np.array_equal(d, d.T) and np.all(np.diag(d) == 0)
    for s in range(g.n):
        assert np.array_equal(d[s], dijkstra(g, {s}).dist)


@pytest.mark.parametrize("seed", range(50))
def test_all_pairs_matches_dijkstra_random(seed):
    fam = ["erdos-renyi", "random-geometric", "grid", "path"][seed % 4]
    n = 49 if fam == "grid" else 40 + seed
    kw = {"m": 3 * n} if fam == "erdos-renyi" else {}
    g = generate_graph(fam, n, weights="uniform:1:100", seed=seed, **kw)
    d = all_pairs_distances(g)
    for s in range(g.n):
        assert np.array_equal(d[s], dijkstra(g, {s}).dist)


def test_all_pairs_matches_dijkstra_n200():
    g = generate_graph("erdos-renyi", 200, m=600, weights="uniform:1:100", seed=11)
    d = all_pairs_distances(g)
    for s in range(0, 200, 7):
        assert np.array_equal(d[s], dijkstra(g, {s}).dist)


# --- generators ------------------------------------------------------------------

def test_generate_path():
    g = generate_graph("path", 5)
    assert g.m == 4 and all(w == 1.0 for *_, w in g.edges)


def test_generate_er_deterministic():
    a = generate_graph("erdos-renyi", 100, m=300, seed=7)
    b = generate_graph("erdos-renyi", 100, m=300, seed=7)
    assert a.edges == b.edges and a.m == 300
    assert generate_graph("erdos-renyi", 100, m=300, seed=8).edges != a.edges


def test_generate_grid():
    g = generate_graph("grid", 9)
    assert g.m == 12


def test_generate_grid_rectangular():
    g = generate_graph("grid", 12, rows=3, cols=4)
    assert g.m == 3 * 3 + 2 * 4


@pytest.mark.parametrize("fam", ["path", "grid"])
def test_connected_families_are_connected(fam):
    g = generate_graph(fam, 64, weights="uniform:1:5", seed=1)
    assert np.all(np.isfinite(dijkstra(g, {0}).dist))


def test_uniform_weights_in_range_and_dyadic():
    g = generate_graph("erdos-renyi", 200, m=1000, weights="uniform:1:100", seed=3)
    ws = np.array([w for *_, w in g.edges])
    assert ws.min() >= 1 and ws.max() <= 100
    assert np.all(ws * 2**16 == np.round(ws * 2**16))


def test_random_geometric_deterministic():
    a = generate_graph("random-geometric", 300, seed=2)
    assert a.edges == generate_graph("random-geometric", 300, seed=2).edges
    assert 300 < a.m < 3000


@pytest.mark.parametrize("kwargs", [
    dict(family="erdos-renyi", n=5, m=11),
    dict(family="grid", n=10),
    dict(family="bogus", n=10),
    dict(family="path", n=0),
    dict(family="path", n=3, weights="uniform:5"),
])
def test_generator_usage_errors(kwargs):
    with pytest.raises(UsageError):
        generate_graph(**kwargs)


def test_generate_dense_er():
    g = generate_graph("erdos-renyi", 10, m=40, seed=1)
    assert g.m == 40
    assert generate_graph("erdos-renyi", 10, m=45, seed=1).m == 45
    assert g.edges == generate_graph("erdos-renyi", 10, m=40, seed=1).edges
