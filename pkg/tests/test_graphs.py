import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from src.graphs.generator import (
    barbell_graph, circulant_graph, complete_graph, cycle_graph, degree_stats, er_probability,
    gen_erdos_renyi, path_graph, regularize, ring_of_cliques, sample_connected_erdos_renyi, star_graph,
)
from src.graphs.io import format_edge_list, parse_edge_list, read_edge_list, write_edge_list
from src.graphs.models import Graph
from src.graphs.traversal import bfs, diameter, eccentricity, is_connected
from src.utils.errors import DisconnectedGraphError, InvalidParameterError
from src.utils.rng import MAX_SEED, make_rng, validate_seed


def test_from_edges_merges_parallel_edges_and_loops():
    g = Graph.from_edges(3, [(0, 1), (1, 0), (1, 2), (2, 2)])
    assert g.multiplicity_of(0, 1) == 2
    assert g.degree(1) == 3
    assert g.self_loops.tolist() == [0, 0, 1]
    assert g.slot_count(2) == 2
    assert g.edge_count == 3
    assert g.validate()


def test_from_edges_rejects_out_of_range_endpoint():
    with pytest.raises(InvalidParameterError):
        Graph.from_edges(2, [(0, 2)])


def test_slot_targets_lists_real_edges_before_loops():
    g = Graph.from_edges(3, [(0, 1), (0, 2), (0, 2)], self_loops=[2, 0, 0])
    assert g.slot_targets(0).tolist() == [1, 2, 2, 0, 0]


def test_regularize_pads_to_max_degree(star):
    r = regularize(star)
    assert set(r.slot_counts().tolist()) == {4}
    assert r.self_loops.tolist() == [0, 3, 3, 3, 3]
    assert regularize(r) == r


def test_gen_erdos_renyi_is_deterministic():
    assert gen_erdos_renyi(30, 0.2, 5) == gen_erdos_renyi(30, 0.2, 5)
    assert gen_erdos_renyi(10, 1.0, 1) == complete_graph(10)
    assert gen_erdos_renyi(10, 0.0, 1).edge_count == 0


def test_gen_erdos_renyi_rejects_bad_probability():
    with pytest.raises(InvalidParameterError):
        gen_erdos_renyi(10, 1.5, 0)


def test_sample_connected_reports_the_seed_used():
    g, seed_used = sample_connected_erdos_renyi(40, 0.3, seed=7)
    assert is_connected(g)
    assert gen_erdos_renyi(40, 0.3, seed_used) == g


def test_sample_connected_gives_up_on_empty_graphs():
    with pytest.raises(DisconnectedGraphError):
        sample_connected_erdos_renyi(10, 0.0, seed=1, attempts=3)


def test_er_probability_is_capped():
    assert er_probability(10, 100.0) == 1.0
    assert er_probability(1000, 2.0) == pytest.approx(2.0 * np.log(1000) / 1000)


def test_families_have_known_shapes():
    assert complete_graph(5).edge_count == 10
    assert cycle_graph(6).edge_count == 6
    assert barbell_graph(4).edge_count == 13
    assert ring_of_cliques(3, 3).edge_count == 3 * 3 + 3 * 3
    assert set(circulant_graph(8, [1, 2]).degrees().tolist()) == {4}
    with pytest.raises(InvalidParameterError):
        cycle_graph(2)


def test_degree_stats_ratio(star):
    assert degree_stats(star) == (1, 4, 4.0)
    assert degree_stats(Graph.empty(3)).ratio is None


def test_bfs_picks_smallest_id_parent():
    # 3 is adjacent to both 1 and 2 at depth 1
    g = Graph.from_edges(4, [(0, 1), (0, 2), (1, 3), (2, 3)])
    tree = bfs(g, 0)
    assert tree.parent == [None, 0, 0, 1]
    assert tree.depth == [0, 1, 1, 2]
    assert tree.path_to_root(3) == [3, 1, 0]


def test_bfs_marks_unreachable_nodes():
    g = Graph.from_edges(4, [(0, 1), (2, 3)])
    tree = bfs(g, 0)
    assert tree.unreachable() == [2, 3]
    with pytest.raises(DisconnectedGraphError) as err:
        eccentricity(g, 0)
    assert err.value.unreachable == [2, 3]


def test_diameter_of_known_graphs(p4, c6, k5):
    assert diameter(p4) == 3
    assert diameter(c6) == 3
    assert diameter(k5) == 1
    assert diameter(Graph.empty(1)) == 0
    with pytest.raises(DisconnectedGraphError):
        diameter(Graph.from_edges(3, [(0, 1)]))


def test_bfs_depths_match_adjacency_powers():
    # row 0 of (I + A)^k is the set reached within k hops
    g, _ = sample_connected_erdos_renyi(200, 0.1, seed=5)
    adjacency = g.to_csr().toarray() > 0
    reached = np.zeros(g.node_count, dtype=bool)
    reached[0] = True
    depth = np.where(reached, 0, -1)
    hops = 0
    while not reached.all():
        hops += 1
        reached = reached | (reached @ adjacency)
        depth[reached & (depth < 0)] = hops
    assert bfs(g, 0).depth == depth.tolist()
    assert eccentricity(g, 0) == hops


def test_diameter_matches_floyd_warshall():
    g, _ = sample_connected_erdos_renyi(500, 0.05, seed=2)
    dist = np.where(g.to_csr().toarray() > 0, 1.0, np.inf)
    np.fill_diagonal(dist, 0.0)
    for k in range(g.node_count):
        np.minimum(dist, dist[:, k, None] + dist[None, k, :], out=dist)
    assert diameter(g) == int(dist.max())


def test_edge_list_file_keeps_multiplicity_and_loops(tmp_path):
    g = Graph.from_edges(3, [(0, 1), (0, 1), (1, 2)], self_loops=[0, 0, 2])
    path = tmp_path / 'g.txt'
    write_edge_list(g, path)
    assert path.read_text() == "3 3\n0 1\n0 1\n1 2\nL 2 2\n"
    assert read_edge_list(path) == g


@pytest.mark.parametrize('text', ["", "3\n", "2 1\n0 5\n", "2 2\n0 1\n"])
def test_parse_edge_list_rejects_malformed_input(text):
    with pytest.raises(InvalidParameterError):
        parse_edge_list(text)


@settings(max_examples=40, deadline=None)
@given(n=st.integers(2, 25), p=st.floats(0.0, 1.0), seed=st.integers(0, MAX_SEED))
def test_sampled_graphs_survive_the_edge_list_format(n, p, seed):
    g = gen_erdos_renyi(n, p, seed)
    assert g.validate()
    assert parse_edge_list(format_edge_list(g)) == g


def test_seed_validation():
    assert validate_seed(MAX_SEED) == MAX_SEED
    for bad in (-1, MAX_SEED + 1, 1.5, True, '3'):
        with pytest.raises(InvalidParameterError):
            validate_seed(bad)
    assert make_rng(3).integers(1 << 30) == make_rng(3).integers(1 << 30)
