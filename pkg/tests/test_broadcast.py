import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from src.broadcast.models import TRACE_COLUMNS, BroadcastTrace, MessageSet, read_trace_rows
from src.broadcast.pipeline import (
    assign_messages, broadcast_over_packing, downcast_single_tree, edge_offsets, lower_bound_rounds,
    multi_source_reduction, naive_bfs_broadcast,
)
from src.graphs.generator import complete_graph, path_graph
from src.graphs.models import BfsTree
from src.packing.tree_packing import TreePacking, depths_from_parents
from src.utils.errors import BroadcastError, InvalidParameterError

PATH_PACKING = TreePacking.from_parents(0, [[None, 0, 1, 2]])
# two spanning trees of the triangle sharing edge 0-1
TRIANGLE_PACKING = TreePacking.from_parents(0, [[None, 0, 0], [None, 0, 1]])


def _tree(parent):
    return BfsTree(0, parent, depths_from_parents(parent, 0))


def test_single_tree_pipeline_examples():
    assert downcast_single_tree(_tree([None, 0, 1, 2]), 1) == 3
    assert downcast_single_tree(_tree([None, 0, 0, 0, 0]), 5) == 5
    assert downcast_single_tree(_tree([None, 0, 1]), 0) == 0
    with pytest.raises(InvalidParameterError):
        downcast_single_tree(_tree([None, 0]), -1)


@settings(max_examples=60, deadline=None)
@given(data=st.data(), n=st.integers(2, 40), k_prime=st.integers(1, 20))
def test_pipeline_law_on_random_trees(data, n, k_prime):
    parent = [None] + [data.draw(st.integers(0, v - 1)) for v in range(1, n)]
    tree = _tree(parent)
    assert downcast_single_tree(tree, k_prime) == tree.max_depth + k_prime - 1


def test_round_robin_assignment():
    groups = assign_messages(7, 3)
    assert [g.tolist() for g in groups] == [[0, 3, 6], [1, 4], [2, 5]]


def test_shared_edges_take_distinct_offsets():
    offsets = edge_offsets(TRIANGLE_PACKING)
    # tree 0 edges: children 1, 2; tree 1 edges: children 1, 2
    assert offsets[0].tolist() == [0, 0]
    assert offsets[1].tolist() == [1, 0]


def test_single_tree_packing_matches_the_pipeline():
    g = path_graph(4)
    trace = broadcast_over_packing(g, PATH_PACKING, MessageSet(4), record_sends=True)
    assert trace.total_rounds == downcast_single_tree(PATH_PACKING.trees[0], 4) == 6
    assert trace.receipt_round[1].tolist() == [1, 2, 3, 4]
    assert trace.receipt_round[3].tolist() == [3, 4, 5, 6]
    assert trace.max_directed_load() == 1


@pytest.mark.parametrize('record_sends', [False, True])
def test_colliding_offsets_break_bandwidth(monkeypatch, record_sends):
    import src.broadcast.pipeline as pipeline

    monkeypatch.setattr(pipeline, 'edge_offsets',
                        lambda tp: [np.zeros(len(t.edges()), dtype=np.int64) for t in tp.trees])
    with pytest.raises(BroadcastError, match='directed edge'):
        broadcast_over_packing(complete_graph(3), TRIANGLE_PACKING, MessageSet(2), record_sends=record_sends)


def test_packing_broadcast_time_shares_edges():
    g = complete_graph(3)
    k = 4
    trace = broadcast_over_packing(g, TRIANGLE_PACKING, MessageSet(k), record_sends=True)
    tp = TRIANGLE_PACKING
    assert trace.saturated()
    assert trace.phase_length == tp.packing_weight == 2
    assert trace.max_directed_load() <= 1
    assert trace.total_rounds <= tp.packing_weight * (tp.packing_diameter + -(-k // tp.packing_size))
    assert trace.total_rounds >= lower_bound_rounds(g, 0, k)
    for t, (tree, messages) in enumerate(zip(tp.trees, assign_messages(k, tp.packing_size))):
        for p, c in tree.edges():
            assert (trace.receipt_round[c, messages] > trace.receipt_round[p, messages]).all()


def test_invalid_packing_is_rejected():
    bad = TreePacking.from_parents(0, [[None, 0, 0, 2]])
    with pytest.raises(BroadcastError):
        broadcast_over_packing(path_graph(4), bad, MessageSet(1))


def test_message_set_needs_a_message():
    with pytest.raises(InvalidParameterError):
        MessageSet(0)


def test_naive_baseline_and_lower_bound(k5):
    assert naive_bfs_broadcast(path_graph(4), 0, MessageSet(3)) == 5
    assert naive_bfs_broadcast(k5, 0, MessageSet(1)) == 1
    assert lower_bound_rounds(path_graph(4), 0, 5) == 5
    assert lower_bound_rounds(k5, 0, 2) == 1


def test_all_messages_at_the_source_skips_the_upcast():
    g = complete_graph(3)
    direct = broadcast_over_packing(g, TRIANGLE_PACKING, MessageSet(5))
    reduced = multi_source_reduction(g, TRIANGLE_PACKING, {0: range(5)})
    assert reduced.upcast_rounds == 0
    assert np.array_equal(direct.receipt_round, reduced.receipt_round)


def test_message_held_by_a_leaf():
    trace = multi_source_reduction(path_graph(4), PATH_PACKING, {3: [0]})
    assert trace.saturated()
    assert trace.upcast_rounds == 3
    assert trace.receipt_round[:, 0].tolist() == [3, 2, 1, 0]
    assert trace.total_rounds <= PATH_PACKING.packing_weight * 2 * PATH_PACKING.packing_diameter
    assert trace.max_directed_load() <= 1


def test_spread_holdings_saturate_everyone():
    g = complete_graph(3)
    trace = multi_source_reduction(g, TRIANGLE_PACKING, {0: [0, 3], 1: [1], 2: [2, 4]})
    assert trace.saturated()
    assert trace.k == 5


@pytest.mark.parametrize('holdings', [{0: [0, 1], 1: [1]}, {0: [0, 2]}, {}])
def test_holdings_must_partition_message_ids(holdings):
    with pytest.raises(BroadcastError):
        multi_source_reduction(complete_graph(3), TRIANGLE_PACKING, holdings)


def test_trace_csv(tmp_path):
    trace = broadcast_over_packing(path_graph(4), PATH_PACKING, MessageSet(2), record_sends=True)
    path = tmp_path / 'trace.csv'
    trace.write_csv(path)
    assert path.read_text().splitlines()[0] == ','.join(TRACE_COLUMNS)
    rows = read_trace_rows(path)
    assert rows[0] == (1, 0, 1, 0, 0)
    assert rows == sorted(rows)
    assert len(rows) == 6
    assert trace.per_round_edge_load()[2][(1, 2)] == 1


def test_trace_without_sends():
    trace = BroadcastTrace(2, 1, 1, np.array([[0], [1]]))
    with pytest.raises(BroadcastError):
        trace.per_round_edge_load()
    with pytest.raises(BroadcastError):
        trace.write_csv('unused.csv')
