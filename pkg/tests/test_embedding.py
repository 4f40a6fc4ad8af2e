import numpy as np
import pytest

from src.embedding.embedder import (
    embed_er_graph, endpoint_uniformity, lazy_walks, retry_cap, step_costs, twin_states, virtual_round_cost,
)
from src.embedding.models import RoundLedger
from src.embedding.pipeline import end_to_end_expander_broadcast, resolve_tau, run_expander_broadcast
from src.embedding.subnodes import build_subnode_space
from src.graphs.models import Graph
from src.graphs.traversal import eccentricity
from src.utils.errors import DisconnectedGraphError, InvalidParameterError
from src.utils.rng import make_rng

# K4 minus edge 0-3: degrees 2, 3, 3, 2
KITE = Graph.from_edges(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)])


def test_subnode_groups_and_leftovers():
    space = build_subnode_space(KITE)
    assert space.subnode_count == 10
    assert space.group_size == 2
    assert space.group_count == 4
    assert space.inactive_count() == 2
    assert space.host_of_group.tolist() == [0, 1, 2, 3]
    for group in range(space.group_count):
        members = space.members(group)
        assert len(members) == 2
        assert set(space.tails[members].tolist()) == {space.host_of_group[group]}


def test_complete_host_has_one_group_per_node(k5):
    space = build_subnode_space(k5)
    assert space.group_count == 5
    assert space.inactive_count() == 0
    assert space.groups_of_host(3) == [3]


def test_disconnected_host_is_rejected():
    with pytest.raises(DisconnectedGraphError):
        build_subnode_space(Graph.from_edges(4, [(0, 1), (2, 3)]))


def test_twin_reverses_every_subnode():
    space = build_subnode_space(Graph.from_edges(3, [(0, 1), (0, 1), (1, 2)]))
    twin = twin_states(space)
    assert np.array_equal(twin[twin], np.arange(space.subnode_count))
    assert np.array_equal(space.tails[twin], space.heads)
    assert np.array_equal(space.heads[twin], space.tails)


def test_lazy_walks_follow_host_edges(k5):
    space = build_subnode_space(k5)
    starts = np.arange(space.subnode_count)
    batch = lazy_walks(space, starts, 12, make_rng(4))
    again = lazy_walks(space, starts, 12, make_rng(4))
    assert np.array_equal(batch.states, again.states)
    for states, moved in zip(batch.states, batch.moved):
        for t, m in enumerate(moved):
            if m:
                assert space.tails[states[t + 1]] == space.heads[states[t]]
            else:
                assert states[t + 1] == states[t]


def test_step_costs_charge_the_busiest_edge():
    crossed = np.array([[0, 1], [0, 2]])
    moves = np.array([[True, False], [True, False]])
    assert step_costs([(crossed, moves)]).tolist() == [2, 1]


def test_embedding_on_complete_host(k5):
    embedding, ledger = embed_er_graph(k5, tau=6, seed=2)
    assert embedding.attempts == 1
    assert embedding.out_degrees().tolist() == [4] * 5
    assert embedding.virtual_graph.node_count == 5
    assert ledger.embed_rounds >= 2 * 6
    assert ledger.simulate_rounds_per_virtual_round == virtual_round_cost(embedding) >= 6
    for walk in range(len(embedding.walk_source)):
        trace = embedding.walk_trace(walk)
        assert trace.length == 6
        assert all(k5.has_edge(u, v) for u, v in trace.hops)


def test_walk_paths_run_both_ways(k5):
    embedding, _ = embed_er_graph(k5, tau=5, seed=8)
    (a, b), walk = next(iter(embedding.virtual_pairs.items()))
    forward = embedding.walk_path(a, b)
    assert forward == embedding.walk_trace(walk).hops
    if (b, a) not in embedding.virtual_pairs:
        assert embedding.walk_path(b, a) == [(v, u) for u, v in reversed(forward)]


def test_inactive_endpoints_are_retried():
    embedding, _ = embed_er_graph(KITE, tau=4, seed=5)
    assert int(embedding.retries_used.max()) <= retry_cap(4)
    space = embedding.space
    assert space.active[embedding.walk_target].all()
    assert embedding.out_degrees().tolist() == [2, 2, 2, 2]


def test_embedding_parameters_are_checked(k5):
    with pytest.raises(InvalidParameterError):
        embed_er_graph(k5, tau=0, seed=1)


def test_embedding_json(k5):
    embedding, _ = embed_er_graph(k5, tau=3, seed=1)
    data = embedding.to_dict()
    assert data['tau'] == 3
    assert data['host_of'] == [0, 1, 2, 3, 4]
    assert sum(c for _, _, c in data['virtual_edges']) + sum(data['virtual_self_loops']) == 20


def test_endpoints_are_close_to_uniform(k5):
    result = endpoint_uniformity(k5, tau=30, samples=4000, seed=6)
    assert result.samples == 4000
    assert result.uniform


def test_ledger_totals():
    ledger = RoundLedger(estimate_rounds=5, discovery_rounds=2, embed_rounds=10,
                         simulate_rounds_per_virtual_round=3, virtual_rounds=4, flood_rounds=1)
    assert ledger.simulation_rounds == 12
    assert ledger.total == 30
    assert ledger.to_dict()['total'] == 30


def test_resolve_tau(er_graph):
    assert resolve_tau(er_graph, 7)[0] == 7
    tau, upper = resolve_tau(er_graph)
    assert tau >= 1 and upper > 0
    with pytest.raises(InvalidParameterError):
        resolve_tau(er_graph, mode='guess')


def test_end_to_end_broadcast_saturates_the_host(er_graph):
    k = er_graph.min_degree
    result = run_expander_broadcast(er_graph, k, seed=1)
    trace, ledger = result.trace, result.ledger
    assert trace.saturated()
    assert trace.total_rounds == ledger.total
    assert trace.receipt_round[0].tolist() == [0] * k
    assert (trace.receipt_round <= ledger.total).all()
    assert ledger.total >= eccentricity(er_graph, 0)
    assert result.embedding.out_degrees().tolist() == [er_graph.min_degree] * result.embedding.space.group_count
    assert result.packing.packing_size == er_graph.min_degree


def test_end_to_end_wrapper(k5):
    trace, ledger = end_to_end_expander_broadcast(k5, 3, seed=4)
    assert trace.saturated()
    assert trace.k == 3
    assert ledger.discovery_rounds == 1
