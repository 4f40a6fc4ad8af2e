import math

import pytest
from hypothesis import given, settings, strategies as st

from src.graphs.traversal import diameter, is_connected
from src.hardness.bandwidth import (
    bandwidth_to_congest, bandwidth_to_congest_with_cliques, global_min_cut, verify_diameter_sandwich,
    verify_mincut_sandwich,
)
from src.hardness.decide import (
    brute_force_set_splitting, decide_saturation_round4, find_saturating_split, forwarding_schedule,
    simulate_bandwidth_schedule, targets_saturated,
)
from src.hardness.flow import opt_sandwich_check, time_expanded_saturation, verify_flow_certificate
from src.hardness.instances import (
    build_setsplit_reduction, build_sqrtk_instance, mincut, random_bandwidth_graph, random_reduction_instance,
)
from src.hardness.layered import check_layered_equivalence, layered_transform, lift_layered_schedule
from src.hardness.models import BandwidthGraph, ReductionInstance, SaturationResult
from src.services.config_service import config_service
from src.utils.errors import (
    BudgetExceededError, DisconnectedGraphError, HardnessError, InvalidParameterError,
)

# s on layer 0, a and b on layer 1, t on layer 2
DIAMOND = BandwidthGraph(4, [(0, 1, 2), (0, 2, 1), (1, 3, 2), (2, 3, 1)], 0, layers=[0, 1, 1, 2])
DIAMOND_SCHEDULE = [
    [(0, 1, frozenset({0, 1})), (0, 2, frozenset({2}))],
    [(1, 3, frozenset({0, 1})), (2, 3, frozenset({2}))],
]


def test_bandwidth_graph_validation():
    for edges in ([(0, 0, 1)], [(0, 1, 0)], [(0, 1, 1), (1, 0, 2)], [(0, 5, 1)]):
        with pytest.raises(InvalidParameterError):
            BandwidthGraph(2, edges, 0)


def test_bandwidth_graph_text_format(tmp_path):
    bg = BandwidthGraph(3, [(0, 1, 2), (1, 2, 5)], 0)
    assert bg.format() == "3 2\n0 1 2\n1 2 5\nsource 0\n"
    path = tmp_path / 'bg.txt'
    bg.write(path)
    restored = BandwidthGraph.read(path)
    assert restored.edges == bg.edges and restored.source == 0
    with pytest.raises(InvalidParameterError):
        BandwidthGraph.parse("3 2\n0 1 2\n")


def test_single_wide_edge_becomes_a_clique():
    g, cliques = bandwidth_to_congest_with_cliques(BandwidthGraph(2, [(0, 1, 3)], 0))
    assert cliques == {0: [0], 1: [1, 2, 3]}
    assert g.node_count == 4
    assert g.edge_count == 6
    assert verify_mincut_sandwich(BandwidthGraph(2, [(0, 1, 3)], 0))


def test_unit_triangle_is_unchanged():
    g = bandwidth_to_congest(BandwidthGraph(3, [(0, 1, 1), (1, 2, 1), (0, 2, 1)], 0))
    assert g.node_count == 3
    assert g.edge_count == 3


def test_disconnected_bandwidth_graph_is_rejected():
    with pytest.raises(DisconnectedGraphError):
        bandwidth_to_congest(BandwidthGraph(3, [(0, 1, 2)], 0))


def test_min_cut_of_a_path():
    bg = BandwidthGraph(3, [(0, 1, 2), (1, 2, 5)], 0)
    assert mincut(bg) == 2
    assert global_min_cut(bg.to_networkx()) == 2
    assert verify_mincut_sandwich(bg)
    assert verify_diameter_sandwich(bg)


@pytest.mark.parametrize('seed', range(20))
def test_sandwiches_on_random_graphs(seed):
    bg = random_bandwidth_graph(3 + seed % 4, 0.6, 3, seed)
    assert is_connected(bg.hop_graph())
    g_prime = bandwidth_to_congest(bg)
    assert verify_diameter_sandwich(bg, g_prime)
    assert verify_mincut_sandwich(bg, g_prime)


def test_saturation_over_one_pipe():
    bg = BandwidthGraph(2, [(0, 1, 3)], 0)
    result = time_expanded_saturation(bg, 1, 7)
    assert result.min_rounds == math.ceil(7 / 3)
    assert verify_flow_certificate(bg, result)


def test_saturation_along_a_unit_path():
    bg = BandwidthGraph(3, [(0, 1, 1), (1, 2, 1)], 0)
    result = time_expanded_saturation(bg, 2, 3)
    assert result.min_rounds == 4
    assert result.bounded
    assert len(result.flow_certificate) == 4
    assert verify_flow_certificate(bg, result)


def test_saturation_edge_cases():
    bg = BandwidthGraph(3, [(0, 1, 1)], 0)
    assert time_expanded_saturation(bg, 0, 5).min_rounds == 0
    assert time_expanded_saturation(bg, 1, 0).min_rounds == 0
    assert time_expanded_saturation(bg, 2, 1).min_rounds is None
    assert time_expanded_saturation(bg, 1, 10, round_cap=3).min_rounds is None
    with pytest.raises(InvalidParameterError):
        time_expanded_saturation(bg, 7, 1)


def test_certificate_checks_bandwidth_and_causality():
    bg = BandwidthGraph(3, [(0, 1, 1), (1, 2, 1)], 0)
    too_wide = SaturationResult(2, 2, 2, [{(0, 1): 2}, {(1, 2): 2}], 10)
    assert not verify_flow_certificate(bg, too_wide)
    early = SaturationResult(2, 1, 1, [{(1, 2): 1}], 10)
    assert not verify_flow_certificate(bg, early)
    assert not verify_flow_certificate(bg, SaturationResult(2, 1, None, [], 10))


def test_clique_rounds_never_beat_the_original():
    holds, details = opt_sandwich_check(BandwidthGraph(3, [(0, 1, 2), (1, 2, 3)], 0), k=4)
    assert holds
    assert set(details) == {1, 2}


@pytest.mark.parametrize('k', [4, 9, 16])
def test_square_root_instance(k):
    r = math.isqrt(k)
    bg = build_sqrtk_instance(k)
    assert bg.node_count == 2 + 2 * r
    assert diameter(bg.hop_graph()) <= 3
    rounds = time_expanded_saturation(bg, 1, k).min_rounds
    assert r <= rounds <= r + 1


def test_square_root_instance_without_unit_paths():
    bg = build_sqrtk_instance(9, with_unit_paths=False)
    assert bg.node_count == 5
    assert bg.labels[:2] == ['s', 'v1']
    assert time_expanded_saturation(bg, 1, 9).min_rounds >= 3


@pytest.mark.parametrize('k', [1, 5, 8])
def test_square_root_instance_needs_a_square(k):
    with pytest.raises(InvalidParameterError):
        build_sqrtk_instance(k)


def test_reduction_instance_validation():
    with pytest.raises(HardnessError):
        ReductionInstance(3, [{0}], 1, 1)
    with pytest.raises(HardnessError):
        ReductionInstance(2, [set()], 1, 1)
    with pytest.raises(HardnessError):
        ReductionInstance(2, [{2}], 1, 1)
    with pytest.raises(HardnessError):
        build_setsplit_reduction(ReductionInstance(2, [{0}], 0, 2))


def test_two_element_reduction_shape():
    rg = build_setsplit_reduction(ReductionInstance(2, [{0, 1}], 1, 1))
    assert rg.is_layered()
    assert len(rg.element_nodes) == 2
    assert len(rg.family_nodes) == 1
    assert len(rg.union_nodes) == 2
    assert len(rg.targets) == 2
    assert rg.target_relays == {}
    assert rg.node_count == 12
    assert rg.bandwidth(0, rg.targets[0]) == 0


def test_reduction_relays_carry_the_complement():
    rg = build_setsplit_reduction(ReductionInstance(4, [{0, 1}], 1, 3))
    relays = rg.target_relays[(0, 0)]
    assert [rg.layers[v] for v in relays] == [1, 2, 3]
    assert rg.bandwidth(0, relays[0]) == 4 - 1 - 1
    assert (0, 1) not in rg.target_relays


def test_splittable_pair_saturates_by_round_four():
    ri = ReductionInstance(2, [{0, 1}], 1, 1)
    rg = build_setsplit_reduction(ri)
    assert find_saturating_split(rg) == frozenset({0})
    assert targets_saturated(rg, forwarding_schedule(rg, frozenset({1})))
    assert brute_force_set_splitting(ri)


def test_singleton_cannot_be_split():
    ri = ReductionInstance(2, [{0}], 1, 1)
    assert not decide_saturation_round4(build_setsplit_reduction(ri))
    assert not brute_force_set_splitting(ri)


def test_empty_family_is_trivially_splittable():
    ri = ReductionInstance(3, [], 1, 2)
    rg = build_setsplit_reduction(ri)
    assert rg.targets == []
    assert decide_saturation_round4(rg)
    assert brute_force_set_splitting(ri)


def test_overlapping_pairs_match_brute_force():
    ri = ReductionInstance(3, [{0, 1}, {1, 2}], 1, 2)
    rg = build_setsplit_reduction(ri)
    assert find_saturating_split(rg) == frozenset({1})
    assert decide_saturation_round4(rg) == brute_force_set_splitting(ri) is True


@settings(max_examples=40, deadline=None)
@given(n=st.integers(2, 5), family_size=st.integers(1, 3), seed=st.integers(0, 10 ** 6))
def test_round_four_decision_agrees_with_brute_force(n, family_size, seed):
    ri = random_reduction_instance(n, family_size, seed)
    assert 1 <= ri.n1 < n
    assert decide_saturation_round4(build_setsplit_reduction(ri)) == brute_force_set_splitting(ri)


def test_forwarding_schedule_needs_a_part_of_size_n1():
    rg = build_setsplit_reduction(ReductionInstance(3, [{0, 1}], 1, 2))
    with pytest.raises(HardnessError):
        forwarding_schedule(rg, frozenset({0, 1}))


def test_exhaustive_budgets():
    config_service.set_config('decide_max_elements', 2)
    config_service.set_config('set_splitting_max_elements', 2)
    ri = ReductionInstance(3, [{0, 1}], 1, 2)
    with pytest.raises(BudgetExceededError):
        decide_saturation_round4(build_setsplit_reduction(ri))
    with pytest.raises(BudgetExceededError):
        brute_force_set_splitting(ri)


def test_schedule_simulation_rejects_violations():
    bg = BandwidthGraph(3, [(0, 1, 1), (1, 2, 1)], 0)
    history = simulate_bandwidth_schedule(bg, [[(0, 1, frozenset({0}))], [(1, 2, frozenset({0}))]], 2)
    assert history[0][0] == frozenset({0, 1})
    assert history[2][2] == frozenset({0})
    bad = [
        [[(0, 1, frozenset({0})), (0, 1, frozenset({1}))]],
        [[(0, 1, frozenset({0, 1}))]],
        [[(1, 2, frozenset({0}))]],
    ]
    for schedule in bad:
        with pytest.raises(HardnessError):
            simulate_bandwidth_schedule(bg, schedule, 2)


def test_degenerate_layered_transform():
    tg = layered_transform(BandwidthGraph(2, [(0, 1, 1)], 0, layers=[0, 1]), 1)
    assert tg.graph.node_count == 4
    assert sorted((u, v) for u, v, _ in tg.graph.edges()) == [(0, 1), (1, 2), (2, 3)]
    assert tg.node_of(1) == [3]


def test_layered_transform_group_sizes():
    tg = layered_transform(DIAMOND, 3)
    assert tg.source_in == [1, 2, 3]
    assert tg.source_out == [4, 5, 6]
    assert [len(tg.out_groups[v]) for v in (1, 2)] == [3, 3]
    assert tg.in_groups == {(0, 1): [14, 15], (0, 2): [16]}
    assert tg.last_layer == {3: 13}
    assert tg.graph.node_count == 17
    assert tg.graph.degree(13) == 3


def test_layered_transform_rejects_bad_input():
    with pytest.raises(HardnessError):
        layered_transform(DIAMOND, 1)
    with pytest.raises(HardnessError):
        layered_transform(BandwidthGraph(3, [(0, 1, 1), (0, 2, 1), (1, 2, 1)], 0, layers=[0, 1, 1]), 2)


def test_lifted_schedule_keeps_unit_bandwidth():
    tg = layered_transform(DIAMOND, 3)
    lifted = lift_layered_schedule(DIAMOND, tg, DIAMOND_SCHEDULE)
    assert len(lifted) == 5
    assert all(len(msgs) == 1 for sends in lifted for _, _, msgs in sends)


def test_layered_equivalence_forward_direction():
    check = check_layered_equivalence(DIAMOND, 3, DIAMOND_SCHEDULE)
    assert check.depth == 2
    assert check.rounds_original == 2
    assert check.rounds_transformed == 5
    assert check.forward_holds
    assert check.bounds_hold


def test_reduction_schedule_lifts_into_the_transform():
    ri = ReductionInstance(2, [{0, 1}], 1, 1)
    rg = build_setsplit_reduction(ri)
    schedule = forwarding_schedule(rg, frozenset({0}))
    check = check_layered_equivalence(rg, 2, schedule, with_sink_bounds=False)
    assert check.rounds_original == 4
    assert check.forward_holds
    assert check.sink_bounds == {}
