import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from src.graphs.generator import (
    barbell_graph, complete_graph, cycle_graph, er_probability, regularize, sample_connected_erdos_renyi,
)
from src.graphs.models import Graph
from src.services.config_service import config_service
from src.spectral.concentration import (
    chernoff_degree_check, chernoff_lower, chernoff_two_sided, chernoff_upper, degree_check_probability,
    fit_hoffman_constants,
)
from src.spectral.matrices import (
    DiagonalPerturbation, conductance_exact, lambda2, normalized_adjacency, regularization_perturbation,
    second_eigenvalue, weyl_shift_check,
)
from src.spectral.mixing import (
    distribution_deviation, edge_states, edge_transition_matrix, edge_walk_distribution,
    mixing_bounds_from_gap, mixing_time_empirical, worst_case_deviations,
)
from src.spectral.report import spectral_report
from src.utils.errors import (
    BudgetExceededError, DisconnectedGraphError, InvalidParameterError, IsolatedNodeError,
    MixingTimeoutError,
)

# triangle with a pendant node: degrees 2, 2, 3, 1
PADDLE = Graph.from_edges(4, [(0, 1), (1, 2), (2, 0), (2, 3)])


def test_complete_graph_lambda2():
    m = normalized_adjacency(complete_graph(10))
    assert lambda2(m) == pytest.approx(1 / 9)
    assert second_eigenvalue(m) == pytest.approx(-1 / 9)


def test_even_cycle_is_bipartite():
    m = normalized_adjacency(cycle_graph(12))
    assert lambda2(m) == pytest.approx(1.0)
    assert second_eigenvalue(m) == pytest.approx(math.cos(math.pi / 6))


def test_self_loops_enter_the_diagonal(star):
    m = normalized_adjacency(regularize(star))
    assert np.allclose(np.diag(m.entries)[1:], 0.75)
    assert np.allclose(m.entries @ np.full(5, 1.0), np.ones(5))


def test_isolated_node_is_rejected():
    with pytest.raises(IsolatedNodeError) as err:
        normalized_adjacency(Graph.from_edges(3, [(0, 1)]))
    assert err.value.node == 2


def test_eigensolve_budget(k5):
    config_service.set_config('eigen_max_order', 3)
    with pytest.raises(BudgetExceededError):
        lambda2(normalized_adjacency(k5))


def test_perturbation_bounds():
    with pytest.raises(InvalidParameterError):
        DiagonalPerturbation(np.array([0.5]), epsilon=1.0)
    with pytest.raises(InvalidParameterError):
        DiagonalPerturbation(np.array([0.5]), epsilon=0.4)


def test_weyl_shift_after_regularization():
    # K4 minus one edge: degrees 2, 3, 3, 2
    g = Graph.from_edges(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)])
    e = regularization_perturbation(g)
    assert e.epsilon == pytest.approx(0.5)
    check = weyl_shift_check(g, e)
    assert check.bound_ok
    assert check.lambda2_after == pytest.approx(lambda2(normalized_adjacency(regularize(g))))


def test_weyl_shift_rejects_looped_graphs(star):
    with pytest.raises(InvalidParameterError):
        weyl_shift_check(regularize(star), DiagonalPerturbation(np.zeros(5), 0.0))


def test_exact_conductance():
    assert conductance_exact(complete_graph(4)) == pytest.approx(2 / 3)
    assert conductance_exact(cycle_graph(6)) == pytest.approx(1 / 3)
    config_service.set_config('conductance_max_nodes', 5)
    with pytest.raises(BudgetExceededError):
        conductance_exact(cycle_graph(6))


def test_mixing_bounds_from_gap():
    lower, upper = mixing_bounds_from_gap(0.5, 100)
    assert lower == pytest.approx(math.log(100))
    assert upper == pytest.approx(4 * math.log(100))
    with pytest.raises(InvalidParameterError):
        mixing_bounds_from_gap(1.0, 10)


def test_edge_kernel_is_stochastic():
    tails, heads = edge_states(PADDLE)
    assert len(tails) == 2 * PADDLE.edge_count
    kernel = edge_transition_matrix(PADDLE)
    assert np.allclose(np.asarray(kernel.sum(axis=1)).ravel(), 1.0)


def test_lumped_deviation_matches_the_full_edge_walk():
    deviations = worst_case_deviations(PADDLE)
    states = 2 * PADDLE.edge_count
    for _ in range(8):
        t, lumped = next(deviations)
        explicit = max(distribution_deviation(edge_walk_distribution(PADDLE, s, t)) for s in range(states))
        assert lumped == pytest.approx(explicit, abs=1e-9)


def test_mixing_time_is_monotone_in_tolerance(k5):
    loose = mixing_time_empirical(k5, tolerance=0.5)
    tight = mixing_time_empirical(k5, tolerance=1e-4)
    assert 0 < loose <= tight


def test_mixing_timeout_and_disconnected_input(k5):
    with pytest.raises(MixingTimeoutError) as err:
        mixing_time_empirical(k5, tolerance=1e-12, t_max=2)
    assert err.value.t_max == 2
    with pytest.raises(DisconnectedGraphError):
        mixing_time_empirical(Graph.from_edges(4, [(0, 1), (2, 3)]))


def test_spectral_report_for_k5(k5):
    report = spectral_report(k5, empirical=True)
    assert report.lambda2 == pytest.approx(0.25)
    assert report.lazy_lambda == pytest.approx(0.375)
    assert report.conductance == pytest.approx(0.75)
    assert report.mixing_lower <= report.mixing_upper
    assert report.mixing_empirical is not None
    assert set(report.to_dict()) >= {'lambda2', 'spectral_gap', 'mixing_upper'}


def test_chernoff_tails():
    assert chernoff_upper(10, 1.0) == pytest.approx(math.exp(-10 / 3))
    assert chernoff_lower(8, 0.5) == pytest.approx(math.exp(-1))
    assert chernoff_two_sided(1.0, 0.5) == 1.0
    with pytest.raises(InvalidParameterError):
        chernoff_lower(8, 1.5)


def test_sampled_degrees_concentrate():
    result = chernoff_degree_check(1000, 0.5, draws=500, seed=1)
    assert result.draws == 500
    assert result.fraction > 0.9


def test_degree_check_defaults_follow_config():
    config_service.set_config('degree_check_draws', 200)
    config_service.set_config('degree_log_density', 50)
    result = chernoff_degree_check(10_000, seed=2)
    assert result.draws == 200
    assert degree_check_probability(10_000) == pytest.approx(50 * math.log(10_000) / 9_999)


def test_every_draw_within_a_fifteenth_of_the_mean():
    # p(n-1) = 300 ln n; at n = 10^12 the band is about six standard deviations wide
    n = 10 ** 12
    assert degree_check_probability(n) * (n - 1) == pytest.approx(300 * math.log(n))
    result = chernoff_degree_check(n, draws=100_000, seed=11)
    assert result.within == result.draws == 100_000
    assert result.max_relative_deviation <= 1 / 15


def test_hoffman_constants_per_n():
    fit = fit_hoffman_constants([50, 100], log_density=5.0, seeds=[1, 2])
    assert sorted(fit.constants) == [50, 100]
    assert fit.spread >= 1.0


def test_smallest_normalized_matrices():
    assert normalized_adjacency(complete_graph(2)).entries.tolist() == [[0.0, 1.0], [1.0, 0.0]]
    assert normalized_adjacency(Graph.from_edges(1, [(0, 0)])).entries.tolist() == [[1.0]]


def test_eight_cycle_second_eigenvalue():
    assert second_eigenvalue(normalized_adjacency(cycle_graph(8))) == pytest.approx(math.cos(math.pi / 4))


@pytest.mark.parametrize('g, expected', [
    (complete_graph(2), 1.0),
    (cycle_graph(4), 0.5),
    (barbell_graph(4), 1 / 13),
])
def test_conductance_of_small_families(g, expected):
    assert conductance_exact(g) == pytest.approx(expected)


def test_two_node_edge_walk_mixes_in_one_step():
    # both states move to the other with probability 1/2, so one step reaches uniform
    k2 = complete_graph(2)
    assert edge_walk_distribution(k2, 0, 0).tolist() == [1.0, 0.0]
    for t in (1, 2, 5):
        assert edge_walk_distribution(k2, 0, t) == pytest.approx([0.5, 0.5])
    assert mixing_time_empirical(k2, tolerance=1.0) == 0
    assert mixing_time_empirical(k2, tolerance=1e-6) == 1


@pytest.mark.parametrize('seed', [0, 1, 2])
def test_regularized_random_graph_keeps_a_gap(seed):
    n = 200
    g, _ = sample_connected_erdos_renyi(n, er_probability(n), seed)
    assert lambda2(normalized_adjacency(regularize(g))) <= 13 / 14


@settings(max_examples=40, deadline=None)
@given(data=st.data(), n=st.integers(6, 20), p=st.floats(0.7, 1.0), seed=st.integers(0, 2 ** 32),
       epsilon=st.floats(0.01, 0.99))
def test_weyl_bound_holds_for_any_diagonal_shift(data, n, p, seed, epsilon):
    g, _ = sample_connected_erdos_renyi(n, p, seed)
    fractions = data.draw(st.lists(st.floats(0.0, 1.0), min_size=n, max_size=n))
    check = weyl_shift_check(g, DiagonalPerturbation(np.array(fractions) * epsilon, epsilon))
    assert check.bound_ok
    assert check.lambda2_after <= check.lambda2_before + 6 * epsilon + 1e-9
