"""
Acceptance Suite
Criteria 1-7 as runnable checks at a small (desk) or full scale
"""
import math
import time
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Dict, Iterator, List

import numpy as np

from .analysis import fit_log_constant, fit_scaling, whp_fraction
from .config import ExperimentConfig
from .models import STAGE_BROADCAST, STAGE_PACKING
from .runner import run_experiment
from ..broadcast.pipeline import downcast_single_tree
from ..embedding.embedder import retry_cap
from ..embedding.pipeline import run_expander_broadcast
from ..graphs.generator import (
    complete_graph, cycle_graph, er_probability, regularize, ring_of_cliques,
    sample_connected_erdos_renyi,
)
from ..graphs.models import BfsTree
from ..hardness.bandwidth import verify_diameter_sandwich, verify_mincut_sandwich
from ..hardness.decide import brute_force_set_splitting, decide_saturation_round4
from ..hardness.flow import time_expanded_saturation
from ..hardness.instances import (
    build_setsplit_reduction, build_sqrtk_instance, random_bandwidth_graph, random_reduction_instance,
)
from ..hardness.models import ReductionInstance
from ..packing.tree_packing import depths_from_parents
from ..services.config_service import config_service
from ..spectral.concentration import chernoff_degree_check
from ..spectral.matrices import (
    DiagonalPerturbation, eigenvalues, lambda2, normalized_adjacency, weyl_shift_check,
)
from ..spectral.mixing import mixing_time_empirical
from ..spectral.report import spectral_report
from ..utils.errors import InternalConsistencyError, InvalidParameterError, MCBSimError
from ..utils.log import get_logger
from ..utils.rng import make_rng

logger = get_logger('harness')

SCALES = ('small', 'full')

LAMBDA2_RELAXED = 13 / 14

# large enough that a 1/15 band around 300 ln n holds on every one of 10^5 draws
DEGREE_CHECK_N = 10 ** 12


@dataclass
class CriterionResult:
    criterion: int
    passed: bool
    details: Dict[str, object] = field(default_factory=dict)
    elapsed_seconds: float = 0.0

    def to_dict(self) -> dict:
        """Deterministic view; wall-clock time is left out"""
        return {'criterion': self.criterion, 'passed': self.passed, 'details': self.details}


def _sweep(scale: str, run_id: str, **overrides) -> ExperimentConfig:
    if scale == 'full':
        base = dict(n_values=[200, 400, 800, 1600], seeds=list(range(30)))
    else:
        base = dict(n_values=[40, 80, 160], seeds=list(range(3)))
    base.update(overrides)
    return ExperimentConfig(run_id=run_id, **base)


def criterion_cobra_bounds(scale: str) -> CriterionResult:
    """Max edge weight <= 4·phases and walk-subgraph diameter <= 2·phases on every run"""
    records = run_experiment(_sweep(scale, 'acceptance-1', k_ratios=[1.0], measure_subgraph_diameters=True))
    packing = [r for r in records if r.stage == STAGE_PACKING and r.max_edge_weight is not None]
    weight_ok = all(r.max_edge_weight <= 4 * r.phases for r in packing)
    diameter_ok = all(r.max_subgraph_diameter <= 2 * r.phases
                      for r in packing if r.max_subgraph_diameter is not None)
    return CriterionResult(1, bool(packing) and weight_ok and diameter_ok, {
        'runs': len(packing), 'weight_bound_holds': weight_ok, 'diameter_bound_holds': diameter_ok,
    })


def criterion_tree_packing(scale: str) -> CriterionResult:
    """S = δ on covered runs, coverage w.h.p., H and W logarithmic with stable constants"""
    records = run_experiment(_sweep(scale, 'acceptance-2', k_ratios=[1.0]))
    packing = [r for r in records if r.stage == STAGE_PACKING]
    covered = [r for r in packing if r.ok]
    size_ok = all(r.S == r.min_degree for r in covered)
    coverage = whp_fraction(r.ok for r in packing)
    threshold = config_service.get_float('whp_threshold')
    details = {'runs': len(packing), 'size_equals_min_degree': size_ok, 'coverage_fraction': coverage}
    if not covered:
        return CriterionResult(2, False, details)
    h_fit, w_fit = fit_log_constant(covered, 'H'), fit_log_constant(covered, 'W')
    details.update(c_H=h_fit.constant, c_W=w_fit.constant,
                   H_stability=h_fit.stability, W_stability=w_fit.stability)
    passed = size_ok and coverage >= threshold and h_fit.stable_within(2.0) and w_fit.stable_within(2.0)
    return CriterionResult(2, passed, details)


def _random_tree(n: int, rng: np.random.Generator) -> BfsTree:
    parent = [None] + [int(rng.integers(0, v)) for v in range(1, n)]
    return BfsTree(0, parent, depths_from_parents(parent, 0))


def criterion_broadcast(scale: str) -> CriterionResult:
    """Scaling fit, exact pipeline law and lower-bound consistency"""
    records = run_experiment(_sweep(scale, 'acceptance-3', k_ratios=[1.0, 10.0, 50.0]))
    broadcast = [r for r in records if r.stage == STAGE_BROADCAST and r.ok]
    details: Dict[str, object] = {'broadcast_runs': len(broadcast)}
    try:
        fit = fit_scaling(broadcast)
        details.update(a=fit.a, b=fit.b, residual=fit.residual)
        fit_ok = fit.residual <= 0.5 and fit.a >= 0 and fit.b >= 0
    except InvalidParameterError as e:
        details['fit_error'] = str(e)
        fit_ok = False

    rng = make_rng(2024)
    trials = 1000 if scale == 'full' else 100
    pipeline_ok = True
    for _ in range(trials):
        tree = _random_tree(int(rng.integers(2, 60)), rng)
        k_prime = int(rng.integers(1, 30))
        if downcast_single_tree(tree, k_prime) != tree.max_depth + k_prime - 1:
            pipeline_ok = False
            break
    lower_ok = all(r.broadcast_rounds >= max(r.diameter, math.ceil(r.k / r.min_degree)) for r in broadcast)
    eccentric = sum(1 for r in broadcast if r.lower_bound < max(r.diameter, math.ceil(r.k / r.min_degree)))
    details.update(pipeline_law_holds=pipeline_ok, lower_bound_holds=lower_ok,
                   source_eccentricity_below_diameter=eccentric)
    return CriterionResult(3, fit_ok and pipeline_ok and lower_ok and bool(broadcast), details)


def criterion_spectral(scale: str) -> CriterionResult:
    """Weyl shift, relaxed λ₂ after regularization, closed-form spectra, degree concentration"""
    rng = make_rng(4)
    trials = 500 if scale == 'full' else 50
    weyl_ok = 0
    for t in range(trials):
        n = int(rng.integers(8, 40))
        g, _ = sample_connected_erdos_renyi(n, float(rng.uniform(0.2, 0.8)), t)
        epsilon = float(rng.uniform(0.01, 0.99))
        perturbation = DiagonalPerturbation(rng.uniform(0.0, epsilon, n), epsilon)
        weyl_ok += weyl_shift_check(g, perturbation).bound_ok

    sizes = [500, 1000] if scale == 'full' else [100, 200]
    seeds = range(30) if scale == 'full' else range(5)
    flags = []
    for n in sizes:
        for seed in seeds:
            g, _ = sample_connected_erdos_renyi(n, er_probability(n), seed)
            flags.append(lambda2(normalized_adjacency(regularize(g))) <= LAMBDA2_RELAXED)
    fraction = whp_fraction(flags)

    k_n, c_n = 10, 12
    complete = np.sort(eigenvalues(normalized_adjacency(complete_graph(k_n))))
    complete_expected = np.sort([1.0] + [-1.0 / (k_n - 1)] * (k_n - 1))
    cycle = np.sort(eigenvalues(normalized_adjacency(cycle_graph(c_n))))
    cycle_expected = np.sort(np.cos(2 * np.pi * np.arange(c_n) / c_n))
    closed_ok = bool(np.allclose(complete, complete_expected, atol=1e-8)
                     and np.allclose(cycle, cycle_expected, atol=1e-8))

    degrees = chernoff_degree_check(DEGREE_CHECK_N, draws=None if scale == 'full' else 10_000, seed=6)
    degree_ok = degrees.within == degrees.draws

    passed = (weyl_ok == trials and fraction >= config_service.get_float('whp_threshold')
              and closed_ok and degree_ok)
    return CriterionResult(4, passed, {
        'weyl_passed': weyl_ok, 'weyl_trials': trials, 'lambda2_fraction': fraction, 'lambda2_runs': len(flags),
        'closed_form_spectra': closed_ok, 'degree_draws': degrees.draws, 'degree_draws_within': degrees.within,
    })


def criterion_mixing(scale: str) -> CriterionResult:
    """Empirical mixing time between the spectral lower bound and 4x the upper bound"""
    if scale == 'full':
        graphs = [('cycle9', cycle_graph(9)), ('cycle15', cycle_graph(15)), ('cycle21', cycle_graph(21)),
                  ('ring3x4', ring_of_cliques(3, 4)), ('ring4x4', ring_of_cliques(4, 4)),
                  ('ring5x3', ring_of_cliques(5, 3))]
        graphs += [(f'er{n}', sample_connected_erdos_renyi(n, 0.3, n)[0]) for n in (20, 30, 40, 50)]
    else:
        graphs = [('cycle9', cycle_graph(9)), ('ring3x3', ring_of_cliques(3, 3)),
                  ('er16', sample_connected_erdos_renyi(16, 0.4, 16)[0])]
    rows = {}
    passed = True
    for name, g in graphs:
        report = spectral_report(g)
        measured = mixing_time_empirical(g)
        ok = report.mixing_lower <= measured <= 4 * report.mixing_upper
        rows[name] = {'lower': report.mixing_lower, 'measured': measured, 'upper': report.mixing_upper, 'ok': ok}
        if not ok:
            logger.warning(f"{name}: mixing time {measured} outside "
                           f"[{report.mixing_lower:.2f}, {4 * report.mixing_upper:.2f}]")
        passed = passed and ok
    return CriterionResult(5, passed, {'graphs': rows})


def criterion_embedding(scale: str) -> CriterionResult:
    """Out-degree δ(H), bounded retries, reversible walk paths, saturated hosts"""
    n, p, seeds = (300, 0.1, range(30)) if scale == 'full' else (60, 0.3, range(3))
    successes, failures = 0, []
    degree_ok = retries_ok = reverse_ok = True
    saturated = 0
    for seed in seeds:
        h, _ = sample_connected_erdos_renyi(n, p, seed)
        try:
            result = run_expander_broadcast(h, h.min_degree, seed)
        except InternalConsistencyError as e:
            successes += 1
            failures.append(f"seed {seed}: {e}")
            continue
        except MCBSimError as e:
            failures.append(f"seed {seed}: {e}")
            continue
        successes += 1
        saturated += result.trace.saturated()
        e = result.embedding
        degree_ok &= bool((e.out_degrees() == h.min_degree).all())
        retries_ok &= int(e.retries_used.max(initial=0)) <= retry_cap(n)
        for walk in range(len(e.walk_source)):
            if not all(h.has_edge(v, u) for u, v in e.walk_trace(walk).hops):
                reverse_ok = False
                break
    fraction = successes / len(seeds)
    passed = (successes > 0 and saturated == successes and degree_ok and retries_ok and reverse_ok
              and fraction >= config_service.get_float('whp_threshold'))
    return CriterionResult(6, passed, {
        'successful_runs': successes, 'saturated_runs': saturated, 'failures': failures,
        'out_degree_ok': degree_ok,
        'retries_within_cap': retries_ok, 'reverse_paths_ok': reverse_ok,
    })


def setsplit_suite(max_elements: int, pair_elements: int,
                   triple_elements: int = 0) -> Iterator[ReductionInstance]:
    """Every split instance whose family is small enough to enumerate.

    Ground sets of 2..max_elements elements with every family of one nonempty
    subset; two-subset families up to pair_elements elements and three-subset
    families up to triple_elements. Larger families are left to random instances.
    """
    for n in range(2, max_elements + 1):
        subsets = [frozenset(c) for size in range(1, n + 1) for c in combinations(range(n), size)]
        families = [[s] for s in subsets]
        if n <= pair_elements:
            families += [list(pair) for pair in combinations(subsets, 2)]
        if n <= triple_elements:
            families += [list(triple) for triple in combinations(subsets, 3)]
        for n1 in range(1, n):
            for family in families:
                yield ReductionInstance(n, family, n1, n - n1)


def criterion_hardness(scale: str) -> CriterionResult:
    """Gadget sandwiches, the square-root instance and reduction soundness"""
    random_count = 200 if scale == 'full' else 30
    sandwich_ok = True
    for seed in range(random_count):
        bg = random_bandwidth_graph(3 + seed % 4, 0.6, 3, seed)
        sandwich_ok &= verify_diameter_sandwich(bg) and verify_mincut_sandwich(bg)

    sqrt_rows = {}
    for k in ((4, 9, 16, 25) if scale == 'full' else (4, 9)):
        bg = build_sqrtk_instance(k)
        rounds = time_expanded_saturation(bg, 1, k).min_rounds
        sqrt_rows[k] = rounds
    sqrt_ok = all(r is not None and r >= math.isqrt(k) for k, r in sqrt_rows.items())

    mismatches = []
    enumerated = setsplit_suite(6, 5, 4) if scale == 'full' else setsplit_suite(4, 3, 3)
    checked = 0
    for ri in enumerated:
        checked += 1
        if decide_saturation_round4(build_setsplit_reduction(ri)) != brute_force_set_splitting(ri):
            mismatches.append((ri.ground_set_size, [sorted(s) for s in ri.family], ri.n1))
    for seed in range(500 if scale == 'full' else 50):
        ri = random_reduction_instance(2 + seed % 7, 1 + seed % 4, seed)
        checked += 1
        if decide_saturation_round4(build_setsplit_reduction(ri)) != brute_force_set_splitting(ri):
            mismatches.append((ri.ground_set_size, [sorted(s) for s in ri.family], ri.n1))

    passed = sandwich_ok and sqrt_ok and not mismatches
    return CriterionResult(7, passed, {
        'random_instances': random_count, 'sandwiches_hold': sandwich_ok,
        'sqrtk_rounds': sqrt_rows, 'reduction_checked': checked, 'mismatches': mismatches[:10],
    })


CRITERIA: Dict[int, Callable[[str], CriterionResult]] = {
    1: criterion_cobra_bounds,
    2: criterion_tree_packing,
    3: criterion_broadcast,
    4: criterion_spectral,
    5: criterion_mixing,
    6: criterion_embedding,
    7: criterion_hardness,
}


def run_criterion(criterion: int, scale: str = 'small') -> CriterionResult:
    if criterion not in CRITERIA:
        raise InvalidParameterError(f"criterion must be one of {sorted(CRITERIA)}, got {criterion}")
    if scale not in SCALES:
        raise InvalidParameterError(f"scale must be one of {SCALES}, got '{scale}'")
    start = time.perf_counter()
    result = CRITERIA[criterion](scale)
    result.elapsed_seconds = time.perf_counter() - start
    logger.info(f"criterion {criterion} ({scale}): {'passed' if result.passed else 'FAILED'} "
                f"in {result.elapsed_seconds:.1f}s")
    return result


def run_all(scale: str = 'small') -> List[CriterionResult]:
    return [run_criterion(c, scale) for c in sorted(CRITERIA)]
