"""
Concentration Checks
Chernoff tails, sampled degree concentration and the λ₂ ≈ c/√(pn) fit
"""
from typing import Dict, Iterable, NamedTuple, Optional

import numpy as np

from .matrices import lambda2, normalized_adjacency
from ..graphs.generator import sample_connected_erdos_renyi
from ..graphs.models import Graph
from ..services.config_service import config_service
from ..utils.errors import InvalidParameterError
from ..utils.rng import make_rng


class DegreeConcentration(NamedTuple):
    draws: int
    within: int
    fraction: float
    max_relative_deviation: float
    tail_bound: float           # two-sided Chernoff bound on a single draw leaving the band


class HoffmanFit(NamedTuple):
    constants: Dict[int, float]  # n -> median of λ₂·√(pn)
    spread: float                # max/min of the medians
    stable: bool


def chernoff_upper(mu: float, delta: float) -> float:
    """P[X >= (1+δ)μ] <= exp(-δ²μ/(2+δ))"""
    if delta <= 0:
        raise InvalidParameterError("delta must be positive")
    return float(np.exp(-delta * delta * mu / (2.0 + delta)))


def chernoff_lower(mu: float, delta: float) -> float:
    """P[X <= (1-δ)μ] <= exp(-δ²μ/2)"""
    if not 0 < delta < 1:
        raise InvalidParameterError("delta must lie in (0, 1)")
    return float(np.exp(-delta * delta * mu / 2.0))


def chernoff_two_sided(mu: float, delta: float) -> float:
    """P[|X - μ| >= δμ] <= 2·exp(-δ²μ/3)"""
    if not 0 < delta < 1:
        raise InvalidParameterError("delta must lie in (0, 1)")
    return float(min(1.0, 2.0 * np.exp(-delta * delta * mu / 3.0)))


def degree_check_probability(n: int, log_density: Optional[float] = None) -> float:
    """p with p(n-1) = log_density·ln n"""
    if n < 2:
        raise InvalidParameterError(f"need n >= 2, got {n}")
    density = config_service.get_float('degree_log_density') if log_density is None else log_density
    return min(1.0, density * float(np.log(n)) / (n - 1))


def chernoff_degree_check(n: int, p: Optional[float] = None, draws: Optional[int] = None, seed: int = 0,
                          relative_band: float = 1.0 / 15.0) -> DegreeConcentration:
    """Draw Binomial(n-1, p) degrees and count how many stay within ±band of the mean.

    p defaults to the degree_log_density setting and draws to degree_check_draws.
    """
    if p is None:
        p = degree_check_probability(n)
    if draws is None:
        draws = config_service.get_int('degree_check_draws')
    if n < 2 or not 0.0 < p <= 1.0 or draws < 1:
        raise InvalidParameterError(f"need n >= 2, p in (0, 1] and draws >= 1, got n={n}, p={p}, draws={draws}")
    rng = make_rng(seed)
    mean = (n - 1) * p
    samples = rng.binomial(n - 1, p, size=draws)
    relative = np.abs(samples - mean) / mean
    within = int((relative <= relative_band).sum())
    return DegreeConcentration(
        draws=draws,
        within=within,
        fraction=within / draws,
        max_relative_deviation=float(relative.max()),
        tail_bound=chernoff_two_sided(mean, relative_band),
    )


def hoffman_constant(g: Graph, p: float) -> float:
    """c in λ₂ = c/√(pn)"""
    return lambda2(normalized_adjacency(g)) * np.sqrt(p * g.node_count)


def fit_hoffman_constants(n_values: Iterable[int], log_density: float,
                          seeds: Iterable[int]) -> HoffmanFit:
    """Median Hoffman constant per n at p = log_density·ln n/n"""
    seeds = list(seeds)
    constants: Dict[int, float] = {}
    for n in n_values:
        p = min(1.0, log_density * np.log(n) / n)
        samples = []
        for seed in seeds:
            g, _ = sample_connected_erdos_renyi(n, p, seed)
            samples.append(hoffman_constant(g, p))
        constants[int(n)] = float(np.median(samples))
    values = np.array(list(constants.values()))
    spread = float(values.max() / values.min())
    return HoffmanFit(constants, spread, spread <= 2.0)
