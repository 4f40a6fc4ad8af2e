"""
Edge-Walk Mixing
Lazy random walk on directed edges: exact worst-start mixing time and spectral bounds
"""
from typing import Iterator, Optional, Tuple

import numpy as np
from scipy import sparse

from ..graphs.models import Graph
from ..graphs.traversal import is_connected
from ..services.config_service import config_service
from ..utils.errors import (
    BudgetExceededError, DisconnectedGraphError, InvalidParameterError, MixingTimeoutError,
)
from ..utils.log import get_logger

logger = get_logger('spectral')


def mixing_bounds_from_gap(lam: float, n: int) -> Tuple[float, float]:
    """(1/(1-λ) - 1)·ln n <= τ_mix <= 2·ln n/(1-λ)"""
    if not 0.0 <= lam < 1.0:
        raise InvalidParameterError(f"lambda must lie in [0, 1), got {lam}")
    if n < 1:
        raise InvalidParameterError(f"n must be positive, got {n}")
    log_n = np.log(n)
    gap = 1.0 - lam
    return (1.0 / gap - 1.0) * log_n, 2.0 * log_n / gap


def default_tolerance(n: int) -> float:
    return float(n) ** (-config_service.get_float('mixing_tolerance_exponent'))


def edge_states(g: Graph) -> Tuple[np.ndarray, np.ndarray]:
    """Tail and head of every directed-edge state; a parallel edge gives one state per copy.

    States are ordered by tail, so the out-states of node v are contiguous.
    """
    tails = np.repeat(np.repeat(np.arange(g.node_count), np.diff(g.indptr)), g.multiplicity)
    heads = np.repeat(g.indices, g.multiplicity)
    return tails, heads


def edge_transition_matrix(g: Graph) -> sparse.csr_matrix:
    """Lazy edge-walk kernel: stay w.p. 1/2, else move to a uniform out-state of the head"""
    tails, heads = edge_states(g)
    degrees = g.degrees()
    offsets = np.concatenate([[0], np.cumsum(degrees)])
    rows, cols, vals = [], [], []
    for state, head in enumerate(heads):
        lo, hi = offsets[head], offsets[head + 1]
        rows.append(np.full(hi - lo, state))
        cols.append(np.arange(lo, hi))
        vals.append(np.full(hi - lo, 0.5 / degrees[head]))
    size = len(heads)
    move = sparse.csr_matrix(
        (np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))), shape=(size, size)
    )
    return (move + 0.5 * sparse.identity(size, format='csr')).tocsr()


def edge_walk_distribution(g: Graph, start_state: int, steps: int) -> np.ndarray:
    """Distribution over edge states after `steps` steps from a point mass"""
    kernel = edge_transition_matrix(g).T.tocsr()
    dist = np.zeros(kernel.shape[0])
    dist[start_state] = 1.0
    for _ in range(steps):
        dist = kernel @ dist
    return dist


def distribution_deviation(dist: np.ndarray) -> float:
    """‖P/π - 1‖ in L2(π) against the uniform distribution"""
    size = len(dist)
    return float(np.sqrt(max(0.0, size * float(np.dot(dist, dist)) - 1.0)))


def _check_walkable(g: Graph):
    if g.node_count < 2:
        raise InvalidParameterError("edge walk needs at least one edge")
    if not is_connected(g):
        raise DisconnectedGraphError("mixing time of a disconnected graph is infinite")
    state_count = 2 * g.edge_count
    budget = config_service.get_int('mixing_max_states')
    if state_count > budget:
        raise BudgetExceededError(f"{state_count} directed-edge states exceed the budget of {budget}")


def worst_case_deviations(g: Graph) -> Iterator[Tuple[int, float]]:
    """Yield (t, max over start states of the deviation after t steps), for t = 0, 1, ...

    The walk is lumped onto its tail process: once a walk started at u->v has
    moved, its state is a uniform out-edge of its tail, and the tail performs
    the lazy node walk. With Z[v] the tail mass that has left a start headed
    at v, Z[v] evolves as Z L + 2^-(t+1) e_v, and the unmoved 2^-t stays on
    the start state. Self-loops are not walk states.
    """
    _check_walkable(g)
    n = g.node_count
    degrees = g.degrees().astype(float)
    state_count = degrees.sum()
    adjacency = g.to_csr()
    lazy_step = (0.5 * sparse.identity(n, format='csr')
                 + 0.5 * sparse.diags(1.0 / degrees) @ adjacency).tocsr()
    step_t = lazy_step.T.tocsr()
    neighbor_mask = adjacency.toarray() > 0
    moved = np.zeros((n, n))

    t = 0
    while True:
        stay = 0.5 ** t
        spread = (moved ** 2 / degrees[None, :]).sum(axis=1)
        per_tail = np.where(neighbor_mask, moved / degrees[None, :], -np.inf).max(axis=1)
        squares = spread + 2.0 * stay * per_tail + stay * stay
        yield t, float(np.sqrt(max(0.0, state_count * squares.max() - 1.0)))
        moved = (step_t @ moved.T).T
        moved[np.diag_indices(n)] += 0.5 ** (t + 1)
        t += 1


def mixing_time_empirical(g: Graph, tolerance: Optional[float] = None,
                          t_max: Optional[int] = None) -> int:
    """Smallest t with worst-start deviation <= tolerance"""
    tolerance = default_tolerance(g.node_count) if tolerance is None else tolerance
    if tolerance <= 0:
        raise InvalidParameterError(f"tolerance must be positive, got {tolerance}")
    t_max = t_max if t_max is not None else config_service.get_int('mixing_t_max_factor') * g.node_count
    deviation = np.inf
    for t, deviation in worst_case_deviations(g):
        if deviation <= tolerance:
            logger.debug(f"edge walk on n={g.node_count} mixed at t={t} (tolerance {tolerance:.2e})")
            return t
        if t >= t_max:
            break
    raise MixingTimeoutError(t_max, deviation, tolerance)
