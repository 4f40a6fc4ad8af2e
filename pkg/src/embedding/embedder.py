"""
Walk Embedder
Lazy walks from every active sub-node establish virtual edges; failures retry until the cap
"""
import math
from typing import NamedTuple, Optional, Tuple

import numpy as np
from scipy import stats

from .models import Embedding, RoundLedger, SubNodeSpace
from .subnodes import build_subnode_space
from ..graphs.models import Graph
from ..services.config_service import config_service
from ..utils.errors import EmbeddingError, InternalConsistencyError, InvalidParameterError
from ..utils.log import get_logger
from ..utils.rng import make_rng

logger = get_logger('embed')


class WalkBatch(NamedTuple):
    states: np.ndarray   # (walks, tau + 1) sub-node after each step
    moved: np.ndarray    # (walks, tau) whether step t left the current state


class UniformityResult(NamedTuple):
    samples: int
    statistic: float
    threshold: float
    uniform: bool


def retry_cap(n: int) -> int:
    return max(1, math.ceil(config_service.get_float('retry_cap_factor') * math.log2(max(n, 2))))


def lazy_walks(space: SubNodeSpace, starts: np.ndarray, tau: int,
               rng: np.random.Generator) -> WalkBatch:
    """Run lazy edge walks: stay w.p. 1/2, else jump to a uniform out-edge of the head"""
    degrees = np.bincount(space.tails, minlength=space.host_count)
    base = np.concatenate([[0], np.cumsum(degrees)])
    states = np.empty((len(starts), tau + 1), dtype=np.int64)
    moved = np.empty((len(starts), tau), dtype=bool)
    current = np.asarray(starts, dtype=np.int64).copy()
    states[:, 0] = current
    for t in range(tau):
        move = rng.random(len(current)) < 0.5
        heads = space.heads[current]
        jump = base[heads] + rng.integers(0, degrees[heads])
        current = np.where(move, jump, current)
        moved[:, t] = move
        states[:, t + 1] = current
    return WalkBatch(states, moved)


def step_costs(batches) -> np.ndarray:
    """Host rounds of each synchronous step: the busiest directed edge's load, at least 1.

    ``batches`` is a list of (crossed sub-node per walk and step, move mask)
    pairs that advance in lockstep; a moving walk crosses the directed edge
    equal to its current state.
    """
    tau = batches[0][1].shape[1]
    costs = np.ones(tau, dtype=np.int64)
    for t in range(tau):
        crossed = np.concatenate([edges[:, t][moves[:, t]] for edges, moves in batches])
        if crossed.size:
            costs[t] = max(1, int(np.bincount(crossed).max()))
    return costs


def twin_states(space: SubNodeSpace) -> np.ndarray:
    """For every sub-node u->v, a sub-node v->u (copies of a parallel edge pair up in order)"""
    n = space.host_count
    forward = space.tails * n + space.heads
    backward = space.heads * n + space.tails
    order_f = np.argsort(forward, kind='stable')
    order_b = np.argsort(backward, kind='stable')
    twin = np.empty(len(forward), dtype=np.int64)
    twin[order_b] = order_f
    return twin


def _notification_rounds(space: SubNodeSpace, batch: WalkBatch, twin: np.ndarray) -> int:
    """Replay every walk backwards from its endpoint and charge the reversed schedule"""
    reverse_edges = twin[batch.states[:, -2::-1]] if batch.moved.shape[1] else batch.states[:, :0]
    reverse_moves = batch.moved[:, ::-1]
    forward_hops = [space_hops(space, s, m) for s, m in zip(batch.states[:, :-1], batch.moved)]
    for walk, hops in enumerate(forward_hops):
        replay = space_hops(space, reverse_edges[walk], reverse_moves[walk])
        if [(v, u) for u, v in reversed(replay)] != hops:
            raise InternalConsistencyError(f"notification of walk {walk} does not retrace its path")
    return int(step_costs([(reverse_edges, reverse_moves)]).sum())


def space_hops(space: SubNodeSpace, crossed: np.ndarray, moves: np.ndarray):
    return [(int(space.tails[s]), int(space.heads[s])) for s in crossed[moves]]


def embed_er_graph(h: Graph, tau: int, seed: int,
                   space: Optional[SubNodeSpace] = None) -> Tuple[Embedding, RoundLedger]:
    """Establish one virtual edge per active sub-node by a lazy walk of length tau.

    A walk ending on an active sub-node succeeds and links the two groups;
    one ending on an inactive sub-node is retried with a fresh walk. Every
    attempt costs its forward schedule plus the reversed notification.
    """
    if tau < 1:
        raise InvalidParameterError(f"tau must be at least 1, got {tau}")
    space = space or build_subnode_space(h)
    rng = make_rng(seed)
    twin = twin_states(space)
    cap = retry_cap(h.node_count)

    active = space.active
    pending = np.flatnonzero(active)
    retries = np.zeros(space.subnode_count, dtype=np.int64)
    final_states = np.empty((space.subnode_count, tau + 1), dtype=np.int64)
    final_moved = np.empty((space.subnode_count, tau), dtype=bool)
    embed_rounds = 0
    attempt = 0
    while pending.size:
        if attempt > cap:
            raise EmbeddingError(f"{pending.size} sub-nodes exhausted {cap} retries", pending.tolist())
        batch = lazy_walks(space, pending, tau, rng)
        embed_rounds += int(step_costs([(batch.states[:, :-1], batch.moved)]).sum())
        embed_rounds += _notification_rounds(space, batch, twin)
        success = active[batch.states[:, -1]]
        done = pending[success]
        final_states[done] = batch.states[success]
        final_moved[done] = batch.moved[success]
        retries[pending[~success]] += 1
        if attempt and pending.size:
            logger.debug(f"retry {attempt}: {pending.size} walks relaunched")
        pending = pending[~success]
        attempt += 1

    sources = np.flatnonzero(active)
    targets = final_states[sources, -1]
    pairs = np.stack([space.group_of[sources], space.group_of[targets]], axis=1)
    virtual_pairs = {}
    for walk, (a, b) in enumerate(pairs.tolist()):
        virtual_pairs.setdefault((a, b), walk)
    embedding = Embedding(
        space=space,
        virtual_graph=Graph.from_edges(space.group_count, pairs),
        walk_source=sources, walk_target=targets,
        walk_states=final_states[sources], walk_moved=final_moved[sources],
        tau_used=tau, retries_used=retries, attempts=attempt, virtual_pairs=virtual_pairs,
    )
    ledger = RoundLedger(embed_rounds=embed_rounds,
                         simulate_rounds_per_virtual_round=virtual_round_cost(embedding))
    logger.info(f"embedded {space.group_count} virtual nodes on n={h.node_count} "
                f"(tau={tau}, max retries {int(retries.max()) if len(retries) else 0}, "
                f"{embed_rounds} rounds)")
    return embedding, ledger


def virtual_round_cost(e: Embedding) -> int:
    """Host rounds for one virtual round: every walk path carries a message each way.

    The forward message follows the walk's hops, the backward message the
    reversed hops over the twin edges; both advance one step per host step.
    """
    if e.walk_states.shape[0] == 0:
        return 0
    twin = twin_states(e.space)
    forward = (e.walk_states[:, :-1], e.walk_moved)
    backward = (twin[e.walk_states[:, -2::-1]], e.walk_moved[:, ::-1])
    return int(step_costs([forward, backward]).sum())


def endpoint_uniformity(h: Graph, tau: int, samples: int, seed: int,
                        quantile: float = 0.999) -> UniformityResult:
    """Chi-square test that walk endpoints are uniform over active sub-nodes"""
    space = build_subnode_space(h)
    rng = make_rng(seed)
    active = np.flatnonzero(space.active)
    starts = active[np.arange(samples) % len(active)]
    ends = lazy_walks(space, starts, tau, rng).states[:, -1]
    counts = np.bincount(ends, minlength=space.subnode_count)[active]
    statistic = float(stats.chisquare(counts).statistic)
    threshold = float(stats.chi2.ppf(quantile, len(active) - 1))
    return UniformityResult(samples, statistic, threshold, statistic <= threshold)
