"""
Multi-COBRA Engine
δ coalescing-branching walks run in 2-round phases with per-node slot permutations
"""
from typing import List, NamedTuple, Tuple

import numpy as np

from .models import CobraConfig, MultiCobraAssignment
from ..graphs.models import Graph
from ..utils.errors import CobraError, InternalConsistencyError, InvalidParameterError
from ..utils.log import get_logger
from ..utils.rng import make_rng

logger = get_logger('cobra')


class SlotTable(NamedTuple):
    targets: np.ndarray     # (n, Δ) node reached through each slot
    pair_index: np.ndarray  # (n, Δ) index into edge_pairs, -1 for self-loop slots
    edge_pairs: np.ndarray  # (m, 2) distinct undirected pairs, u < v


class SlotSends(NamedTuple):
    slots: np.ndarray     # slot of each held token, smallest walk id first
    targets: np.ndarray   # node each token reaches
    crossing: np.ndarray  # edge_pairs index crossed, -1 for a self-loop slot


def build_slot_table(g: Graph) -> SlotTable:
    """Per-node slot layout of a regular graph: real edge copies first, then self-loops"""
    slots = g.slot_counts()
    if slots.min() != slots.max():
        raise CobraError("multi-COBRA needs a regularized graph (equal slot counts)")
    n, width = g.node_count, int(slots[0])
    targets = np.stack([g.slot_targets(v) for v in range(n)]) if width else np.zeros((n, 0), dtype=np.int64)

    pairs = g.edge_array()
    keys = pairs[:, 0] * n + pairs[:, 1]
    low = np.minimum(np.arange(n)[:, None], targets)
    high = np.maximum(np.arange(n)[:, None], targets)
    pair_index = np.searchsorted(keys, low * n + high)
    pair_index[targets == np.arange(n)[:, None]] = -1
    return SlotTable(targets, pair_index, pairs)


def dispatch_slots(rng: np.random.Generator, width: int, token_count: int) -> Tuple[np.ndarray, np.ndarray]:
    """Slots for the two copies of each held token.

    Two independent uniform permutations of the node's slots; the i-th smallest
    held walk id goes to slot sigma1[i] in the first round and sigma2[i] in the second.
    """
    sigma1 = rng.permutation(width)
    sigma2 = rng.permutation(width)
    return sigma1[:token_count], sigma2[:token_count]


def dispatch_holder(table: SlotTable, rng: np.random.Generator, v: int, token_count: int) -> List[SlotSends]:
    """Both rounds of one node's dispatch of token_count held tokens"""
    return [SlotSends(slots, table.targets[v, slots], table.pair_index[v, slots])
            for slots in dispatch_slots(rng, table.targets.shape[1], token_count)]


def run_multi_cobra(g: Graph, source: int, cfg: CobraConfig, seed: int,
                    record_holders: bool = False) -> MultiCobraAssignment:
    """Run cfg.num_walks COBRA walks from source on a regularized graph.

    Tokens received in phase r are dispatched in phase r+1; the source's tokens
    count as received in phase 0. Copies of one walk arriving at the same node
    in one phase coalesce. Only sends over real edges mark an edge for a walk.
    """
    n = g.node_count
    if not 0 <= source < n:
        raise InvalidParameterError(f"source {source} outside 0..{n - 1}")
    table = build_slot_table(g)
    width = table.targets.shape[1]
    walks = cfg.num_walks
    if walks > width:
        raise CobraError(f"{walks} walks exceed the slot count {width}")
    phases = cfg.resolve_phases(n)
    rng = make_rng(seed)
    multiplicity = g.edge_multiplicities()

    holders = np.zeros((walks, n), dtype=bool)
    holders[:, source] = True
    first_held = np.full((walks, n), -1, dtype=np.int64)
    first_held[:, source] = 0
    walk_mask = np.zeros((len(table.edge_pairs), walks), dtype=bool)
    history = [holders.copy()] if record_holders else None

    for phase in range(1, phases + 1):
        received = np.zeros_like(holders)
        phase_marks = np.zeros(len(table.edge_pairs), dtype=np.int64)
        for v in np.flatnonzero(holders.any(axis=0)):
            tokens = np.flatnonzero(holders[:, v])
            for sends in dispatch_holder(table, rng, v, len(tokens)):
                if np.bincount(sends.slots, minlength=width).max() > 1:
                    raise InternalConsistencyError(f"slot carried two tokens at node {v} in phase {phase}")
                received[tokens, sends.targets] = True
                real = sends.crossing >= 0
                walk_mask[sends.crossing[real], tokens[real]] = True
                np.add.at(phase_marks, sends.crossing[real], 1)

        if (phase_marks > 4 * multiplicity).any():
            raise InternalConsistencyError(f"an edge gained more than 4 memberships per copy in phase {phase}")
        first_held[received & (first_held < 0)] = phase
        holders = received
        if history is not None:
            history.append(holders.copy())

    assignment = MultiCobraAssignment(
        node_count=n, source=source, num_walks=walks, phases_run=phases,
        edge_pairs=table.edge_pairs, walk_mask=walk_mask, first_held=first_held,
        token_holders=history,
    )
    uncovered = assignment.uncovered_walks()
    if uncovered:
        logger.info(f"{len(uncovered)}/{walks} walks did not cover n={n} within {phases} phases (seed {seed})")
    else:
        logger.debug(f"all {walks} walks covered n={n} within {phases} phases (seed {seed})")
    return assignment
