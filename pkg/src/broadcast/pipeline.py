"""
Broadcast Pipelines
Pipelined downcast over tree packings under phase-based edge time-sharing
"""
import heapq
import math
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

import numpy as np

from .models import BroadcastTrace, MessageSet
from ..graphs.models import BfsTree, Graph
from ..graphs.traversal import bfs, eccentricity
from ..packing.tree_packing import TreePacking, verify_packing
from ..utils.errors import BroadcastError, DisconnectedGraphError, InvalidParameterError
from ..utils.log import get_logger

logger = get_logger('broadcast')


def downcast_single_tree(tree: BfsTree, k_prime: int) -> int:
    """Simulate a pipelined downcast of k' messages and return the completion round.

    The root emits message i in round i; every other node forwards to its
    children the message it received in the previous round. Completion is
    max depth + k' - 1; a tree without edges needs no rounds.
    """
    if k_prime < 0:
        raise InvalidParameterError(f"k' must be nonnegative, got {k_prime}")
    kids = tree.children()
    members = tree.reachable()
    if k_prime == 0 or len(members) == 1:
        return 0

    received = np.zeros(tree.node_count, dtype=np.int64)
    received[tree.root] = k_prime
    last: List[Optional[int]] = [None] * tree.node_count
    pending = len(members) - 1
    rnd = 0
    while pending:
        rnd += 1
        deliveries: List[Tuple[int, int]] = []
        if rnd <= k_prime:
            deliveries.extend((c, rnd - 1) for c in kids[tree.root])
        for v in members:
            if v != tree.root and last[v] is not None:
                deliveries.extend((c, last[v]) for c in kids[v])
        last = [None] * tree.node_count
        for child, message in deliveries:
            last[child] = message
            received[child] += 1
            if received[child] == k_prime:
                pending -= 1
    return rnd


def assign_messages(k: int, tree_count: int) -> List[np.ndarray]:
    """Round-robin: message m rides tree m mod S"""
    return [np.arange(t, k, tree_count) for t in range(tree_count)]


def _tree_arrays(tree: BfsTree) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    children = np.array([v for v, p in enumerate(tree.parent) if p is not None], dtype=np.int64)
    parents = np.array([tree.parent[v] for v in children], dtype=np.int64)
    depths = np.array([tree.depth[v] for v in children], dtype=np.int64)
    return children, parents, depths


def edge_offsets(tp: TreePacking) -> List[np.ndarray]:
    """Per tree, the round offset of each tree edge inside a phase.

    Trees sharing an undirected edge take distinct offsets, ranked by tree id.
    """
    n = tp.node_count
    keys, owners = [], []
    for t, tree in enumerate(tp.trees):
        children, parents, _ = _tree_arrays(tree)
        keys.append(np.minimum(children, parents) * n + np.maximum(children, parents))
        owners.append(np.full(len(children), t))
    all_keys = np.concatenate(keys) if keys else np.zeros(0, dtype=np.int64)
    all_owners = np.concatenate(owners) if owners else np.zeros(0, dtype=np.int64)
    order = np.lexsort((all_owners, all_keys))
    sorted_keys = all_keys[order]
    group_start = np.searchsorted(sorted_keys, sorted_keys, side='left')
    ranks = np.empty(len(order), dtype=np.int64)
    ranks[order] = np.arange(len(order)) - group_start
    if len(ranks) and ranks.max() >= max(tp.packing_weight, 1):
        raise BroadcastError("edge shared by more trees than the packing weight")
    bounds = np.cumsum([0] + [len(k) for k in keys])
    return [ranks[bounds[t]:bounds[t + 1]] for t in range(len(tp.trees))]


def _downcast_rows(tree: BfsTree, offsets: np.ndarray, messages: np.ndarray,
                   phase_length: int, start_phase: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """(children, parents, message ids, rounds) for every downcast delivery of one tree"""
    children, parents, depths = _tree_arrays(tree)
    positions = np.arange(len(messages))
    phases = start_phase + positions[None, :] + depths[:, None] - 1
    rounds = (phases - 1) * phase_length + offsets[:, None] + 1
    return children, parents, np.broadcast_to(messages, rounds.shape), rounds


def _stack_sends(chunks: List[np.ndarray]) -> np.ndarray:
    return np.concatenate(chunks) if chunks else np.zeros((0, 5), dtype=np.int64)


def broadcast_over_packing(g: Graph, tp: TreePacking, msgs: MessageSet,
                           record_sends: bool = False) -> BroadcastTrace:
    """All trees downcast their share of the messages in parallel.

    Each phase lasts W rounds, W being the packing weight. In tree t the j-th
    message reaches depth d in phase j + d, at round offset equal to t's rank
    among the trees sharing that edge.
    """
    report = verify_packing(tp, g)
    if not report.passed:
        failed = ', '.join(r.check.value for r in report.failures())
        raise BroadcastError(f"invalid packing ({failed})")

    n, k = g.node_count, msgs.k
    phase_length = max(tp.packing_weight, 1)
    receipt = np.full((n, k), -1, dtype=np.int64)
    receipt[tp.source, :] = 0
    sends, loads = [], []
    offsets = edge_offsets(tp)
    for t, (tree, messages) in enumerate(zip(tp.trees, assign_messages(k, tp.packing_size))):
        if not len(messages):
            continue
        children, parents, ids, rounds = _downcast_rows(tree, offsets[t], messages, phase_length, 1)
        receipt[children[:, None], ids] = rounds
        loads.append(_load_keys(rounds, parents, children, n))
        if record_sends:
            sends.append(_send_rows(rounds, parents, children, t, ids))

    _assert_bandwidth(loads)
    return BroadcastTrace(n, k, int(receipt.max()), receipt,
                          _stack_sends(sends) if record_sends else None, phase_length)


def _send_rows(rounds: np.ndarray, senders: np.ndarray, receivers: np.ndarray,
               tree: int, ids: np.ndarray) -> np.ndarray:
    shape = rounds.shape
    return np.stack([
        rounds.ravel(),
        np.broadcast_to(senders[:, None], shape).ravel(),
        np.broadcast_to(receivers[:, None], shape).ravel(),
        np.full(rounds.size, tree),
        np.broadcast_to(ids, shape).ravel(),
    ], axis=1).astype(np.int64)


def _load_keys(rounds: np.ndarray, senders: np.ndarray, receivers: np.ndarray, n: int) -> np.ndarray:
    """One key per send naming its round and directed edge"""
    if rounds.ndim == 2:
        senders, receivers = senders[:, None], receivers[:, None]
    return (rounds * n * n + senders * n + receivers).ravel()


def _assert_bandwidth(loads: List[np.ndarray]):
    """At most one message per directed edge per round"""
    keys = np.concatenate(loads) if loads else np.zeros(0, dtype=np.int64)
    if len(keys) and np.unique(keys, return_counts=True)[1].max() > 1:
        raise BroadcastError("a directed edge carried two messages in one round")


def naive_bfs_broadcast(g: Graph, source: int, msgs: MessageSet) -> int:
    """Pipeline all k messages down one BFS tree: ecc(source) + k - 1 rounds"""
    tree = bfs(g, source)
    if not tree.is_spanning():
        raise DisconnectedGraphError("broadcast needs a connected graph", tree.unreachable())
    return downcast_single_tree(tree, msgs.k)


def lower_bound_rounds(g: Graph, source: int, k: int) -> int:
    """max(ecc(source), ceil(k/δ)): no schedule finishes faster"""
    delta = g.min_degree
    if delta == 0:
        raise DisconnectedGraphError("a node without edges can never receive messages")
    return max(eccentricity(g, source), math.ceil(k / delta))


def _normalize_holdings(holdings: Mapping[int, Iterable[int]], n: int) -> Tuple[int, Dict[int, List[int]]]:
    seen: Dict[int, int] = {}
    normalized: Dict[int, List[int]] = {}
    for node, messages in holdings.items():
        if not 0 <= node < n:
            raise InvalidParameterError(f"holder {node} outside 0..{n - 1}")
        normalized[node] = sorted(set(int(m) for m in messages))
        for m in normalized[node]:
            if m in seen:
                raise BroadcastError(f"message {m} held by both {seen[m]} and {node}")
            seen[m] = node
    k = len(seen)
    if k == 0 or set(seen) != set(range(k)):
        raise BroadcastError("holdings must cover message ids 0..k-1 exactly")
    return k, normalized


def multi_source_reduction(g: Graph, tp: TreePacking, holdings: Mapping[int, Iterable[int]],
                           record_sends: bool = True) -> BroadcastTrace:
    """Upcast every message to the root of its tree, then downcast as usual.

    Upcast is pipelined: per phase a node forwards to its parent the smallest
    message id it still has queued for that tree. Downcast starts once every
    tree's upcast is complete.
    """
    report = verify_packing(tp, g)
    if not report.passed:
        raise BroadcastError("invalid packing")
    n = g.node_count
    k, held = _normalize_holdings(holdings, n)
    phase_length = max(tp.packing_weight, 1)
    per_tree = assign_messages(k, tp.packing_size)
    tree_of = np.empty(k, dtype=np.int64)
    for t, messages in enumerate(per_tree):
        tree_of[messages] = t

    receipt = np.full((n, k), -1, dtype=np.int64)
    for node, messages in held.items():
        receipt[node, messages] = 0
    offsets = edge_offsets(tp)
    sends: List[np.ndarray] = []
    upcast_keys: List[int] = []

    upcast_phases = 0
    for t, tree in enumerate(tp.trees):
        children, _, _ = _tree_arrays(tree)
        offset_of = dict(zip(children.tolist(), offsets[t].tolist()))
        queues: Dict[int, List[int]] = {}
        for node, messages in held.items():
            if node != tree.root:
                queue = [m for m in messages if tree_of[m] == t]
                if queue:
                    heapq.heapify(queue)
                    queues[node] = queue
        phase = 0
        while queues:
            phase += 1
            arrivals: List[Tuple[int, int]] = []
            for node in sorted(queues):
                message = heapq.heappop(queues[node])
                parent = tree.parent[node]
                rnd = (phase - 1) * phase_length + offset_of[node] + 1
                upcast_keys.append((rnd * n + node) * n + parent)
                if receipt[parent, message] < 0:
                    receipt[parent, message] = rnd
                if record_sends:
                    sends.append(np.array([[rnd, node, parent, t, message]], dtype=np.int64))
                arrivals.append((parent, message))
            queues = {node: q for node, q in queues.items() if q}
            for parent, message in arrivals:
                if parent != tree.root:
                    heapq.heappush(queues.setdefault(parent, []), message)
        upcast_phases = max(upcast_phases, phase)

    loads = [np.array(upcast_keys, dtype=np.int64)]

    for t, (tree, messages) in enumerate(zip(tp.trees, per_tree)):
        if not len(messages):
            continue
        children, parents, ids, rounds = _downcast_rows(
            tree, offsets[t], messages, phase_length, upcast_phases + 1)
        current = receipt[children[:, None], ids]
        receipt[children[:, None], ids] = np.where(current >= 0, current, rounds)
        loads.append(_load_keys(rounds, parents, children, n))
        if record_sends:
            sends.append(_send_rows(rounds, parents, children, t, ids))

    trace = BroadcastTrace(n, k, int(receipt.max()), receipt,
                           _stack_sends(sends) if record_sends else None,
                           phase_length, upcast_phases * phase_length)
    _assert_bandwidth(loads)
    if not trace.saturated():
        raise BroadcastError(f"nodes {trace.unsaturated_nodes()[:10]} missed messages")
    return trace
