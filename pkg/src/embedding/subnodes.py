"""
Sub-Node Space
Every directed host edge is a sub-node; each host groups its own sub-nodes δ(H) at a time
"""
import numpy as np

from .models import SubNodeSpace
from ..graphs.models import Graph
from ..graphs.traversal import is_connected
from ..spectral.mixing import edge_states
from ..utils.errors import DisconnectedGraphError, EmbeddingError, InternalConsistencyError


def build_subnode_space(h: Graph) -> SubNodeSpace:
    """Greedy grouping in slot order: floor(deg(v)/δ) full groups per host, leftovers inactive"""
    if not is_connected(h):
        raise DisconnectedGraphError("embedding needs a connected host")
    delta = h.min_degree
    if delta < 1:
        raise EmbeddingError("host has a node without edges")

    tails, heads = edge_states(h)
    degrees = h.degrees()
    full_groups = degrees // delta
    group_base = np.concatenate([[0], np.cumsum(full_groups)])
    state_base = np.concatenate([[0], np.cumsum(degrees)])
    local = np.arange(len(tails)) - state_base[tails]
    group_of = np.where(local < full_groups[tails] * delta,
                        group_base[tails] + local // delta, -1).astype(np.int64)
    host_of_group = np.repeat(np.arange(h.node_count), full_groups)

    if (full_groups < 1).any():
        raise InternalConsistencyError("a host simulates no group although deg >= δ")
    if 2 * int((group_of < 0).sum()) > len(tails):
        raise InternalConsistencyError("more than half of the sub-nodes are inactive")
    return SubNodeSpace(h.node_count, delta, tails, heads, group_of, host_of_group)
