# Virtual random-graph embedding on arbitrary hosts
from .models import SubNodeSpace, WalkTrace, RoundLedger, Embedding
from .subnodes import build_subnode_space
from .embedder import (
    WalkBatch, UniformityResult, retry_cap, lazy_walks, step_costs, twin_states,
    embed_er_graph, virtual_round_cost, endpoint_uniformity,
)
from .pipeline import (
    ExpanderBroadcastResult, resolve_tau, run_expander_broadcast,
    end_to_end_expander_broadcast,
)

__all__ = [
    'SubNodeSpace', 'WalkTrace', 'RoundLedger', 'Embedding', 'build_subnode_space',
    'WalkBatch', 'UniformityResult', 'retry_cap', 'lazy_walks', 'step_costs', 'twin_states',
    'embed_er_graph', 'virtual_round_cost', 'endpoint_uniformity',
    'ExpanderBroadcastResult', 'resolve_tau', 'run_expander_broadcast',
    'end_to_end_expander_broadcast',
]
