"""
Expander Broadcast Pipeline
Estimate, discover, embed, then run the random-graph broadcast on the virtual graph
"""
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .embedder import embed_er_graph
from .models import Embedding, RoundLedger
from ..broadcast.models import BroadcastTrace, MessageSet
from ..broadcast.pipeline import broadcast_over_packing
from ..cobra.engine import run_multi_cobra
from ..cobra.models import CobraConfig, MultiCobraAssignment
from ..graphs.generator import regularize
from ..graphs.models import Graph
from ..graphs.traversal import diameter, eccentricity, is_connected
from ..packing.tree_packing import TreePacking, build_tree_packing
from ..services.config_service import config_service
from ..spectral.mixing import mixing_time_empirical
from ..spectral.report import spectral_report
from ..utils.errors import (
    CoverageError, DisconnectedGraphError, EmbeddingError, InternalConsistencyError,
    InvalidParameterError,
)
from ..utils.log import get_logger
from ..utils.rng import MAX_SEED

logger = get_logger('embed')


@dataclass
class ExpanderBroadcastResult:
    trace: BroadcastTrace
    ledger: RoundLedger
    embedding: Embedding
    assignment: MultiCobraAssignment
    packing: TreePacking
    virtual_trace: BroadcastTrace
    virtual_source: int
    tau: int
    cobra_seed: int


def resolve_tau(h: Graph, tau: Optional[int] = None, mode: Optional[str] = None) -> Tuple[int, float]:
    """Walk length and the mixing upper bound behind the estimator charge"""
    report = spectral_report(h)
    upper = report.mixing_upper
    if tau is not None:
        return int(tau), upper
    mode = mode or config_service.get_str('tau_mode')
    if mode == 'bound':
        return max(1, math.ceil(upper)), upper
    if mode == 'empirical':
        return max(1, mixing_time_empirical(h)), upper
    raise InvalidParameterError(f"tau mode must be 'bound' or 'empirical', got '{mode}'")


def run_expander_broadcast(h: Graph, k: int, seed: int, source: int = 0,
                           tau: Optional[int] = None, tau_mode: Optional[str] = None,
                           max_retries: Optional[int] = None) -> ExpanderBroadcastResult:
    """Broadcast k messages from a host source through an embedded random graph"""
    if not is_connected(h):
        raise DisconnectedGraphError("host graph must be connected")
    n = h.node_count
    log_n = math.ceil(math.log2(max(n, 2)))

    tau, upper = resolve_tau(h, tau, tau_mode)
    ledger = RoundLedger(
        estimate_rounds=math.ceil(config_service.get_float('c_est') * math.ceil(upper) * log_n ** 2),
        discovery_rounds=diameter(h),
    )
    embedding, embed_ledger = embed_er_graph(h, tau, seed)
    ledger.embed_rounds = embed_ledger.embed_rounds
    ledger.simulate_rounds_per_virtual_round = embed_ledger.simulate_rounds_per_virtual_round

    virtual = embedding.virtual_graph
    if not is_connected(virtual):
        raise EmbeddingError("embedded virtual graph is disconnected")
    space = embedding.space
    virtual_source = int(min(space.groups_of_host(source)))
    regular = regularize(virtual)
    config = CobraConfig(num_walks=space.group_size)

    max_retries = config_service.get_int('max_retries') if max_retries is None else max_retries
    cobra_seed = seed
    for attempt in range(max_retries + 1):
        assignment = run_multi_cobra(regular, virtual_source, config, cobra_seed)
        if not assignment.uncovered_walks():
            break
        if attempt == max_retries:
            raise CoverageError(assignment.uncovered_walks())
        next_seed = (cobra_seed + config_service.get_int('seed_increment')) % (MAX_SEED + 1)
        logger.info(f"virtual COBRA left walks uncovered, rerunning with seed {next_seed}")
        cobra_seed = next_seed

    packing = build_tree_packing(regular, assignment, virtual_source)
    virtual_trace = broadcast_over_packing(regular, packing, MessageSet(k))
    # BFS + gathering δ on the virtual graph, then COBRA phases, tree building and broadcast.
    setup_rounds = 2 * eccentricity(virtual, virtual_source)
    before_broadcast = setup_rounds + 2 * assignment.phases_run + packing.build_rounds
    ledger.virtual_rounds = before_broadcast + virtual_trace.total_rounds

    hosts = space.host_of_group
    if len(np.unique(hosts)) != n:
        if not config_service.get_bool('flood_fallback'):
            raise InternalConsistencyError("some host simulates no virtual node")
        ledger.flood_rounds = k

    offset = ledger.estimate_rounds + ledger.discovery_rounds + ledger.embed_rounds
    per_round = ledger.simulate_rounds_per_virtual_round
    virtual_receipt = virtual_trace.receipt_round
    host_receipt = np.full((n, k), np.iinfo(np.int64).max, dtype=np.int64)
    np.minimum.at(host_receipt, hosts,
                  np.where(virtual_receipt >= 0,
                           offset + (before_broadcast + virtual_receipt) * per_round, np.iinfo(np.int64).max))
    missing = host_receipt == np.iinfo(np.int64).max
    if missing.any():
        host_receipt[missing] = ledger.total if ledger.flood_rounds else -1
    host_receipt[source, :] = 0

    trace = BroadcastTrace(n, k, ledger.total, host_receipt, None, per_round)
    if not trace.saturated():
        raise InternalConsistencyError(f"hosts {trace.unsaturated_nodes()[:10]} never received all messages")
    return ExpanderBroadcastResult(trace, ledger, embedding, assignment, packing, virtual_trace,
                                   virtual_source, tau, cobra_seed)


def end_to_end_expander_broadcast(h: Graph, k: int, seed: int,
                                  source: int = 0) -> Tuple[BroadcastTrace, RoundLedger]:
    result = run_expander_broadcast(h, k, seed, source)
    return result.trace, result.ledger
