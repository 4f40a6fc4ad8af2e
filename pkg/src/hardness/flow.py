"""
Time-Expanded Flow Oracle
Exact single-sink saturation rounds under store-and-forward relaying
"""
from typing import Dict, Iterable, List, Optional, Tuple

import networkx as nx
import numpy as np

from .bandwidth import bandwidth_to_congest_with_cliques
from .models import BandwidthGraph, SaturationResult
from ..graphs.models import Graph
from ..graphs.traversal import bfs
from ..services.config_service import config_service
from ..utils.errors import InvalidParameterError
from ..utils.log import get_logger

logger = get_logger('hardness')

_SOURCE = 'source'


def _time_expanded_network(bg: BandwidthGraph, k: int, rounds: int) -> nx.DiGraph:
    net = nx.DiGraph()
    net.add_edge(_SOURCE, (bg.source, 0), capacity=k)
    for r in range(rounds):
        for v in range(bg.node_count):
            net.add_edge((v, r), (v, r + 1))  # hold arc, no capacity attribute means unbounded
        for u, v, b in bg.edges:
            net.add_edge((u, r), (v, r + 1), capacity=b)
            net.add_edge((v, r), (u, r + 1), capacity=b)
    return net


def _certificate(bg: BandwidthGraph, flow: Dict, rounds: int) -> List[Dict[Tuple[int, int], int]]:
    certificate = []
    for r in range(rounds):
        moved = {}
        for u, v, _ in bg.edges:
            for a, b in ((u, v), (v, u)):
                amount = int(flow.get((a, r), {}).get((b, r + 1), 0))
                if amount:
                    moved[(a, b)] = amount
        certificate.append(moved)
    return certificate


def time_expanded_saturation(bg: BandwidthGraph, sink: int, k: int,
                             round_cap: Optional[int] = None) -> SaturationResult:
    """Smallest t such that k messages can reach the sink within t rounds"""
    if not 0 <= sink < bg.node_count:
        raise InvalidParameterError(f"sink {sink} outside 0..{bg.node_count - 1}")
    if k < 0:
        raise InvalidParameterError(f"k must be non-negative, got {k}")
    cap = config_service.get_int('saturation_round_cap') if round_cap is None else round_cap
    if sink == bg.source or k == 0:
        return SaturationResult(sink, k, 0, [], cap)

    hops = bfs(bg.hop_graph(), bg.source).depth[sink]
    if hops is None:
        return SaturationResult(sink, k, None, [], cap)

    for t in range(max(1, int(hops)), cap + 1):
        net = _time_expanded_network(bg, k, t)
        value, flow = nx.maximum_flow(net, _SOURCE, (sink, t))
        if value >= k:
            return SaturationResult(sink, k, t, _certificate(bg, flow, t), cap)
    logger.info(f"sink {sink} not saturated with {k} messages within {cap} rounds")
    return SaturationResult(sink, k, None, [], cap)


def verify_flow_certificate(bg: BandwidthGraph, result: SaturationResult) -> bool:
    """Recheck bandwidth and causality of a flow witness without the solver"""
    if result.min_rounds is None:
        return False
    if result.min_rounds == 0:
        return True
    if len(result.flow_certificate) != result.min_rounds:
        return False

    held = np.zeros(bg.node_count, dtype=np.int64)
    for moved in result.flow_certificate:
        outflow = np.zeros(bg.node_count, dtype=np.int64)
        inflow = np.zeros(bg.node_count, dtype=np.int64)
        for (u, v), amount in moved.items():
            if amount < 0 or amount > bg.bandwidth(u, v):
                logger.warning(f"flow {amount} on ({u}, {v}) exceeds bandwidth {bg.bandwidth(u, v)}")
                return False
            outflow[u] += amount
            inflow[v] += amount
        relays = np.arange(bg.node_count) != bg.source
        if (outflow[relays] > held[relays]).any():
            return False
        held += inflow - outflow
    return bool(held[result.sink] >= result.k)


def per_sink_round_bounds(g: Graph, source: int, sinks: Iterable[int], k: int,
                          round_cap: Optional[int] = None) -> Dict[int, Optional[int]]:
    """Flow-exact saturation rounds of each sink taken alone on a unit-bandwidth graph"""
    unit = BandwidthGraph.from_graph(g, source)
    return {int(t): time_expanded_saturation(unit, int(t), k, round_cap).min_rounds for t in sinks}


def opt_sandwich_check(bg: BandwidthGraph, k: int,
                       round_cap: Optional[int] = None) -> Tuple[bool, Dict[int, Tuple[Optional[int], Optional[int]]]]:
    """Per sink, rounds in G never exceed the best clique member's rounds in G'"""
    g_prime, cliques = bandwidth_to_congest_with_cliques(bg)
    unit = BandwidthGraph.from_graph(g_prime, 0)
    details = {}
    holds = True
    for v in range(bg.node_count):
        if v == bg.source:
            continue
        rounds_g = time_expanded_saturation(bg, v, k, round_cap).min_rounds
        member_rounds = [time_expanded_saturation(unit, m, k, round_cap).min_rounds for m in cliques[v]]
        finite = [r for r in member_rounds if r is not None]
        rounds_prime = min(finite) if finite else None
        details[v] = (rounds_g, rounds_prime)
        if rounds_prime is not None and (rounds_g is None or rounds_g > rounds_prime):
            holds = False
    return holds, details
