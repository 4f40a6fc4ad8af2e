"""
Bandwidth to CONGEST
Replace every non-source node by a clique sized to its widest edge
"""
from typing import Dict, List, Tuple

import networkx as nx

from .models import BandwidthGraph
from ..graphs.models import Graph
from ..graphs.traversal import diameter, is_connected
from ..utils.errors import DisconnectedGraphError, InternalConsistencyError
from ..utils.log import get_logger

logger = get_logger('hardness')


def bandwidth_to_congest_with_cliques(bg: BandwidthGraph) -> Tuple[Graph, Dict[int, List[int]]]:
    """Unit-bandwidth graph plus the nodes standing for each original node.

    The source keeps a single node (id 0). Node v gets a clique of
    max-adjacent-bandwidth members; an edge of bandwidth b becomes a matching
    between the lowest b members on each side.
    """
    if not is_connected(bg.hop_graph()):
        raise DisconnectedGraphError("bandwidth graph must be connected")

    cliques: Dict[int, List[int]] = {bg.source: [0]}
    next_id = 1
    for v in range(bg.node_count):
        if v == bg.source:
            continue
        size = bg.max_bandwidth(v)
        cliques[v] = list(range(next_id, next_id + size))
        next_id += size

    edges: List[Tuple[int, int]] = []
    for v, members in cliques.items():
        if v != bg.source:
            edges.extend((a, b) for i, a in enumerate(members) for b in members[i + 1:])

    for u, v, b in bg.edges:
        if u == bg.source or v == bg.source:
            other = v if u == bg.source else u
            if b > len(cliques[other]):
                raise InternalConsistencyError(f"bandwidth {b} exceeds clique of node {other}")
            edges.extend((0, member) for member in cliques[other][:b])
            continue
        if b > len(cliques[u]) or b > len(cliques[v]):
            raise InternalConsistencyError(f"bandwidth {b} exceeds a clique on edge ({u}, {v})")
        edges.extend(zip(cliques[u][:b], cliques[v][:b]))

    g = Graph.from_edges(next_id, edges)
    logger.debug(f"bandwidth graph with {bg.node_count} nodes became {g.node_count} unit nodes")
    return g, cliques


def bandwidth_to_congest(bg: BandwidthGraph) -> Graph:
    return bandwidth_to_congest_with_cliques(bg)[0]


def global_min_cut(graph: nx.Graph) -> int:
    """Global minimum cut as the smallest max-flow from node 0 to any other node"""
    nodes = list(graph.nodes)
    if len(nodes) < 2:
        return 0
    root = nodes[0]
    return int(min(nx.maximum_flow_value(graph, root, t, capacity='capacity') for t in nodes[1:]))


def _unit_networkx(g: Graph) -> nx.Graph:
    graph = nx.Graph()
    graph.add_nodes_from(range(g.node_count))
    graph.add_edges_from((u, v, {'capacity': c}) for u, v, c in g.edges())
    return graph


def verify_mincut_sandwich(bg: BandwidthGraph, g_prime: Graph = None) -> bool:
    """min(minCut(G), smallest clique - 1) <= minCut(G') <= minCut(G)"""
    g_prime, cliques = (bandwidth_to_congest_with_cliques(bg) if g_prime is None
                        else (g_prime, bandwidth_to_congest_with_cliques(bg)[1]))
    cut_g = global_min_cut(bg.to_networkx())
    cut_prime = global_min_cut(_unit_networkx(g_prime))
    smallest_clique = min((len(m) for v, m in cliques.items() if v != bg.source), default=1)
    lower = min(cut_g, smallest_clique - 1)
    holds = lower <= cut_prime <= cut_g
    if not holds:
        logger.warning(f"min-cut sandwich broken: {lower} <= {cut_prime} <= {cut_g} fails")
    return holds


def verify_diameter_sandwich(bg: BandwidthGraph, g_prime: Graph = None) -> bool:
    """D(G) <= D(G') <= 2 D(G) + 1"""
    g_prime = g_prime if g_prime is not None else bandwidth_to_congest(bg)
    d, d_prime = diameter(bg.hop_graph()), diameter(g_prime)
    return d <= d_prime <= 2 * d + 1
