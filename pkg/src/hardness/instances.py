"""
Hardness Instances
Square-root lower-bound instance, set-splitting reduction and random small inputs
"""
import math
from typing import Dict, List, Optional, Tuple

import networkx as nx

from .bandwidth import global_min_cut
from .models import BandwidthGraph, ReductionGraph, ReductionInstance
from ..graphs.traversal import diameter, is_connected
from ..services.config_service import config_service
from ..utils.errors import HardnessError, InternalConsistencyError, InvalidParameterError
from ..utils.log import get_logger
from ..utils.rng import make_rng

logger = get_logger('hardness')


def _pair_cut(bg: BandwidthGraph, skip: Tuple[Tuple[int, int], ...] = ()) -> int:
    graph = bg.to_networkx()
    graph.remove_edges_from(skip)
    return int(nx.maximum_flow_value(graph, bg.source, 1, capacity='capacity'))


def build_sqrtk_instance(k: int, with_unit_paths: bool = True) -> BandwidthGraph:
    """Diameter-3 graph where v1 has cut k from the source yet needs about sqrt(k) rounds.

    Ids: s=0, v1=1, then the unit-path middles u_1..u_r (when present), then the
    chain v_{r+1}..v_{2r}. The chain s -> v_{r+1} -> ... -> v_{2r} -> v1 carries
    bandwidth k; every chain node past v_{r+1} also has a unit shortcut from s.
    """
    r = math.isqrt(k) if k >= 0 else -1
    if k < 4 or r * r != k:
        raise InvalidParameterError(f"k must be a perfect square >= 4, got {k}")

    edges = []
    labels = ['s', 'v1']
    next_id = 2
    if with_unit_paths:
        for i in range(1, r + 1):
            edges += [(0, next_id, 1), (next_id, 1, 1)]
            labels.append(f'u{i}')
            next_id += 1
    chain = list(range(next_id, next_id + r))
    labels += [f'v{r + 1 + i}' for i in range(r)]

    edges.append((0, chain[0], k))
    edges += [(a, b, k) for a, b in zip(chain, chain[1:])]
    edges.append((chain[-1], 1, k))
    edges += [(0, v, 1) for v in chain[1:]]
    bg = BandwidthGraph(next_id + r, edges, source=0, labels=labels)

    if diameter(bg.hop_graph()) > 3:
        raise InternalConsistencyError("square-root instance has diameter above 3")
    if _pair_cut(bg) < k:
        raise InternalConsistencyError("square-root instance has source/v1 cut below k")
    first_two = ((0, chain[0]), (chain[0], chain[1]))
    residual = _pair_cut(bg, first_two)
    if residual > 2 * r:
        raise InternalConsistencyError(f"residual cut {residual} exceeds {2 * r}")
    logger.debug(f"square-root instance for k={k}: {bg.node_count} nodes, residual cut {residual}")
    return bg


def build_setsplit_reduction(ri: ReductionInstance) -> ReductionGraph:
    """Layered bandwidth graph whose round-4 saturation encodes the splitting question.

    Layers: s at 0; element nodes and part relays at 1; family nodes and the
    two part nodes at 2; union nodes at 3; targets at 4. Each target also gets
    a path of three relays from s when its bandwidth n - n_j - 1 is positive.
    """
    n = ri.ground_set_size
    if ri.n1 < 1 or ri.n2 < 1:
        raise HardnessError(f"both parts need at least one element, got {ri.n1} and {ri.n2}")
    sizes = (ri.n1, ri.n2)
    layers: List[int] = [0]
    labels: List[str] = ['s']
    edges: List[Tuple[int, int, int]] = []

    def add(layer: int, label: str) -> int:
        layers.append(layer)
        labels.append(label)
        return len(layers) - 1

    element_nodes = [add(1, f'v{i}') for i in range(n)]
    edges += [(0, v, 1) for v in element_nodes]
    family_nodes = [add(2, f'F{j}') for j in range(ri.family_size)]
    for j, subset in enumerate(ri.family):
        edges += [(element_nodes[i], family_nodes[j], 1) for i in sorted(subset)]

    part_relays = tuple(add(1, f'r_S{j + 1}') for j in range(2))
    part_nodes = tuple(add(2, f'S{j + 1}') for j in range(2))
    for j in range(2):
        edges += [(0, part_relays[j], sizes[j]), (part_relays[j], part_nodes[j], sizes[j])]

    union_nodes: Dict[Tuple[int, int], int] = {}
    target_nodes: Dict[Tuple[int, int], int] = {}
    target_relays: Dict[Tuple[int, int], List[int]] = {}
    for i, subset in enumerate(ri.family):
        for j in range(2):
            u = union_nodes[(i, j)] = add(3, f'u{i},{j + 1}')
            t = target_nodes[(i, j)] = add(4, f't{i},{j + 1}')
            edges += [(family_nodes[i], u, len(subset)), (part_nodes[j], u, sizes[j]), (u, t, n)]
            width = n - sizes[j] - 1
            if width > 0:
                relays = [add(layer, f'r{i},{j + 1}.{layer}') for layer in (1, 2, 3)]
                path = [0] + relays + [t]
                edges += [(a, b, width) for a, b in zip(path, path[1:])]
                target_relays[(i, j)] = relays

    rg = ReductionGraph(
        len(layers), edges, 0, layers, labels,
        instance=ri, element_nodes=element_nodes, family_nodes=family_nodes,
        part_nodes=part_nodes, part_relays=part_relays, union_nodes=union_nodes,
        target_nodes=target_nodes, target_relays=target_relays,
    )
    if not rg.is_layered():
        raise InternalConsistencyError("reduction graph is not layered")
    return rg


def random_bandwidth_graph(n: int, p: float, max_bandwidth: int, seed: int,
                           attempts: Optional[int] = None) -> BandwidthGraph:
    """Connected random graph with bandwidths drawn uniformly from 1..max_bandwidth"""
    if n < 2 or max_bandwidth < 1:
        raise InvalidParameterError("need n >= 2 and max_bandwidth >= 1")
    rng = make_rng(seed)
    attempts = attempts or config_service.get_int('connect_attempts')
    for _ in range(attempts):
        edges = [(u, v, int(rng.integers(1, max_bandwidth + 1)))
                 for u in range(n) for v in range(u + 1, n) if rng.random() < p]
        bg = BandwidthGraph(n, edges, source=0)
        if is_connected(bg.hop_graph()):
            return bg
    raise InvalidParameterError(f"no connected graph with n={n}, p={p} after {attempts} attempts")


def random_reduction_instance(ground_set_size: int, family_size: int, seed: int) -> ReductionInstance:
    """Random family of nonempty subsets with random part sizes in 1..n-1"""
    if ground_set_size < 2:
        raise InvalidParameterError("ground set needs at least two elements")
    rng = make_rng(seed)
    family = []
    for _ in range(family_size):
        size = int(rng.integers(1, ground_set_size + 1))
        family.append(frozenset(rng.choice(ground_set_size, size=size, replace=False).tolist()))
    n1 = int(rng.integers(1, ground_set_size))
    return ReductionInstance(ground_set_size, family, n1, ground_set_size - n1)


def mincut(bg: BandwidthGraph) -> int:
    return global_min_cut(bg.to_networkx())
