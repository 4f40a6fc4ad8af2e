"""
Graph Generators
Seeded Erdős–Rényi sampling, deterministic graph families and regularization
"""
from itertools import combinations
from typing import Iterable, NamedTuple, Optional, Tuple

import numpy as np

from .models import Graph
from .traversal import is_connected
from ..services.config_service import config_service
from ..utils.errors import DisconnectedGraphError, InvalidParameterError
from ..utils.log import get_logger
from ..utils.rng import make_rng, validate_seed, MAX_SEED

logger = get_logger('graph')


class DegreeStats(NamedTuple):
    min_degree: int
    max_degree: int
    ratio: Optional[float]      # None when min_degree == 0


def gen_erdos_renyi(n: int, p: float, seed: int) -> Graph:
    """G(n, p): every pair joined independently with probability p"""
    if n < 2:
        raise InvalidParameterError(f"G(n, p) needs n >= 2, got {n}")
    if not 0.0 <= p <= 1.0:
        raise InvalidParameterError(f"p must lie in [0, 1], got {p}")
    rng = make_rng(seed)
    rows, cols = np.triu_indices(n, k=1)
    keep = rng.random(rows.shape[0]) < p
    return Graph.from_edges(n, np.stack([rows[keep], cols[keep]], axis=1))


def sample_connected_erdos_renyi(n: int, p: float, seed: int,
                                 attempts: Optional[int] = None) -> Tuple[Graph, int]:
    """Resample G(n, p) with an incremented seed until it is connected.

    Returns the graph and the seed that produced it.
    """
    attempts = attempts or config_service.get_int('connect_attempts')
    increment = config_service.get_int('seed_increment')
    current = validate_seed(seed)
    for attempt in range(attempts):
        g = gen_erdos_renyi(n, p, current)
        if is_connected(g):
            return g, current
        next_seed = (current + increment) % (MAX_SEED + 1)
        logger.info(f"G({n}, {p:.4f}) seed {current} disconnected, resampling with seed {next_seed}")
        current = next_seed
    raise DisconnectedGraphError(f"no connected G({n}, {p:.4f}) within {attempts} attempts from seed {seed}")


def er_probability(n: int, c_p: Optional[float] = None) -> float:
    """p = c_p * ln n / n, capped at 1"""
    c_p = config_service.get_float('c_p') if c_p is None else c_p
    return min(1.0, c_p * np.log(n) / n)


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, list(combinations(range(n), 2)))


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise InvalidParameterError(f"a simple cycle needs n >= 3, got {n}")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(leaves: int) -> Graph:
    """Center 0 joined to leaves 1..leaves"""
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def barbell_graph(clique_size: int) -> Graph:
    """Two cliques joined by one edge between node clique_size-1 and node clique_size"""
    left = list(combinations(range(clique_size), 2))
    right = [(u + clique_size, v + clique_size) for u, v in left]
    return Graph.from_edges(2 * clique_size, left + right + [(clique_size - 1, clique_size)])


def circulant_graph(n: int, offsets: Iterable[int]) -> Graph:
    """Node i joined to i ± o (mod n) for each offset o; vertex-transitive"""
    offsets = sorted(set(int(o) for o in offsets))
    if not offsets or offsets[0] < 1 or offsets[-1] > n // 2:
        raise InvalidParameterError(f"offsets must lie in 1..{n // 2}")
    pairs = {tuple(sorted((i, (i + o) % n))) for i in range(n) for o in offsets}
    return Graph.from_edges(n, sorted(pairs))


def ring_of_cliques(num_cliques: int, clique_size: int) -> Graph:
    """Cliques on a ring, member i of each clique matched to member i of the next"""
    if num_cliques < 2 or clique_size < 1:
        raise InvalidParameterError("ring_of_cliques needs at least 2 cliques of size >= 1")
    pairs = set()
    for c in range(num_cliques):
        base = c * clique_size
        pairs.update((base + u, base + v) for u, v in combinations(range(clique_size), 2))
        nxt = ((c + 1) % num_cliques) * clique_size
        for i in range(clique_size):
            pairs.add(tuple(sorted((base + i, nxt + i))))
    return Graph.from_edges(num_cliques * clique_size, sorted(pairs))


def regularize(g: Graph) -> Graph:
    """Pad every node with self-loops up to the largest slot count.

    On a graph without self-loops this adds Δ - deg(v) loops to each node.
    """
    slots = g.slot_counts()
    return g.with_self_loops(g.self_loops + (slots.max() - slots))


def degree_stats(g: Graph) -> DegreeStats:
    """Min and max degree over real edges, with their ratio"""
    degrees = g.degrees()
    low, high = int(degrees.min()), int(degrees.max())
    return DegreeStats(low, high, high / low if low > 0 else None)
