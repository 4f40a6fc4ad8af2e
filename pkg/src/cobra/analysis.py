"""
Multi-COBRA Analysis
Coverage, edge-weight histograms, subgraph diameters and dispatch uniformity
"""
from collections import Counter
from typing import Dict, List, NamedTuple, Optional

import numpy as np
from scipy import sparse, stats
from scipy.sparse import csgraph

from .engine import build_slot_table, dispatch_holder
from .models import CobraConfig, MultiCobraAssignment
from ..graphs.models import Graph
from ..utils.errors import CobraError, InternalConsistencyError
from ..utils.rng import make_rng

UNIFORMITY_QUANTILE = 0.999
UNIFORMITY_MAX_NODES = 12


class WalkCoverage(NamedTuple):
    walk_index: int
    covered: bool
    cover_phase: Optional[int]


class UniformityStats(NamedTuple):
    holder: int
    walk_index: int
    trials: int
    slot_counts: np.ndarray          # how often the watched walk used each slot
    neighbor_counts: Dict[int, int]  # the same counts folded onto target nodes
    statistic: float
    threshold: float                 # chi-square quantile at UNIFORMITY_QUANTILE
    p_value: float
    uniform: bool
    collisions: int                  # trials where two walks shared a slot in one round


def coverage_report(a: MultiCobraAssignment, g: Graph) -> List[WalkCoverage]:
    """Per walk: whether it reached every node, and the phase it first did"""
    if a.node_count != g.node_count:
        raise CobraError("assignment and graph disagree on node count")
    report = []
    for walk in range(a.num_walks):
        held = a.first_held[walk]
        covered = bool((held >= 0).all())
        report.append(WalkCoverage(walk, covered, int(held.max()) if covered else None))
    return report


def edge_weight_histogram(a: MultiCobraAssignment) -> Dict[int, int]:
    """weight -> number of distinct edges with that many walks"""
    return dict(sorted(Counter(int(w) for w in a.edge_weights()).items()))


def check_weight_bound(a: MultiCobraAssignment, g: Graph) -> bool:
    """Every pair carries at most 4·multiplicity·phases walks"""
    if not len(a.edge_pairs):
        return True
    return bool((a.edge_weights() <= 4 * g.edge_multiplicities() * a.phases_run).all())


def subgraph_diameter(a: MultiCobraAssignment, walk_index: int, g: Graph) -> int:
    """Exact diameter of the subgraph a walk has built"""
    view = a.subgraph(walk_index)
    if len(view.node_set) <= 1:
        return 0
    n = g.node_count
    if view.edge_set:
        us, vs = np.array(view.edge_set).T
        mat = sparse.coo_matrix((np.ones(len(us)), (us, vs)), shape=(n, n)).tocsr()
    else:
        mat = sparse.csr_matrix((n, n))
    nodes = np.array(view.node_set)
    dist = csgraph.shortest_path(mat[nodes][:, nodes], directed=False, unweighted=True)
    if np.isinf(dist).any():
        raise InternalConsistencyError(f"subgraph of walk {walk_index} is disconnected")
    return int(dist.max())


def marginal_uniformity_test(g: Graph, cfg: CobraConfig, trials: int, seed: int,
                             holder: int = 0, walk_index: int = 0) -> UniformityStats:
    """Empirical slot distribution of one walk at a node holding cfg.num_walks tokens.

    Samples through the engine's per-holder dispatch, so the check covers the
    exact sampling the simulator performs at that holder. The first-round slot
    of the watched walk should be uniform over all slots, while two walks never
    share a slot in one round.
    """
    if g.node_count > UNIFORMITY_MAX_NODES:
        raise CobraError(f"uniformity test is limited to {UNIFORMITY_MAX_NODES} nodes")
    table = build_slot_table(g)
    width = table.targets.shape[1]
    if not 0 <= walk_index < cfg.num_walks <= width:
        raise CobraError("walk index and walk count must fit the slot count")
    if not 0 <= holder < g.node_count:
        raise CobraError(f"holder {holder} outside 0..{g.node_count - 1}")

    rng = make_rng(seed)
    counts = np.zeros(width, dtype=np.int64)
    reached: Counter = Counter()
    collisions = 0
    for _ in range(trials):
        first, second = dispatch_holder(table, rng, holder, cfg.num_walks)
        counts[first.slots[walk_index]] += 1
        reached[int(first.targets[walk_index])] += 1
        if any(len(np.unique(s.slots)) < len(s.slots) for s in (first, second)):
            collisions += 1

    if width > 1:
        result = stats.chisquare(counts)
        statistic, p_value = float(result.statistic), float(result.pvalue)
        threshold = float(stats.chi2.ppf(UNIFORMITY_QUANTILE, width - 1))
    else:
        statistic, p_value, threshold = 0.0, 1.0, 0.0
    return UniformityStats(
        holder=holder, walk_index=walk_index, trials=trials, slot_counts=counts,
        neighbor_counts=dict(sorted(reached.items())), statistic=statistic, threshold=threshold,
        p_value=p_value, uniform=statistic <= threshold, collisions=collisions,
    )
