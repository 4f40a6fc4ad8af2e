"""
Tree Packing
Parallel BFS over walk subgraphs, turning a multi-COBRA assignment into δ spanning trees
"""
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..cobra.models import MultiCobraAssignment
from ..graphs.models import BfsTree, Graph
from ..graphs.traversal import bfs_over_lists
from ..utils.errors import CoverageError, InvalidParameterError, PackingError
from ..utils.log import get_logger

logger = get_logger('treepack')


def _canonical(u: int, v: int) -> Tuple[int, int]:
    return (u, v) if u < v else (v, u)


def depths_from_parents(parent: Sequence[Optional[int]], root: int) -> List[Optional[int]]:
    """Depth of every node reachable from root by parent pointers; None otherwise"""
    n = len(parent)
    depth: List[Optional[int]] = [None] * n
    depth[root] = 0
    for v in range(n):
        chain = []
        node = v
        while node is not None and 0 <= node < n and depth[node] is None and len(chain) <= n:
            chain.append(node)
            node = parent[node]
        if node is None or not 0 <= node < n or depth[node] is None:
            continue
        base = depth[node]
        for offset, w in enumerate(reversed(chain), start=1):
            depth[w] = base + offset
    return depth


def tree_diameter(tree: BfsTree) -> int:
    """Exact diameter of a spanning tree by two BFS sweeps"""
    kids = tree.children()
    adjacency = [list(kids[v]) + ([tree.parent[v]] if tree.parent[v] is not None else [])
                 for v in range(tree.node_count)]
    far = bfs_over_lists(adjacency, tree.root)
    end = max(range(tree.node_count), key=lambda v: (far.depth[v] if far.depth[v] is not None else -1, -v))
    return bfs_over_lists(adjacency, end).max_depth


def packing_weight(trees: Sequence[BfsTree]) -> int:
    """Largest number of trees sharing one undirected edge"""
    usage: Counter = Counter()
    for tree in trees:
        usage.update(_canonical(p, v) for p, v in tree.edges())
    return max(usage.values()) if usage else 0


@dataclass
class TreePacking:
    """Spanning trees rooted at one source with size S, diameter H and weight W"""
    source: int
    trees: List[BfsTree]
    packing_size: int
    packing_diameter: int
    packing_weight: int
    build_rounds: int = 0
    hop_loads: List[int] = field(default_factory=list)

    @property
    def node_count(self) -> int:
        return self.trees[0].node_count if self.trees else 0

    @classmethod
    def from_parents(cls, source: int, parents: Sequence[Sequence[Optional[int]]],
                     build_rounds: int = 0) -> 'TreePacking':
        trees = [BfsTree(source, list(p), depths_from_parents(p, source)) for p in parents]
        for tree in trees:
            if not tree.is_spanning():
                raise PackingError(f"tree does not reach nodes {tree.unreachable()[:10]}")
        return cls(source, trees, len(trees), max(tree_diameter(t) for t in trees),
                   packing_weight(trees), build_rounds)

    def to_dict(self) -> dict:
        return {
            'source': self.source,
            'S': self.packing_size,
            'H': self.packing_diameter,
            'W': self.packing_weight,
            'build_rounds': self.build_rounds,
            'trees': [{'parent': list(t.parent)} for t in self.trees],
        }

    @classmethod
    def from_dict(cls, data: dict) -> 'TreePacking':
        packing = cls.from_parents(int(data['source']), [t['parent'] for t in data['trees']],
                                   int(data.get('build_rounds', 0)))
        return packing


def build_tree_packing(g: Graph, a: MultiCobraAssignment, source: int) -> TreePacking:
    """BFS every walk subgraph from source, charging rounds hop by hop.

    Hop h costs as many rounds as the busiest directed edge carries BFS
    messages in that hop, one message per directed edge per round; a hop
    always costs at least one round.
    """
    if a.source != source:
        raise InvalidParameterError(f"assignment was run from {a.source}, not {source}")
    if a.node_count != g.node_count:
        raise PackingError("assignment and graph disagree on node count")
    uncovered = a.uncovered_walks()
    if uncovered:
        raise CoverageError(uncovered)

    n = g.node_count
    trees: List[BfsTree] = []
    hop_loads: Dict[int, Counter] = {}
    for walk in range(a.num_walks):
        lists = a.subgraph(walk).neighbor_lists(n)
        tree = bfs_over_lists(lists, source)
        trees.append(tree)
        # Nodes at depth h-1 flood every subgraph edge in hop h.
        for u in range(n):
            hop = tree.depth[u] + 1
            if hop > tree.max_depth:
                continue
            load = hop_loads.setdefault(hop, Counter())
            load.update((u, v) for v in lists[u])

    assignment_weight = a.max_edge_weight()
    loads = [max(1, max(hop_loads[h].values())) if h in hop_loads else 1
             for h in range(1, max(t.max_depth for t in trees) + 1)]
    if loads and max(loads) > assignment_weight:
        raise PackingError(f"hop load {max(loads)} exceeds assignment weight {assignment_weight}")
    if loads and max(loads) > 2 * a.phases_run:
        logger.warning(f"hop load {max(loads)} exceeds the 2·phases phase length {2 * a.phases_run}")

    packing = TreePacking(
        source=source, trees=trees, packing_size=len(trees),
        packing_diameter=max(tree_diameter(t) for t in trees),
        packing_weight=packing_weight(trees), build_rounds=int(sum(loads)), hop_loads=loads,
    )
    logger.debug(f"packing S={packing.packing_size} H={packing.packing_diameter} "
                 f"W={packing.packing_weight} in {packing.build_rounds} rounds")
    return packing


class PackingCheck(Enum):
    ROOT = "root"
    SPANNING = "spanning"
    ACYCLIC = "acyclic"
    EDGES_EXIST = "edges_exist"
    DEPTHS = "depths"
    SIZE = "size"
    DIAMETER = "diameter"
    WEIGHT = "weight"


@dataclass
class CheckResult:
    check: PackingCheck
    passed: bool
    counterexample: Optional[dict] = None


@dataclass
class PackingReport:
    """Outcome of re-verifying a packing from scratch"""
    results: List[CheckResult]
    size: int
    diameter: Optional[int]
    weight: int

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def failures(self) -> List[CheckResult]:
        return [r for r in self.results if not r.passed]

    def result(self, check: PackingCheck) -> CheckResult:
        return next(r for r in self.results if r.check == check)


def verify_packing(tp: TreePacking, g: Graph) -> PackingReport:
    """Recompute S, H and W and check every tree is a spanning tree of g rooted at the source"""
    checks: Dict[PackingCheck, Optional[dict]] = {c: None for c in PackingCheck}

    def fail(check: PackingCheck, **details):
        if checks[check] is None:
            checks[check] = details

    n = g.node_count
    valid_trees = []
    for index, tree in enumerate(tp.trees):
        if len(tree.parent) != n:
            fail(PackingCheck.SPANNING, tree=index, reason="wrong node count")
            continue
        if tree.root != tp.source or tree.parent[tree.root] is not None:
            fail(PackingCheck.ROOT, tree=index, root=tree.root)
        depth = depths_from_parents(tree.parent, tp.source)
        cyclic = _find_cycle(tree.parent)
        if cyclic is not None:
            fail(PackingCheck.ACYCLIC, tree=index, node=cyclic)
        missing = [v for v in range(n) if depth[v] is None]
        if missing:
            fail(PackingCheck.SPANNING, tree=index, node=missing[0])
        for p, v in tree.edges():
            if not (0 <= p < n) or not g.has_edge(p, v):
                fail(PackingCheck.EDGES_EXIST, tree=index, edge=(p, v))
                break
        if not missing and list(tree.depth) != depth:
            bad = next(v for v in range(n) if tree.depth[v] != depth[v])
            fail(PackingCheck.DEPTHS, tree=index, node=bad)
        if not missing and cyclic is None:
            valid_trees.append(BfsTree(tp.source, list(tree.parent), depth))

    size = len(tp.trees)
    if size != tp.packing_size:
        fail(PackingCheck.SIZE, recorded=tp.packing_size, actual=size)
    diameter = max((tree_diameter(t) for t in valid_trees), default=None)
    if len(valid_trees) == size and diameter != tp.packing_diameter:
        fail(PackingCheck.DIAMETER, recorded=tp.packing_diameter, actual=diameter)
    weight = packing_weight(tp.trees)
    if weight != tp.packing_weight:
        fail(PackingCheck.WEIGHT, recorded=tp.packing_weight, actual=weight)

    results = [CheckResult(c, details is None, details) for c, details in checks.items()]
    return PackingReport(results, size, diameter, weight)


def _find_cycle(parent: Sequence[Optional[int]]) -> Optional[int]:
    """A node on a parent-pointer cycle, or None"""
    n = len(parent)
    state = np.zeros(n, dtype=np.int8)  # 0 new, 1 on current chain, 2 done
    for start in range(n):
        chain = []
        node = start
        while node is not None and 0 <= node < n and state[node] == 0:
            state[node] = 1
            chain.append(node)
            node = parent[node]
        if node is not None and 0 <= node < n and state[node] == 1:
            return int(node)
        for w in chain:
            state[w] = 2
    return None
