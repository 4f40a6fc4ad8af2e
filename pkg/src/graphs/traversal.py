"""
Graph Traversal
Layered BFS with a smallest-id parent rule, eccentricities and exact diameters
"""
from typing import List, Optional, Sequence

import numpy as np
from scipy.sparse import csgraph

from .models import BfsTree, Graph
from ..utils.errors import DisconnectedGraphError, InvalidParameterError


def bfs_over_lists(neighbor_lists: Sequence[Sequence[int]], root: int) -> BfsTree:
    """Layered BFS over explicit neighbor lists.

    Each layer is expanded in ascending node order, so the first frontier node
    to reach an undiscovered node is its smallest-id neighbor one layer up.
    """
    n = len(neighbor_lists)
    if not 0 <= root < n:
        raise InvalidParameterError(f"root {root} outside 0..{n - 1}")
    parent: List[Optional[int]] = [None] * n
    depth: List[Optional[int]] = [None] * n
    depth[root] = 0
    frontier = [root]
    level = 0
    while frontier:
        level += 1
        discovered = []
        for u in frontier:
            for v in neighbor_lists[u]:
                v = int(v)
                if depth[v] is None:
                    depth[v] = level
                    parent[v] = u
                    discovered.append(v)
        frontier = sorted(discovered)
    return BfsTree(root=root, parent=parent, depth=depth)


def bfs(g: Graph, root: int) -> BfsTree:
    """BFS tree of g from root; unreachable nodes keep depth None"""
    if not 0 <= root < g.node_count:
        raise InvalidParameterError(f"root {root} outside 0..{g.node_count - 1}")
    return bfs_over_lists([g.neighbors(v) for v in range(g.node_count)], root)


def is_connected(g: Graph) -> bool:
    if g.node_count == 1:
        return True
    count, _ = csgraph.connected_components(g.to_csr(), directed=False)
    return count == 1


def eccentricity(g: Graph, v: int) -> int:
    tree = bfs(g, v)
    if not tree.is_spanning():
        raise DisconnectedGraphError(f"graph is disconnected from node {v}", tree.unreachable())
    return tree.max_depth


def distance_matrix(g: Graph) -> np.ndarray:
    """All-pairs hop distances; inf marks unreachable pairs"""
    return csgraph.shortest_path(g.to_csr(), method='D', directed=False, unweighted=True)


def diameter(g: Graph) -> int:
    """Exact diameter by all-pairs BFS"""
    if g.node_count == 1:
        return 0
    dist = distance_matrix(g)
    if np.isinf(dist).any():
        unreachable = np.flatnonzero(np.isinf(dist[0])).tolist()
        raise DisconnectedGraphError("diameter of a disconnected graph is undefined", unreachable)
    return int(dist.max())
