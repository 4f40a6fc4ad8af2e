"""
Graph Models
Undirected multigraph with self-loop counters, and BFS trees
"""
from dataclasses import dataclass, field
from typing import Iterable, Iterator, List, Optional, Tuple

import networkx as nx
import numpy as np
from scipy import sparse

from ..utils.errors import InvalidParameterError


@dataclass(eq=False)
class Graph:
    """Undirected multigraph on nodes 0..n-1.

    Adjacency is stored in compressed sparse row form: the neighbors of v are
    ``indices[indptr[v]:indptr[v+1]]`` in ascending order, with parallel-edge
    counts in ``multiplicity``. Self-loops live only in the ``self_loops``
    counter; each one adds one outgoing slot to its node.
    """
    node_count: int
    indptr: np.ndarray
    indices: np.ndarray
    multiplicity: np.ndarray
    self_loops: np.ndarray
    _degrees: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        if self.node_count < 1:
            raise InvalidParameterError(f"node_count must be positive, got {self.node_count}")
        self.indptr = np.asarray(self.indptr, dtype=np.int64)
        self.indices = np.asarray(self.indices, dtype=np.int64)
        self.multiplicity = np.asarray(self.multiplicity, dtype=np.int64)
        self.self_loops = np.asarray(self.self_loops, dtype=np.int64)
        if len(self.indptr) != self.node_count + 1 or len(self.self_loops) != self.node_count:
            raise InvalidParameterError("adjacency arrays do not match node_count")
        rows = np.repeat(np.arange(self.node_count), np.diff(self.indptr))
        self._degrees = np.bincount(rows, weights=self.multiplicity,
                                    minlength=self.node_count).astype(np.int64)

    @classmethod
    def from_edges(cls, node_count: int, edges: Iterable[Tuple[int, int]],
                   self_loops: Optional[Iterable[int]] = None) -> 'Graph':
        """Build a graph from (u, v) pairs; repeated pairs become multiplicities, u == v a self-loop"""
        n = int(node_count)
        if n < 1:
            raise InvalidParameterError(f"node_count must be positive, got {n}")
        arr = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges, dtype=np.int64)
        arr = arr.reshape(-1, 2)
        if arr.size and (arr.min() < 0 or arr.max() >= n):
            raise InvalidParameterError(f"edge endpoint outside 0..{n - 1}")

        loops = np.zeros(n, dtype=np.int64) if self_loops is None else np.asarray(list(self_loops), dtype=np.int64)
        if len(loops) != n or (loops < 0).any():
            raise InvalidParameterError("self_loops must hold one nonnegative count per node")
        is_loop = arr[:, 0] == arr[:, 1]
        loops = loops + np.bincount(arr[is_loop, 0], minlength=n)
        arr = arr[~is_loop]

        src = np.concatenate([arr[:, 0], arr[:, 1]])
        dst = np.concatenate([arr[:, 1], arr[:, 0]])
        keys, counts = np.unique(src * n + dst, return_counts=True)
        heads = keys // n
        indptr = np.concatenate([[0], np.cumsum(np.bincount(heads, minlength=n))])
        return cls(n, indptr, keys % n, counts, loops)

    @classmethod
    def empty(cls, node_count: int) -> 'Graph':
        return cls.from_edges(node_count, np.zeros((0, 2), dtype=np.int64))

    # -- degree queries -------------------------------------------------

    @property
    def n(self) -> int:
        return self.node_count

    def degree(self, v: int) -> int:
        """Degree counting parallel edges, excluding self-loops"""
        return int(self._degrees[v])

    def degrees(self) -> np.ndarray:
        return self._degrees.copy()

    def slot_count(self, v: int) -> int:
        """Outgoing slots of v: real edge endpoints plus self-loops"""
        return int(self._degrees[v] + self.self_loops[v])

    def slot_counts(self) -> np.ndarray:
        return self._degrees + self.self_loops

    @property
    def min_degree(self) -> int:
        return int(self._degrees.min())

    @property
    def max_degree(self) -> int:
        return int(self._degrees.max())

    @property
    def edge_count(self) -> int:
        """Number of undirected edges counted with multiplicity, self-loops excluded"""
        return int(self.multiplicity.sum() // 2)

    @property
    def has_self_loops(self) -> bool:
        return bool(self.self_loops.any())

    # -- adjacency queries ----------------------------------------------

    def neighbors(self, v: int) -> np.ndarray:
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    def adjacency_list(self, v: int) -> List[Tuple[int, int]]:
        lo, hi = self.indptr[v], self.indptr[v + 1]
        return [(int(u), int(c)) for u, c in zip(self.indices[lo:hi], self.multiplicity[lo:hi])]

    def multiplicity_of(self, u: int, v: int) -> int:
        nbrs = self.neighbors(u)
        pos = int(np.searchsorted(nbrs, v))
        if pos < len(nbrs) and nbrs[pos] == v:
            return int(self.multiplicity[self.indptr[u] + pos])
        return 0

    def has_edge(self, u: int, v: int) -> bool:
        return self.multiplicity_of(u, v) > 0

    def edges(self) -> Iterator[Tuple[int, int, int]]:
        """Yield each undirected edge once as (u, v, multiplicity) with u < v"""
        for u in range(self.node_count):
            lo, hi = self.indptr[u], self.indptr[u + 1]
            for v, c in zip(self.indices[lo:hi], self.multiplicity[lo:hi]):
                if u < v:
                    yield int(u), int(v), int(c)

    def edge_array(self) -> np.ndarray:
        """Undirected pairs (u < v) as an (m, 2) array, one row per distinct pair"""
        rows = np.repeat(np.arange(self.node_count), np.diff(self.indptr))
        keep = rows < self.indices
        return np.stack([rows[keep], self.indices[keep]], axis=1)

    def edge_multiplicities(self) -> np.ndarray:
        """Multiplicity of each row of edge_array"""
        rows = np.repeat(np.arange(self.node_count), np.diff(self.indptr))
        return self.multiplicity[rows < self.indices]

    def slot_targets(self, v: int) -> np.ndarray:
        """Target node of each outgoing slot of v, real edges first then self-loops"""
        lo, hi = self.indptr[v], self.indptr[v + 1]
        real = np.repeat(self.indices[lo:hi], self.multiplicity[lo:hi])
        return np.concatenate([real, np.full(self.self_loops[v], v, dtype=np.int64)])

    # -- conversions ----------------------------------------------------

    def to_csr(self, include_self_loops: bool = False) -> sparse.csr_matrix:
        """Adjacency as a scipy CSR matrix with multiplicities as weights"""
        mat = sparse.csr_matrix(
            (self.multiplicity.astype(float), self.indices, self.indptr),
            shape=(self.node_count, self.node_count),
        )
        if include_self_loops and self.has_self_loops:
            mat = (mat + sparse.diags(self.self_loops.astype(float))).tocsr()
        return mat

    def adjacency_matrix(self) -> np.ndarray:
        """Dense adjacency; a node with c self-loops has c on the diagonal"""
        return self.to_csr(include_self_loops=True).toarray()

    def to_networkx(self) -> nx.Graph:
        """Simple networkx graph with multiplicities as 'capacity'"""
        nx_graph = nx.Graph()
        nx_graph.add_nodes_from(range(self.node_count))
        for u, v, c in self.edges():
            nx_graph.add_edge(u, v, capacity=c)
        return nx_graph

    def with_self_loops(self, self_loops: np.ndarray) -> 'Graph':
        """Copy of this graph with a replaced self-loop vector"""
        return Graph(self.node_count, self.indptr.copy(), self.indices.copy(),
                     self.multiplicity.copy(), np.asarray(self_loops, dtype=np.int64).copy())

    def without_self_loops(self) -> 'Graph':
        return self.with_self_loops(np.zeros(self.node_count, dtype=np.int64))

    def validate(self) -> bool:
        """Check sortedness, id range and adjacency symmetry"""
        n = self.node_count
        if (self.indices < 0).any() or (self.indices >= n).any():
            return False
        if (self.multiplicity < 1).any() or (self.self_loops < 0).any():
            return False
        rows = np.repeat(np.arange(n), np.diff(self.indptr))
        if (rows == self.indices).any():
            return False
        keys = rows * n + self.indices
        if (np.diff(keys) <= 0).any():
            return False
        mirrored = self.indices * n + rows
        order = np.argsort(mirrored)
        return bool(np.array_equal(mirrored[order], keys)
                    and np.array_equal(self.multiplicity[order], self.multiplicity))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (self.node_count == other.node_count
                and np.array_equal(self.indptr, other.indptr)
                and np.array_equal(self.indices, other.indices)
                and np.array_equal(self.multiplicity, other.multiplicity)
                and np.array_equal(self.self_loops, other.self_loops))

    __hash__ = None


@dataclass
class BfsTree:
    """BFS tree; parent and depth are None for nodes the search never reached"""
    root: int
    parent: List[Optional[int]]
    depth: List[Optional[int]]

    @property
    def node_count(self) -> int:
        return len(self.parent)

    def reachable(self) -> List[int]:
        return [v for v, d in enumerate(self.depth) if d is not None]

    def unreachable(self) -> List[int]:
        return [v for v, d in enumerate(self.depth) if d is None]

    def is_spanning(self) -> bool:
        return all(d is not None for d in self.depth)

    @property
    def max_depth(self) -> int:
        return max(d for d in self.depth if d is not None)

    def edges(self) -> List[Tuple[int, int]]:
        """Tree edges as (parent, child)"""
        return [(p, v) for v, p in enumerate(self.parent) if p is not None]

    def children(self) -> List[List[int]]:
        kids: List[List[int]] = [[] for _ in self.parent]
        for v, p in enumerate(self.parent):
            if p is not None:
                kids[p].append(v)
        return kids

    def path_to_root(self, v: int) -> List[int]:
        path = [v]
        while self.parent[path[-1]] is not None:
            path.append(self.parent[path[-1]])
        return path
