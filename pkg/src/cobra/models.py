"""
Multi-COBRA Models
Configuration, per-edge walk assignments and per-walk subgraph views
"""
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from ..services.config_service import config_service
from ..utils.errors import CobraError


@dataclass
class CobraConfig:
    """Branching factor, walk count and phase budget of a multi-COBRA run"""
    num_walks: int
    phases: Optional[int] = None
    cover_constant: Optional[float] = None
    branching_factor: int = 2

    def __post_init__(self):
        if self.branching_factor != 2:
            raise CobraError(f"only branching factor 2 is supported, got {self.branching_factor}")
        if self.num_walks < 1:
            raise CobraError(f"num_walks must be positive, got {self.num_walks}")
        if self.phases is not None and self.phases < 0:
            raise CobraError(f"phases must be nonnegative, got {self.phases}")
        if self.cover_constant is None:
            self.cover_constant = config_service.get_float('cover_constant')
        if self.cover_constant <= 0:
            raise CobraError(f"cover_constant must be positive, got {self.cover_constant}")

    def resolve_phases(self, n: int) -> int:
        """Explicit phases, else ceil(C_T·log2 n)"""
        if self.phases is not None:
            return self.phases
        return math.ceil(self.cover_constant * math.log2(n)) if n > 1 else 0


@dataclass
class SubgraphView:
    """Nodes and edges ever used by one walk"""
    walk_index: int
    node_set: List[int]
    edge_set: List[Tuple[int, int]]

    def neighbor_lists(self, node_count: int) -> List[List[int]]:
        lists: List[List[int]] = [[] for _ in range(node_count)]
        for u, v in self.edge_set:
            lists[u].append(v)
            lists[v].append(u)
        return [sorted(adj) for adj in lists]


@dataclass
class MultiCobraAssignment:
    """Result of a multi-COBRA run.

    ``walk_mask[e, i]`` says whether walk i crossed the undirected pair
    ``edge_pairs[e]``. ``first_held[i, v]`` is the first phase in which node v
    held a token of walk i (0 for the source, -1 if never).
    """
    node_count: int
    source: int
    num_walks: int
    phases_run: int
    edge_pairs: np.ndarray
    walk_mask: np.ndarray
    first_held: np.ndarray
    token_holders: Optional[List[np.ndarray]] = field(default=None, repr=False)

    @property
    def edge_walks(self) -> Dict[Tuple[int, int], List[int]]:
        return {
            (int(u), int(v)): np.flatnonzero(row).tolist()
            for (u, v), row in zip(self.edge_pairs, self.walk_mask)
        }

    def edge_weights(self) -> np.ndarray:
        """Number of walks using each pair, aligned with edge_pairs"""
        return self.walk_mask.sum(axis=1)

    def max_edge_weight(self) -> int:
        return int(self.edge_weights().max()) if len(self.edge_pairs) else 0

    def edges_of(self, walk_index: int) -> List[Tuple[int, int]]:
        return [tuple(int(x) for x in pair) for pair in self.edge_pairs[self.walk_mask[:, walk_index]]]

    def node_set(self, walk_index: int, phase: Optional[int] = None) -> List[int]:
        """Nodes that held the walk at some phase <= phase (default: at any phase)"""
        held = self.first_held[walk_index]
        limit = self.phases_run if phase is None else phase
        return np.flatnonzero((held >= 0) & (held <= limit)).tolist()

    def covers(self, walk_index: int) -> bool:
        return bool((self.first_held[walk_index] >= 0).all())

    def uncovered_walks(self) -> List[int]:
        return np.flatnonzero((self.first_held < 0).any(axis=1)).tolist()

    def subgraph(self, walk_index: int) -> SubgraphView:
        return SubgraphView(walk_index, self.node_set(walk_index), self.edges_of(walk_index))

    def to_dict(self) -> dict:
        return {
            'node_count': self.node_count,
            'source': self.source,
            'num_walks': self.num_walks,
            'phases': self.phases_run,
            'edges': [[u, v, walks] for (u, v), walks in self.edge_walks.items() if walks],
            'first_held': self.first_held.tolist(),
        }

    @classmethod
    def from_dict(cls, data: dict) -> 'MultiCobraAssignment':
        n, walks = int(data['node_count']), int(data['num_walks'])
        rows = data['edges']
        pairs = np.array([[u, v] for u, v, _ in rows], dtype=np.int64).reshape(-1, 2)
        mask = np.zeros((len(rows), walks), dtype=bool)
        for e, (_, _, members) in enumerate(rows):
            mask[e, members] = True
        if 'first_held' in data:
            first_held = np.array(data['first_held'], dtype=np.int64).reshape(walks, n)
        else:
            # Exact hold phases unknown; every endpoint of a walk edge was held by the last phase.
            first_held = np.full((walks, n), -1, dtype=np.int64)
            for e, (u, v) in enumerate(pairs):
                first_held[mask[e], u] = int(data['phases'])
                first_held[mask[e], v] = int(data['phases'])
            first_held[:, int(data['source'])] = 0
        return cls(n, int(data['source']), walks, int(data['phases']), pairs, mask, first_held)
