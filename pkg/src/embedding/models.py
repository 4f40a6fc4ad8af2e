"""
Embedding Models
Sub-node groups, embedded virtual graphs, walk traces and the host round ledger
"""
from dataclasses import asdict, dataclass, field
from typing import Dict, List, Tuple

import numpy as np

from ..graphs.models import Graph


@dataclass
class SubNodeSpace:
    """Directed edges of the host, grouped δ at a time under their tail node.

    Sub-node s is the directed edge tails[s] -> heads[s]; the sub-nodes of a
    host node are contiguous. group_of[s] is -1 for inactive leftovers.
    """
    host_count: int
    group_size: int
    tails: np.ndarray
    heads: np.ndarray
    group_of: np.ndarray
    host_of_group: np.ndarray

    @property
    def subnode_count(self) -> int:
        return len(self.tails)

    @property
    def group_count(self) -> int:
        return len(self.host_of_group)

    @property
    def active(self) -> np.ndarray:
        return self.group_of >= 0

    def inactive_count(self) -> int:
        return int((self.group_of < 0).sum())

    def groups_of_host(self, host: int) -> List[int]:
        return np.flatnonzero(self.host_of_group == host).tolist()

    def members(self, group: int) -> np.ndarray:
        return np.flatnonzero(self.group_of == group)


@dataclass
class WalkTrace:
    """One lazy walk: its state sequence and the host directed edges it crossed, in order"""
    states: np.ndarray
    hops: List[Tuple[int, int]]

    @property
    def length(self) -> int:
        return len(self.states) - 1


@dataclass
class RoundLedger:
    """Host-round cost of an embedded broadcast, term by term"""
    estimate_rounds: int = 0
    discovery_rounds: int = 0
    embed_rounds: int = 0
    simulate_rounds_per_virtual_round: int = 0
    virtual_rounds: int = 0
    flood_rounds: int = 0

    @property
    def simulation_rounds(self) -> int:
        return self.virtual_rounds * self.simulate_rounds_per_virtual_round

    @property
    def total(self) -> int:
        return (self.estimate_rounds + self.discovery_rounds + self.embed_rounds
                + self.simulation_rounds + self.flood_rounds)

    def to_dict(self) -> dict:
        data = asdict(self)
        data['simulation_rounds'] = self.simulation_rounds
        data['total'] = self.total
        return data


@dataclass
class Embedding:
    """A virtual graph whose nodes are sub-node groups and whose edges are established walks.

    Walk w started at sub-node walk_source[w] and ended at walk_target[w];
    walk_states[w] is its full state trace and walk_moved[w, t] whether step t moved.
    """
    space: SubNodeSpace
    virtual_graph: Graph
    walk_source: np.ndarray
    walk_target: np.ndarray
    walk_states: np.ndarray
    walk_moved: np.ndarray
    tau_used: int
    retries_used: np.ndarray
    attempts: int = 1
    virtual_pairs: Dict[Tuple[int, int], int] = field(default_factory=dict, repr=False)

    @property
    def host_of(self) -> np.ndarray:
        """Host node simulating each virtual node"""
        return self.space.host_of_group

    def walk_trace(self, walk: int) -> WalkTrace:
        states = self.walk_states[walk]
        moved = self.walk_moved[walk]
        tails, heads = self.space.tails, self.space.heads
        hops = [(int(tails[s]), int(heads[s])) for s, m in zip(states[:-1], moved) if m]
        return WalkTrace(states.copy(), hops)

    def walk_path(self, a: int, b: int) -> List[Tuple[int, int]]:
        """Host edges routing a message from virtual node a to virtual node b"""
        if (a, b) in self.virtual_pairs:
            return self.walk_trace(self.virtual_pairs[(a, b)]).hops
        walk = self.virtual_pairs[(b, a)]
        return [(v, u) for u, v in reversed(self.walk_trace(walk).hops)]

    def out_degrees(self) -> np.ndarray:
        """Established walks started by each virtual node"""
        return np.bincount(self.space.group_of[self.walk_source], minlength=self.space.group_count)

    def to_dict(self) -> dict:
        return {
            'host_count': self.space.host_count,
            'group_size': self.space.group_size,
            'host_of': self.space.host_of_group.tolist(),
            'tau': self.tau_used,
            'attempts': self.attempts,
            'max_retries': int(self.retries_used.max(initial=0)),
            'virtual_edges': [[u, v, c] for u, v, c in self.virtual_graph.edges()],
            'virtual_self_loops': self.virtual_graph.self_loops.tolist(),
        }
