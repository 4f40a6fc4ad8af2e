"""
Broadcast Models
Message sets and round-by-round broadcast traces
"""
import csv
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

import numpy as np

from ..utils.errors import BroadcastError, InvalidParameterError

TRACE_COLUMNS = ['round', 'edge_u', 'edge_v', 'tree_id', 'message_id']


@dataclass
class MessageSet:
    """k abstract messages with ids 0..k-1"""
    k: int

    def __post_init__(self):
        if self.k < 1:
            raise InvalidParameterError(f"a broadcast needs at least one message, got k={self.k}")

    def ids(self) -> range:
        return range(self.k)


@dataclass
class BroadcastTrace:
    """Outcome of a simulated broadcast.

    ``receipt_round[v, m]`` is the first round at which v knows message m
    (0 for messages it started with, -1 if it never learns it). ``sends``
    holds one row (round, u, v, tree, message) per transmission when the
    simulation was asked to record them.
    """
    node_count: int
    k: int
    total_rounds: int
    receipt_round: np.ndarray
    sends: Optional[np.ndarray] = field(default=None, repr=False)
    phase_length: int = 1
    upcast_rounds: int = 0

    def saturated(self) -> bool:
        return bool((self.receipt_round >= 0).all())

    def unsaturated_nodes(self) -> List[int]:
        return np.flatnonzero((self.receipt_round < 0).any(axis=1)).tolist()

    def per_round_edge_load(self) -> Dict[int, Counter]:
        """round -> directed edge -> messages carried"""
        if self.sends is None:
            raise BroadcastError("trace was simulated without recording sends")
        loads: Dict[int, Counter] = {}
        for rnd, u, v, _, _ in self.sends:
            loads.setdefault(int(rnd), Counter())[(int(u), int(v))] += 1
        return loads

    def max_directed_load(self) -> int:
        """Largest number of messages one directed edge carried in one round"""
        if self.sends is None:
            raise BroadcastError("trace was simulated without recording sends")
        if len(self.sends) == 0:
            return 0
        _, counts = np.unique(self.sends[:, :3], axis=0, return_counts=True)
        return int(counts.max())

    def write_csv(self, path: Union[str, Path]):
        if self.sends is None:
            raise BroadcastError("trace was simulated without recording sends")
        order = np.lexsort((self.sends[:, 4], self.sends[:, 3], self.sends[:, 2],
                            self.sends[:, 1], self.sends[:, 0]))
        with open(path, 'w', newline='') as handle:
            writer = csv.writer(handle)
            writer.writerow(TRACE_COLUMNS)
            writer.writerows(self.sends[order].tolist())


def read_trace_rows(path: Union[str, Path]) -> List[Tuple[int, ...]]:
    with open(path, newline='') as handle:
        reader = csv.reader(handle)
        header = next(reader)
        if header != TRACE_COLUMNS:
            raise BroadcastError(f"unexpected trace header {header}")
        return [tuple(int(x) for x in row) for row in reader]
