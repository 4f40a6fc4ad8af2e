"""
Hardness Models
Bandwidth graphs, set-splitting instances and flow-based saturation results
"""
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple, Union

import networkx as nx

from ..graphs.models import Graph
from ..utils.errors import HardnessError, InvalidParameterError

Send = Tuple[int, int, FrozenSet[int]]


@dataclass
class BandwidthGraph:
    """Undirected graph whose edges carry a positive integer bandwidth per direction per round"""
    node_count: int
    edges: List[Tuple[int, int, int]]
    source: int
    layers: Optional[List[int]] = None
    labels: Optional[List[str]] = None
    _bandwidth: Dict[Tuple[int, int], int] = field(init=False, repr=False)

    def __post_init__(self):
        if not 0 <= self.source < self.node_count:
            raise InvalidParameterError(f"source {self.source} outside 0..{self.node_count - 1}")
        self._bandwidth = {}
        for u, v, b in self.edges:
            if u == v or not (0 <= u < self.node_count and 0 <= v < self.node_count):
                raise InvalidParameterError(f"invalid edge ({u}, {v})")
            if b < 1:
                raise InvalidParameterError(f"bandwidth must be positive on ({u}, {v}), got {b}")
            key = (min(u, v), max(u, v))
            if key in self._bandwidth:
                raise InvalidParameterError(f"duplicate edge {key}")
            self._bandwidth[key] = int(b)

    @classmethod
    def from_graph(cls, g: Graph, source: int) -> 'BandwidthGraph':
        """Unit-bandwidth view of a CONGEST graph; parallel edges add bandwidth"""
        return cls(g.node_count, [(u, v, c) for u, v, c in g.edges()], source)

    def bandwidth(self, u: int, v: int) -> int:
        return self._bandwidth.get((min(u, v), max(u, v)), 0)

    def neighbors(self, v: int) -> List[int]:
        return sorted({b if a == v else a for a, b in self._bandwidth if v in (a, b)})

    def max_bandwidth(self, v: int) -> int:
        return max((b for (x, y), b in self._bandwidth.items() if v in (x, y)), default=0)

    def hop_graph(self) -> Graph:
        """The plain graph underneath, bandwidths dropped"""
        return Graph.from_edges(self.node_count, [(u, v) for u, v, _ in self.edges])

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.node_count))
        graph.add_edges_from((u, v, {'capacity': b}) for u, v, b in self.edges)
        return graph

    def is_layered(self) -> bool:
        if self.layers is None:
            return False
        return all(abs(self.layers[u] - self.layers[v]) == 1 for u, v, _ in self.edges)

    def layer_members(self, layer: int) -> List[int]:
        if self.layers is None:
            raise HardnessError("graph carries no layer labels")
        return [v for v, l in enumerate(self.layers) if l == layer]

    @property
    def depth(self) -> int:
        if self.layers is None:
            raise HardnessError("graph carries no layer labels")
        return max(self.layers)

    def format(self) -> str:
        lines = [f"{self.node_count} {len(self.edges)}"]
        lines.extend(f"{u} {v} {b}" for u, v, b in self.edges)
        lines.append(f"source {self.source}")
        return "\n".join(lines) + "\n"

    @classmethod
    def parse(cls, text: str) -> 'BandwidthGraph':
        rows = [line.split() for line in text.splitlines() if line.strip() and not line.startswith('#')]
        try:
            n, m = int(rows[0][0]), int(rows[0][1])
            edges = [(int(r[0]), int(r[1]), int(r[2])) for r in rows[1:] if r[0] != 'source']
            sources = [int(r[1]) for r in rows[1:] if r[0] == 'source']
        except (ValueError, IndexError) as e:
            raise InvalidParameterError(f"malformed bandwidth graph: {e}")
        if len(edges) != m or len(sources) != 1:
            raise InvalidParameterError("bandwidth graph needs m edge lines and one source line")
        return cls(n, edges, sources[0])

    def write(self, path: Union[str, Path]):
        Path(path).write_text(self.format())

    @classmethod
    def read(cls, path: Union[str, Path]) -> 'BandwidthGraph':
        return cls.parse(Path(path).read_text())


@dataclass
class ReductionInstance:
    """Set splitting with fixed part sizes: elements 0..n_S-1, parts of sizes n1 and n2"""
    ground_set_size: int
    family: List[FrozenSet[int]]
    n1: int
    n2: int

    def __post_init__(self):
        self.family = [frozenset(int(x) for x in subset) for subset in self.family]
        if self.n1 + self.n2 != self.ground_set_size or self.n1 < 0 or self.n2 < 0:
            raise HardnessError(f"part sizes {self.n1} + {self.n2} do not add up to {self.ground_set_size}")
        for subset in self.family:
            if not subset:
                raise HardnessError("family members must be nonempty")
            if min(subset) < 0 or max(subset) >= self.ground_set_size:
                raise HardnessError(f"family member {sorted(subset)} leaves 0..{self.ground_set_size - 1}")

    @property
    def family_size(self) -> int:
        return len(self.family)

    def is_split_by(self, part: FrozenSet[int]) -> bool:
        """Every member meets both part and its complement"""
        return all(not subset <= part and subset & part for subset in self.family)


@dataclass
class ReductionGraph(BandwidthGraph):
    """Layered bandwidth graph built from a set-splitting instance, with node roles"""
    instance: Optional[ReductionInstance] = None
    element_nodes: List[int] = field(default_factory=list)
    family_nodes: List[int] = field(default_factory=list)
    part_nodes: Tuple[int, int] = (0, 0)
    part_relays: Tuple[int, int] = (0, 0)
    union_nodes: Dict[Tuple[int, int], int] = field(default_factory=dict)
    target_nodes: Dict[Tuple[int, int], int] = field(default_factory=dict)
    target_relays: Dict[Tuple[int, int], List[int]] = field(default_factory=dict)

    @property
    def targets(self) -> List[int]:
        return [self.target_nodes[key] for key in sorted(self.target_nodes)]


@dataclass
class SaturationResult:
    """Fewest rounds for a sink to receive k messages, with a per-round flow witness"""
    sink: int
    k: int
    min_rounds: Optional[int]
    flow_certificate: List[Dict[Tuple[int, int], int]]
    round_cap: int

    @property
    def bounded(self) -> bool:
        return self.min_rounds is not None


@dataclass
class TransformedGraph:
    """Unit-bandwidth graph produced from a layered bandwidth graph"""
    graph: Graph
    source: int
    source_in: List[int]
    source_out: List[int]
    out_groups: Dict[int, List[int]]
    in_groups: Dict[Tuple[int, int], List[int]]
    last_layer: Dict[int, int]
    n_msgs: int

    def node_of(self, v: int) -> Sequence[int]:
        """Nodes standing for original node v"""
        if v in self.last_layer:
            return [self.last_layer[v]]
        return self.out_groups[v]
