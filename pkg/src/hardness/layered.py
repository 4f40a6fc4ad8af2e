"""
Layered Transform
Unit-bandwidth rendition of a layered bandwidth graph and schedule lifting into it
"""
from typing import Dict, FrozenSet, List, NamedTuple, Optional, Tuple

from .decide import Schedule, simulate_bandwidth_schedule
from .flow import per_sink_round_bounds
from .models import BandwidthGraph, TransformedGraph
from ..graphs.models import Graph
from ..utils.errors import HardnessError
from ..utils.log import get_logger

logger = get_logger('hardness')


class LayeredCheck(NamedTuple):
    depth: int
    rounds_original: Optional[int]
    rounds_transformed: Optional[int]
    sink_bounds: Dict[int, Optional[int]]

    @property
    def forward_holds(self) -> bool:
        return (self.rounds_original is not None and self.rounds_transformed is not None
                and self.rounds_transformed <= 2 * self.rounds_original + 1)

    @property
    def bounds_hold(self) -> bool:
        if self.rounds_original is None:
            return False
        limit = 2 * self.rounds_original + 1
        return all(r is not None and r <= limit for r in self.sink_bounds.values())


def layered_transform(bg: BandwidthGraph, n_msgs: int) -> TransformedGraph:
    """Replace nodes by groups so every edge has unit bandwidth while layers stay separated.

    Id layout: s' = 0, s_in = 1..n, s_out = n+1..2n, then per node in id order
    its out group (a single node on the last layer), then one in group per
    edge that does not end on the last layer.
    """
    if not bg.is_layered():
        raise HardnessError("layered transform needs every edge between consecutive layers")
    if bg.layers[bg.source] != 0:
        raise HardnessError("source must sit on layer 0")
    widest = max((b for _, _, b in bg.edges), default=0)
    if widest > n_msgs:
        raise HardnessError(f"bandwidth {widest} exceeds the {n_msgs} messages")

    last = bg.depth
    n = n_msgs
    source_in = list(range(1, n + 1))
    source_out = list(range(n + 1, 2 * n + 1))
    edges: List[Tuple[int, int]] = [(0, a) for a in source_in]
    edges += [(a, b) for a in source_in for b in source_out]

    next_id = 2 * n + 1
    out_groups: Dict[int, List[int]] = {bg.source: source_out}
    last_layer: Dict[int, int] = {}
    for v in range(bg.node_count):
        if v == bg.source:
            continue
        if bg.layers[v] == last:
            last_layer[v] = next_id
            next_id += 1
        else:
            out_groups[v] = list(range(next_id, next_id + n))
            next_id += n

    in_groups: Dict[Tuple[int, int], List[int]] = {}
    for a, b, width in bg.edges:
        u, v = (a, b) if bg.layers[a] < bg.layers[b] else (b, a)
        senders = out_groups[u][:width]
        if v in last_layer:
            edges += [(x, last_layer[v]) for x in senders]
            continue
        group = list(range(next_id, next_id + width))
        next_id += width
        in_groups[(u, v)] = group
        edges += list(zip(senders, group))
        edges += [(x, y) for x in group for y in out_groups[v]]

    g = Graph.from_edges(next_id, edges)
    logger.debug(f"layered transform: {bg.node_count} nodes became {g.node_count} for {n} messages")
    return TransformedGraph(g, 0, source_in, source_out, out_groups, in_groups, last_layer, n)


def lift_layered_schedule(bg: BandwidthGraph, tg: TransformedGraph, schedule: Schedule) -> Schedule:
    """Turn a forward schedule on the layered graph into a unit schedule on its transform.

    Original round r maps to rounds 2r+1 (out group to in group, or straight
    into a last-layer node) and 2r+2 (in group to every member of the out group).
    """
    unit: Dict[int, List[Tuple[int, int, FrozenSet[int]]]] = {
        1: [(0, a, frozenset([i])) for i, a in enumerate(tg.source_in)],
        2: [(a, b, frozenset([i])) for i, a in enumerate(tg.source_in) for b in tg.source_out],
    }
    for r, sends in enumerate(schedule, start=1):
        for u, v, msgs in sends:
            if bg.layers[v] != bg.layers[u] + 1:
                raise HardnessError(f"round {r}: send ({u}, {v}) does not move one layer down")
            senders = tg.out_groups[u]
            ordered = sorted(msgs)
            if v in tg.last_layer:
                unit.setdefault(2 * r + 1, []).extend(
                    (senders[j], tg.last_layer[v], frozenset([m])) for j, m in enumerate(ordered))
                continue
            group = tg.in_groups[(u, v)]
            unit.setdefault(2 * r + 1, []).extend(
                (senders[j], group[j], frozenset([m])) for j, m in enumerate(ordered))
            unit.setdefault(2 * r + 2, []).extend(
                (group[j], y, frozenset([m])) for j, m in enumerate(ordered) for y in tg.out_groups[v])
    horizon = max(unit)
    return [unit.get(r, []) for r in range(1, horizon + 1)]


def simulate_unit_schedule(g: Graph, schedule: Schedule, source: int, k: int) -> List[List[FrozenSet[int]]]:
    """Knowledge history of a CONGEST schedule; one message per edge direction per round"""
    return simulate_bandwidth_schedule(BandwidthGraph.from_graph(g, source), schedule, k)


def _first_saturated(history: List[List[FrozenSet[int]]], sinks: List[int], k: int) -> Optional[int]:
    for r, known in enumerate(history):
        if all(len(known[t]) >= k for t in sinks):
            return r
    return None


def check_layered_equivalence(bg: BandwidthGraph, n_msgs: int, schedule: Schedule,
                              with_sink_bounds: bool = True) -> LayeredCheck:
    """Saturation round of the last layer before and after the transform, plus per-sink flow bounds"""
    sinks = bg.layer_members(bg.depth)
    original = _first_saturated(simulate_bandwidth_schedule(bg, schedule, n_msgs), sinks, n_msgs)
    tg = layered_transform(bg, n_msgs)
    lifted = lift_layered_schedule(bg, tg, schedule)
    unit_sinks = [tg.last_layer[t] for t in sinks]
    transformed = _first_saturated(simulate_unit_schedule(tg.graph, lifted, 0, n_msgs), unit_sinks, n_msgs)
    bounds = per_sink_round_bounds(tg.graph, 0, unit_sinks, n_msgs) if with_sink_bounds else {}
    return LayeredCheck(bg.depth, original, transformed, bounds)
