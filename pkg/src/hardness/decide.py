"""
Round-Four Saturation Decision
Forwarding schedules over the set-splitting reduction and the brute-force oracle
"""
from itertools import combinations
from typing import FrozenSet, List, Optional

from .models import BandwidthGraph, ReductionGraph, ReductionInstance, Send
from ..services.config_service import config_service
from ..utils.errors import BudgetExceededError, HardnessError
from ..utils.log import get_logger

logger = get_logger('hardness')

Schedule = List[List[Send]]


def simulate_bandwidth_schedule(bg: BandwidthGraph, schedule: Schedule, k: int) -> List[List[FrozenSet[int]]]:
    """Knowledge of every node after each round; raises on bandwidth or causality breaks.

    Index 0 is the state before round 1: the source holds messages 0..k-1.
    """
    known: List[FrozenSet[int]] = [frozenset()] * bg.node_count
    known[bg.source] = frozenset(range(k))
    history = [list(known)]
    for r, sends in enumerate(schedule, start=1):
        seen = set()
        learned = [set() for _ in range(bg.node_count)]
        for u, v, msgs in sends:
            if (u, v) in seen:
                raise HardnessError(f"round {r}: two sends on ({u}, {v})")
            seen.add((u, v))
            if len(msgs) > bg.bandwidth(u, v):
                raise HardnessError(f"round {r}: {len(msgs)} messages over ({u}, {v}) "
                                    f"with bandwidth {bg.bandwidth(u, v)}")
            if not msgs <= known[u]:
                raise HardnessError(f"round {r}: node {u} sent messages it does not hold")
            learned[v].update(msgs)
        known = [known[v] | learned[v] for v in range(bg.node_count)]
        history.append(list(known))
    return history


def forward_layered(bg: BandwidthGraph, first_round: List[Send], rounds: int, k: int) -> Schedule:
    """Complete a schedule where, after round 1, each node only passes messages down a layer.

    In round r the nodes of layer r-1 send to their next-layer neighbors the
    smallest-id messages they hold, up to the bandwidth.
    """
    if bg.layers is None:
        raise HardnessError("forwarding needs layer labels")
    schedule: Schedule = [list(first_round)]
    for r in range(2, rounds + 1):
        known = simulate_bandwidth_schedule(bg, schedule, k)[-1]
        sends = []
        for u in bg.layer_members(r - 1):
            if not known[u]:
                continue
            ordered = sorted(known[u])
            for v in bg.neighbors(u):
                if bg.layers[v] == r:
                    sends.append((u, v, frozenset(ordered[:bg.bandwidth(u, v)])))
        schedule.append(sends)
    return schedule


def forwarding_schedule(rg: ReductionGraph, part: FrozenSet[int]) -> Schedule:
    """The four-round schedule in which the source sends the split (part, rest)"""
    ri = rg.instance
    n = ri.ground_set_size
    everything = frozenset(range(n))
    part = frozenset(part)
    if len(part) != ri.n1 or not part <= everything:
        raise HardnessError(f"split part must have {ri.n1} elements of 0..{n - 1}")
    parts = (part, everything - part)

    first = [(0, v, frozenset([i])) for i, v in enumerate(rg.element_nodes)]
    first += [(0, rg.part_relays[j], parts[j]) for j in range(2)]
    for (i, j), relays in sorted(rg.target_relays.items()):
        missing = sorted(everything - ri.family[i] - parts[j])
        first.append((0, relays[0], frozenset(missing[:rg.bandwidth(0, relays[0])])))

    return forward_layered(rg, first, 4, n)


def targets_saturated(rg: ReductionGraph, schedule: Schedule) -> bool:
    n = rg.instance.ground_set_size
    known = simulate_bandwidth_schedule(rg, schedule, n)[-1]
    return all(len(known[t]) == n for t in rg.targets)


def find_saturating_split(rg: ReductionGraph) -> Optional[FrozenSet[int]]:
    """First part (in lexicographic order) whose forwarding schedule saturates every target by round 4"""
    ri = rg.instance
    if ri is None:
        raise HardnessError("graph was not built from a set-splitting instance")
    limit = config_service.get_int('decide_max_elements')
    if ri.ground_set_size > limit:
        raise BudgetExceededError(f"ground set of {ri.ground_set_size} exceeds the budget of {limit}")
    for chosen in combinations(range(ri.ground_set_size), ri.n1):
        part = frozenset(chosen)
        if targets_saturated(rg, forwarding_schedule(rg, part)):
            logger.debug(f"split {sorted(part)} saturates all {len(rg.targets)} targets")
            return part
    return None


def decide_saturation_round4(rg: ReductionGraph) -> bool:
    return find_saturating_split(rg) is not None


def brute_force_set_splitting(ri: ReductionInstance) -> bool:
    limit = config_service.get_int('set_splitting_max_elements')
    if ri.ground_set_size > limit:
        raise BudgetExceededError(f"ground set of {ri.ground_set_size} exceeds the budget of {limit}")
    return any(ri.is_split_by(frozenset(chosen))
               for chosen in combinations(range(ri.ground_set_size), ri.n1))
