"""
Hardness Commands
sqrtk, reduce and saturate
"""
import math

from .common import emit_json, load_json
from ..hardness.bandwidth import global_min_cut
from ..hardness.decide import brute_force_set_splitting, find_saturating_split
from ..hardness.flow import time_expanded_saturation, verify_flow_certificate
from ..hardness.instances import build_setsplit_reduction, build_sqrtk_instance
from ..hardness.models import BandwidthGraph, ReductionInstance
from ..utils.errors import InvalidParameterError


def sqrtk_command(args):
    bg = build_sqrtk_instance(args.k, with_unit_paths=not args.no_unit_paths)
    if args.out:
        bg.write(args.out)
        print(f"✅ Wrote {args.out}")
    else:
        print(bg.format(), end='')
    if args.saturate:
        rounds = time_expanded_saturation(bg, 1, args.k).min_rounds
        print(f"✅ v1 needs {rounds} rounds for {args.k} messages "
              f"(sqrt k = {math.isqrt(args.k)}, global min cut {global_min_cut(bg.to_networkx())})")


def reduce_command(args):
    data = load_json(args.sets)
    try:
        n = int(data['ground_set_size'])
        family = [frozenset(s) for s in data['family']]
    except (KeyError, TypeError, ValueError) as e:
        raise InvalidParameterError(f"sets file needs 'ground_set_size' and 'family': {e}")
    instance = ReductionInstance(n, family, args.n1, n - args.n1)
    rg = build_setsplit_reduction(instance)
    split = find_saturating_split(rg)
    emit_json({
        'nodes': rg.node_count, 'edges': len(rg.edges), 'targets': len(rg.targets),
        'saturates_in_4_rounds': split is not None,
        'witness_split': sorted(split) if split is not None else None,
        'brute_force': brute_force_set_splitting(instance),
    })
    if args.out:
        rg.write(args.out)
        print(f"✅ Wrote {args.out}")


def saturate_command(args):
    bg = BandwidthGraph.read(args.graph)
    result = time_expanded_saturation(bg, args.sink, args.k, args.round_cap)
    emit_json({
        'sink': result.sink, 'k': result.k, 'min_rounds': result.min_rounds,
        'round_cap': result.round_cap, 'certificate_valid': verify_flow_certificate(bg, result),
        'certificate': [[[u, v, amount] for (u, v), amount in sorted(moved.items())]
                        for moved in result.flow_certificate],
    })


def register(subparsers):
    hardness = subparsers.add_parser('hardness', help='Lower-bound gadgets and exact oracles')
    actions = hardness.add_subparsers(dest='hardness_action', required=True)

    sqrtk = actions.add_parser('sqrtk', help='Diameter-3 instance needing about sqrt(k) rounds')
    sqrtk.add_argument('--k', type=int, required=True)
    sqrtk.add_argument('--no-unit-paths', dest='no_unit_paths', action='store_true')
    sqrtk.add_argument('--saturate', action='store_true', help='also compute the rounds v1 needs')
    sqrtk.add_argument('--out')
    sqrtk.set_defaults(handler=sqrtk_command)

    reduce = actions.add_parser('reduce', help='Set-splitting reduction and its round-4 decision')
    reduce.add_argument('--sets', required=True, help="JSON with 'ground_set_size' and 'family'")
    reduce.add_argument('--n1', type=int, required=True)
    reduce.add_argument('--out', help='write the reduction graph here')
    reduce.set_defaults(handler=reduce_command)

    saturate = actions.add_parser('saturate', help='Exact rounds for one sink by time-expanded max-flow')
    saturate.add_argument('--graph', required=True)
    saturate.add_argument('--sink', type=int, required=True)
    saturate.add_argument('--k', type=int, required=True)
    saturate.add_argument('--round-cap', dest='round_cap', type=int)
    saturate.set_defaults(handler=saturate_command)
