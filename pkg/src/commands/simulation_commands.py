"""
Simulation Commands
cobra, treepack and broadcast over graphs read from edge-list files
"""
from .common import emit_json, load_json
from ..broadcast.models import MessageSet
from ..broadcast.pipeline import (
    broadcast_over_packing, lower_bound_rounds, multi_source_reduction, naive_bfs_broadcast,
)
from ..cobra.engine import run_multi_cobra
from ..cobra.models import CobraConfig, MultiCobraAssignment
from ..graphs.generator import regularize
from ..graphs.io import read_edge_list
from ..packing.tree_packing import TreePacking, build_tree_packing


def _regular_graph(path: str):
    """Walks and trees run on the regularized graph; padding an already regular graph is a no-op"""
    return regularize(read_edge_list(path))


def cobra_command(args):
    g = _regular_graph(args.graph)
    walks = args.walks if args.walks is not None else read_edge_list(args.graph).min_degree
    config = CobraConfig(num_walks=walks, phases=args.phases, cover_constant=args.cover_constant)
    assignment = run_multi_cobra(g, args.source, config, args.seed)
    emit_json(assignment.to_dict(), args.out)
    uncovered = assignment.uncovered_walks()
    if uncovered:
        print(f"❌ {len(uncovered)} of {walks} walk(s) did not cover the graph in {assignment.phases_run} phases")
    else:
        print(f"✅ All {walks} walks covered the graph in {assignment.phases_run} phases, "
              f"max edge weight {assignment.max_edge_weight()}")


def treepack_command(args):
    g = _regular_graph(args.graph)
    assignment = MultiCobraAssignment.from_dict(load_json(args.assignment))
    packing = build_tree_packing(g, assignment, args.source)
    emit_json(packing.to_dict(), args.out)
    print(f"✅ S={packing.packing_size} H={packing.packing_diameter} W={packing.packing_weight} "
          f"built in {packing.build_rounds} rounds")


def broadcast_command(args):
    g = _regular_graph(args.graph)
    packing = TreePacking.from_dict(load_json(args.packing))
    if args.holdings:
        holdings = {int(node): msgs for node, msgs in load_json(args.holdings).items()}
        trace = multi_source_reduction(g, packing, holdings, record_sends=True)
    else:
        trace = broadcast_over_packing(g, packing, MessageSet(args.k), record_sends=True)
    trace.write_csv(args.out)
    plain = read_edge_list(args.graph)
    print(f"✅ {trace.k} message(s) saturated all {trace.node_count} nodes in {trace.total_rounds} rounds "
          f"(BFS pipeline {naive_bfs_broadcast(plain, packing.source, MessageSet(trace.k))}, "
          f"lower bound {lower_bound_rounds(plain, packing.source, trace.k)}) → {args.out}")


def register(subparsers):
    cobra = subparsers.add_parser('cobra', help='Run δ parallel COBRA walks')
    cobra.add_argument('--graph', required=True)
    cobra.add_argument('--source', type=int, default=0)
    cobra.add_argument('--walks', type=int, help='number of walks (default δ)')
    cobra.add_argument('--phases', type=int)
    cobra.add_argument('--cover-constant', dest='cover_constant', type=float)
    cobra.add_argument('--seed', type=int, required=True)
    cobra.add_argument('--out', required=True)
    cobra.set_defaults(handler=cobra_command)

    treepack = subparsers.add_parser('treepack', help='Build the BFS tree packing of a COBRA assignment')
    treepack.add_argument('--graph', required=True)
    treepack.add_argument('--assignment', required=True)
    treepack.add_argument('--source', type=int, default=0)
    treepack.add_argument('--out', required=True)
    treepack.set_defaults(handler=treepack_command)

    broadcast = subparsers.add_parser('broadcast', help='Broadcast k messages over a tree packing')
    broadcast.add_argument('--graph', required=True)
    broadcast.add_argument('--packing', required=True)
    group = broadcast.add_mutually_exclusive_group(required=True)
    group.add_argument('--k', type=int, help='messages held by the packing source')
    group.add_argument('--holdings', help='JSON object node -> message ids, for the multi-source variant')
    broadcast.add_argument('--out', required=True, help='trace CSV')
    broadcast.set_defaults(handler=broadcast_command)
