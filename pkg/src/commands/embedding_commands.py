"""
Embedding Commands
embed and e2e on arbitrary host graphs
"""
from .common import emit_json
from ..embedding.embedder import embed_er_graph
from ..embedding.pipeline import resolve_tau, run_expander_broadcast
from ..graphs.io import read_edge_list
from ..utils.errors import InvalidParameterError


def _tau_argument(value: str):
    if value == 'auto':
        return None
    try:
        return int(value)
    except ValueError:
        raise InvalidParameterError(f"--tau must be an integer or 'auto', got '{value}'")


def embed_command(args):
    h = read_edge_list(args.host)
    tau, _ = resolve_tau(h, _tau_argument(args.tau))
    embedding, ledger = embed_er_graph(h, tau, args.seed)
    data = embedding.to_dict()
    data['ledger'] = ledger.to_dict()
    emit_json(data, args.out)
    print(f"✅ {embedding.space.group_count} virtual nodes embedded with tau={tau} "
          f"in {ledger.embed_rounds} host rounds")


def e2e_command(args):
    h = read_edge_list(args.host)
    result = run_expander_broadcast(h, args.k, args.seed, args.source, tau=_tau_argument(args.tau))
    emit_json({
        'k': args.k, 'tau': result.tau, 'cobra_seed': result.cobra_seed,
        'virtual_source': result.virtual_source, 'ledger': result.ledger.to_dict(),
        'packing': {'S': result.packing.packing_size, 'H': result.packing.packing_diameter,
                    'W': result.packing.packing_weight},
    }, args.ledger)
    print(f"✅ {args.k} message(s) reached all {h.node_count} host nodes in {result.ledger.total} rounds")


def register(subparsers):
    embed = subparsers.add_parser('embed', help='Embed a random virtual graph into a host')
    embed.add_argument('--host', required=True)
    embed.add_argument('--tau', default='auto', help="walk length or 'auto'")
    embed.add_argument('--seed', type=int, required=True)
    embed.add_argument('--out', required=True)
    embed.set_defaults(handler=embed_command)

    e2e = subparsers.add_parser('e2e', help='End-to-end expander broadcast on a host graph')
    e2e.add_argument('--host', required=True)
    e2e.add_argument('--k', type=int, required=True)
    e2e.add_argument('--seed', type=int, required=True)
    e2e.add_argument('--source', type=int, default=0)
    e2e.add_argument('--tau', default='auto', help="walk length or 'auto'")
    e2e.add_argument('--ledger', help='write the round ledger here instead of standard output')
    e2e.set_defaults(handler=e2e_command)
