"""
Graph Commands
gen and spectral
"""
from .common import emit_json
from ..graphs.generator import degree_stats, er_probability, regularize, sample_connected_erdos_renyi
from ..graphs.io import read_edge_list, write_edge_list
from ..spectral.report import spectral_report


def gen_command(args):
    p = args.p if args.p is not None else er_probability(args.n, args.c_p)
    g, seed_used = sample_connected_erdos_renyi(args.n, p, args.seed)
    if args.regularize:
        g = regularize(g)
    write_edge_list(g, args.out)
    stats = degree_stats(g)
    print(f"✅ G({args.n}, {p:.6g}) from seed {seed_used}: {g.edge_count} edges, "
          f"δ={stats.min_degree}, Δ={stats.max_degree} → {args.out}")


def spectral_command(args):
    g = read_edge_list(args.graph)
    if args.regularize:
        g = regularize(g)
    report = spectral_report(g, args.mixing_tolerance, empirical=args.mixing_tolerance is not None)
    emit_json(report.to_dict())


def register(subparsers):
    gen = subparsers.add_parser('gen', help='Sample a connected Erdős–Rényi graph')
    gen.add_argument('--n', type=int, required=True)
    gen.add_argument('--p', type=float, help='edge probability (default c_p·ln n/n)')
    gen.add_argument('--c-p', dest='c_p', type=float)
    gen.add_argument('--seed', type=int, required=True)
    gen.add_argument('--regularize', action='store_true', help='pad every node with self-loops to Δ slots')
    gen.add_argument('--out', required=True)
    gen.set_defaults(handler=gen_command)

    spectral = subparsers.add_parser('spectral', help='λ₂, gap, mixing bounds and conductance')
    spectral.add_argument('--graph', required=True)
    spectral.add_argument('--regularize', action='store_true')
    spectral.add_argument('--mixing-tolerance', dest='mixing_tolerance', type=float,
                          help='also measure the empirical mixing time at this tolerance')
    spectral.set_defaults(handler=spectral_command)
