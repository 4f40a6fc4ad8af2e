"""
Experiment Runner
gen → regularize → spectral → cobra → treepack → broadcast, per (n, seed)
"""
import math
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import List, Optional, Tuple

import psutil

from .config import ExperimentConfig
from .models import (
    BROADCAST_COLUMNS, PACKING_COLUMNS, STAGE_BROADCAST, STAGE_PACKING, STATUS_FAILED,
    STATUS_UNCOVERED, ExperimentRecord, write_records_csv,
)
from ..broadcast.models import MessageSet
from ..broadcast.pipeline import broadcast_over_packing, lower_bound_rounds, naive_bfs_broadcast
from ..cobra.analysis import subgraph_diameter
from ..cobra.engine import run_multi_cobra
from ..cobra.models import CobraConfig, MultiCobraAssignment
from ..graphs.generator import er_probability, regularize, sample_connected_erdos_renyi
from ..graphs.io import read_edge_list
from ..graphs.models import Graph
from ..graphs.traversal import diameter, is_connected
from ..packing.tree_packing import build_tree_packing
from ..spectral.matrices import lambda2, normalized_adjacency
from ..spectral.mixing import mixing_time_empirical
from ..utils.errors import DisconnectedGraphError, MCBSimError
from ..utils.log import get_logger
from ..utils.rng import MAX_SEED

logger = get_logger('harness')


def _load_graph(cfg: ExperimentConfig, n: int, seed: int) -> Tuple[Graph, Optional[int], Optional[float]]:
    if cfg.graph_file is not None:
        g = read_edge_list(cfg.graph_file)
        if not is_connected(g):
            raise DisconnectedGraphError(f"graph file {cfg.graph_file} is disconnected")
        return g, None, None
    p = cfg.p if cfg.p is not None else er_probability(n, cfg.c_p)
    g, graph_seed = sample_connected_erdos_renyi(n, p, seed)
    return g, graph_seed, p


def _cover_with_retries(regular: Graph, cobra: CobraConfig, seed: int,
                        cfg: ExperimentConfig) -> Tuple[MultiCobraAssignment, int, int]:
    """Rerun multi-COBRA with an incremented seed while some walk stays uncovered"""
    cobra_seed = seed
    assignment = run_multi_cobra(regular, 0, cobra, cobra_seed)
    retries = 0
    while assignment.uncovered_walks() and retries < cfg.resolved_max_retries:
        retries += 1
        next_seed = (cobra_seed + cfg.resolved_seed_increment) % (MAX_SEED + 1)
        logger.info(f"n={regular.node_count} seed {cobra_seed}: {len(assignment.uncovered_walks())} "
                    f"walk(s) uncovered, retry {retries} with seed {next_seed}")
        cobra_seed = next_seed
        assignment = run_multi_cobra(regular, 0, cobra, cobra_seed)
    return assignment, cobra_seed, retries


def run_trial(cfg: ExperimentConfig, n: int, seed: int) -> List[ExperimentRecord]:
    """All records of one (n, seed) trial; failures become a failed packing record"""
    record = ExperimentRecord(STAGE_PACKING, cfg.run_id, n, seed)
    try:
        g, record.graph_seed, record.p = _load_graph(cfg, n, seed)
        record.n = g.node_count
        record.min_degree, record.max_degree = g.min_degree, g.max_degree
        record.diameter = diameter(g)
        regular = regularize(g)
        if cfg.spectral:
            record.lambda2_before = lambda2(normalized_adjacency(g))
            record.lambda2_after = lambda2(normalized_adjacency(regular))
            if cfg.mixing_tolerance is not None:
                record.mixing_time = mixing_time_empirical(g, cfg.mixing_tolerance)

        cobra = CobraConfig(num_walks=g.min_degree, phases=cfg.phases, cover_constant=cfg.cover_constant)
        assignment, record.cobra_seed, record.retries = _cover_with_retries(regular, cobra, seed, cfg)
        record.phases = assignment.phases_run
        record.num_walks = assignment.num_walks
        record.covered_walks = assignment.num_walks - len(assignment.uncovered_walks())
        record.max_edge_weight = assignment.max_edge_weight()
        if assignment.uncovered_walks():
            record.status = STATUS_UNCOVERED
            record.error = f"{len(assignment.uncovered_walks())} walk(s) uncovered after {record.retries} retries"
            logger.warning(f"n={record.n} seed {seed}: {record.error}")
            return [record]
        if cfg.measure_subgraph_diameters:
            record.max_subgraph_diameter = max(subgraph_diameter(assignment, w, regular)
                                               for w in range(assignment.num_walks))

        packing = build_tree_packing(regular, assignment, 0)
        record.S, record.H, record.W = packing.packing_size, packing.packing_diameter, packing.packing_weight
        record.build_rounds = packing.build_rounds

        records = [record]
        for ratio in cfg.k_ratios:
            k = max(1, math.ceil(ratio * g.min_degree))
            msgs = MessageSet(k)
            trace = broadcast_over_packing(regular, packing, msgs)
            records.append(ExperimentRecord(
                STAGE_BROADCAST, cfg.run_id, record.n, seed, min_degree=g.min_degree, diameter=record.diameter,
                k=k, k_ratio=ratio, S=record.S, H=record.H, W=record.W,
                broadcast_rounds=trace.total_rounds,
                baseline_rounds=naive_bfs_broadcast(g, 0, msgs),
                lower_bound=lower_bound_rounds(g, 0, k),
            ))
        return records
    except MCBSimError as e:
        record.status = STATUS_FAILED
        record.error = str(e)
        logger.warning(f"n={n} seed {seed} failed: {e}")
        return [record]
    finally:
        rss = psutil.Process().memory_info().rss / (1024 * 1024)
        logger.debug(f"n={n} seed {seed} done, resident memory {rss:.1f} MiB")


def _trial_args(cfg: ExperimentConfig) -> List[Tuple[int, int]]:
    sizes = cfg.n_values if cfg.graph_file is None else [0]
    return [(n, seed) for n in sizes for seed in cfg.seeds]


def _run_trial_args(args: Tuple[ExperimentConfig, int, int]) -> List[ExperimentRecord]:
    return run_trial(*args)


def run_experiment(cfg: ExperimentConfig) -> List[ExperimentRecord]:
    """Run every trial, merge records in (n, seed) order and emit CSVs"""
    trials = _trial_args(cfg)
    logger.info(f"run '{cfg.run_id}': {len(trials)} trial(s) with {cfg.workers} worker(s)")
    if cfg.workers > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            batches = list(pool.map(_run_trial_args, [(cfg, n, s) for n, s in trials]))
    else:
        batches = [run_trial(cfg, n, s) for n, s in trials]
    records = [r for batch in batches for r in batch]

    if cfg.output_dir:
        write_experiment_csvs(records, cfg.output_dir)
    if cfg.store_results:
        from ..database.record_store import record_store
        record_store.save_records(cfg.run_id, records)

    failed = sum(1 for r in records if r.stage == STAGE_PACKING and not r.ok)
    logger.info(f"run '{cfg.run_id}' finished: {len(records)} record(s), {failed} unsuccessful trial(s)")
    return records


def write_experiment_csvs(records: List[ExperimentRecord], output_dir) -> Tuple[Path, Path]:
    out = Path(output_dir)
    packing_path, broadcast_path = out / 'packing.csv', out / 'broadcast.csv'
    write_records_csv([r for r in records if r.stage == STAGE_PACKING], packing_path, PACKING_COLUMNS)
    write_records_csv([r for r in records if r.stage == STAGE_BROADCAST], broadcast_path, BROADCAST_COLUMNS)
    return packing_path, broadcast_path
