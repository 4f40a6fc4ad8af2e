"""
Experiment Commands
experiment, acceptance and status
"""
import platform
import sys

import psutil

from .common import emit_json
from ..harness.acceptance import CRITERIA, SCALES, run_all, run_criterion
from ..harness.config import ExperimentConfig
from ..harness.models import STAGE_PACKING
from ..harness.runner import run_experiment


def experiment_command(args):
    cfg = ExperimentConfig.from_json(args.config)
    if args.output_dir:
        cfg.output_dir = args.output_dir
    if args.store:
        cfg.store_results = True
    records = run_experiment(cfg)
    trials = [r for r in records if r.stage == STAGE_PACKING]
    ok = sum(1 for r in trials if r.ok)
    marker = '✅' if ok == len(trials) else '❌'
    print(f"{marker} {ok}/{len(trials)} trial(s) completed, {len(records)} record(s)"
          + (f" → {cfg.output_dir}" if cfg.output_dir else ''))


def acceptance_command(args):
    results = run_all(args.scale) if args.criterion is None else [run_criterion(args.criterion, args.scale)]
    emit_json([r.to_dict() for r in results])
    for r in results:
        print(f"{'✅' if r.passed else '❌'} criterion {r.criterion}")
    if not all(r.passed for r in results):
        sys.exit(1)


def status_command(args):
    from ..database.connection import db_manager

    memory = psutil.virtual_memory()
    process = psutil.Process()
    print("📊 mcbsim status")
    print(f"   Platform: {platform.platform()}")
    print(f"   Python: {platform.python_version()}")
    print(f"   CPUs: {psutil.cpu_count(logical=True)} logical, load {psutil.cpu_percent(interval=0.1):.0f}%")
    print(f"   Memory: {memory.used / 2**30:.1f} / {memory.total / 2**30:.1f} GiB ({memory.percent:.0f}%)")
    print(f"   Process RSS: {process.memory_info().rss / 2**20:.1f} MiB")
    print(f"   Results database: {db_manager.db_type}"
          + (f" ({db_manager.sqlite_path})" if db_manager.db_type == 'sqlite' else ''))


def register(subparsers):
    experiment = subparsers.add_parser('experiment', help='Run a configured sweep')
    experiment.add_argument('--config', required=True)
    experiment.add_argument('--output-dir', dest='output_dir')
    experiment.add_argument('--store', action='store_true', help='also save records to the results database')
    experiment.set_defaults(handler=experiment_command)

    acceptance = subparsers.add_parser('acceptance', help='Evaluate acceptance criteria')
    acceptance.add_argument('--criterion', type=int, choices=sorted(CRITERIA))
    acceptance.add_argument('--scale', choices=SCALES, default='small')
    acceptance.set_defaults(handler=acceptance_command)

    status = subparsers.add_parser('status', help='Platform, resources and database backend')
    status.set_defaults(handler=status_command)
