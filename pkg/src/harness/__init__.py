# Experiment sweeps, records, analysis and the acceptance suite
from .config import ExperimentConfig
from .models import (
    SCHEMA_VERSION, STAGE_PACKING, STAGE_BROADCAST, STATUS_OK, STATUS_UNCOVERED, STATUS_FAILED,
    PACKING_COLUMNS, BROADCAST_COLUMNS, ExperimentRecord, write_records_csv,
)
from .runner import run_trial, run_experiment, write_experiment_csvs
from .analysis import (
    DEFAULT_MODEL, ScalingFit, LogConstantFit, fit_scaling, fit_scaling_arrays,
    fit_log_constant, whp_fraction, whp_passes,
)
from .acceptance import CriterionResult, CRITERIA, SCALES, setsplit_suite, run_criterion, run_all

__all__ = [
    'ExperimentConfig', 'SCHEMA_VERSION', 'STAGE_PACKING', 'STAGE_BROADCAST', 'STATUS_OK',
    'STATUS_UNCOVERED', 'STATUS_FAILED', 'PACKING_COLUMNS', 'BROADCAST_COLUMNS',
    'ExperimentRecord', 'write_records_csv', 'run_trial', 'run_experiment', 'write_experiment_csvs',
    'DEFAULT_MODEL', 'ScalingFit', 'LogConstantFit', 'fit_scaling', 'fit_scaling_arrays',
    'fit_log_constant', 'whp_fraction', 'whp_passes',
    'CriterionResult', 'CRITERIA', 'SCALES', 'setsplit_suite', 'run_criterion', 'run_all',
]
