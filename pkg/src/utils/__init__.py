# Shared utilities for mcbsim
from .log import get_logger, setup_logging
from .rng import make_rng, validate_seed, MAX_SEED
from .errors import (
    MCBSimError, InvalidParameterError, DisconnectedGraphError, IsolatedNodeError,
    SpectralError, MixingTimeoutError, BudgetExceededError, CobraError, CoverageError,
    InternalConsistencyError, PackingError, BroadcastError, EmbeddingError,
    HardnessError, ConfigError,
)

__all__ = [
    'get_logger', 'setup_logging', 'make_rng', 'validate_seed', 'MAX_SEED',
    'MCBSimError', 'InvalidParameterError', 'DisconnectedGraphError', 'IsolatedNodeError',
    'SpectralError', 'MixingTimeoutError', 'BudgetExceededError', 'CobraError',
    'CoverageError', 'InternalConsistencyError', 'PackingError', 'BroadcastError',
    'EmbeddingError', 'HardnessError', 'ConfigError',
]
